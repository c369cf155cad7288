"""Coherence of cellular strings and the all-coherence decision.

A string (A_1, ..., A_l) is coherent when some functional psi is constant
on each block and strictly increases from block to block, measured on the
canonical generators (pi(v_e) = 1).  Only consecutive blocks need an
inequality, and the strict inequalities are written with margin 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .configuration import Configuration, ValidationError
from .matroid import decompose
from .rational import FeasibilityProblem, as_rational, feasible
from .strings import (
    DEFAULT_CAP,
    CellularString,
    enumerate_cellular_strings,
    enumerate_monotone_paths,
)

__all__ = [
    "CoherenceVerdict",
    "RankSumOutcome",
    "AllCoherence",
    "induced_string",
    "is_coherent",
    "rank_sum_test",
    "decomposable_obstruction",
    "strip_coloops",
    "is_all_coherent",
    "is_string_of",
]


def _dot(u, v) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


@dataclass(frozen=True)
class CoherenceVerdict:
    coherent: bool
    method: str  # "LP", "RankSumTest" or "Decomposability"
    witness: tuple[Fraction, ...] | None = None

    def __bool__(self):
        return self.coherent

    def to_json(self) -> dict:
        from .rational import format_rational

        out = {"coherent": self.coherent, "method": self.method}
        if self.witness is not None:
            out["psi"] = [format_rational(x) for x in self.witness]
        return out


@dataclass(frozen=True)
class RankSumOutcome:
    """Result of the rank-sum obstruction on one proper string.

    ``fires`` means the sum of (cell rank - 1) reached ``bound`` = r - 1,
    which certifies that the configuration is not all-coherent.
    """

    fires: bool
    total: int
    bound: int


@dataclass(frozen=True)
class AllCoherence:
    all_coherent: bool
    witness: CellularString | None = None
    checked: int = 0

    def __bool__(self):
        return self.all_coherent


def induced_string(c: Configuration, psi: Sequence) -> CellularString:
    """Level sets of e -> psi(v_e) / pi(v_e), in increasing order of the value."""
    psi = tuple(as_rational(x) for x in psi)
    if len(psi) != c.dim:
        raise ValidationError(f"functional has {len(psi)} entries, expected {c.dim}")
    values = [_dot(psi, v) / p for v, p in zip(c.vectors, c.pi_values())]
    levels: dict[Fraction, list[int]] = {}
    for e, val in enumerate(values):
        levels.setdefault(val, []).append(e)
    return CellularString(tuple(tuple(levels[v]) for v in sorted(levels)), c.labels)


def is_string_of(c: Configuration, s: CellularString) -> bool:
    if s.labels != c.labels:
        return False
    keys = c.matroid.covector_keys()
    return all((x.plus, x.minus) in keys for x in s.covectors())


def _coherence_problem(c: Configuration, s: CellularString) -> FeasibilityProblem:
    vecs = c.canonical().vectors
    eqs, margins = [], []
    for block in s.blocks:
        for e, f in zip(block, block[1:]):
            eqs.append(tuple(a - b for a, b in zip(vecs[f], vecs[e])))
    for b1, b2 in zip(s.blocks, s.blocks[1:]):
        margins.append(tuple(a - b for a, b in zip(vecs[b2[0]], vecs[b1[0]])))
    return FeasibilityProblem(c.dim, tuple(eqs), tuple(margins))


def is_coherent(c: Configuration, s: CellularString, check_string: bool = True) -> CoherenceVerdict:
    """Decide coherence of one cellular string by exact linear feasibility."""
    if check_string and not is_string_of(c, s):
        raise ValidationError(f"{s} is not a cellular string of this configuration")
    w = feasible(_coherence_problem(c, s))
    if not w:
        return CoherenceVerdict(False, "LP")
    if induced_string(c, w) != s:
        raise AssertionError("coherence witness does not induce the queried string")
    return CoherenceVerdict(True, "LP", w)


def rank_sum_test(c: Configuration, s: CellularString) -> RankSumOutcome:
    """Fires when the cell ranks of a proper string satisfy sum(rk - 1) >= r - 1."""
    if s.is_trivial:
        raise ValueError("the rank-sum test needs a proper string")
    total = s.rank_sum(c)
    bound = c.rank - 1
    return RankSumOutcome(total >= bound, total, bound)


def _lemma_component_string(c: Configuration) -> CellularString | None:
    """Longest string whose blocks are singletons except one block of rank r - 1.

    In rank 2 the distinguished block is itself a singleton, so every
    monotone path qualifies.
    """
    r = c.rank
    best = None
    for s in enumerate_cellular_strings(c, cap=None):
        ranks = s.cell_ranks(c)
        big = [i for i, b in enumerate(s.blocks) if len(b) > 1]
        if len(big) > 1:
            continue
        if big:
            if ranks[big[0]] != r - 1:
                continue
        elif r != 2:
            continue
        if len(s) < 3:
            continue
        if best is None or len(s) > len(best):
            best = s
    return best


def decomposable_obstruction(c: Configuration) -> CellularString | None:
    """For a direct sum of two parts that both contain circuits, interleave strings of the parts.

    Each part contributes a string with one corank-one block and singleton
    blocks otherwise; block j of the result is the union of the j-th blocks
    of both strings, and once the shorter string runs out the longer one
    continues alone.  Returns None when the matroid does not split this way.
    """
    if c.n == 0:
        return None
    m = c.matroid
    parts = decompose(m)
    coloops = m.coloops()
    nontrivial = [sorted(p) for p, _ in parts if not (len(p) == 1 and next(iter(p)) in coloops)]
    if len(nontrivial) < 2:
        return None
    first = nontrivial[0]
    second = sorted(e for p in nontrivial[1:] for e in p)
    strings = []
    for part in (first, second):
        sub = c.restrict(part)
        y = _lemma_component_string(sub)
        if y is None:
            return None
        strings.append([tuple(part[e] for e in b) for b in y.blocks])
    short, long_ = sorted(strings, key=len)
    blocks = [tuple(sorted(a + b)) for a, b in zip(short, long_)] + long_[len(short):]
    # coloops outside both parts go last, where every earlier element is already +
    rest = sorted(set(range(c.n)) - set(first) - set(second))
    blocks += [(e,) for e in rest]
    s = CellularString(tuple(blocks), c.labels)
    if not is_string_of(c, s):
        raise AssertionError("interleaved string is not a cellular string")
    return s


def strip_coloops(c: Configuration) -> tuple[Configuration, frozenset[str]]:
    """Delete every coloop; deleting one coloop never creates another, so one pass suffices."""
    if c.n == 0:
        return c, frozenset()
    gone = c.matroid.coloops()
    if not gone:
        return c, frozenset()
    keep = [e for e in range(c.n) if e not in gone]
    return c.restrict(keep), frozenset(c.labels[e] for e in gone)


def is_all_coherent(c: Configuration, exhaustive: bool = False,
                    cap: int | None = DEFAULT_CAP) -> AllCoherence:
    """All-coherence via coherence of every monotone path.

    The first incoherent path in canonical order is the witness.  With
    ``exhaustive`` every cellular string is checked as well.
    """
    if c.n == 0:
        return AllCoherence(True)
    checked = 0
    for order in enumerate_monotone_paths(c, cap=cap):
        s = CellularString.path(order, c.labels)
        checked += 1
        if not is_coherent(c, s, check_string=False):
            return AllCoherence(False, s, checked)
    if exhaustive:
        for s in enumerate_cellular_strings(c, cap=cap):
            if s.is_path:
                continue
            checked += 1
            if not is_coherent(c, s, check_string=False):
                return AllCoherence(False, s, checked)
    return AllCoherence(True, None, checked)
