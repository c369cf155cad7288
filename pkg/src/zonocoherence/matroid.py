"""Realized oriented matroids: chirotope, cocircuits, covectors, circuits, minors.

An :class:`OrientedMatroid` is built from a list of vectors, which may
contain loops (zero vectors).  Loops appear when a generator is deleted
while keeping the ground set fixed, as weak-map arguments require.

Sign convention: the chirotope is normalized so that the lexicographically
first basis is positive.  Only sign-invariant information is derived from
it (covectors, circuits and isomorphism up to global sign).
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .rational import determinant, nullspace, rank as _rank
from .signs import SignVector, compose, separation_set, verify_axioms

__all__ = [
    "OrientedMatroid",
    "chirotope_of",
    "cocircuits_of",
    "covectors_of",
    "topes_of",
    "circuits_of",
    "subset_rank",
    "coloops_of",
    "is_acyclic",
    "decompose",
    "contract",
    "delete",
    "is_weak_map",
    "is_isomorphic",
    "compose",
    "separation_set",
    "verify_axioms",
]


def _sign(q) -> int:
    return (q > 0) - (q < 0)


def _perm_parity(seq: Sequence[int]) -> int:
    """+1 for an even arrangement of distinct values, -1 for odd."""
    seq = list(seq)
    parity = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                parity = -parity
    return parity


class OrientedMatroid:
    """Oriented matroid of a finite vector configuration.

    The vectors are projected once onto a set of independent coordinates,
    so every rank-r computation happens in Q^r.  Covectors are materialized
    on first use and cached.
    """

    def __init__(self, vectors: Sequence[Sequence], labels: Sequence[str] | None = None,
                 dim: int | None = None):
        vecs = [tuple(Fraction(x) for x in v) for v in vectors]
        if dim is None:
            dim = len(vecs[0]) if vecs else 0
        self.n = len(vecs)
        self.labels = tuple(labels) if labels is not None else tuple(str(i + 1) for i in range(self.n))
        if len(self.labels) != self.n:
            raise ValueError("label count does not match the number of vectors")
        # independent coordinates: greedily keep rows that raise the rank
        rows = [tuple(v[i] for v in vecs) for i in range(dim)]
        keep: list[int] = []
        for i, row in enumerate(rows):
            if _rank([rows[k] for k in keep] + [row]) > len(keep):
                keep.append(i)
        self.rank = len(keep)
        self.vectors = tuple(tuple(v[i] for i in keep) for v in vecs)
        self._covectors = None
        self._circuits = None
        self._cocircuits = None
        self._chirotope = None
        self._ranks: dict[int, int] = {}

    def __repr__(self):
        return f"OrientedMatroid(n={self.n}, rank={self.rank})"

    # -- element addressing ------------------------------------------
    def index(self, element) -> int:
        if isinstance(element, int) and not isinstance(element, bool):
            if 0 <= element < self.n:
                return element
            raise KeyError(f"no element at position {element}")
        try:
            return self.labels.index(str(element))
        except ValueError:
            raise KeyError(f"unknown element {element!r}") from None

    def mask(self, elements: Iterable) -> int:
        m = 0
        for e in elements:
            m |= 1 << self.index(e)
        return m

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    # -- rank ---------------------------------------------------------
    def rank_of_mask(self, mask: int) -> int:
        got = self._ranks.get(mask)
        if got is None:
            cols = [v for e, v in enumerate(self.vectors) if (mask >> e) & 1]
            got = _rank(cols) if cols else 0
            self._ranks[mask] = got
        return got

    def subset_rank(self, elements: Iterable) -> int:
        return self.rank_of_mask(self.mask(elements))

    def closure_mask(self, mask: int) -> int:
        r = self.rank_of_mask(mask)
        out = mask
        for e in range(self.n):
            if not (mask >> e) & 1 and self.rank_of_mask(mask | (1 << e)) == r:
                out |= 1 << e
        return out

    def loops_mask(self) -> int:
        return sum(1 << e for e, v in enumerate(self.vectors) if not any(v))

    # -- chirotope ----------------------------------------------------
    def chi(self, ordered: Sequence[int]) -> int:
        """Chirotope value on an ordered r-tuple of element indices."""
        if len(ordered) != self.rank:
            raise ValueError(f"chirotope takes {self.rank} elements")
        if len(set(ordered)) < len(ordered):
            return 0
        key = tuple(sorted(ordered))
        return self.chirotope()[key] * _perm_parity(ordered)

    def chirotope(self) -> dict[tuple[int, ...], int]:
        if self._chirotope is None:
            chi = {}
            flip = 0
            for subset in combinations(range(self.n), self.rank):
                s = _sign(determinant([self.vectors[e] for e in subset])) if subset else 1
                if s and not flip:
                    flip = s
                chi[subset] = s
            if flip < 0:
                chi = {k: -v for k, v in chi.items()}
            self._chirotope = chi
        return self._chirotope

    # -- cocircuits, covectors ---------------------------------------
    def cocircuits(self) -> list[SignVector]:
        if self._cocircuits is None:
            out: dict[tuple[int, int], SignVector] = {}
            seen_flats = set()
            r = self.rank
            if r >= 1:
                for subset in combinations(range(self.n), r - 1):
                    if self.rank_of_mask(_to_mask(subset)) != r - 1:
                        continue
                    basis = nullspace([self.vectors[e] for e in subset], ncols=r) if subset else \
                        [tuple(Fraction(int(i == 0)) for i in range(r))]
                    y = basis[0]
                    signs = [_sign(sum((a * b for a, b in zip(y, v)), Fraction(0))) for v in self.vectors]
                    x = SignVector.from_signs(signs)
                    if x.zero_mask in seen_flats:
                        continue
                    seen_flats.add(x.zero_mask)
                    out[(x.plus, x.minus)] = x
                    out[(x.minus, x.plus)] = -x
            self._cocircuits = sorted(out.values(), key=str)
        return self._cocircuits

    def covectors(self) -> list[SignVector]:
        """All covectors: compositions of cocircuits, plus the zero vector."""
        if self._covectors is None:
            cocirc = self.cocircuits()
            zero = SignVector.zero(self.n)
            found = {(0, 0): zero}
            queue = [zero]
            while queue:
                x = queue.pop()
                for c in cocirc:
                    z = compose(x, c)
                    key = (z.plus, z.minus)
                    if key not in found:
                        found[key] = z
                        queue.append(z)
            self._covectors = sorted(found.values(), key=str)
        return self._covectors

    def covector_keys(self) -> frozenset[tuple[int, int]]:
        return frozenset((x.plus, x.minus) for x in self.covectors())

    def topes(self) -> list[SignVector]:
        loops = self.loops_mask()
        return [x for x in self.covectors() if x.zero_mask == loops]

    # -- circuits -----------------------------------------------------
    def circuits(self) -> list[SignVector]:
        if self._circuits is None:
            out: dict[tuple[int, int], SignVector] = {}
            for size in range(1, self.rank + 2):
                for subset in combinations(range(self.n), size):
                    m = _to_mask(subset)
                    if self.rank_of_mask(m) != size - 1:
                        continue
                    if any(self.rank_of_mask(m & ~(1 << e)) != size - 1 for e in subset):
                        continue
                    cols = [self.vectors[e] for e in subset]
                    rows = [[c[i] for c in cols] for i in range(self.rank)]
                    if rows:
                        ker = nullspace(rows, ncols=size)
                    else:
                        ker = [(Fraction(1),)]
                    coeffs = ker[0]
                    signs = [0] * self.n
                    for e, c in zip(subset, coeffs):
                        signs[e] = _sign(c)
                    x = SignVector.from_signs(signs)
                    out[(x.plus, x.minus)] = x
                    out[(x.minus, x.plus)] = -x
            self._circuits = sorted(out.values(), key=str)
        return self._circuits

    # -- structure ----------------------------------------------------
    def coloops(self) -> frozenset[int]:
        full = self.full_mask
        return frozenset(e for e in range(self.n) if self.rank_of_mask(full & ~(1 << e)) < self.rank)

    def restrict(self, elements: Iterable) -> "OrientedMatroid":
        idx = sorted({self.index(e) for e in elements})
        return OrientedMatroid([self.vectors[i] for i in idx], [self.labels[i] for i in idx],
                               dim=self.rank)

    def rank2_flats(self) -> list[frozenset[int]]:
        """Closed sets of rank 2, as frozensets of element indices (sorted)."""
        flats = set()
        for i, j in combinations(range(self.n), 2):
            m = (1 << i) | (1 << j)
            if self.rank_of_mask(m) == 2:
                flats.add(self.closure_mask(m))
        return sorted((frozenset(e for e in range(self.n) if (f >> e) & 1) for f in flats),
                      key=lambda s: tuple(sorted(s)))


def _to_mask(subset: Iterable[int]) -> int:
    m = 0
    for e in subset:
        m |= 1 << e
    return m


# ----------------------------------------------------------------------
# Functional interface
# ----------------------------------------------------------------------

def chirotope_of(c) -> OrientedMatroid:
    """Oriented matroid (with chirotope) of a configuration."""
    return c.matroid


def cocircuits_of(m: OrientedMatroid) -> list[SignVector]:
    return m.cocircuits()


def covectors_of(m: OrientedMatroid) -> list[SignVector]:
    return m.covectors()


def topes_of(m: OrientedMatroid) -> list[SignVector]:
    return m.topes()


def circuits_of(m: OrientedMatroid) -> list[SignVector]:
    return m.circuits()


def subset_rank(m: OrientedMatroid, s: Iterable) -> int:
    return m.subset_rank(s)


def coloops_of(m: OrientedMatroid) -> frozenset[int]:
    return m.coloops()


def is_acyclic(m: OrientedMatroid) -> bool:
    """Acyclic iff no circuit is all-positive (equivalently, a positive tope exists)."""
    return not any(x.minus == 0 for x in m.circuits())


def decompose(m: OrientedMatroid) -> list[tuple[frozenset[int], OrientedMatroid]]:
    """Connected components: elements are joined when they share a circuit."""
    parent = list(range(m.n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for x in m.circuits():
        supp = sorted(x.support())
        for e in supp[1:]:
            ra, rb = find(supp[0]), find(e)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for e in range(m.n):
        groups.setdefault(find(e), []).append(e)
    parts = sorted(groups.values(), key=lambda g: g[0])
    return [(frozenset(g), m.restrict(g)) for g in parts]


def delete(m: OrientedMatroid, e) -> OrientedMatroid:
    """M \\ e on the same ground set, with e turned into a loop."""
    i = m.index(e)
    vecs = list(m.vectors)
    vecs[i] = tuple(Fraction(0) for _ in range(m.rank))
    return OrientedMatroid(vecs, m.labels, dim=m.rank)


def contract(m: OrientedMatroid, e) -> OrientedMatroid:
    """M / e on the same ground set, with e turned into a coloop.

    A loop is contracted by deleting it, which leaves it a loop.
    """
    i = m.index(e)
    ve = m.vectors[i]
    p = next((k for k, x in enumerate(ve) if x != 0), None)
    if p is None:
        return delete(m, e)
    vecs = []
    for j, v in enumerate(m.vectors):
        if j == i:
            vecs.append(tuple(Fraction(0) for _ in range(m.rank - 1)) + (Fraction(1),))
            continue
        f = v[p] / ve[p]
        w = tuple(a - f * b for k, (a, b) in enumerate(zip(v, ve)) if k != p)
        vecs.append(w + (Fraction(0),))
    return OrientedMatroid(vecs, m.labels, dim=m.rank)


def is_weak_map(m: OrientedMatroid, m2: OrientedMatroid) -> bool:
    """True iff every circuit of m conforms-dominates some circuit of m2."""
    if m.labels != m2.labels:
        raise ValueError("weak maps need the same ground set")
    target = m2.circuits()
    return all(any(y.conforms_to(x) for y in target) for x in m.circuits())


def _element_invariants(m: OrientedMatroid) -> list[tuple]:
    inv = []
    circ = m.circuits()
    for e in range(m.n):
        sizes = sorted(len(x.support()) for x in circ if (x.support_mask >> e) & 1)
        inv.append((tuple(sizes), (m.loops_mask() >> e) & 1))
    return inv


def is_isomorphic(m: OrientedMatroid, m2: OrientedMatroid) -> tuple[int, ...] | None:
    """A relabeling sigma (element i of m -> sigma[i] of m2) carrying chirotope to
    chirotope up to one global sign, or None."""
    if m.n != m2.n or m.rank != m2.rank:
        return None
    inv1, inv2 = _element_invariants(m), _element_invariants(m2)
    if sorted(inv1) != sorted(inv2):
        return None
    n, r = m.n, m.rank
    if r == 0:
        return tuple(range(n))
    chi1, chi2 = m.chirotope(), m2.chirotope()
    # subsets whose largest element is k, checked as soon as k is placed
    closing = {k: [s for s in chi1 if s[-1] == k] for k in range(n)}
    sigma = [-1] * n
    used = [False] * n
    state = {"g": 0}

    def extend(k: int) -> bool:
        if k == n:
            return True
        for t in range(n):
            if used[t] or inv2[t] != inv1[k]:
                continue
            sigma[k] = t
            g_before = state["g"]
            ok = True
            for s in closing[k]:
                img = [sigma[x] for x in s]
                v2 = chi2[tuple(sorted(img))] * _perm_parity(img)
                v1 = chi1[s]
                if (v1 == 0) != (v2 == 0):
                    ok = False
                    break
                if v1:
                    if state["g"] == 0:
                        state["g"] = v1 * v2
                    elif v1 * v2 != state["g"]:
                        ok = False
                        break
            if ok:
                used[t] = True
                if extend(k + 1):
                    return True
                used[t] = False
            state["g"] = g_before
        sigma[k] = -1
        return False

    return tuple(sigma) if extend(0) else None
