"""Monotone paths, cellular strings, the Baues poset and the flip graph.

A cellular string is stored as an ordered set partition of the generators
(indices into the configuration).  Its i-th covector is ``+`` on the
earlier blocks, ``0`` on block i and ``-`` on the later blocks; with this
orientation the all-negative tope is the start of every string and the
all-positive tope its end.  Blocks are printed as ``{a,d}|{b,c}``.

Canonical order of strings and paths is lexicographic in the generator
indices, block by block.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .configuration import CapExceeded, Configuration, ValidationError
from .rational import FeasibilityProblem, feasible
from .signs import SignVector, compose

__all__ = [
    "CellularString",
    "enumerate_monotone_paths",
    "enumerate_cellular_strings",
    "count_cellular_strings",
    "is_vertex_inducing",
    "refines",
    "BauesPoset",
    "baues_poset",
    "order_complex_stats",
    "OrderComplexStats",
    "is_graded",
    "l2_separation",
    "FlipGraph",
    "flip_graph",
    "q_distance_polynomial",
    "DEFAULT_CAP",
]

DEFAULT_CAP = 200_000


def _mask(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def _bits(mask: int) -> tuple[int, ...]:
    out = []
    e = 0
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return tuple(out)


@dataclass(frozen=True)
class CellularString:
    """Ordered set partition of generator indices, with the labels for printing."""

    blocks: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        blocks = tuple(tuple(sorted(b)) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "labels", tuple(self.labels))
        seen = [e for b in blocks for e in b]
        if not blocks or any(not b for b in blocks):
            raise ValueError("a cellular string needs at least one block and no empty blocks")
        if sorted(seen) != list(range(len(self.labels))):
            raise ValueError("blocks must partition the ground set")

    # -- constructors -------------------------------------------------
    @classmethod
    def from_labels(cls, blocks: Sequence[Iterable], labels: Sequence[str]) -> "CellularString":
        labels = tuple(labels)
        pos = {l: i for i, l in enumerate(labels)}
        try:
            idx = tuple(tuple(pos[str(x)] for x in b) for b in blocks)
        except KeyError as exc:
            raise ValueError(f"unknown generator label {exc.args[0]!r}") from None
        return cls(idx, labels)

    @classmethod
    def parse(cls, text: str, labels: Sequence[str]) -> "CellularString":
        """Read ``{a,d}|{b,c}``; braces are optional for singleton blocks."""
        blocks = []
        for part in text.strip().split("|"):
            part = part.strip()
            if part.startswith("{") and part.endswith("}"):
                part = part[1:-1]
            items = [x.strip() for x in part.split(",") if x.strip()]
            if not items:
                raise ValueError(f"empty block in {text!r}")
            blocks.append(items)
        return cls.from_labels(blocks, labels)

    @classmethod
    def path(cls, order: Sequence[int], labels: Sequence[str]) -> "CellularString":
        return cls(tuple((e,) for e in order), labels)

    @classmethod
    def trivial(cls, labels: Sequence[str]) -> "CellularString":
        return cls((tuple(range(len(labels))),), labels)

    # -- views ----------------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.labels)

    def __len__(self):
        return len(self.blocks)

    def __str__(self):
        return "|".join("{" + ",".join(self.labels[e] for e in b) + "}" for b in self.blocks)

    def __repr__(self):
        return f"CellularString('{self}')"

    def sort_key(self):
        return self.blocks

    def __lt__(self, other: "CellularString"):
        return self.blocks < other.blocks

    @property
    def is_path(self) -> bool:
        return all(len(b) == 1 for b in self.blocks)

    @property
    def is_trivial(self) -> bool:
        return len(self.blocks) == 1

    def order(self) -> tuple[int, ...]:
        """The total order of a monotone path."""
        if not self.is_path:
            raise ValueError("not a monotone path")
        return tuple(b[0] for b in self.blocks)

    def block_masks(self) -> list[int]:
        return [_mask(b) for b in self.blocks]

    def covectors(self) -> list[SignVector]:
        """x_i: + on earlier blocks, 0 on block i, - on later blocks."""
        full = (1 << self.n) - 1
        out, before = [], 0
        for bm in self.block_masks():
            out.append(SignVector(before, full & ~(before | bm), self.n))
            before |= bm
        return out

    def satisfies_chaining(self) -> bool:
        """x_1 o c0 = c0, x_l o (-c0) = -c0 and x_i o (-c0) = x_{i+1} o c0, with c0 all-negative."""
        c0 = SignVector(0, (1 << self.n) - 1, self.n)
        xs = self.covectors()
        if compose(xs[0], c0) != c0 or compose(xs[-1], -c0) != -c0:
            return False
        return all(compose(xs[i], -c0) == compose(xs[i + 1], c0) for i in range(len(xs) - 1))

    def cell_ranks(self, c: Configuration) -> list[int]:
        m = c.matroid
        return [m.rank_of_mask(bm) for bm in self.block_masks()]

    def rank_sum(self, c: Configuration) -> int:
        return sum(r - 1 for r in self.cell_ranks(c))


# ----------------------------------------------------------------------
# Enumeration
# ----------------------------------------------------------------------

def _vertex_problem(c: Configuration, prefix_mask: int) -> FeasibilityProblem:
    vecs = c.canonical().vectors
    margins = []
    for e, v in enumerate(vecs):
        if (prefix_mask >> e) & 1:
            margins.append(tuple(-x for x in v))
        else:
            margins.append(v)
    return FeasibilityProblem(c.dim, (), tuple(margins))


def is_vertex_inducing(c: Configuration, prefix: Iterable[int]) -> bool:
    """Some psi has psi(v_e) <= -1 on the prefix and >= 1 off it."""
    return bool(feasible(_vertex_problem(c, _mask(c.index(e) for e in prefix))))


def enumerate_monotone_paths(c: Configuration, cap: int | None = None) -> list[tuple[int, ...]]:
    """All total orders of the generators whose every prefix is vertex-inducing.

    Depth-first over prefixes, one feasibility problem per distinct prefix
    set.  Orders are returned as index tuples in lexicographic order.
    """
    n = c.n
    full = (1 << n) - 1
    vertex: dict[int, bool] = {0: True, full: True}
    completions: dict[int, list[tuple[int, ...]]] = {full: [()]}

    def is_vertex(mask: int) -> bool:
        got = vertex.get(mask)
        if got is None:
            got = bool(feasible(_vertex_problem(c, mask)))
            vertex[mask] = got
            vertex[full & ~mask] = got  # negating psi swaps a prefix with its complement
        return got

    def rest(mask: int) -> list[tuple[int, ...]]:
        got = completions.get(mask)
        if got is not None:
            return got
        out = []
        for e in range(n):
            if (mask >> e) & 1:
                continue
            nxt = mask | (1 << e)
            if is_vertex(nxt):
                out.extend((e,) + tail for tail in rest(nxt))
                if cap is not None and len(out) > cap:
                    raise CapExceeded(f"more than {cap} monotone paths")
        completions[mask] = out
        return out

    if n == 0:
        return [()]
    return rest(0)


def _covectors_by_plus(c: Configuration) -> dict[int, list[int]]:
    """plus-mask -> zero masks of non-tope covectors with that plus part."""
    full = (1 << c.n) - 1
    out: dict[int, list[int]] = {}
    for x in c.matroid.covectors():
        z = full & ~(x.plus | x.minus)
        if z:
            out.setdefault(x.plus, []).append(z)
    for zs in out.values():
        zs.sort()
    return out


def count_cellular_strings(c: Configuration) -> int:
    """Number of cellular strings (trivial one included), without listing them."""
    full = (1 << c.n) - 1
    by_plus = _covectors_by_plus(c)
    memo = {full: 1}

    def count(p: int) -> int:
        got = memo.get(p)
        if got is None:
            got = sum(count(p | z) for z in by_plus.get(p, ()))
            memo[p] = got
        return got

    return count(0) if c.n else 1


def enumerate_cellular_strings(c: Configuration, cap: int | None = DEFAULT_CAP) -> list[CellularString]:
    """All cellular strings, the trivial one included, in canonical order.

    A block B can follow the prefix P exactly when the sign vector that is
    + on P, 0 on B and - elsewhere is a covector; the covectors are grouped
    by their positive part so each extension is a dictionary lookup.
    """
    if c.n == 0:
        raise ValidationError("the empty configuration has no cellular strings")
    if cap is not None:
        total = count_cellular_strings(c)
        if total > cap:
            raise CapExceeded(f"{total} cellular strings exceed the cap of {cap}")
    full = (1 << c.n) - 1
    by_plus = _covectors_by_plus(c)
    memo: dict[int, list[tuple[int, ...]]] = {full: [()]}

    def suffixes(p: int) -> list[tuple[int, ...]]:
        got = memo.get(p)
        if got is None:
            got = [(z,) + tail for z in by_plus.get(p, ()) for tail in suffixes(p | z)]
            memo[p] = got
        return got

    out = [CellularString(tuple(_bits(z) for z in seq), c.labels) for seq in suffixes(0)]
    out.sort()
    return out


def refines(s1: CellularString, s2: CellularString) -> bool:
    """True iff the blocks of s2 are unions of consecutive runs of blocks of s1."""
    if s1.labels != s2.labels:
        raise ValueError("strings on different ground sets")
    i = 0
    b1 = s1.block_masks()
    for target in s2.block_masks():
        acc = 0
        while acc != target:
            if i >= len(b1) or (b1[i] & ~target):
                return False
            acc |= b1[i]
            i += 1
    return i == len(b1)


# ----------------------------------------------------------------------
# Baues poset
# ----------------------------------------------------------------------

class BauesPoset:
    """All cellular strings ordered by refinement (finer is smaller).

    ``elements`` is in canonical order; ``up[i]`` lists the indices of all
    strictly coarser strings and ``covers[i]`` those covering element i.
    The trivial string is the unique maximum; the proper part omits it.
    """

    def __init__(self, elements: list[CellularString]):
        self.elements = elements
        index = {s.blocks: i for i, s in enumerate(elements)}
        self.index = index
        self.up: list[list[int]] = []
        for s in elements:
            masks = s.block_masks()
            l = len(masks)
            ups = []
            # every way of cutting the block sequence into consecutive runs
            for cuts in range(1 << (l - 1)):
                if cuts == (1 << (l - 1)) - 1:
                    continue  # all cuts kept: s itself
                merged, acc = [], 0
                for i, m in enumerate(masks):
                    acc |= m
                    if i == l - 1 or (cuts >> i) & 1:
                        merged.append(acc)
                        acc = 0
                key = tuple(_bits(m) for m in merged)
                j = index.get(key)
                if j is not None:
                    ups.append(j)
            self.up.append(sorted(ups))
        self.covers: list[list[int]] = []
        for i, ups in enumerate(self.up):
            reachable_through = set()
            for j in ups:
                reachable_through.update(self.up[j])
            self.covers.append([j for j in ups if j not in reachable_through])
        self.top = next(i for i, s in enumerate(elements) if s.is_trivial)

    def __len__(self):
        return len(self.elements)

    def leq(self, i: int, j: int) -> bool:
        return i == j or j in self.up[i]

    def minimal(self) -> list[int]:
        down = set()
        for ups in self.up:
            down.update(ups)
        return [i for i in range(len(self.elements)) if i not in down]

    def hasse_edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, cs in enumerate(self.covers) for j in cs]


def baues_poset(c: Configuration, cap: int = DEFAULT_CAP) -> BauesPoset:
    return BauesPoset(enumerate_cellular_strings(c, cap=cap))


@dataclass(frozen=True)
class OrderComplexStats:
    """Chain counts of an order complex and two Euler characteristics.

    ``euler`` is sum (-1)^i f_i and ``reduced_euler`` is ``euler - 1``, so a
    d-sphere has ``euler = 1 + (-1)^d`` and ``reduced_euler = (-1)^d``:
    two points give 2 and 1, a circle gives 0 and -1.
    """

    f_vector: tuple[int, ...]
    reduced_euler: int
    euler: int

    @property
    def dimension(self) -> int:
        return len(self.f_vector) - 1

    convention = "euler = sum (-1)^i f_i; reduced_euler = euler - 1 (empty: -1, S^0: 1, S^1: -1)"


def order_complex_stats(p: BauesPoset, proper: bool = True) -> OrderComplexStats:
    """f-vector of the order complex (f_i = chains with i+1 elements) and both Euler characteristics."""
    keep = [i for i in range(len(p)) if not (proper and i == p.top)]
    keep_set = set(keep)
    # process from coarse to fine: fewer blocks first
    order = sorted(keep, key=lambda i: len(p.elements[i].blocks))
    # chains[i][k] = chains with k+1 elements whose smallest element is i
    chains: dict[int, list[int]] = {}
    for i in order:
        acc = [1]
        for j in p.up[i]:
            if j not in keep_set:
                continue
            for k, v in enumerate(chains[j]):
                if k + 1 >= len(acc):
                    acc.extend([0] * (k + 2 - len(acc)))
                acc[k + 1] += v
        chains[i] = acc
    f: list[int] = []
    for acc in chains.values():
        if len(acc) > len(f):
            f.extend([0] * (len(acc) - len(f)))
        for k, v in enumerate(acc):
            f[k] += v
    chi = sum((-1) ** k * v for k, v in enumerate(f))
    return OrderComplexStats(tuple(f), chi - 1, chi)


def is_graded(p: BauesPoset, length: int | None = None) -> bool:
    """All maximal chains have the same number of elements (``length`` if given)."""
    shortest: dict[int, int] = {}
    longest: dict[int, int] = {}
    for i in sorted(range(len(p)), key=lambda i: len(p.elements[i].blocks)):
        cs = p.covers[i]
        if not cs:
            shortest[i] = longest[i] = 1
        else:
            shortest[i] = 1 + min(shortest[j] for j in cs)
            longest[i] = 1 + max(longest[j] for j in cs)
    lengths = set()
    for i in p.minimal():
        lengths.add(shortest[i])
        lengths.add(longest[i])
    if len(lengths) != 1:
        return False
    return length is None or lengths == {length}


# ----------------------------------------------------------------------
# L2-separation and flips
# ----------------------------------------------------------------------

def _as_order(c: Configuration, order: Sequence) -> tuple[int, ...]:
    idx = tuple(c.index(e) for e in order)
    if sorted(idx) != list(range(c.n)):
        raise ValidationError("a monotone path must list every generator exactly once")
    return idx


def _check_path(c: Configuration, order: tuple[int, ...]):
    mask = 0
    for e in order[:-1]:
        mask |= 1 << e
        if not feasible(_vertex_problem(c, mask)):
            raise ValidationError("not a monotone path: a prefix is not vertex-inducing")


def _flat_signatures(flats: list[tuple[int, ...]], order: Sequence[int]) -> tuple:
    pos = {e: k for k, e in enumerate(order)}
    return tuple(tuple(sorted(f, key=pos.__getitem__)) for f in flats)


def _flats(c: Configuration) -> list[tuple[int, ...]]:
    return [tuple(sorted(f)) for f in c.matroid.rank2_flats()]


def l2_separation(c: Configuration, g1: Sequence, g2: Sequence) -> frozenset[frozenset[str]]:
    """Rank-2 flats whose elements the two paths cross in different orders (as label sets)."""
    o1, o2 = _as_order(c, g1), _as_order(c, g2)
    _check_path(c, o1)
    _check_path(c, o2)
    flats = _flats(c)
    s1, s2 = _flat_signatures(flats, o1), _flat_signatures(flats, o2)
    return frozenset(
        frozenset(c.labels[e] for e in f) for f, a, b in zip(flats, s1, s2) if a != b
    )


@dataclass
class FlipGraph:
    """Monotone paths joined when they differ on exactly one rank-2 flat."""

    nodes: list[tuple[int, ...]]
    edges: list[tuple[int, int]]
    labels: tuple[str, ...]

    def degree(self, i: int) -> int:
        return sum(1 for a, b in self.edges if i in (a, b))

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.nodes]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def is_connected(self) -> bool:
        if not self.nodes:
            return True
        adj = self.adjacency()
        seen = {0}
        stack = [0]
        while stack:
            for b in adj[stack.pop()]:
                if b not in seen:
                    seen.add(b)
                    stack.append(b)
        return len(seen) == len(self.nodes)

    def is_cycle(self) -> bool:
        """One cycle through every node (at least three nodes, all of degree 2, connected)."""
        if len(self.nodes) < 3:
            return False
        return all(len(a) == 2 for a in self.adjacency()) and self.is_connected()

    def node_name(self, i: int) -> str:
        return " ".join(self.labels[e] for e in self.nodes[i])

    def to_dot(self) -> str:
        lines = ["graph flips {"]
        for i in range(len(self.nodes)):
            lines.append(f'  n{i} [label="{self.node_name(i)}"];')
        for a, b in self.edges:
            lines.append(f"  n{a} -- n{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def flip_graph(c: Configuration, paths: list[tuple[int, ...]] | None = None) -> FlipGraph:
    if paths is None:
        paths = enumerate_monotone_paths(c)
    flats = _flats(c)
    sigs = [_flat_signatures(flats, p) for p in paths]
    edges = []
    for i, j in combinations(range(len(paths)), 2):
        diff = 0
        for a, b in zip(sigs[i], sigs[j]):
            if a != b:
                diff += 1
                if diff > 1:
                    break
        if diff == 1:
            edges.append((i, j))
    return FlipGraph(paths, edges, c.labels)


def q_distance_polynomial(c: Configuration, base: Sequence,
                          paths: list[tuple[int, ...]] | None = None) -> list[int]:
    """Coefficients [c0, c1, ...] of sum over monotone paths of q^|L2(base, path)|."""
    o = _as_order(c, base)
    _check_path(c, o)
    if paths is None:
        paths = enumerate_monotone_paths(c)
    flats = _flats(c)
    s0 = _flat_signatures(flats, o)
    coeffs = [0] * (len(flats) + 1)
    for p in paths:
        d = sum(1 for a, b in zip(s0, _flat_signatures(flats, p)) if a != b)
        coeffs[d] += 1
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs
