"""Discriminantal arrangements, chamber counts and rhombic tilings of zonogons.

The zonogon with zones v_i = (1, a_i) (a strictly increasing) is tiled by
rhombi.  A rhombus is stored as ``(i, j, S)`` with i < j and S a bitmask of
the zones below it: its lowest corner is the sum of v_k over k in S.  A
lift b in Q^n induces the coherent tiling whose rhombi are the lower faces
of the 3-dimensional zonotope with zones (1, a_i, b_i); the lifts split into
chambers of the discriminantal arrangement, one chamber per coherent tiling.
"""
from __future__ import annotations

import csv
import io
import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from .configuration import ValidationError
from .rational import (
    FeasibilityProblem,
    as_rational,
    determinant,
    feasible,
    format_rational,
    nullspace,
    rank,
)

__all__ = [
    "DiscriminantalArrangement",
    "discriminantal",
    "count_chambers",
    "count_regions",
    "RhombicTiling",
    "induced_tiling",
    "seed_tiling",
    "enumerate_tilings",
    "flip",
    "flippable_hexagons",
    "is_coherent_tiling",
    "SweepRow",
    "chamber_range_sweep",
    "sweep_to_csv",
    "tiling_to_json",
    "tiling_to_svg",
    "tilings_to_json",
    "TilingVerdict",
    "STURMFELS_RANGE",
    "PUBLISHED_TILING_COUNT",
]

STURMFELS_RANGE = (876, 892)
PUBLISHED_TILING_COUNT = 904


def _increasing(a: Sequence) -> tuple[Fraction, ...]:
    a = tuple(as_rational(x) for x in a)
    if len(a) < 3:
        raise ValidationError("need at least three zones")
    if any(x >= y for x, y in zip(a, a[1:])):
        raise ValidationError("the vector a must be strictly increasing")
    return a


# ----------------------------------------------------------------------
# Discriminantal arrangement and chamber counting
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class DiscriminantalArrangement:
    a: tuple[Fraction, ...]
    triples: tuple[tuple[int, int, int], ...]
    hyperplanes: tuple[tuple[Fraction, ...], ...]
    lineality: tuple[tuple[Fraction, ...], ...]

    @property
    def n(self) -> int:
        return len(self.a)

    def evaluate(self, b: Sequence) -> tuple[Fraction, ...]:
        b = [as_rational(x) for x in b]
        return tuple(sum((h * x for h, x in zip(row, b)), Fraction(0)) for row in self.hyperplanes)

    @property
    def essential_rank(self) -> int:
        return rank(self.hyperplanes)


def discriminantal(a: Sequence) -> DiscriminantalArrangement:
    """One hyperplane per triple i < j < k: the determinant of rows (1, 1, 1), (a_i, a_j, a_k), (b_i, b_j, b_k)."""
    a = _increasing(a)
    n = len(a)
    triples, rows = [], []
    for i, j, k in combinations(range(n), 3):
        row = [Fraction(0)] * n
        row[i] = a[k] - a[j]
        row[j] = a[i] - a[k]
        row[k] = a[j] - a[i]
        triples.append((i, j, k))
        rows.append(tuple(row))
    lineality = tuple(nullspace(rows, ncols=n))
    ones = (Fraction(1),) * n
    for v in (ones, a):
        for row in rows:
            if sum((x * y for x, y in zip(row, v)), Fraction(0)) != 0:
                raise AssertionError("lineality vector is not on every hyperplane")
    if len(lineality) != 2:
        raise AssertionError("lineality space should be spanned by (1, ..., 1) and a")
    return DiscriminantalArrangement(a, tuple(triples), tuple(rows), lineality)


def _primitive(v: Iterable[int]) -> tuple[int, ...] | None:
    v = tuple(v)
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        return None
    v = tuple(x // g for x in v)
    first = next(x for x in v if x)
    return v if first > 0 else tuple(-x for x in v)


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> list[tuple[int, ...]]:
    out = []
    for row in rows:
        den = 1
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
        out.append(tuple(int(x * den) for x in row))
    return out


def _essentialize(rows: Sequence[Sequence[Fraction]]) -> list[tuple[int, ...]]:
    """Coordinates of the normals in a basis of their span, as primitive integer vectors."""
    basis: list[tuple[Fraction, ...]] = []
    for row in rows:
        if rank(basis + [tuple(row)]) > len(basis):
            basis.append(tuple(row))
    k = len(basis)
    if k == 0:
        return []
    # solve row = sum c_t basis_t; columns of the system are the basis vectors
    dim = len(basis[0])
    coords = []
    for row in rows:
        aug = [[basis[t][i] for t in range(k)] + [row[i]] for i in range(dim)]
        sol = _solve(aug, k)
        coords.append(sol)
    out = set()
    for v in _integer_rows(coords):
        p = _primitive(v)
        if p is not None:
            out.add(p)
    return sorted(out)


def _solve(aug: list[list[Fraction]], k: int) -> tuple[Fraction, ...]:
    rows = [list(r) for r in aug]
    piv_cols = []
    r = 0
    for col in range(k):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][col]
        rows[r] = [x / p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        piv_cols.append(col)
        r += 1
    sol = [Fraction(0)] * k
    for i, col in enumerate(piv_cols):
        sol[col] = rows[i][k]
    return tuple(sol)


def _restrict(normals: frozenset, h: tuple[int, ...]) -> frozenset:
    """Normals of the arrangement induced on the hyperplane with normal h (coordinates: drop a pivot)."""
    p = next(i for i, x in enumerate(h) if x)
    hp = h[p]
    out = set()
    for v in normals:
        if v == h:
            continue
        vp = v[p]
        w = _primitive(hp * v[q] - vp * h[q] for q in range(len(h)) if q != p)
        if w is not None:
            out.add(w)
    return frozenset(out)


def _int_rank(normals) -> int:
    return rank([tuple(Fraction(x) for x in v) for v in normals]) if normals else 0


def count_regions(normals: Iterable[Sequence[int]]) -> int:
    """Regions of a central arrangement given by integer normals (deletion-restriction)."""
    memo: dict[frozenset, int] = {}

    def regions(hs: frozenset) -> int:
        got = memo.get(hs)
        if got is not None:
            return got
        if not hs:
            got = 1
        else:
            rk = _int_rank(hs)
            if rk == 1:
                got = 2
            elif rk == 2:
                got = 2 * len(hs)
            else:
                h = max(hs)
                got = regions(hs - {h}) + regions(_restrict(hs, h))
        memo[hs] = got
        return got

    start = set()
    for v in normals:
        p = _primitive(int(x) for x in v)
        if p is not None:
            start.add(p)
    return regions(frozenset(start))


def count_chambers(arr: DiscriminantalArrangement) -> int:
    """Chambers of the essentialized arrangement, counted exactly."""
    return count_regions(_essentialize(arr.hyperplanes))


@dataclass(frozen=True)
class SweepRow:
    a: tuple[Fraction, ...]
    chambers: int

    @property
    def in_range(self) -> bool:
        lo, hi = STURMFELS_RANGE
        return lo <= self.chambers <= hi


def chamber_range_sweep(samples: Iterable[Sequence]) -> list[SweepRow]:
    rows = []
    for a in samples:
        a = _increasing(a)
        if len(a) != 6:
            raise ValidationError("range sweep samples must have length 6")
        rows.append(SweepRow(a, count_chambers(discriminantal(a))))
    return rows


def sweep_to_csv(rows: Sequence[SweepRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["a", "chambers"])
    for row in rows:
        w.writerow([" ".join(format_rational(x) for x in row.a), row.chambers])
    return buf.getvalue()


# ----------------------------------------------------------------------
# Rhombic tilings
# ----------------------------------------------------------------------

Cell = tuple[int, int, int]  # (i, j, mask of zones below), i < j


@dataclass(frozen=True)
class RhombicTiling:
    a: tuple[Fraction, ...]
    cells: frozenset

    @property
    def n(self) -> int:
        return len(self.a)

    def sorted_cells(self) -> list[Cell]:
        return sorted(self.cells, key=lambda c: (c[0], c[1], c[2]))

    def zone(self, i: int) -> tuple[Fraction, Fraction]:
        return (Fraction(1), self.a[i])

    def corner(self, cell: Cell) -> tuple[Fraction, Fraction]:
        x = y = Fraction(0)
        for k in range(self.n):
            if (cell[2] >> k) & 1:
                x += 1
                y += self.a[k]
        return (x, y)

    def polygon(self, cell: Cell) -> list[tuple[Fraction, Fraction]]:
        i, j, _ = cell
        p = self.corner(cell)
        vi, vj = self.zone(i), self.zone(j)
        return [p, (p[0] + vi[0], p[1] + vi[1]),
                (p[0] + vi[0] + vj[0], p[1] + vi[1] + vj[1]), (p[0] + vj[0], p[1] + vj[1])]

    def area(self) -> Fraction:
        return sum((self.a[j] - self.a[i] for i, j, _ in self.cells), Fraction(0))

    def is_well_formed(self) -> bool:
        """One rhombus per pair of zones, and total area equal to the zonogon's."""
        pairs = sorted((i, j) for i, j, _ in self.cells)
        if pairs != list(combinations(range(self.n), 2)):
            return False
        total = sum((self.a[j] - self.a[i] for i, j in combinations(range(self.n), 2)), Fraction(0))
        return self.area() == total


def induced_tiling(a: Sequence, b: Sequence) -> RhombicTiling:
    """Tiling cut out by the lower faces of the zonotope with zones (1, a_i, b_i).

    Zone k lies below rhombus {i, j} when det(w_i, w_j, w_k) < 0 with w = (1, a, b).
    The lift must be generic: no such determinant may vanish.
    """
    a = _increasing(a)
    b = tuple(as_rational(x) for x in b)
    if len(b) != len(a):
        raise ValidationError("lift and zone data have different lengths")
    w = [(Fraction(1), x, y) for x, y in zip(a, b)]
    cells = set()
    for i, j in combinations(range(len(a)), 2):
        s = 0
        for k in range(len(a)):
            if k in (i, j):
                continue
            d = determinant([w[i], w[j], w[k]])
            if d == 0:
                raise ValidationError("lift is not generic")
            if d < 0:
                s |= 1 << k
        cells.add((i, j, s))
    return RhombicTiling(a, frozenset(cells))


def seed_tiling(a: Sequence) -> RhombicTiling:
    """Coherent tiling induced by the strictly convex lift b_i = a_i^2."""
    a = _increasing(a)
    return induced_tiling(a, [x * x for x in a])


def flippable_hexagons(t: RhombicTiling) -> list[tuple[int, int, int, int, int]]:
    """Hexagons (i, j, k, S, pattern) made of three cells of t; pattern 1 or 2 names the tiling."""
    cells = t.cells
    out = []
    for (x, y, s) in cells:
        for k in range(y + 1, t.n):
            if (s >> k) & 1:
                continue
            # pattern 1: (i,j,S), (j,k,S), (i,k,S+j)
            if (y, k, s) in cells and (x, k, s | (1 << y)) in cells:
                out.append((x, y, k, s, 1))
        for j in range(x + 1, y):
            if (s >> j) & 1:
                continue
            # pattern 2: (i,k,S), (j,k,S+i), (i,j,S+k)
            if (j, y, s | (1 << x)) in cells and (x, j, s | (1 << y)) in cells:
                out.append((x, j, y, s, 2))
    return sorted(out)


def _pattern(i, j, k, s, which) -> set:
    if which == 1:
        return {(i, j, s), (j, k, s), (i, k, s | (1 << j))}
    return {(i, k, s), (j, k, s | (1 << i)), (i, j, s | (1 << k))}


def flip(t: RhombicTiling, hexagon: tuple[int, int, int, int, int]) -> RhombicTiling:
    i, j, k, s, which = hexagon
    old = _pattern(i, j, k, s, which)
    if not old <= t.cells:
        raise ValueError("hexagon is not part of the tiling")
    new = _pattern(i, j, k, s, 3 - which)
    return RhombicTiling(t.a, frozenset((t.cells - old) | new))


def enumerate_tilings(a: Sequence | int) -> list[RhombicTiling]:
    """All rhombic tilings: breadth-first closure under hexagon flips from the seed tiling.

    ``a`` is the strictly increasing slope vector, or an integer n for a = (1, ..., n).
    """
    if isinstance(a, int):
        a = tuple(range(1, a + 1))
    seed = seed_tiling(a)
    seen = {seed.cells}
    queue = deque([seed])
    out = []
    while queue:
        t = queue.popleft()
        out.append(t)
        for hexagon in flippable_hexagons(t):
            u = flip(t, hexagon)
            if u.cells not in seen:
                seen.add(u.cells)
                queue.append(u)
    out.sort(key=lambda t: t.sorted_cells())
    return out


def _interior_edges(t: RhombicTiling):
    """Edges shared by two cells: (edge zone i, (other zone, side), (other zone, side)).

    ``side`` is +1 when the cell lies on the +v_other side of the edge.
    """
    edges: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for i, j, s in t.cells:
        edges.setdefault((i, s), []).append((j, 1))
        edges.setdefault((i, s | (1 << j)), []).append((j, -1))
        edges.setdefault((j, s), []).append((i, 1))
        edges.setdefault((j, s | (1 << i)), []).append((i, -1))
    out = []
    for (i, _), sides in sorted(edges.items()):
        if len(sides) == 2:
            out.append((i, sides[0], sides[1]))
        elif len(sides) > 2:
            raise ValidationError("an edge is shared by more than two cells")
    return out


def _coherence_problem(t: RhombicTiling, a: tuple[Fraction, ...]) -> FeasibilityProblem:
    n = len(a)
    margins = []
    for i, (j, _), (k, sigma) in _interior_edges(t):
        # v_k = alpha v_i + beta v_j; the far vertex of the k-cell must lie above the j-cell's plane
        alpha = (a[j] - a[k]) / (a[j] - a[i])
        beta = (a[k] - a[i]) / (a[j] - a[i])
        row = [Fraction(0)] * n
        row[k] += sigma
        row[i] -= sigma * alpha
        row[j] -= sigma * beta
        margins.append(tuple(row))
    return FeasibilityProblem(n, (), tuple(margins))


@dataclass(frozen=True)
class TilingVerdict:
    coherent: bool
    lift: tuple[Fraction, ...] | None = None

    def __bool__(self):
        return self.coherent


def is_coherent_tiling(t: RhombicTiling, a: Sequence | None = None) -> TilingVerdict:
    """Feasibility of a lift b that folds convexly across every interior edge."""
    a = t.a if a is None else _increasing(a)
    if len(a) != t.n:
        raise ValidationError("tiling and zone data have different lengths")
    w = feasible(_coherence_problem(t, a))
    if not w:
        return TilingVerdict(False)
    if induced_tiling(a, w).cells != t.cells:
        raise AssertionError("coherence lift does not induce the tiling")
    return TilingVerdict(True, w)


def tiling_to_json(t: RhombicTiling) -> dict:
    return {
        "a": [format_rational(x) for x in t.a],
        "cells": [
            {"zones": [i + 1, j + 1],
             "below": [k + 1 for k in range(t.n) if (s >> k) & 1],
             "corner": [format_rational(x) for x in t.corner((i, j, s))]}
            for i, j, s in t.sorted_cells()
        ],
    }


def tiling_to_svg(t: RhombicTiling, scale: float = 40.0) -> str:
    polys = [t.polygon(c) for c in t.sorted_cells()]
    ys = [float(p[1]) for poly in polys for p in poly]
    xs = [float(p[0]) for poly in polys for p in poly]
    pad = 10.0
    width = (max(xs) - min(xs)) * scale + 2 * pad
    height = (max(ys) - min(ys)) * scale + 2 * pad
    x0, y1 = min(xs), max(ys)
    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1f}" height="{height:.1f}">']
    for poly in polys:
        pts = " ".join(f"{(float(x) - x0) * scale + pad:.2f},{(y1 - float(y)) * scale + pad:.2f}"
                       for x, y in poly)
        lines.append(f'  <polygon points="{pts}" fill="#e8eef7" stroke="#223" stroke-width="1"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def tilings_to_json(tilings: Sequence[RhombicTiling]) -> str:
    return json.dumps([tiling_to_json(t) for t in tilings], indent=1)
