"""Recognition of the all-coherent families from the affine model.

After deleting coloops, a configuration is all-coherent exactly when it is
empty, has rank at most 2, is one of the simplex-plus-collinear families
E(r, m) and E~(r, m), or is oriented-matroid isomorphic to the six-point
configuration R3.  :func:`classify` decides membership geometrically with
exact convex-hull and barycentric tests.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .coherence import (
    decomposable_obstruction,
    is_all_coherent,
    rank_sum_test,
    strip_coloops,
)
from .configuration import CapExceeded, Configuration
from .matroid import is_isomorphic
from .rational import in_convex_hull, rank
from .strings import CellularString, count_cellular_strings, enumerate_cellular_strings

__all__ = [
    "AffineModel",
    "affine_model",
    "Classification",
    "classify",
    "family_path_polynomial",
    "reference_r3",
    "WITNESS_PATH_LIMIT",
]

WITNESS_PATH_LIMIT = 100_000
_RANK_SUM_STRING_LIMIT = 20_000


@dataclass(frozen=True)
class AffineModel:
    """Generators scaled into the hyperplane pi = 1."""

    points: tuple[tuple[Fraction, ...], ...]
    labels: tuple[str, ...]


def affine_model(c: Configuration) -> AffineModel:
    return AffineModel(c.canonical().vectors, c.labels)


@dataclass(frozen=True)
class Classification:
    """Family tag: ``EMPTY``, ``U2N``, ``ERM``, ``ERM_TILDE``, ``R3`` or ``NOT_ALL_COHERENT``."""

    family: str
    params: tuple[int, ...] = ()
    coloops_removed: frozenset[str] = frozenset()
    witness: CellularString | None = None
    witness_omitted: bool = False
    witness_method: str | None = None
    coloop_order: tuple[str, ...] = field(default=(), compare=False)

    @property
    def all_coherent(self) -> bool:
        return self.family != "NOT_ALL_COHERENT"

    def __str__(self):
        if self.family == "NOT_ALL_COHERENT":
            return "NOT_ALL_COHERENT"
        name = {
            "EMPTY": "EMPTY",
            "U2N": "U(2,{})",
            "ERM": "E({},{})",
            "ERM_TILDE": "E~({},{})",
            "R3": "R3",
        }[self.family].format(*self.params)
        if self.coloops_removed:
            name += "+coloops{" + ",".join(self.coloop_order) + "}"
        return name

    def to_json(self) -> dict:
        out = {
            "tag": str(self),
            "family": self.family,
            "params": list(self.params),
            "coloops_removed": list(self.coloop_order),
            "all_coherent": self.all_coherent,
        }
        if not self.all_coherent:
            out["witness"] = None if self.witness is None else str(self.witness)
            out["witness_method"] = self.witness_method
            out["witness_omitted"] = self.witness_omitted
        return out


# ----------------------------------------------------------------------
# q-analogues
# ----------------------------------------------------------------------

def _pmul(p: list[int], q: list[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _qint(k: int) -> list[int]:
    return [1] * k


def _qfactorial(k: int) -> list[int]:
    out = [1]
    for i in range(1, k + 1):
        out = _pmul(out, _qint(i))
    return out


def _pdiv_exact(p: list[int], d: list[int]) -> list[int]:
    p = list(p)
    out = [0] * (len(p) - len(d) + 1)
    for i in range(len(out) - 1, -1, -1):
        coef = p[i + len(d) - 1] // d[-1]
        out[i] = coef
        for j, b in enumerate(d):
            p[i + j] -= coef * b
    if any(p):
        raise ArithmeticError("polynomial division left a remainder")
    return out


def _qbinomial(n: int, k: int) -> list[int]:
    if k < 0 or k > n:
        return [0]
    return _pdiv_exact(_qfactorial(n), _pmul(_qfactorial(k), _qfactorial(n - k)))


def family_path_polynomial(r: int, m: int) -> list[int]:
    """(1 + q^(m+2)) [r-1]!_q [m+r-1 choose m+1]_q as a coefficient list."""
    if r < 3 or m < 1:
        raise ValueError("need r >= 3 and m >= 1")
    head = [1] + [0] * (m + 1) + [1]
    return _pmul(_pmul(head, _qfactorial(r - 1)), _qbinomial(m + r - 1, m + 1))


# ----------------------------------------------------------------------
# geometry of the affine model
# ----------------------------------------------------------------------

def _barycentric(point, vertices) -> list[Fraction]:
    """Coordinates of ``point`` in the affinely independent ``vertices`` (exact solve)."""
    k = len(vertices)
    dim = len(point)
    rows = [[v[i] for v in vertices] + [point[i]] for i in range(dim)]
    rows.append([Fraction(1)] * k + [Fraction(1)])
    # Gauss-Jordan on the augmented system
    r = 0
    pivots = []
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
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    coords = [Fraction(0)] * k
    for i, col in enumerate(pivots):
        coords[col] = rows[i][k]
    return coords


def _vertices(points) -> list[int]:
    out = []
    for i, p in enumerate(points):
        others = [q for j, q in enumerate(points) if j != i]
        if not in_convex_hull(p, others):
            out.append(i)
    return out


def _collinear_family(points, verts: list[int]) -> tuple[str, int] | None:
    """("ERM" | "ERM_TILDE", m) when the non-vertices lie on one line through exactly one vertex."""
    inner = [i for i in range(len(points)) if i not in verts]
    vpts = [points[v] for v in verts]
    bary = {i: _barycentric(points[i], vpts) for i in inner}
    boundary = [i for i in inner if any(x == 0 for x in bary[i])]
    if len(boundary) > 1:
        return None
    for v in verts:
        pv = points[v]
        dirs = [tuple(a - b for a, b in zip(points[i], pv)) for i in inner]
        if rank(dirs) != 1:
            continue
        d = dirs[0]
        if any(rank([d, tuple(a - b for a, b in zip(points[w], pv))]) < 2 for w in verts if w != v):
            continue
        if boundary:
            k = next(x for x in d if x != 0)
            pos = d.index(k)
            dist = {i: (points[i][pos] - pv[pos]) / k for i in inner}
            if max(dist.values()) != dist[boundary[0]] or \
                    sum(1 for t in dist.values() if t == dist[boundary[0]]) > 1:
                continue
            return "ERM_TILDE", len(inner)
        return "ERM", len(inner)
    return None


_R3_REFERENCE = None


def reference_r3():
    global _R3_REFERENCE
    if _R3_REFERENCE is None:
        from .fixtures import r3

        _R3_REFERENCE = r3().matroid
    return _R3_REFERENCE


def _witness(c: Configuration) -> tuple[CellularString | None, str | None, bool]:
    """Best available certificate that ``c`` is not all-coherent."""
    if count_cellular_strings(c) <= _RANK_SUM_STRING_LIMIT:
        for s in enumerate_cellular_strings(c, cap=None):
            if not s.is_trivial and rank_sum_test(c, s).fires:
                return s, "RankSumTest", False
        dec = decomposable_obstruction(c)
        if dec is not None:
            return dec, "Decomposability", False
    try:
        verdict = is_all_coherent(c, cap=WITNESS_PATH_LIMIT)
    except CapExceeded:
        return None, None, True
    if verdict.witness is None:
        # the geometric test and the path test disagree; surface it loudly
        raise AssertionError("classified as not all-coherent but every monotone path is coherent")
    return verdict.witness, "LP", False


def classify(c: Configuration, witness: bool = True) -> Classification:
    """Family of ``c`` modulo coloops; with ``witness`` a certificate is attached to negative answers.

    The witness string refers to the configuration with its coloops deleted.
    """
    reduced, removed = strip_coloops(c)
    order = tuple(l for l in c.labels if l in removed)

    def tag(family, params=()):
        return Classification(family, tuple(params), removed, coloop_order=order)

    if reduced.n == 0:
        return tag("EMPTY")
    r = reduced.rank
    if r <= 2:
        return tag("U2N", (reduced.n,))
    points = affine_model(reduced).points
    verts = _vertices(points)
    if len(verts) == r:
        fam = _collinear_family(points, verts)
        if fam is not None:
            return tag(fam[0], (r, fam[1]))
        if r == 3 and reduced.n == 6 and is_isomorphic(reduced.matroid, reference_r3()) is not None:
            return tag("R3")
    if not witness:
        return tag("NOT_ALL_COHERENT")
    s, method, omitted = _witness(reduced)
    return Classification("NOT_ALL_COHERENT", (), removed, s, omitted, method, coloop_order=order)
