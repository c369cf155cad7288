"""Exact rational arithmetic, linear algebra and linear feasibility.

Every number in the package is a :class:`fractions.Fraction`, which is kept
in lowest terms with a positive denominator.  The feasibility solver is a
phase-one simplex method with Bland's rule, so it always terminates and
never needs a tolerance.

Strict homogeneous systems ``a . x > 0`` are handled in *margin form*
``a . x >= 1``: a solution of one can be rescaled into a solution of the
other, so no epsilon ever appears.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

__all__ = [
    "as_rational",
    "format_rational",
    "parse_vector",
    "RatMatrix",
    "rank",
    "determinant",
    "minor_sign",
    "nullspace",
    "FeasibilityProblem",
    "Infeasible",
    "INFEASIBLE",
    "feasible",
    "nonnegative_solution",
    "in_convex_hull",
]


def as_rational(value) -> Fraction:
    """Convert ``value`` to a Fraction.

    Strings may be ``"p/q"``, integers or decimal literals such as ``".5"``.
    Floats are read through their shortest decimal representation, so
    ``0.1`` becomes ``1/10`` rather than the binary expansion.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational literal")
        try:
            return Fraction(text)
        except ValueError:
            raise ValueError(f"not a rational number: {value!r}") from None
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")


def format_rational(q: Fraction) -> str:
    """Serialize as ``"p/q"``, or ``"p"`` for integers."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_vector(text: str, sep: str = ",") -> tuple[Fraction, ...]:
    parts = [p for p in text.replace(sep, " ").split()]
    if not parts:
        raise ValueError("empty vector")
    return tuple(as_rational(p) for p in parts)


class RatMatrix:
    """Immutable dense matrix of Fractions, stored row-major."""

    __slots__ = ("rows", "cols", "entries", "_rank")

    def __init__(self, entries: Iterable[Iterable], cols: int | None = None):
        rows = tuple(tuple(as_rational(x) for x in row) for row in entries)
        if cols is None:
            if not rows:
                raise ValueError("cannot infer the column count of an empty matrix")
            cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged matrix rows")
        self.rows = len(rows)
        self.cols = cols
        self.entries = rows
        self._rank = None

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], dim: int) -> "RatMatrix":
        cols = [tuple(as_rational(x) for x in c) for c in columns]
        if any(len(c) != dim for c in cols):
            raise ValueError(f"every column must have {dim} entries")
        return cls([[c[i] for c in cols] for i in range(dim)], cols=len(cols))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(format_rational(x) for x in r) for r in self.entries)
        return f"RatMatrix({self.rows}x{self.cols}: [{body}])"

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[tuple[Fraction, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.columns(), cols=self.rows)

    def submatrix(self, row_set: Sequence[int], col_set: Sequence[int]) -> "RatMatrix":
        for i in row_set:
            if not 0 <= i < self.rows:
                raise IndexError(f"row index {i} out of range")
        for j in col_set:
            if not 0 <= j < self.cols:
                raise IndexError(f"column index {j} out of range")
        return RatMatrix([[self.entries[i][j] for j in col_set] for i in row_set], cols=len(col_set))

    def rank(self) -> int:
        if self._rank is None:
            self._rank = _rank_of_rows([list(r) for r in self.entries])
        return self._rank


def _rank_of_rows(rows: list[list[Fraction]]) -> int:
    """Gaussian elimination in place; returns the pivot count."""
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        p = rows[r][c]
        for i in range(r + 1, len(rows)):
            f = rows[i][c]
            if f:
                f = f / p
                row_i, row_r = rows[i], rows[r]
                for k in range(c, ncols):
                    row_i[k] -= f * row_r[k]
        r += 1
        if r == len(rows):
            break
    return r


def rank(m) -> int:
    """Exact rank of a RatMatrix or of a sequence of row vectors."""
    if isinstance(m, RatMatrix):
        return m.rank()
    rows = [[as_rational(x) for x in row] for row in m]
    return _rank_of_rows(rows)


def determinant(rows: Sequence[Sequence]) -> Fraction:
    a = [[as_rational(x) for x in r] for r in rows]
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("determinant needs a square matrix")
    det = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if a[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            a[c], a[pivot] = a[pivot], a[c]
            det = -det
        p = a[c][c]
        det *= p
        for i in range(c + 1, n):
            f = a[i][c]
            if f:
                f = f / p
                for k in range(c, n):
                    a[i][k] -= f * a[c][k]
    return det


def _sign(q) -> int:
    return (q > 0) - (q < 0)


def minor_sign(m: RatMatrix, row_set: Sequence[int], col_set: Sequence[int]) -> int:
    """Sign (+1, -1 or 0) of the minor on the given rows and columns, in the given order."""
    if len(row_set) != len(col_set):
        raise ValueError("minor needs as many rows as columns")
    if len(row_set) > min(m.rows, m.cols):
        raise ValueError("minor larger than the matrix")
    sub = m.submatrix(row_set, col_set)
    return _sign(determinant(sub.entries))


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[tuple[Fraction, ...]]:
    """Basis of {x : rows @ x = 0}, one vector per free column (reduced row echelon form)."""
    a = [[as_rational(x) for x in r] for r in rows]
    if ncols is None:
        if not a:
            raise ValueError("ncols required for an empty system")
        ncols = len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        p = a[r][c]
        a[r] = [x / p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * ncols
        v[fcol] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -a[i][fcol]
        basis.append(tuple(v))
    return basis


# --------------------------------------------------------------------------
# Feasibility
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class FeasibilityProblem:
    """Find x in Q^dimension with every equality row . x == 0 and every margin row . x >= 1."""

    dimension: int
    equalities: tuple[tuple[Fraction, ...], ...] = ()
    margins: tuple[tuple[Fraction, ...], ...] = ()

    def __post_init__(self):
        eq = tuple(tuple(as_rational(x) for x in row) for row in self.equalities)
        mg = tuple(tuple(as_rational(x) for x in row) for row in self.margins)
        for row in eq + mg:
            if len(row) != self.dimension:
                raise ValueError(
                    f"coefficient row of length {len(row)} in a problem of dimension {self.dimension}"
                )
        object.__setattr__(self, "equalities", eq)
        object.__setattr__(self, "margins", mg)

    def check(self, x: Sequence[Fraction]) -> bool:
        if len(x) != self.dimension:
            return False
        dot = lambda row: sum((a * b for a, b in zip(row, x)), Fraction(0))  # noqa: E731
        return all(dot(r) == 0 for r in self.equalities) and all(dot(r) >= 1 for r in self.margins)


class Infeasible:
    """Singleton marker returned when a system has no solution."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFEASIBLE"

    def __bool__(self):
        return False


INFEASIBLE = Infeasible()


def nonnegative_solution(a_rows: Sequence[Sequence[Fraction]], b: Sequence[Fraction], nvars: int):
    """Phase-one simplex: some y >= 0 with A y = b, or None.

    Bland's rule (lowest-index entering column, lowest-index leaving basic
    variable on ratio ties) guarantees termination.
    """
    m = len(a_rows)
    if m == 0:
        return [Fraction(0)] * nvars
    # tableau rows: [A | I_artificial | b], with b >= 0
    width = nvars + m
    tab: list[list[Fraction]] = []
    for i, (row, bi) in enumerate(zip(a_rows, b)):
        row = [as_rational(x) for x in row]
        bi = as_rational(bi)
        if bi < 0:
            row = [-x for x in row]
            bi = -bi
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        tab.append(row + art + [bi])
    basis = list(range(nvars, nvars + m))
    # reduced costs of the phase-one objective (sum of artificials), kept in a separate row
    cost = [Fraction(0)] * (width + 1)
    for row in tab:
        for k in range(nvars):
            cost[k] -= row[k]
        cost[width] -= row[width]

    while True:
        entering = next((k for k in range(width) if cost[k] < 0), None)
        if entering is None:
            break
        best = None
        for i in range(m):
            coef = tab[i][entering]
            if coef > 0:
                ratio = tab[i][width] / coef
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            # unbounded below is impossible for a sum of nonnegative artificials
            raise RuntimeError("phase-one objective unbounded; tableau corrupted")
        leave = best[1]
        prow = tab[leave]
        p = prow[entering]
        if p != 1:
            prow = [x / p for x in prow]
            tab[leave] = prow
        for i in range(m):
            if i != leave:
                f = tab[i][entering]
                if f:
                    row_i = tab[i]
                    for k in range(width + 1):
                        if prow[k]:
                            row_i[k] -= f * prow[k]
        f = cost[entering]
        for k in range(width + 1):
            if prow[k]:
                cost[k] -= f * prow[k]
        basis[leave] = entering

    if cost[width] != 0:  # remaining artificial mass = -cost[width]
        return None
    y = [Fraction(0)] * nvars
    for i, var in enumerate(basis):
        if var < nvars:
            y[var] = tab[i][width]
    return y


def feasible(p: FeasibilityProblem):
    """Decide a margin-form system; returns a witness tuple or :data:`INFEASIBLE`.

    The free unknowns are split as x = x+ - x-, each margin row gets a
    surplus variable, and phase one of the simplex method does the rest.
    The witness is re-checked exactly before it is returned.
    """
    d = p.dimension
    n_marg = len(p.margins)
    nvars = 2 * d + n_marg
    rows, rhs = [], []
    for row in p.equalities:
        rows.append(list(row) + [-x for x in row] + [Fraction(0)] * n_marg)
        rhs.append(Fraction(0))
    for k, row in enumerate(p.margins):
        surplus = [Fraction(0)] * n_marg
        surplus[k] = Fraction(-1)
        rows.append(list(row) + [-x for x in row] + surplus)
        rhs.append(Fraction(1))
    y = nonnegative_solution(rows, rhs, nvars)
    if y is None:
        return INFEASIBLE
    x = tuple(y[i] - y[d + i] for i in range(d))
    if not p.check(x):
        raise AssertionError("simplex returned a witness that fails the exact re-check")
    return x


def in_convex_hull(point: Sequence, points: Sequence[Sequence]) -> bool:
    """True iff ``point`` is a convex combination of ``points`` (exact barycentric test)."""
    pt = [as_rational(x) for x in point]
    pts = [[as_rational(x) for x in q] for q in points]
    if any(len(q) != len(pt) for q in pts):
        raise ValueError("dimension mismatch between point and hull points")
    if not pts:
        return False
    k = len(pts)
    rows = [[q[i] for q in pts] for i in range(len(pt))]
    rows.append([Fraction(1)] * k)
    rhs = pt + [Fraction(1)]
    return nonnegative_solution(rows, rhs, k) is not None
