"""Named configurations used by the tests, the CLI and the documentation."""
from __future__ import annotations

from fractions import Fraction

from .configuration import Configuration

__all__ = [
    "fix_a",
    "fix_b",
    "fix_c",
    "fix_d",
    "fix_e",
    "fix_f",
    "cube",
    "erm",
    "erm_tilde",
    "u2n",
    "r3",
    "r3_points",
    "erm_base_path",
]

F = Fraction


def fix_a() -> Configuration:
    """Rank 3, four generators with the single circuit a + b - c - d."""
    return Configuration([(1, 0, 0), (0, 1, 1), (1, 1, 0), (0, 0, 1)], (1, 1, 1), labels="abcd")


def fix_b() -> Configuration:
    """Rank 4, direct sum of two rank-2 triples (a + b = 2c and d + e = 2f)."""
    h = F(1, 2)
    cols = [(1, 0, 0, 0), (0, 1, 0, 0), (h, h, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (0, 0, h, h)]
    return Configuration(cols, (1, 1, 1, 1), labels="abcdef")


def fix_c() -> Configuration:
    return erm(3, 1)


def fix_d() -> Configuration:
    return r3()


def fix_e() -> Configuration:
    return cube(3)


def fix_f() -> Configuration:
    """Three planar generators; the middle one sits between the outer two."""
    return Configuration([(1, 0), (1, 1), (1, 2)], (1, 0))


def cube(d: int) -> Configuration:
    """Standard basis of Q^d with the coordinate-sum functional."""
    cols = [tuple(int(i == j) for i in range(d)) for j in range(d)]
    return Configuration(cols, (1,) * d)


def erm(r: int, m: int) -> Configuration:
    """e_1..e_r and a_i = i e_r + (e_1 + ... + e_r): interior points on a line through e_r."""
    if r < 2 or m < 0:
        raise ValueError("need r >= 2 and m >= 0")
    cols = [tuple(int(i == j) for i in range(r)) for j in range(r)]
    for k in range(1, m + 1):
        cols.append(tuple(1 + (k if i == r - 1 else 0) for i in range(r)))
    labels = [f"e{j + 1}" for j in range(r)] + [f"a{k}" for k in range(1, m + 1)]
    return Configuration(cols, (1,) * r, labels=labels)


def erm_tilde(r: int, m: int) -> Configuration:
    """Like :func:`erm`, but a_1 = e_1 + ... + e_{r-1} lies on the facet opposite e_r."""
    if r < 3 or m < 1:
        raise ValueError("need r >= 3 and m >= 1")
    cols = [tuple(int(i == j) for i in range(r)) for j in range(r)]
    cols.append(tuple(int(i < r - 1) for i in range(r)))
    for k in range(2, m + 1):
        cols.append(tuple(1 + (k - 1 if i == r - 1 else 0) for i in range(r)))
    labels = [f"e{j + 1}" for j in range(r)] + [f"a{k}" for k in range(1, m + 1)]
    return Configuration(cols, (1,) * r, labels=labels)


def erm_base_path(c: Configuration, r: int, m: int) -> list[str]:
    """The order e_1, ..., e_{r-1}, a_1, ..., a_m, e_r."""
    return [f"e{j}" for j in range(1, r)] + [f"a{k}" for k in range(1, m + 1)] + [f"e{r}"]


def u2n(n: int) -> Configuration:
    """n generic vectors in the plane: (1, k) for k = 0..n-1."""
    return Configuration([(1, k) for k in range(n)], (1, 0))


def _intersect(p1, p2, q1, q2):
    """Intersection of line p1p2 with line q1q2 (exact)."""
    (x1, y1), (x2, y2) = p1, p2
    (x3, y3), (x4, y4) = q1, q2
    den = (x1 - x2) * (y3 - y4) - (y1 - y2) * (x3 - x4)
    if den == 0:
        raise ValueError("parallel lines")
    a = x1 * y2 - y1 * x2
    b = x3 * y4 - y3 * x4
    return ((a * (x3 - x4) - (x1 - x2) * b) / den, (a * (y3 - y4) - (y1 - y2) * b) / den)


def r3_points(feet=(F(2, 5), F(3, 10), F(2, 5))) -> dict[str, tuple[Fraction, Fraction]]:
    """Triangle ABC with three cevians and their pairwise intersections D, E, F.

    ``feet`` = (s, t, u) places A' = s B + (1 - s) C, B' = t C + (1 - t) A and
    C' = u A + (1 - u) B.  The default cevians are not concurrent.
    """
    s, t, u = (F(x) for x in feet)
    A = (F(0), F(0))
    B = (F(9, 10), F(8, 5))
    C = (F(5, 2), F(0))

    def mix(p, q, w):
        return (w * p[0] + (1 - w) * q[0], w * p[1] + (1 - w) * q[1])

    A2, B2, C2 = mix(B, C, s), mix(C, A, t), mix(A, B, u)
    D = _intersect(A, A2, B, B2)
    E = _intersect(B, B2, C, C2)
    Fp = _intersect(C, C2, A, A2)
    return {"A": A, "B": B, "C": C, "D": D, "E": E, "F": Fp}


def r3(feet=None) -> Configuration:
    """The six-point all-coherent configuration, lifted to (x, y, 1) with pi = z."""
    pts = r3_points() if feet is None else r3_points(feet)
    cols = [(x, y, F(1)) for x, y in pts.values()]
    return Configuration(cols, (0, 0, 1), labels=list(pts))
