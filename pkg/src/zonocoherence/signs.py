"""Sign vectors and the covector axioms.

A sign vector on a ground set of size ``n`` is stored as two disjoint
bitmasks, one for the positive and one for the negative entries.  The
string form (``"+-0+"``, in ground-set order) is the interchange format used
by the CLI and the test goldens.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "SignVector",
    "compose",
    "separation_set",
    "AxiomViolation",
    "verify_axioms",
]

_CHAR = {1: "+", -1: "-", 0: "0"}
_VALUE = {"+": 1, "-": -1, "0": 0, "−": -1}


@dataclass(frozen=True, order=False)
class SignVector:
    plus: int
    minus: int
    n: int

    def __post_init__(self):
        if self.plus & self.minus:
            raise ValueError("an entry cannot be both + and -")
        if (self.plus | self.minus) >> self.n:
            raise ValueError("sign vector has entries beyond its ground set")

    @classmethod
    def zero(cls, n: int) -> "SignVector":
        return cls(0, 0, n)

    @classmethod
    def from_signs(cls, signs: Sequence[int]) -> "SignVector":
        plus = minus = 0
        for i, s in enumerate(signs):
            if s > 0:
                plus |= 1 << i
            elif s < 0:
                minus |= 1 << i
        return cls(plus, minus, len(signs))

    @classmethod
    def from_string(cls, text: str) -> "SignVector":
        text = text.strip()
        try:
            return cls.from_signs([_VALUE[ch] for ch in text])
        except KeyError as exc:
            raise ValueError(f"bad sign character {exc.args[0]!r} in {text!r}") from None

    def __getitem__(self, e: int) -> int:
        if not 0 <= e < self.n:
            raise IndexError(e)
        bit = 1 << e
        return 1 if self.plus & bit else (-1 if self.minus & bit else 0)

    def __iter__(self):
        return (self[e] for e in range(self.n))

    def __len__(self):
        return self.n

    def __str__(self):
        return "".join(_CHAR[s] for s in self)

    def __repr__(self):
        return f"SignVector('{self}')"

    def __neg__(self) -> "SignVector":
        return SignVector(self.minus, self.plus, self.n)

    def negate(self) -> "SignVector":
        return -self

    @property
    def support_mask(self) -> int:
        return self.plus | self.minus

    @property
    def zero_mask(self) -> int:
        return ((1 << self.n) - 1) & ~(self.plus | self.minus)

    def support(self) -> frozenset[int]:
        return _bits(self.support_mask)

    def zero_set(self) -> frozenset[int]:
        return _bits(self.zero_mask)

    def is_zero(self) -> bool:
        return not (self.plus | self.minus)

    def compose(self, other: "SignVector") -> "SignVector":
        return compose(self, other)

    def conforms_to(self, other: "SignVector") -> bool:
        """``self <= other`` in the product order where 0 < + and 0 < -."""
        return (self.plus & ~other.plus) == 0 and (self.minus & ~other.minus) == 0

    def restrict(self, elements: Sequence[int]) -> "SignVector":
        return SignVector.from_signs([self[e] for e in elements])

    def sort_key(self):
        return str(self)


def _bits(mask: int) -> frozenset[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


def _same_size(x: SignVector, y: SignVector):
    if x.n != y.n:
        raise ValueError(f"sign vectors on ground sets of different sizes ({x.n} vs {y.n})")


def compose(x: SignVector, y: SignVector) -> SignVector:
    """(x o y)(e) = x(e) if x(e) != 0 else y(e)."""
    _same_size(x, y)
    free = ~(x.plus | x.minus)
    return SignVector(x.plus | (y.plus & free), x.minus | (y.minus & free), x.n)


def separation_set(x: SignVector, y: SignVector) -> frozenset[int]:
    _same_size(x, y)
    return _bits((x.plus & y.minus) | (x.minus & y.plus))


@dataclass(frozen=True)
class AxiomViolation:
    """Why a family of sign vectors is not a covector set.

    ``kind`` is one of ``"zero"``, ``"size"``, ``"negation"``, ``"composition"``
    or ``"elimination"``; ``x``, ``y`` and ``e`` locate the failure.
    """

    kind: str
    x: SignVector | None = None
    y: SignVector | None = None
    e: int | None = None


def verify_axioms(covectors: Iterable[SignVector]) -> AxiomViolation | None:
    """Check the covector axioms; returns None when they all hold.

    The family must contain 0, be closed under composition and negation,
    and satisfy elimination: for x, y in L and e in S(x, y) some z in L has
    z(e) = 0 and z(f) = (x o y)(f) for every f outside S(x, y).
    """
    fam = list(dict.fromkeys(covectors))
    if not fam:
        return AxiomViolation("zero")
    n = fam[0].n
    for x in fam:
        if x.n != n:
            return AxiomViolation("size", x)
    keys = {(x.plus, x.minus) for x in fam}
    if (0, 0) not in keys:
        return AxiomViolation("zero")
    for x in fam:
        if (x.minus, x.plus) not in keys:
            return AxiomViolation("negation", x)
    for x in fam:
        free_x = ~(x.plus | x.minus)
        for y in fam:
            if (x.plus | (y.plus & free_x), x.minus | (y.minus & free_x)) not in keys:
                return AxiomViolation("composition", x, y)

    full = (1 << n) - 1
    # projections of {z in L : z(e) = 0} onto the complement of a separation set,
    # built lazily per (separation mask, e)
    index: dict[tuple[int, int], set[tuple[int, int]]] = {}

    def projections(sep: int, e: int):
        key = (sep, e)
        got = index.get(key)
        if got is None:
            keep = full & ~sep
            bit = 1 << e
            got = {
                (z.plus & keep, z.minus & keep)
                for z in fam
                if not ((z.plus | z.minus) & bit)
            }
            index[key] = got
        return got

    for i, x in enumerate(fam):
        for y in fam[i + 1:]:
            sep = (x.plus & y.minus) | (x.minus & y.plus)
            if not sep:
                continue
            keep = full & ~sep
            free_x = ~(x.plus | x.minus)
            target = ((x.plus | (y.plus & free_x)) & keep, (x.minus | (y.minus & free_x)) & keep)
            s = sep
            while s:
                low = s & -s
                e = low.bit_length() - 1
                if target not in projections(sep, e):
                    return AxiomViolation("elimination", x, y, e)
                s ^= low
    return None
