"""Zonotope generator matrices with a linear functional."""
from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .rational import RatMatrix, as_rational, rank

__all__ = ["ValidationError", "CapExceeded", "Configuration", "direct_sum"]


class ValidationError(ValueError):
    """Input that violates a configuration invariant."""


class CapExceeded(RuntimeError):
    """An enumeration grew past its configured element cap."""


def _dot(u, v) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def _parallel(u, v) -> bool:
    """True when u and v are (anti)parallel nonzero vectors."""
    return rank([u, v]) < 2


class Configuration:
    """Columns v_e of a generator matrix together with a functional pi.

    The functional must be generic, which here means pi(v_e) != 0 for every
    generator.  Zero columns and (anti)parallel pairs are rejected.  Use
    :meth:`canonical` to rescale every column so that pi(v_e) = 1; a column
    with pi(v_e) < 0 is reversed by that rescaling, which only translates
    the zonotope.

    Parameters
    ----------
    generators : sequence of column vectors, or a RatMatrix whose columns are the generators
    pi : the functional, one entry per coordinate
    labels : optional names for the generators; defaults to "1", "2", ...
    dim : ambient dimension, only needed when there are no generators
    """

    def __init__(self, generators, pi: Sequence, labels: Sequence[str] | None = None,
                 dim: int | None = None):
        if isinstance(generators, RatMatrix):
            cols = generators.columns()
            dim = generators.rows
        else:
            cols = [tuple(as_rational(x) for x in col) for col in generators]
        pi = tuple(as_rational(x) for x in pi)
        if dim is None:
            dim = len(pi)
        if len(pi) != dim:
            raise ValidationError(f"functional has {len(pi)} entries, expected {dim}")
        for j, col in enumerate(cols):
            if len(col) != dim:
                raise ValidationError(f"generator {j + 1} has {len(col)} entries, expected {dim}")
        if labels is None:
            labels = [str(j + 1) for j in range(len(cols))]
        labels = tuple(str(x) for x in labels)
        if len(labels) != len(cols):
            raise ValidationError(f"{len(labels)} labels for {len(cols)} generators")
        if len(set(labels)) != len(labels):
            raise ValidationError("generator labels must be distinct")

        for j, col in enumerate(cols):
            if not any(col):
                raise ValidationError(f"generator {labels[j]} is the zero vector")
            if _dot(pi, col) == 0:
                raise ValidationError(f"functional is not generic: pi({labels[j]}) = 0")
        for i in range(len(cols)):
            for j in range(i + 1, len(cols)):
                if _parallel(cols[i], cols[j]):
                    raise ValidationError(
                        f"generators {labels[i]} and {labels[j]} are parallel or antiparallel"
                    )
        self.vectors: tuple[tuple[Fraction, ...], ...] = tuple(cols)
        self.pi: tuple[Fraction, ...] = pi
        self.labels: tuple[str, ...] = labels
        self.dim: int = dim

    # -- basic protocol -------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.vectors)

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"Configuration(n={self.n}, dim={self.dim}, rank={self.rank}, labels={list(self.labels)})"

    def __eq__(self, other):
        if not isinstance(other, Configuration):
            return NotImplemented
        return (self.vectors, self.pi, self.labels) == (other.vectors, other.pi, other.labels)

    def __hash__(self):
        return hash((self.vectors, self.pi, self.labels))

    @property
    def generators(self) -> RatMatrix:
        return RatMatrix.from_columns(self.vectors, self.dim)

    @cached_property
    def rank(self) -> int:
        return rank(self.vectors) if self.vectors else 0

    def pi_values(self) -> tuple[Fraction, ...]:
        return tuple(_dot(self.pi, v) for v in self.vectors)

    @property
    def is_canonical(self) -> bool:
        return all(p == 1 for p in self.pi_values())

    def index(self, element) -> int:
        """Position of a generator given by label (or by integer position)."""
        if isinstance(element, int) and not isinstance(element, bool):
            if 0 <= element < self.n:
                return element
            raise KeyError(f"no generator at position {element}")
        try:
            return self.labels.index(str(element))
        except ValueError:
            raise KeyError(f"unknown generator label {element!r}") from None

    # -- derived configurations ---------------------------------------
    @cached_property
    def _canonical(self) -> "Configuration":
        if self.is_canonical:
            return self
        cols = [tuple(x / p for x in v) for v, p in zip(self.vectors, self.pi_values())]
        return Configuration(cols, self.pi, self.labels, dim=self.dim)

    def canonical(self) -> "Configuration":
        """Same configuration with every column scaled so that pi(v_e) = 1."""
        return self._canonical

    def restrict(self, elements: Iterable) -> "Configuration":
        idx = sorted({self.index(e) for e in elements})
        return Configuration([self.vectors[i] for i in idx], self.pi,
                             [self.labels[i] for i in idx], dim=self.dim)

    def delete(self, elements: Iterable) -> "Configuration":
        gone = {self.index(e) for e in elements}
        return self.restrict(i for i in range(self.n) if i not in gone)

    def relabel(self, labels: Sequence[str]) -> "Configuration":
        return Configuration(self.vectors, self.pi, labels, dim=self.dim)

    def permute(self, order: Sequence[int]) -> "Configuration":
        """Reorder generators: new position k holds old generator ``order[k]``."""
        if sorted(order) != list(range(self.n)):
            raise ValueError("not a permutation of the generators")
        return Configuration([self.vectors[i] for i in order], self.pi,
                             [self.labels[i] for i in order], dim=self.dim)

    @cached_property
    def matroid(self):
        """Oriented matroid of the canonical columns (cached)."""
        from .matroid import OrientedMatroid

        return OrientedMatroid(self.canonical().vectors, self.labels, dim=self.dim)


def direct_sum(c1: Configuration, c2: Configuration) -> Configuration:
    """Block-diagonal sum; the functional is the concatenation of both functionals."""
    z1 = (Fraction(0),) * c1.dim
    z2 = (Fraction(0),) * c2.dim
    cols = [v + z2 for v in c1.vectors] + [z1 + v for v in c2.vectors]
    labels = list(c1.labels) + list(c2.labels)
    if len(set(labels)) != len(labels):
        labels = [f"L{l}" for l in c1.labels] + [f"R{l}" for l in c2.labels]
    return Configuration(cols, c1.pi + c2.pi, labels, dim=c1.dim + c2.dim)
