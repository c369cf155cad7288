from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import fm_strict_feasible, sympy_rank
from zonocoherence.rational import (
    INFEASIBLE,
    FeasibilityProblem,
    RatMatrix,
    as_rational,
    determinant,
    feasible,
    format_rational,
    in_convex_hull,
    nullspace,
    parse_vector,
    rank,
)

small = st.integers(-3, 3)


def rows_of(dim, max_rows):
    return st.lists(st.tuples(*[small] * dim), min_size=0, max_size=max_rows)


def test_as_rational_forms():
    assert as_rational("3/6") == F(1, 2)
    assert as_rational("-0.25") == F(-1, 4)
    assert as_rational(7) == 7
    with pytest.raises(ValueError):
        as_rational("abc")
    assert as_rational(0.1) == F(1, 10)
    with pytest.raises(TypeError):
        as_rational(True)


def test_format_and_parse_round_trip():
    v = (F(1), F(-2, 3), F(0))
    assert parse_vector(",".join(format_rational(x) for x in v)) == v


def test_determinant_and_rank():
    assert determinant([[1, 2], [3, 4]]) == -2
    assert rank([[1, 2, 3], [2, 4, 6]]) == 1
    assert rank([]) == 0


def test_nullspace_is_annihilated():
    rows = [[1, 1, 0, 2], [0, 1, 1, 1]]
    basis = nullspace(rows)
    assert len(basis) == 2
    for v in basis:
        assert all(sum(F(a) * b for a, b in zip(r, v)) == 0 for r in rows)


@given(st.integers(1, 4).flatmap(lambda d: rows_of(d, 5)))
@settings(max_examples=150, deadline=None)
def test_rank_matches_sympy_and_transpose(rows):
    if not rows:
        return
    r = rank(rows)
    assert r == sympy_rank(rows)
    cols = [list(c) for c in zip(*rows)]
    assert r == rank(cols)


@given(st.integers(1, 3).flatmap(lambda d: st.tuples(st.just(d), rows_of(d, 2), rows_of(d, 5))))
@settings(max_examples=200, deadline=None)
def test_simplex_agrees_with_fourier_motzkin(data):
    dim, eqs, margins = data
    p = FeasibilityProblem(dim, eqs, margins)
    x = feasible(p)
    # the homogeneous strict system and the margin system have the same solvability
    assert bool(x) == fm_strict_feasible(eqs, margins, dim)
    if x:
        assert p.check(x)


def test_infeasible_marker():
    p = FeasibilityProblem(1, (), ((1,), (-1,)))
    assert feasible(p) is INFEASIBLE
    assert not INFEASIBLE


def test_problem_rejects_ragged_rows():
    with pytest.raises(ValueError):
        FeasibilityProblem(2, ((1,),))


def test_in_convex_hull():
    square = [(0, 0), (2, 0), (0, 2), (2, 2)]
    assert in_convex_hull((1, 1), square)
    assert in_convex_hull((2, 1), square)
    assert not in_convex_hull((3, 1), square)


def test_ratmatrix_columns():
    m = RatMatrix.from_columns([(1, 0), (1, 1), (0, 2)], 2)
    assert m.rank() == 2
    assert m.column(1) == (F(1), F(1))
    assert m.transpose().rank() == 2
