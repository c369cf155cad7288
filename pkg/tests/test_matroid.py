import random
from fractions import Fraction as F
from itertools import combinations

import pytest

from oracles import sympy_rank
from sweep import random_configuration
from zonocoherence.configuration import Configuration, ValidationError
from zonocoherence.fixtures import cube, fix_a, fix_b, fix_c, fix_d, fix_e, fix_f, r3
from zonocoherence.matroid import (
    OrientedMatroid,
    coloops_of,
    contract,
    decompose,
    delete,
    is_acyclic,
    is_isomorphic,
    is_weak_map,
    subset_rank,
)
from zonocoherence.signs import verify_axioms

ALL = [fix_a, fix_b, fix_c, fix_d, fix_e, fix_f, r3]


def strs(vs):
    return {str(v) for v in vs}


def test_fix_e_free():
    m = fix_e().matroid
    assert m.rank == 3
    assert set(m.chirotope().values()) == {1}
    assert len(m.cocircuits()) == 6
    assert len(m.covectors()) == 27
    assert m.circuits() == []
    assert coloops_of(m) == {0, 1, 2}
    assert is_acyclic(m)
    assert len(decompose(m)) == 3


def test_fix_a():
    m = fix_a().matroid
    assert m.rank == 3
    assert {"0--0", "+00+"} <= strs(m.cocircuits())
    topes = strs(m.topes())
    assert len(topes) == 14 and "++--" not in topes and "--++" not in topes
    assert strs(m.circuits()) == {"++--", "--++"}
    assert subset_rank(m, [0, 3]) == 2
    assert subset_rank(m, []) == 0
    assert coloops_of(m) == frozenset()
    assert [sorted(p) for p, _ in decompose(m)] == [[0, 1, 2, 3]]


def test_fix_b():
    m = fix_b().matroid
    assert m.rank == 4
    assert sorted(sorted(x.support()) for x in m.circuits() if x[0] >= 0 and x[3] >= 0) == [[0, 1, 2], [3, 4, 5]]
    assert subset_rank(m, [0, 1, 2]) == 2
    assert coloops_of(m) == frozenset()
    assert sorted(sorted(p) for p, _ in decompose(m)) == [[0, 1, 2], [3, 4, 5]]


def test_rank_one():
    m = OrientedMatroid([(F(2),)])
    assert strs(m.cocircuits()) == {"+", "-"}
    assert strs(m.covectors()) == {"0", "+", "-"}


def test_validation():
    with pytest.raises(ValidationError):
        Configuration([(1, 0), (2, 0)], (1, 1))
    with pytest.raises(ValidationError):
        Configuration([(1, 0), (-1, 0)], (1, 1))
    with pytest.raises(ValidationError):
        Configuration([(0, 0)], (1, 1))
    with pytest.raises(ValidationError):
        Configuration([(1, -1)], (1, 1))


def test_canonical_scaling():
    c = Configuration([(2, 0), (0, -3)], (1, 1))
    assert c.canonical().pi_values() == (1, 1)
    assert c.canonical().is_canonical


@pytest.mark.parametrize("make", ALL)
def test_chirotope_alternating_and_axioms(make):
    m = make().matroid
    chi = m.chirotope()
    for s in list(chi)[:10]:
        swapped = (s[1], s[0]) + s[2:]
        assert m.chi(swapped) == -chi[s]
    assert verify_axioms(m.covectors()) is None


@pytest.mark.parametrize("make", ALL)
def test_weak_maps(make):
    m = make().matroid
    assert is_weak_map(m, m)
    for e in range(m.n):
        if e not in coloops_of(m):
            assert is_weak_map(m, contract(m, e))


def test_weak_map_needs_same_ground_set():
    with pytest.raises(ValueError):
        is_weak_map(fix_e().matroid, fix_a().matroid)


def test_isomorphism():
    m = fix_e().matroid
    assert is_isomorphic(m, m) is not None
    c = fix_d()
    perm = [3, 0, 5, 1, 4, 2]
    sigma = is_isomorphic(c.matroid, c.permute(perm).matroid)
    assert sigma is not None
    assert is_isomorphic(fix_a().matroid, cube(4).matroid) is None


def test_delete_makes_a_loop():
    m = fix_a().matroid
    d = delete(m, 0)
    assert d.n == 4 and d.rank == 3
    assert d.loops_mask() == 1
    assert d.circuits()[0].support() == {0}


def test_subset_rank_matches_sympy():
    rng = random.Random(3)
    for _ in range(40):
        c = random_configuration(rng, max_n=6, max_r=4)
        m = c.matroid
        for k in range(c.n + 1):
            for s in combinations(range(c.n), k):
                assert m.rank_of_mask(sum(1 << e for e in s)) == sympy_rank([c.vectors[e] for e in s])


def test_circuits_are_minimal_dependencies():
    rng = random.Random(4)
    for _ in range(30):
        c = random_configuration(rng, max_n=6, max_r=3)
        m = c.matroid
        for x in m.circuits():
            supp = sorted(x.support())
            # signed dependency: some positive combination with these signs vanishes
            assert sympy_rank([c.vectors[e] for e in supp]) == len(supp) - 1
            for e in supp:
                rest = [c.vectors[f] for f in supp if f != e]
                assert sympy_rank(rest) == len(rest)
