import random
from fractions import Fraction as F
from itertools import combinations

import pytest

from oracles import placement_tilings, tope_count_by_signs, whitney_regions
from zonocoherence.census import (
    count_chambers,
    count_regions,
    discriminantal,
    enumerate_tilings,
    flip,
    flippable_hexagons,
    induced_tiling,
    is_coherent_tiling,
    seed_tiling,
    sweep_to_csv,
    chamber_range_sweep,
    tiling_to_json,
    tiling_to_svg,
    tilings_to_json,
)
from zonocoherence.configuration import ValidationError


def shoelace(poly):
    return abs(sum(x1 * y2 - x2 * y1 for (x1, y1), (x2, y2) in zip(poly, poly[1:] + poly[:1]))) / 2


def test_discriminantal_shape():
    arr = discriminantal((1, 2, 3, 4, 5, 6))
    assert len(arr.hyperplanes) == 20
    assert all(v == 0 for v in arr.evaluate([1] * 6))
    assert all(v == 0 for v in arr.evaluate(arr.a))
    assert arr.essential_rank == 4


@pytest.mark.parametrize("a", [(1, 1, 2), (3, 2, 1), (1, 2)])
def test_discriminantal_rejects(a):
    with pytest.raises(ValidationError):
        discriminantal(a)


def test_regions_match_whitney_and_topes():
    rng = random.Random(9)
    for _ in range(12):
        d = rng.randint(2, 4)
        k = rng.randint(1, 7)
        normals = [tuple(rng.randint(-2, 2) for _ in range(d)) for _ in range(k)]
        normals = [v for v in normals if any(v)]
        if not normals:
            continue
        assert count_regions(normals) == whitney_regions(normals) == tope_count_by_signs(normals)


@pytest.mark.parametrize("a", [(1, 2, 3, 4), (1, 2, 3, 4, 5), (1, 2, 4, 8, 16)])
def test_small_chambers_match_oracles(a):
    arr = discriminantal(a)
    rows = [tuple(x) for x in arr.hyperplanes]
    assert count_chambers(arr) == tope_count_by_signs(rows) == whitney_regions(rows)


def test_chamber_counts_and_csv():
    rows = chamber_range_sweep([(1, 2, 3, 4, 5, 6), (1, 2, 3, 4, 5, 7)])
    assert [r.chambers for r in rows] == [888, 892]
    assert all(r.in_range for r in rows)
    assert sweep_to_csv(rows).splitlines() == ["a,chambers", "1 2 3 4 5 6,888", "1 2 3 4 5 7,892"]
    with pytest.raises(ValidationError):
        chamber_range_sweep([(1, 2, 3, 4, 5)])


@pytest.mark.parametrize("n,count", [(3, 2), (4, 8), (5, 62)])
def test_tiling_counts(n, count):
    tilings = enumerate_tilings(n)
    assert len(tilings) == count
    assert {t.cells for t in tilings} == placement_tilings(n)


@pytest.mark.parametrize("a", [(1, 2, 3, 4), (1, 2, 3, 4, 5), (F(-1), F(1, 3), 2, 7)])
def test_coherent_tilings_match_chambers(a):
    tilings = enumerate_tilings(a)
    coherent = [t for t in tilings if is_coherent_tiling(t)]
    assert len(coherent) == count_chambers(discriminantal(a))


def test_area_and_shape():
    a = (1, 2, 4, 5, 9)
    total = sum(abs(F(a[j] - a[i])) for i, j in combinations(range(5), 2))
    for t in enumerate_tilings(a):
        assert t.is_well_formed()
        assert sum(shoelace(t.polygon(c)) for c in t.cells) == total


def test_flip_is_an_involution():
    for t in enumerate_tilings(5)[:20]:
        for h in flippable_hexagons(t):
            u = flip(t, h)
            back = [g for g in flippable_hexagons(u) if g[:4] == h[:4] and g[4] != h[4]]
            assert len(back) == 1 and flip(u, back[0]).cells == t.cells


def test_flip_rejects_foreign_hexagon():
    t = seed_tiling((1, 2, 3))
    h = flippable_hexagons(t)[0]
    with pytest.raises(ValueError):
        flip(t, h[:4] + (3 - h[4],))


def test_induced_tiling_round_trip():
    a = (1, 2, 3, 4, 5)
    rng = random.Random(12)
    for _ in range(10):
        b = [F(rng.randint(-50, 50), rng.randint(1, 9)) for _ in a]
        try:
            t = induced_tiling(a, b)
        except ValidationError:
            continue
        v = is_coherent_tiling(t)
        assert v.coherent and induced_tiling(a, v.lift).cells == t.cells
    with pytest.raises(ValidationError):
        induced_tiling((1, 2, 3), (1, 2, 3))


def test_serializers():
    t = seed_tiling((1, 2, 3))
    data = tiling_to_json(t)
    assert len(data["cells"]) == 3 and data["cells"][0]["zones"] == [1, 2]
    assert tiling_to_svg(t).count("<polygon") == 3
    assert tilings_to_json([t]).startswith("[")
