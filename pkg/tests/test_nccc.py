import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from instances import nccc_corpus, nccc_descriptors
from k0embed.nccc import (
    Case,
    Cell,
    InconsistentInput,
    NcccDescriptor,
    RankClass,
    Verdict,
    almost_positive,
    classify,
    default_s,
    delete_cell,
    finiteness_census,
    gamma_split,
    rank_threshold,
    reduce,
    validate,
    w_set,
)
from k0embed.oracle import brute_reduce
from k0embed.ratlin import zspan_contains

SEC6 = NcccDescriptor((1, 1), (Cell(1, 2, (2, 0)), Cell(2, 1, (0, 1, 0))))
SEC6_S = [(1, 0, 2, 0), (0, 1, 0, 1), (0, 0, 0, 0)]
SEC6_Y = RankClass((1, 0, 2, 0), (1, 0, 1))


def test_validate_and_diagnostics():
    assert validate(SEC6) == []
    bad = NcccDescriptor((1,), (Cell(1, 3, (2,)),))
    (d,) = validate(bad)
    assert d.cell == 1 and d.residual == 1
    short = NcccDescriptor((1,), (Cell(1, 1, ()),))
    assert "length" in validate(short)[0].message


def test_cell_field_checks():
    with pytest.raises(ValueError):
        Cell(1, 0, (1,))
    with pytest.raises(ValueError):
        Cell(1, 1, (-1,))


def test_almost_positive_and_w_set():
    assert almost_positive((0, 0)) and not almost_positive((1, -1))
    assert w_set((0, 0, 0), 1) == frozenset()
    assert w_set((5, 0, 3), 1) == frozenset({2})


def test_delete_cell_reroutes():
    d = NcccDescriptor((1,), (Cell(1, 2, (2,)), Cell(1, 4, (0, 2))))
    out, m = delete_cell(d, 1)
    assert out.cells == (Cell(1, 4, (4,)),)
    assert validate(out) == []
    assert m == ((1, 0, 0), (0, 0, 1))


def test_delete_unreferenced_cell_keeps_later_cells():
    d = NcccDescriptor((2,), (Cell(1, 2, (1,)), Cell(1, 4, (2, 0))))
    out, _ = delete_cell(d, 1)
    assert out.cells == (Cell(1, 4, (2,)),)


def test_delete_point_cell_with_dependants_is_inconsistent():
    d = NcccDescriptor((1,), (Cell(0, 3, (0,)), Cell(1, 3, (0, 1))))
    with pytest.raises(InconsistentInput):
        delete_cell(d, 1)
    with pytest.raises(IndexError):
        delete_cell(d, 3)


def test_default_s_propagates_units():
    d = NcccDescriptor((1,), (Cell(1, 2, (2,)),))
    assert default_s(d) == [(1, 2)]


def test_gamma_split_examples():
    d = NcccDescriptor((1, 1), (Cell(1, 1, (0, 1)),))
    g = gamma_split(d, [(1, 0, 0), (0, 1, 1)])
    assert g.f1 == (1,) and g.b_blocks == (2,)
    assert g.b_descriptor == NcccDescriptor((1,), (Cell(1, 1, (1,)),))
    none = gamma_split(d, [(0, 1, 1)])
    assert none.f1 == () and none.b_descriptor == d


def test_gamma_split_inconsistent():
    d = NcccDescriptor((1, 1), (Cell(1, 1, (1, 0)),))
    with pytest.raises(InconsistentInput):
        gamma_split(d, [(1, 0, 0)])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_gamma_plant_and_recover(seed):
    rng = random.Random(seed)
    b = rng.randint(2, 3)
    planted = tuple(sorted(rng.sample(range(1, b + 1), rng.randint(1, b - 1))))
    keep = [t for t in range(1, b + 1) if t not in planted]
    blocks = tuple(rng.randint(1, 3) for _ in range(b))
    mult = tuple(0 if t + 1 in planted else rng.randint(0, 1) for t in range(b))
    if not any(mult):
        mult = tuple(1 if t + 1 == keep[0] else 0 for t in range(b))
    r = sum(m * s for m, s in zip(mult, blocks))
    d = NcccDescriptor(blocks, (Cell(1, r, mult),))
    gamma = tuple(rng.randint(1, 3) if t + 1 in planted else 0 for t in range(b)) + (0,)
    unit = tuple(1 if t + 1 in keep else 0 for t in range(b)) + (sum(mult[t - 1] for t in keep),)
    g = gamma_split(d, [gamma, unit])
    assert g.f1 == planted and g.b_blocks == tuple(keep)
    assert zspan_contains([gamma, unit], g.gamma + (0,))


def test_reduce_base_cases():
    empty = NcccDescriptor((2,))
    res = reduce(empty, None, (1,))
    assert res.case_trace == () and res.split.f1 == (1,)
    d = NcccDescriptor((1,), (Cell(1, 2, (2,)),))
    res = reduce(d, None, (0, 0))
    assert res.case_trace == ((Case.ALL_ZERO.value, 0),)
    with pytest.raises(ValueError):
        reduce(d, None, (1, -1))


def test_section6_reduction():
    res = reduce(SEC6, SEC6_S, SEC6_Y.y)
    assert res.case_trace == (("Case4", 1), ("Case3", 1))
    assert res.split.f1 == (1,) and res.split.b_blocks == (2,)
    assert res.split.b_descriptor == NcccDescriptor((1,), (Cell(2, 1, (1,)),))
    assert res.image_y == (1, 0, 0)
    assert SEC6_Y.witness_holds(SEC6_S)


def test_section6_classification():
    cl = classify(SEC6, SEC6_S, SEC6_Y.y)
    assert cl.verdict is Verdict.INFINITESIMAL
    assert cl.result.split.f1 and cl.result.split.b_blocks
    assert cl.annotation["threshold"] == F(1, 2)


def test_classify_other_verdicts():
    d = NcccDescriptor((1,), (Cell(1, 2, (2,)),))
    assert classify(d, None, (1, 2)).verdict is Verdict.POSITIVE
    cl = classify(d, None, (1, -2))
    assert cl.verdict is Verdict.NOT_ALMOST_POSITIVE and cl.witness == (2, 1)
    assert classify(d, None, (0, 0)).verdict is Verdict.INFINITESIMAL
    assert rank_threshold(d) == 0


def test_mixed_verdict():
    d = NcccDescriptor((1, 1), (Cell(1, 1, (0, 1)),))
    cl = classify(d, [(1, 0, 0), (0, 1, 1)], (1, 1, 0))
    assert cl.verdict is Verdict.MIXED


def test_census_bound_and_determinism():
    c = finiteness_census(SEC6, list(itertools.product(range(3), repeat=4)), SEC6_S)
    assert c.descriptors <= c.bound == 8
    d = NcccDescriptor((1,), (Cell(1, 2, (2,)), Cell(1, 2, (0, 1))))
    a = reduce(d, None, (0, 1, 0))
    b = reduce(d, None, (0, 3, 0))
    assert a.reduced == b.reduced and a.rank_map == b.rank_map and a.case_trace == b.case_trace


def _sample(corpus, k, seed):
    return random.Random(seed).sample(corpus, k)


@pytest.fixture(scope="module")
def corpus():
    return nccc_corpus()


def test_conservation_on_sample(corpus):
    for d in _sample(corpus, 800, 1):
        for j in range(1, d.length + 1):
            out, _ = delete_cell(d, j)
            assert validate(out) == []


def test_reduce_matches_brute_on_sample(corpus):
    rng = random.Random(2)
    for d in _sample(corpus, 500, 2):
        y = tuple(rng.randint(0, 2) for _ in range(d.width))
        res = reduce(d, None, y)
        assert res == brute_reduce(d, None, y)
        assert len(res.case_trace) <= d.length + 1
        assert all(v >= 0 for row in res.rank_map for v in row)


def test_zero_cell_corpus_small():
    for d in nccc_descriptors(max_b=1, max_l=2, max_size=2, max_mult=1, ns=(0, 1)):
        for y in itertools.product(range(2), repeat=d.width):
            try:
                res = reduce(d, None, y)
            except InconsistentInput:
                with pytest.raises(InconsistentInput):
                    brute_reduce(d, None, y)
                continue
            assert res == brute_reduce(d, None, y)
