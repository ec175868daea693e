from fractions import Fraction as F

import pytest

from k0embed.oracle import (
    GridSpec,
    brute_infinitesimal,
    brute_member,
    brute_membership,
    brute_phi,
    grid_points,
    sample_grid,
)
from k0embed.ordgrp import DirectSum, FinGen, Lex, Tail


def test_grid_points():
    pts = grid_points(GridSpec(2, den_bound=2, coord_bound=1))
    assert len(pts) == 25
    assert (F(1, 2), F(-1)) in pts


def test_sample_grid_is_seeded():
    spec = GridSpec(2, 1, 3, seed=4)
    assert sample_grid(spec, 5) == sample_grid(spec, 5)
    assert len(sample_grid(spec, 1000)) == 49


def test_fingen_membership_by_caratheodory():
    cone = FinGen(2, [(1, 0), (1, 2)])
    assert brute_member(cone, (2, 1)) and brute_member(cone, (0, 0))
    assert not brute_member(cone, (0, 1)) and not brute_member(cone, (-1, 0))


def test_lex_and_direct_sum_membership():
    lex = Lex(2, [(1, 0)])
    assert brute_member(lex, (1, -9)) and not brute_member(lex, (0, 1))
    full = Lex(2, [(1, 0), (0, 1)], Tail.ALL_OF_KERNEL)
    assert brute_member(full, (0, 1))
    s = DirectSum((lex, FinGen(1, [(1,)])))
    verdicts = brute_membership(s, [(1, 0, 0), (0, 1, 1)])
    assert verdicts == {(1, 0, 0): True, (0, 1, 1): False}


def test_brute_phi_verdicts():
    assert brute_phi([(1,)], [(-1,)], (0,)) == 0
    assert brute_phi([(1,)], [(-1,)], (2,)) == 1
    assert brute_phi([(1,)], [(-1,)], (-2,)) == -1
    # nothing reachable in either direction: inconclusive, not zero
    assert brute_phi([(1, 0), (0, 1)], [], (1, -1), k_max=3) is None


def test_brute_infinitesimal():
    lex = DirectSum((Lex(2, [(1, 0)]), FinGen(1, [(1,)])))
    assert brute_infinitesimal(lex, (1, 0, 1), (0, 1, 0))
    assert not brute_infinitesimal(lex, (1, 0, 1), (0, 0, 1))
    with pytest.raises(ValueError):
        brute_infinitesimal(lex, (1, 0, 1), (0, 1, 0), 0)
