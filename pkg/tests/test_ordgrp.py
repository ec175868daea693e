import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from instances import random_combination, random_fingen_group, state_instance
from k0embed.oracle import GridSpec, brute_infinitesimal, brute_member, grid_points
from k0embed.ordgrp import (
    Fails,
    FinGen,
    Holds,
    Lex,
    Maximal,
    Maximality,
    Membership,
    NotMaximal,
    NotSingular,
    PreconditionError,
    ScaledOrderedGroup,
    Singleton,
    Singular,
    SpanKind,
    StateInfeasible,
    Subgroup,
    Tail,
    canonical_state,
    cone_contains,
    direct_sum,
    find_state,
    infinitesimals,
    is_faithful,
    is_maximally_singular,
    is_singular,
    is_state,
    maximalize,
    quotient_order,
    rationalize,
    satisfies_divisibility,
    state_set,
    state_vertices,
)
from k0embed.ratlin import LinConstraint, check_farkas, dot, matvec


def orthant(n):
    return ScaledOrderedGroup(n, FinGen(n, [tuple(int(i == j) for j in range(n)) for i in range(n)]), (1,) * n)


def sphere_plus_point():
    lex = ScaledOrderedGroup(2, Lex(2, [(1, 0)]), (1, 0))
    return direct_sum([lex, orthant(1)])


def test_cone_must_be_pointed_and_unit_interior():
    with pytest.raises(PreconditionError):
        FinGen(2, [(1, 0), (-1, 0)])
    with pytest.raises(PreconditionError):
        ScaledOrderedGroup(2, FinGen(2, [(1, 0), (0, 1)]), (1, 0))


def test_membership_kinds():
    g = orthant(2)
    assert cone_contains(g, (0, 0)) is Membership.ZERO
    assert cone_contains(g, (1, 2)) is Membership.POSITIVE
    assert cone_contains(g, (1, -2)) is Membership.NOT_IN_CONE


def test_lex_tail():
    strict = Lex(2, [(1, 0)])
    assert not strict.contains((0, 5)) and strict.contains((1, -5))
    full = Lex(2, [(1, 0), (0, 1)], Tail.ALL_OF_KERNEL)
    assert full.contains((0, 5)) and not full.contains((0, -5))
    # a nonzero admitted kernel would contain a line
    with pytest.raises(PreconditionError):
        Lex(2, [(1, 0)], Tail.ALL_OF_KERNEL)


def test_singular_orthant():
    g = orthant(2)
    assert is_singular(g, Subgroup(2, [(1, -1)])) == Singular()
    out = is_singular(g, Subgroup(2, [(1, 1)]))
    assert isinstance(out, NotSingular) and g.cone.contains(out.witness)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_singular_agrees_with_grid_search(seed):
    rng = random.Random(seed)
    g = random_fingen_group(rng, rng.randint(2, 3))
    h = Subgroup(g.dim, [tuple(rng.randint(-2, 2) for _ in range(g.dim))])
    verdict = is_singular(g, h)
    if isinstance(verdict, NotSingular):
        assert h.contains(verdict.witness) and brute_member(g.cone, verdict.witness)
        assert any(x != 0 for x in verdict.witness)
    else:
        # no nonzero multiple of the generator up to 6 lies in the cone
        for b in h.generators:
            for k in range(-6, 7):
                if k:
                    assert not brute_member(g.cone, tuple(k * t for t in b))


def test_states_of_orthant():
    g = orthant(2)
    assert state_vertices(g) == [(0, 1), (1, 0)]
    assert canonical_state(g).functional == (F(1, 2), F(1, 2))
    for v in state_vertices(g):
        assert is_state(g, v)


def test_lex_state_is_unique():
    g = ScaledOrderedGroup(2, Lex(2, [(1, 1), (1, -1)]), (1, 0))
    assert state_set(g) == Singleton(canonical_state(g)) or isinstance(state_set(g), Singleton)


def test_infinitesimals_of_sphere_example():
    g = sphere_plus_point()
    inf = infinitesimals(g)
    assert inf.basis == ((0, 1, 0),)
    assert brute_infinitesimal(g.cone, g.unit, (0, 1, 0))
    assert not brute_infinitesimal(g.cone, g.unit, (0, 0, 1))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_infinitesimals_match_sweep(seed):
    rng = random.Random(seed)
    g = random_fingen_group(rng, rng.randint(1, 3))
    inf = infinitesimals(g)
    for x in grid_points(GridSpec(g.dim, 1, 1)):
        assert inf.contains(x) == brute_infinitesimal(g.cone, g.unit, x, sweep_bound(g))


def sweep_bound(g):
    """|n| past which u + n x leaves an integer FinGen cone unless x is infinitesimal.

    Facet normals are (d-1)-minors of generators, so integral with entries at
    most (d-1)! M^(d-1); a facet f with f(x) != 0 has |f(x)| >= 1, and u + n x
    leaves the cone once |n| > f(u).
    """
    d = g.dim
    m = max(abs(c) for gen in g.cone.generators for c in gen)
    unit = max(abs(c) for c in g.unit)
    return int(d * math.factorial(d - 1) * m ** (d - 1) * unit) + 1


def test_find_state_feasible_and_infeasible():
    g = orthant(2)
    s = find_state(g, Subgroup(2, [(1, 0)]))
    assert s.functional == (0, 1)
    with pytest.raises(StateInfeasible) as exc:
        find_state(g, Subgroup(2, [(1, 1)]))
    assert check_farkas(exc.value.constraints, exc.value.farkas)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_find_state_substitution(seed):
    rng = random.Random(seed)
    g, tau, ker = state_instance(rng, 4)
    x = random_combination(rng, ker)
    s = find_state(g, Subgroup(g.dim, [x]))
    assert is_state(g, s.functional) and s(x) == 0


def test_faithful():
    g = orthant(2)
    assert is_faithful(g, canonical_state(g))
    assert not is_faithful(g, find_state(g, Subgroup(2, [(1, 0)])))


def test_divisibility():
    assert satisfies_divisibility(Subgroup(2, [(2, 2)], SpanKind.Z)) == Fails((1, 1), 2)
    assert satisfies_divisibility(Subgroup(2, [(2, 2)], SpanKind.Q)) == Holds()


def test_quotient_orthant():
    q = quotient_order(orthant(2), Subgroup(2, [(1, -1)]))
    assert q.group.dim == 1
    assert q.projection == ((1, 1),)
    assert matvec(q.projection, (1, -1)) == (0,)


def test_quotient_needs_singular():
    with pytest.raises(PreconditionError):
        quotient_order(orthant(2), Subgroup(2, [(1, 1)]))
    with pytest.raises(PreconditionError):
        quotient_order(orthant(2), Subgroup(2, [(2, -2)], SpanKind.Z))


def test_maximality_orthant():
    g = orthant(3)
    out = is_maximally_singular(g, Subgroup(3, [(1, -1, 0)]))
    assert isinstance(out, NotMaximal)
    assert isinstance(is_singular(g, Subgroup(3, [(1, -1, 0), out.witness])), Singular)
    ext = maximalize(g, Subgroup(3, [(1, -1, 0)]))
    assert ext.flag is Maximality.MAXIMAL and ext.subgroup.rank == 2
    assert is_maximally_singular(g, ext.subgroup) == Maximal()


def test_maximalize_trivial_start():
    ext = maximalize(orthant(2), Subgroup(2, []))
    assert ext.subgroup.basis == ((1, -1),) and ext.flag is Maximality.MAXIMAL


def test_maximalize_stall_on_basis_vectors():
    # The dual cone is a thin wedge around (1, 1, 1); the cone contains every
    # standard basis vector, so greedy over them alone adds nothing.
    g = ScaledOrderedGroup(3, FinGen(3, [(-10, -10, 21), (-10, 21, -10), (21, -10, -10)]), (1, 1, 1))
    h = Subgroup(3, [])
    stalled = maximalize(g, h, differences=False)
    assert stalled.flag is Maximality.BEST_EFFORT
    assert stalled.subgroup.basis == ()
    assert isinstance(is_maximally_singular(g, stalled.subgroup), NotMaximal)
    assert maximalize(g, h, differences=False, complete=True).flag is Maximality.MAXIMAL
    assert maximalize(g, h).flag is Maximality.MAXIMAL


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_maximalize_with_differences_never_stalls(seed):
    rng = random.Random(seed)
    g = random_fingen_group(rng, rng.randint(2, 4))
    ext = maximalize(g, Subgroup(g.dim, []))
    assert ext.flag is Maximality.MAXIMAL and ext.subgroup.rank == g.dim - 1


def test_maximality_lex():
    g = ScaledOrderedGroup(3, Lex(3, [(1, 0, 0)]), (1, 0, 0))
    assert isinstance(is_maximally_singular(g, Subgroup(3, [(0, 1, 0)])), NotMaximal)
    assert is_maximally_singular(g, Subgroup(3, [(0, 1, 0), (0, 0, 1)])) == Maximal()


def test_rationalize_primitive():
    g = rationalize(2, [[2, 0], [0, 3], [4, 0]], (1, 1))
    assert g.cone.generators == ((1, 0), (0, 1))


def test_direct_sum_membership():
    g = sphere_plus_point()
    assert g.cone.contains((1, -5, 0))
    assert not g.cone.contains((0, 1, 0))
    assert not g.cone.contains((1, 0, -1))


def test_state_constraints_hold_on_canonical_state():
    rng = random.Random(5)
    for _ in range(10):
        g = random_fingen_group(rng, 3)
        tau = canonical_state(g)
        assert LinConstraint.eq(g.unit, 1).holds(tau.functional)
        assert all(dot(tau.functional, x) > 0 for x in g.cone.generators)
