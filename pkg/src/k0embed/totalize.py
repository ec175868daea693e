"""Lexicographic totalizations of an ordered group through a faithful state.

Given a faithful state ``tau``, the cone ``P`` orders by ``tau`` first and
breaks ties on ``ker tau`` lexicographically. Reversing the tiebreak gives
the opposite placement of every nonzero ``x`` with ``tau(x) = 0``; the
direct sum of the two orders makes ``span{(x, x)}`` singular.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Union

from .ordgrp import (
    DirectSum,
    Lex,
    PreconditionError,
    ScaledOrderedGroup,
    State,
    Subgroup,
    cone_representatives,
    dual_rows,
    is_faithful,
    is_fingen,
    is_singular,
    NotSingular,
    quotient_order,
)
from .ratlin import (
    Bounded,
    Feasible,
    LinConstraint,
    Vec,
    dot,
    is_zero,
    kernel_basis,
    lp,
    matvec,
    neg,
    rank,
    row_basis,
    vec,
)
from .ratlin.linalg import inverse


class Sign(str, Enum):
    POS = "Pos"
    NEG = "Neg"
    ZERO = "Zero"

    def __neg__(self) -> "Sign":
        return {Sign.POS: Sign.NEG, Sign.NEG: Sign.POS, Sign.ZERO: Sign.ZERO}[self]


def lex_sign(cone: Lex, x: Vec) -> Sign:
    for v in cone.evaluate(x):
        if v > 0:
            return Sign.POS
        if v < 0:
            return Sign.NEG
    return Sign.ZERO


def lex_order(basis: Sequence[Sequence]) -> Lex:
    """Total order comparing coordinates in ``basis``, first coordinate first."""
    basis = [vec(b) for b in basis]
    n = len(basis)
    if n == 0 or any(len(b) != n for b in basis) or rank(basis) < n:
        raise PreconditionError("lex_order needs a basis of the ambient space")
    cols = tuple(tuple(basis[j][i] for j in range(n)) for i in range(n))
    return Lex(n, tuple(inverse(cols)))


def default_tiebreak(tau: State) -> list[Vec]:
    """Reduced basis of ``ker tau``; ordering by it matches coordinate order."""
    return list(row_basis(kernel_basis([tau.functional]), len(tau.functional)))


def _check_tiebreak(tau: State, tiebreak: Sequence[Vec]) -> list[Vec]:
    n = len(tau.functional)
    tb = [vec(b) for b in tiebreak]
    if any(dot(tau.functional, b) != 0 for b in tb):
        raise PreconditionError("tiebreak vector outside ker(tau)")
    if len(tb) != n - 1 or (tb and rank(tb) != n - 1):
        raise PreconditionError("tiebreak must be a basis of ker(tau)")
    return tb


def totalize_with_state(
    g: ScaledOrderedGroup, tau: State, tiebreak: Optional[Sequence[Vec]] = None, reverse: bool = False
) -> ScaledOrderedGroup:
    """Order by ``tau``, then lexicographically along ``tiebreak`` on ``ker tau``.

    ``reverse`` flips the tiebreak order on ``ker tau`` (not the ``tau`` part).
    """
    if not is_faithful(g, tau):
        raise PreconditionError("tau is not a faithful state; P would miss part of the cone", tau.functional)
    tb = _check_tiebreak(tau, default_tiebreak(tau) if tiebreak is None else tiebreak)
    n = g.dim
    basis = [g.unit] + tb
    cols = tuple(tuple(basis[j][i] for j in range(n)) for i in range(n))
    dual = inverse(cols)
    rest = [neg(d) if reverse else d for d in dual[1:]]
    cone = Lex(n, (tau.functional, *rest))
    for x in cone_representatives(g.cone):
        if not cone.contains(x):
            raise AssertionError(f"cone element {x} outside the totalization")
    return ScaledOrderedGroup(n, cone, g.unit)


@dataclass(frozen=True)
class PlacementReport:
    x: Vec
    sign_forward: Sign
    sign_reverse: Sign
    sign_quotient: Sign
    witnesses: dict


def placements(g: ScaledOrderedGroup, tau: State, x: Sequence, tiebreak: Optional[Sequence[Vec]] = None) -> PlacementReport:
    """Signs of ``x`` under the forward order, the reversed order, and the
    quotient by ``span{x}``."""
    x = vec(x)
    if is_zero(x):
        raise PreconditionError("placements needs x != 0")
    if tau(x) != 0:
        raise PreconditionError("placements needs tau(x) = 0", x)
    fwd = totalize_with_state(g, tau, tiebreak)
    rev = totalize_with_state(g, tau, tiebreak, reverse=True)
    h = Subgroup(g.dim, [x])
    witnesses = {"forward": fwd.cone.evaluate(x), "reverse": rev.cone.evaluate(x)}
    if is_fingen(g.cone):
        q = quotient_order(g, h)
        image = matvec(q.projection, x)
        witnesses["quotient_image"] = image
        witnesses["quotient_projection"] = q.projection
        s_quot = Sign.ZERO if is_zero(image) else Sign.POS
    else:
        sing = is_singular(g, h)
        if isinstance(sing, NotSingular):
            raise PreconditionError("span{x} is not singular", sing.witness)
        witnesses["quotient_image"] = ()
        s_quot = Sign.ZERO
    return PlacementReport(x, lex_sign(fwd.cone, x), lex_sign(rev.cone, x), s_quot, witnesses)


def diagonal_map(n: int) -> tuple:
    """``2n x n`` matrix of ``x -> (x, x)``."""
    rows = [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    return tuple(vec(r) for r in rows + rows)


def doubling(g: ScaledOrderedGroup, tau: State, tiebreak: Optional[Sequence[Vec]] = None):
    """``(G, P) + (G, P reversed)`` with the diagonal embedding."""
    fwd = totalize_with_state(g, tau, tiebreak)
    rev = totalize_with_state(g, tau, tiebreak, reverse=True)
    cone = DirectSum((fwd.cone, rev.cone))
    doubled = ScaledOrderedGroup(2 * g.dim, cone, tuple(g.unit) + tuple(g.unit))
    return doubled, diagonal_map(g.dim)


@dataclass(frozen=True)
class Killable:
    state: State


@dataclass(frozen=True)
class NotKillable:
    blocking: Optional[Vec]
    farkas: Optional[Vec] = None


def _state_rows(g: ScaledOrderedGroup, x: Vec) -> list[LinConstraint]:
    ineqs, eqs = dual_rows(g.cone)
    cons = [LinConstraint.eq(g.unit, 1), LinConstraint.eq(x)]
    cons += [LinConstraint.ge(r) for r in ineqs]
    cons += [LinConstraint.eq(r) for r in eqs]
    return cons


def faithful_kill_check(
    g: ScaledOrderedGroup, x: Sequence, strict_set: Optional[Sequence[Sequence]] = None
) -> Union[Killable, NotKillable]:
    """Is there a state vanishing at ``x`` and strictly positive on ``strict_set``?

    ``strict_set`` defaults to the cone's representatives (FinGen generators,
    and for lexicographic parts the canonical point with leading value 1).
    On failure the blocking element is the first one that every state
    vanishing at ``x`` sends to 0.
    """
    x = vec(x)
    strict = [vec(s) for s in (cone_representatives(g.cone) if strict_set is None else strict_set)]
    base = _state_rows(g, x)
    out = lp(None, base + [LinConstraint.gt(s) for s in strict], dim=g.dim)
    if isinstance(out, Feasible):
        return Killable(State(out.point))
    plain = lp(None, base, dim=g.dim)
    if not isinstance(plain, Feasible):
        return NotKillable(None, plain.farkas)
    for s in strict:
        best = lp(s, base, dim=g.dim, sense="max")
        if isinstance(best, Bounded) and best.value <= 0:
            return NotKillable(s)
    raise AssertionError("strict system infeasible but no single element is forced to zero")
