"""Scaled ordered groups over the rationals.

A group is a finite-dimensional rational vector space with a proper
positive cone and an order unit. Cones come in three shapes:

* ``FinGen``: nonnegative rational combinations of finitely many vectors.
* ``Lex``: lexicographic positivity of an ordered list of functionals,
  with either only the origin or the whole common kernel admitted at the
  tail.
* ``DirectSum``: coordinatewise membership in a list of cones.

Everything here is exact; decisions reduce to the rational LP engine or to
the double-description cone machinery in :mod:`k0embed.ratlin`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence, Union

from .ratlin import (
    ONE,
    ZERO,
    Feasible,
    LinConstraint,
    PolyCone,
    Vec,
    dot,
    double_description,
    in_span,
    is_zero,
    kernel_basis,
    lp,
    matvec,
    neg,
    primitive,
    rank,
    row_basis,
    saturation_defect,
    scale,
    sign_normalized,
    solve_linear,
    sub,
    unit_vector,
    vec,
)
from .ratlin.linalg import complement_indices, inverse


class PreconditionError(ValueError):
    """An operation's precondition failed; ``witness`` carries the evidence."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class UnsupportedCone(PreconditionError):
    pass


class Membership(str, Enum):
    ZERO = "Zero"
    POSITIVE = "PositiveNonzero"
    NOT_IN_CONE = "NotInCone"


class Tail(str, Enum):
    ZERO_ONLY = "ZeroOnly"
    ALL_OF_KERNEL = "AllOfKernel"


# --------------------------------------------------------------------------
# cones


@dataclass(frozen=True)
class FinGen:
    dim: int
    generators: tuple

    def __post_init__(self):
        gens = tuple(vec(g) for g in self.generators)
        for g in gens:
            if len(g) != self.dim:
                raise ValueError(f"generator {g} not in dimension {self.dim}")
        gens = tuple(g for g in gens if not is_zero(g))
        object.__setattr__(self, "generators", gens)
        if gens and not _pointed(gens, self.dim):
            raise PreconditionError("improper cone: C and -C share a nonzero element")

    @cached_property
    def polycone(self) -> PolyCone:
        return PolyCone.from_generators(self.dim, self.generators)

    def contains(self, x: Vec) -> bool:
        return self.polycone.contains(x)


def _pointed(gens, dim) -> bool:
    """No nonnegative combination with weights summing to 1 vanishes."""
    m = len(gens)
    cons = [LinConstraint.ge(unit_vector(m, i)) for i in range(m)]
    cons.append(LinConstraint.eq([ONE] * m, 1))
    for j in range(dim):
        cons.append(LinConstraint.eq([g[j] for g in gens], 0))
    return not isinstance(lp(None, cons, dim=m), Feasible)


@dataclass(frozen=True)
class Lex:
    dim: int
    functionals: tuple
    tail: Tail = Tail.ZERO_ONLY

    def __post_init__(self):
        fs = tuple(vec(f) for f in self.functionals)
        for f in fs:
            if len(f) != self.dim:
                raise ValueError(f"functional {f} not in dimension {self.dim}")
        object.__setattr__(self, "functionals", fs)
        object.__setattr__(self, "tail", Tail(self.tail))
        if self.tail is Tail.ALL_OF_KERNEL and (rank(fs) if fs else 0) < self.dim:
            raise PreconditionError("improper cone: the admitted tail kernel is a nonzero subspace")

    def evaluate(self, x: Vec) -> tuple:
        return tuple(dot(f, x) for f in self.functionals)

    def contains(self, x: Vec) -> bool:
        for v in self.evaluate(x):
            if v != 0:
                return v > 0
        return self.tail is Tail.ALL_OF_KERNEL or is_zero(x)


@dataclass(frozen=True)
class DirectSum:
    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if not self.parts:
            raise ValueError("empty direct sum")

    @property
    def dim(self) -> int:
        return sum(p.dim for p in self.parts)

    @property
    def offsets(self) -> list[int]:
        out, k = [], 0
        for p in self.parts:
            out.append(k)
            k += p.dim
        return out

    def split(self, x: Vec) -> list[Vec]:
        return [tuple(x[o : o + p.dim]) for o, p in zip(self.offsets, self.parts)]

    def contains(self, x: Vec) -> bool:
        return all(p.contains(xi) for p, xi in zip(self.parts, self.split(x)))


Cone = Union[FinGen, Lex, DirectSum]


def _embed(v: Vec, offset: int, dim: int) -> Vec:
    out = [ZERO] * dim
    out[offset : offset + len(v)] = v
    return tuple(out)


def fingen_generators(cone: Cone) -> list[Vec]:
    """Generators of a FinGen cone or of a direct sum of FinGen cones."""
    if isinstance(cone, FinGen):
        return list(cone.generators)
    if isinstance(cone, DirectSum):
        out = []
        for off, part in zip(cone.offsets, cone.parts):
            out += [_embed(g, off, cone.dim) for g in fingen_generators(part)]
        return out
    raise UnsupportedCone("operation needs a finitely generated cone (or a direct sum of them); got a lexicographic cone")


def is_fingen(cone: Cone) -> bool:
    if isinstance(cone, FinGen):
        return True
    if isinstance(cone, DirectSum):
        return all(is_fingen(p) for p in cone.parts)
    return False


def cone_representatives(cone: Cone) -> list[Vec]:
    """A finite list of nonzero cone elements: the generators of FinGen
    parts, and for lexicographic parts the canonical solution of ``f1 = 1``."""
    if isinstance(cone, FinGen):
        return list(cone.generators)
    if isinstance(cone, Lex):
        if not cone.functionals:
            return []
        v = solve_linear([cone.functionals[0]], [ONE])
        return [v] if v is not None else []
    out = []
    for off, part in zip(cone.offsets, cone.parts):
        out += [_embed(r, off, cone.dim) for r in cone_representatives(part)]
    return out


@dataclass(frozen=True)
class _Piece:
    eqs: tuple
    ges: tuple
    gts: tuple
    norm: Optional[Vec]  # strictly positive on the piece minus 0 (when no strict rows)


def _pieces(cone: Cone) -> list[_Piece]:
    """Split a cone into finitely many relatively open polyhedral pieces."""
    n = cone.dim
    origin = tuple(unit_vector(n, i) for i in range(n))
    if isinstance(cone, FinGen):
        pc = cone.polycone
        if pc.is_zero:
            return [_Piece(origin, (), (), None)]
        return [_Piece(pc.equalities, pc.inequalities, (), pc.positive_functional)]
    if isinstance(cone, Lex):
        fs = cone.functionals
        out = [_Piece(fs[:i], (), (fs[i],), None) for i in range(len(fs))]
        out.append(_Piece(origin, (), (), None))
        return out
    per_part = []
    for off, part in zip(cone.offsets, cone.parts):
        emb = lambda rows: tuple(_embed(r, off, n) for r in rows)
        per_part.append(
            [_Piece(emb(p.eqs), emb(p.ges), emb(p.gts), _embed(p.norm, off, n) if p.norm else None) for p in _pieces(part)]
        )
    out = []
    for combo in itertools.product(*per_part):
        norms = [p.norm for p in combo if p.norm is not None and not p.gts]
        norm = None
        if norms:
            norm = norms[0]
            for extra in norms[1:]:
                norm = tuple(a + b for a, b in zip(norm, extra))
        out.append(
            _Piece(
                sum((p.eqs for p in combo), ()),
                sum((p.ges for p in combo), ()),
                sum((p.gts for p in combo), ()),
                norm,
            )
        )
    return out


def nonzero_cone_point(cone: Cone, basis: Sequence[Vec]) -> Optional[Vec]:
    """A nonzero element of ``cone`` inside ``span(basis)``, or None."""
    basis = [vec(b) for b in basis]
    k = len(basis)
    if k == 0:
        return None
    for piece in _pieces(cone):
        proj = lambda r: tuple(dot(r, b) for b in basis)
        cons = [LinConstraint.eq(proj(r)) for r in piece.eqs]
        cons += [LinConstraint.ge(proj(r)) for r in piece.ges]
        cons += [LinConstraint.gt(proj(r)) for r in piece.gts]
        if not piece.gts:
            if piece.norm is None:
                continue
            cons.append(LinConstraint.eq(proj(piece.norm), 1))
        out = lp(None, cons, dim=k)
        if isinstance(out, Feasible):
            x = tuple([ZERO] * cone.dim)
            for c, b in zip(out.point, basis):
                if c:
                    x = tuple(a + c * y for a, y in zip(x, b))
            return x
    return None


def dual_rows(cone: Cone) -> tuple[list[Vec], list[Vec]]:
    """``(ineqs, eqs)`` cutting out the dual cone {phi : phi >= 0 on cone}."""
    n = cone.dim
    if isinstance(cone, FinGen):
        if not cone.generators:
            return [], []
        return list(cone.generators), []
    if isinstance(cone, Lex):
        if not cone.functionals:
            return [], [unit_vector(n, i) for i in range(n)] if cone.tail is Tail.ALL_OF_KERNEL else []
        f1 = cone.functionals[0]
        return [f1], kernel_basis([f1])
    ineqs, eqs = [], []
    for off, part in zip(cone.offsets, cone.parts):
        pi, pe = dual_rows(part)
        ineqs += [_embed(r, off, n) for r in pi]
        eqs += [_embed(r, off, n) for r in pe]
    return ineqs, eqs


# --------------------------------------------------------------------------
# groups, subgroups, states


@dataclass(frozen=True)
class ScaledOrderedGroup:
    dim: int
    cone: Cone
    unit: Vec

    def __post_init__(self):
        object.__setattr__(self, "unit", vec(self.unit))
        if self.cone.dim != self.dim or len(self.unit) != self.dim:
            raise ValueError("dimension mismatch between group, cone and unit")
        if not self.cone.contains(self.unit) or is_zero(self.unit):
            raise PreconditionError("unit is not a nonzero element of the cone", self.unit)
        bad = _order_unit_failure(self.cone, self.unit)
        if bad is not None:
            raise PreconditionError("unit is not an order unit", bad)


def _order_unit_failure(cone: Cone, u: Vec) -> Optional[Vec]:
    if isinstance(cone, FinGen):
        pc = cone.polycone
        if pc.equalities:
            return pc.equalities[0]
        for a in pc.inequalities:
            if dot(a, u) <= 0:
                return a
        return None
    if isinstance(cone, Lex):
        if not cone.functionals or dot(cone.functionals[0], u) <= 0:
            return u
        return None
    for part, ui in zip(cone.parts, cone.split(u)):
        bad = _order_unit_failure(part, ui)
        if bad is not None:
            return bad
    return None


class SpanKind(str, Enum):
    Z = "ZSpan"
    Q = "QSpan"


@dataclass(frozen=True)
class Subgroup:
    """Finitely generated subgroup; Q-spans are stored as an RREF basis."""

    dim: int
    generators: tuple = ()
    span_kind: SpanKind = SpanKind.Q

    def __post_init__(self):
        gens = tuple(vec(g) for g in self.generators)
        for g in gens:
            if len(g) != self.dim:
                raise ValueError(f"generator {g} not in dimension {self.dim}")
        kind = SpanKind(self.span_kind)
        object.__setattr__(self, "span_kind", kind)
        if kind is SpanKind.Q:
            gens = row_basis(gens, self.dim)
        object.__setattr__(self, "generators", gens)

    @cached_property
    def basis(self) -> tuple:
        return row_basis(self.generators, self.dim)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, x: Vec) -> bool:
        return in_span(self.basis, x)

    def as_qspan(self) -> "Subgroup":
        return Subgroup(self.dim, self.basis, SpanKind.Q)


@dataclass(frozen=True)
class State:
    functional: Vec

    def __post_init__(self):
        object.__setattr__(self, "functional", vec(self.functional))

    def __call__(self, x: Vec) -> Fraction:
        return dot(self.functional, x)


@dataclass(frozen=True)
class Polytope:
    inequalities: tuple  # phi . g >= 0
    equalities: tuple  # phi . e = 0
    unit: Vec  # phi . unit = 1
    vertices: tuple


@dataclass(frozen=True)
class Singleton:
    state: State


@dataclass(frozen=True)
class Mixture:
    parts: tuple
    offsets: tuple
    dim: int


StateSet = Union[Polytope, Singleton, Mixture]


def state_set_vertices(ss: StateSet) -> list[Vec]:
    if isinstance(ss, Polytope):
        return list(ss.vertices)
    if isinstance(ss, Singleton):
        return [ss.state.functional]
    out = []
    for off, part in zip(ss.offsets, ss.parts):
        out += [_embed(v, off, ss.dim) for v in state_set_vertices(part)]
    return out


def is_state(g: ScaledOrderedGroup, functional: Sequence) -> bool:
    phi = vec(functional)
    if len(phi) != g.dim or dot(phi, g.unit) != 1:
        return False
    ineqs, eqs = dual_rows(g.cone)
    return all(dot(phi, r) >= 0 for r in ineqs) and all(dot(phi, r) == 0 for r in eqs)


def _ray_vertices(g: ScaledOrderedGroup, ineqs, eqs) -> list[Vec]:
    rays, lin = double_description(g.dim, ineqs, eqs)
    if lin:
        raise AssertionError("state cone has a lineality space; the unit cannot be an order unit")
    out = []
    for r in rays:
        s = dot(r, g.unit)
        if s <= 0:
            raise AssertionError("dual ray vanishing on the order unit")
        out.append(scale(ONE / s, r))
    return sorted(out)


def state_set(g: ScaledOrderedGroup) -> StateSet:
    cone = g.cone
    if isinstance(cone, Lex):
        f1 = cone.functionals[0]
        return Singleton(State(scale(ONE / dot(f1, g.unit), f1)))
    if isinstance(cone, FinGen):
        verts = _ray_vertices(g, list(cone.generators), [])
        return Polytope(tuple(cone.generators), (), g.unit, tuple(verts))
    parts = []
    for part, ui in zip(cone.parts, cone.split(g.unit)):
        parts.append(state_set(ScaledOrderedGroup(part.dim, part, ui)))
    return Mixture(tuple(parts), tuple(cone.offsets), g.dim)


def state_vertices(g: ScaledOrderedGroup) -> list[Vec]:
    return state_set_vertices(state_set(g))


def _average(vectors: Sequence[Vec], dim: int) -> Vec:
    total = [ZERO] * dim
    for v in vectors:
        for i, x in enumerate(v):
            total[i] += x
    return tuple(x / len(vectors) for x in total)


def canonical_state(g: ScaledOrderedGroup) -> State:
    """Vertex average of the state polytope (exact stand-in for its analytic center)."""
    verts = state_vertices(g)
    return State(_average(verts, g.dim))


class StateInfeasible(PreconditionError):
    """No state satisfies the requested constraints; carries a Farkas vector."""

    def __init__(self, message, constraints, farkas):
        super().__init__(message, farkas)
        self.constraints = constraints
        self.farkas = farkas


def state_constraints(g: ScaledOrderedGroup, kill: Sequence[Vec] = (), nonneg: Sequence[Vec] = ()) -> list[LinConstraint]:
    ineqs, eqs = dual_rows(g.cone)
    cons = [LinConstraint.eq(g.unit, 1)]
    cons += [LinConstraint.ge(r) for r in ineqs]
    cons += [LinConstraint.eq(r) for r in eqs]
    cons += [LinConstraint.eq(h) for h in kill]
    cons += [LinConstraint.ge(h) for h in nonneg]
    return cons


def feasible_state_vertices(g: ScaledOrderedGroup, kill: Sequence[Vec] = (), nonneg: Sequence[Vec] = ()) -> list[Vec]:
    ineqs, eqs = dual_rows(g.cone)
    return _ray_vertices(g, ineqs + [vec(h) for h in nonneg], eqs + [vec(h) for h in kill])


def find_state(g: ScaledOrderedGroup, h1: Subgroup, h2: Sequence[Vec] = ()) -> State:
    """A state vanishing on ``h1`` and nonnegative on ``h2``.

    The answer is the vertex average of the feasible region. Raises
    :class:`StateInfeasible` with a Farkas certificate when none exists.
    """
    kill = list(h1.basis)
    nonneg = [vec(x) for x in h2]
    verts = feasible_state_vertices(g, kill, nonneg)
    if not verts:
        cons = state_constraints(g, kill, nonneg)
        out = lp(None, cons, dim=g.dim)
        if isinstance(out, Feasible):
            raise AssertionError("vertex enumeration missed a feasible state")
        raise StateInfeasible("no state vanishes on H1 and is nonnegative on H2", cons, out.farkas)
    phi = _average(verts, g.dim)
    if not all(c.holds(phi) for c in state_constraints(g, kill, nonneg)):
        raise AssertionError("vertex average violates the state constraints")
    return State(phi)


def is_faithful(g: ScaledOrderedGroup, state: State) -> bool:
    """Strictly positive on the cone minus the origin.

    For FinGen cones this is generator-strictness; in general it is
    singularity of the kernel of the functional.
    """
    if not is_state(g, state.functional):
        return False
    if isinstance(g.cone, FinGen):
        return all(state(x) > 0 for x in g.cone.generators)
    ker = kernel_basis([state.functional])
    return nonzero_cone_point(g.cone, ker) is None


def infinitesimals(g: ScaledOrderedGroup) -> Subgroup:
    """Common kernel of all states."""
    verts = state_vertices(g)
    return Subgroup(g.dim, kernel_basis(verts, g.dim), SpanKind.Q)


def cone_contains(g: Union[ScaledOrderedGroup, Cone], x: Sequence) -> Membership:
    cone = g.cone if isinstance(g, ScaledOrderedGroup) else g
    x = vec(x)
    if len(x) != cone.dim:
        raise ValueError(f"dimension mismatch: {len(x)} vs {cone.dim}")
    if is_zero(x):
        return Membership.ZERO
    return Membership.POSITIVE if cone.contains(x) else Membership.NOT_IN_CONE


# --------------------------------------------------------------------------
# singularity, divisibility, quotients


@dataclass(frozen=True)
class Singular:
    pass


@dataclass(frozen=True)
class NotSingular:
    witness: Vec


def is_singular(g: ScaledOrderedGroup, h: Subgroup) -> Union[Singular, NotSingular]:
    """Decide whether ``span(h)`` meets the cone only at the origin.

    Z-spans and Q-spans give the same verdict: a nonzero rational cone point
    in the Q-span has a positive multiple in the Z-span.
    """
    if h.dim != g.dim:
        raise ValueError("subgroup dimension mismatch")
    basis = h.basis
    if not basis:
        return Singular()
    for rep in cone_representatives(g.cone):
        if in_span(basis, rep):
            return NotSingular(rep)
    x = nonzero_cone_point(g.cone, basis)
    if x is None:
        return Singular()
    return NotSingular(primitive(x))


@dataclass(frozen=True)
class Holds:
    pass


@dataclass(frozen=True)
class Fails:
    x: Vec
    k: int


def satisfies_divisibility(h: Subgroup) -> Union[Holds, Fails]:
    """Whether ``k x in span_Z(h)`` forces ``x in span_Z(h)``."""
    if h.span_kind is SpanKind.Q:
        return Holds()
    defect = saturation_defect(list(h.generators))
    return Holds() if defect is None else Fails(*defect)


def quotient_projection(dim: int, basis: Sequence[Vec]) -> tuple[tuple, tuple]:
    """``(projection, lift)`` for the quotient by ``span(basis)``.

    The complement is spanned by standard basis vectors chosen greedily left
    to right; ``lift`` has them as columns, and ``projection`` reads the
    complement coordinates after the change of basis that puts the
    subspace last.
    """
    basis = [vec(b) for b in basis]
    comp = complement_indices(basis, dim)
    cols = [unit_vector(dim, i) for i in comp] + basis
    m = len(comp)
    change = tuple(tuple(cols[j][i] for j in range(dim)) for i in range(dim))
    inv = inverse(change) if dim else ()
    projection = tuple(inv[:m])
    lift = tuple(tuple(unit_vector(dim, i)[r] for i in comp) for r in range(dim))
    return projection, lift


@dataclass(frozen=True)
class Quotient:
    group: ScaledOrderedGroup
    projection: tuple  # m x n
    lift: tuple  # n x m
    kernel: Subgroup


def quotient_order(g: ScaledOrderedGroup, h: Subgroup) -> Quotient:
    gens = fingen_generators(g.cone)
    if h.span_kind is SpanKind.Z:
        div = satisfies_divisibility(h)
        if isinstance(div, Fails):
            raise PreconditionError("Z-span fails divisibility: the quotient would have torsion", (div.x, div.k))
    sing = is_singular(g, h)
    if isinstance(sing, NotSingular):
        raise PreconditionError("subgroup is not singular: the quotient cone would be improper", sing.witness)
    proj, lift = quotient_projection(g.dim, h.basis)
    m = len(proj)
    qgens = [matvec(proj, x) for x in gens]
    group = ScaledOrderedGroup(m, FinGen(m, qgens), matvec(proj, g.unit))
    return Quotient(group, proj, lift, h.as_qspan())


# --------------------------------------------------------------------------
# maximality


@dataclass(frozen=True)
class Maximal:
    pass


@dataclass(frozen=True)
class NotMaximal:
    witness: Vec


def is_maximally_singular(g: ScaledOrderedGroup, h: Subgroup) -> Union[Maximal, NotMaximal]:
    """Maximal iff the quotient order is total.

    Lexicographic cones are handled directly: a singular subspace lies in
    the common kernel of the functionals, and is maximal iff it equals it.
    """
    if isinstance(g.cone, Lex):
        kernel = kernel_basis(list(g.cone.functionals), g.dim) if g.cone.functionals else [unit_vector(g.dim, i) for i in range(g.dim)]
        for k in kernel:
            if not h.contains(k):
                return NotMaximal(sign_normalized(k))
        return Maximal()
    q = quotient_order(g, h)
    pc = q.group.cone.polycone
    witness = None
    if pc.equalities:
        witness = pc.equalities[0]
    else:
        facets = pc.inequalities
        for f, f2 in itertools.product(facets, facets):
            if f == f2:
                continue
            out = lp(None, [LinConstraint.gt(neg(f)), LinConstraint.gt(f2)], dim=q.group.dim)
            if isinstance(out, Feasible):
                witness = out.point
                break
    if witness is None:
        return Maximal()
    return NotMaximal(sign_normalized(matvec(q.lift, witness)))


class Maximality(str, Enum):
    MAXIMAL = "Maximal"
    BEST_EFFORT = "BestEffort"


@dataclass(frozen=True)
class Extension:
    subgroup: Subgroup
    flag: Maximality
    added: tuple = field(default=())


def singular_separator(g: ScaledOrderedGroup, h: Subgroup) -> Optional[Vec]:
    """A functional vanishing on ``h`` and strictly positive on every
    generator of a finitely generated cone; exists iff ``h`` is singular."""
    gens = fingen_generators(g.cone)
    cons = [LinConstraint.eq(b) for b in h.basis] + [LinConstraint.gt(x) for x in gens]
    out = lp(None, cons, dim=g.dim)
    return primitive(out.point) if isinstance(out, Feasible) else None


def maximalize(
    g: ScaledOrderedGroup,
    h: Subgroup,
    candidates: Sequence[Vec] = (),
    complete: bool = False,
    differences: bool = True,
) -> Extension:
    """Greedily extend a singular subgroup while singularity is preserved.

    Candidates are tried in order: standard basis vectors, differences of
    cone generators (unless ``differences=False``), then ``candidates``.
    With ``complete=True`` a basis of the kernel of a separating functional
    is appended, which always reaches a maximal subgroup for finitely
    generated cones.

    For finitely generated cones the differences alone already suffice: the
    difference of two extreme rays of a pointed quotient cone never lies in
    that cone or its negative.
    """
    if isinstance(is_singular(g, h), NotSingular):
        raise PreconditionError("cannot maximalize a non-singular subgroup")
    basis = list(h.basis)
    stream = [unit_vector(g.dim, i) for i in range(g.dim)]
    if differences and is_fingen(g.cone):
        gens = fingen_generators(g.cone)
        stream += [sub(a, b) for a, b in itertools.combinations(gens, 2)]
    stream += [vec(c) for c in candidates]
    if complete and is_fingen(g.cone):
        w = singular_separator(g, h)
        if w is not None:
            stream += kernel_basis([w])
    added = []
    for c in stream:
        if len(basis) >= g.dim - 1 and is_fingen(g.cone):
            break
        if in_span(basis, c):
            continue
        trial = Subgroup(g.dim, basis + [c])
        if isinstance(is_singular(g, trial), Singular):
            basis = list(trial.basis)
            added.append(c)
    result = Subgroup(g.dim, basis)
    try:
        flag = Maximality.MAXIMAL if isinstance(is_maximally_singular(g, result), Maximal) else Maximality.BEST_EFFORT
    except UnsupportedCone:
        flag = Maximality.BEST_EFFORT
    return Extension(result, flag, tuple(added))


# --------------------------------------------------------------------------
# constructors


def rationalize(dim: int, integer_generators: Sequence[Sequence[int]], unit: Sequence) -> ScaledOrderedGroup:
    """Read an integer-generated cone over the rationals (primitive generators)."""
    gens = []
    for g in integer_generators:
        if any(Fraction(x).denominator != 1 for x in g):
            raise ValueError("rationalize expects integer generators")
        p = primitive(g)
        if not is_zero(p) and p not in gens:
            gens.append(p)
    return ScaledOrderedGroup(dim, FinGen(dim, gens), unit)


def direct_sum(groups: Sequence[ScaledOrderedGroup]) -> ScaledOrderedGroup:
    groups = list(groups)
    if not groups:
        raise ValueError("direct sum of no groups")
    if len(groups) == 1:
        return groups[0]
    cone = DirectSum(tuple(gr.cone for gr in groups))
    unit = sum((tuple(gr.unit) for gr in groups), ())
    return ScaledOrderedGroup(cone.dim, cone, unit)


def group_zero_cone(dim: int) -> FinGen:
    return FinGen(dim, ())


