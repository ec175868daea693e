"""Kill a singular subgroup of a direct sum by totally ordering each summand.

For each summand ``G_i`` the pipeline:

1. extracts ``G_i^zero``, the part of ``G`` living in coordinate block ``i``;
2. passes to the quotient ``H_i = G_i / G_i^zero``;
3. builds ``H_i^neg``, the block-``i`` shadows of elements of ``pi(G)``
   that are positive in every other block, and ``H_i^pos = -H_i^neg``;
4. picks a state ``tau_i`` killing ``G_i^zero`` and nonnegative on the
   preimage of ``H_i^pos`` (faithful for E-class summands);
5. orders ``H_i`` by the sign function ``Phi_i``, whose positive part is the
   cone ``K_i = H_i^+ + H_i^pos``.

Each stage checks its claim exactly and aborts with a witness on failure.
The result is a :class:`KillCertificate` whose every field is canonical, so
an independent checker can recompute and compare it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

from ..ordgrp import (
    FinGen,
    PreconditionError,
    ScaledOrderedGroup,
    State,
    Subgroup,
    canonical_state,
    direct_sum,
    find_state,
    is_faithful,
    quotient_order,
    singular_separator,
    is_singular,
)
from ..ratlin import (
    Feasible,
    LinConstraint,
    PolyCone,
    Vec,
    combination,
    dot,
    double_description,
    is_zero,
    kernel_basis,
    lp,
    matvec,
    neg,
    primitive,
    rank,
    row_basis,
    scale,
    transpose,
    vec,
)
from .certificate import KillCertificate, SummandRecord, input_digest
from .sampling import sample_points

VERDICT = "Singular"
TRIVIAL_VERDICT = "Singular (trivial subgroup)"


class Flavor(str, Enum):
    E = "EClass"
    AF = "AFClass"


@dataclass(frozen=True)
class SummandSpec:
    group: ScaledOrderedGroup
    flavor: Flavor

    def __post_init__(self):
        object.__setattr__(self, "flavor", Flavor(self.flavor))
        if not isinstance(self.group.cone, FinGen):
            raise PreconditionError("summand cones must be finitely generated")
        gens = self.group.cone.generators
        if self.flavor is Flavor.AF and gens and rank(gens) < len(gens):
            raise PreconditionError("AF-class summand cone is not simplicial: generators are dependent")
        if self.flavor is Flavor.E and not is_faithful(self.group, canonical_state(self.group)):
            raise PreconditionError("E-class summand admits no faithful state")

    @property
    def dim(self) -> int:
        return self.group.dim


class PipelineAbort(PreconditionError):
    def __init__(self, stage: str, message: str, witness=None):
        super().__init__(f"{stage}: {message}", witness)
        self.stage = stage


def block_offsets(dims: Sequence[int]) -> list[int]:
    out, k = [], 0
    for d in dims:
        out.append(k)
        k += d
    return out


def _block(x: Vec, offset: int, dim: int) -> Vec:
    return tuple(x[offset : offset + dim])


def _embed(v: Vec, offset: int, total: int) -> Vec:
    out = [0] * total
    out[offset : offset + len(v)] = v
    return vec(out)


def coordinate_zero_subgroup(g: Subgroup, i: int, dims: Sequence[int]) -> Subgroup:
    """``span(g)`` intersected with coordinate block ``i``, read inside the block."""
    offs = block_offsets(dims)
    lo, hi = offs[i], offs[i] + dims[i]
    basis = g.basis
    if not basis:
        return Subgroup(dims[i], ())
    outside = [j for j in range(g.dim) if not lo <= j < hi]
    if outside:
        system = [tuple(b[j] for b in basis) for j in outside]
        coeffs = kernel_basis(system, len(basis))
    else:
        coeffs = kernel_basis([], len(basis))
    vectors = [_block(combination(c, basis, g.dim), lo, dims[i]) for c in coeffs]
    return Subgroup(dims[i], vectors)


# --------------------------------------------------------------------------
# sign oracles


@dataclass(frozen=True)
class SignOracle:
    """Sign function on a quotient ``H``: +1 on ``K = H^+ + H^pos`` minus 0."""

    dim: int
    positive: PolyCone
    neg_cone: PolyCone
    sign_cone: PolyCone
    cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    @classmethod
    def build(cls, positive: PolyCone, neg_cone: PolyCone) -> "SignOracle":
        pos_gens = [neg(g) for g in neg_cone.generators]
        sign_cone = PolyCone.from_generators(positive.dim, list(positive.generators) + pos_gens)
        return cls(positive.dim, positive, neg_cone, sign_cone)


class SignUndefined(PreconditionError):
    pass


def phi_sign(oracle: SignOracle, x: Sequence) -> int:
    """0 at the origin, +1 if some ``a`` in ``H^neg`` has ``a + x >= 0``,
    -1 if the same holds for ``-x``.

    Raises :class:`SignUndefined` when neither holds (the sign cone is not
    total, which a maximal input rules out).
    """
    x = vec(x)
    if len(x) != oracle.dim:
        raise ValueError(f"dimension mismatch: {len(x)} vs {oracle.dim}")
    hit = oracle.cache.get(x)
    if hit is not None:
        return hit
    if is_zero(x):
        out = 0
    elif oracle.sign_cone.contains(x):
        out = 1
    elif oracle.sign_cone.contains(neg(x)):
        out = -1
    else:
        raise SignUndefined("neither x nor -x is reachable from H^neg into the positive cone", x)
    oracle.cache[x] = out
    return out


def _reaches_positive(oracle: SignOracle, x: Vec) -> bool:
    """LP form of: some ``a`` in the neg cone has ``a + x`` in ``H^+``."""
    m = oracle.dim
    cons = []
    for r in oracle.neg_cone.inequalities:
        cons.append(LinConstraint.ge(r))
    for e in oracle.neg_cone.equalities:
        cons.append(LinConstraint.eq(e))
    for r in oracle.positive.inequalities:
        cons.append(LinConstraint.ge(r, -dot(r, x)))
    for e in oracle.positive.equalities:
        cons.append(LinConstraint.eq(e, -dot(e, x)))
    return isinstance(lp(None, cons, dim=m), Feasible)


def phi_sign_lp(oracle: SignOracle, x: Sequence) -> int:
    """Definitional sign via two feasibility LPs; used for cross-checks."""
    x = vec(x)
    if is_zero(x):
        return 0
    up, down = _reaches_positive(oracle, x), _reaches_positive(oracle, neg(x))
    if up and down:
        raise PreconditionError("sign is both +1 and -1", x)
    if up:
        return 1
    if down:
        return -1
    raise SignUndefined("neither x nor -x is reachable from H^neg into the positive cone", x)


# --------------------------------------------------------------------------
# stages


@dataclass(frozen=True)
class Claim1Report:
    image_basis: tuple
    image_separator: Vec
    pure_coordinate: tuple
    maximal: bool


def image_of(basis: Sequence[Vec], projections: Sequence[tuple], dims: Sequence[int]) -> tuple:
    """RREF basis of ``pi(span basis)`` under the blockwise projections."""
    offs = block_offsets(dims)
    rows = []
    for b in basis:
        row: tuple = ()
        for p, off, d in zip(projections, offs, dims):
            row += matvec(p, _block(b, off, d)) if p else ()
        rows.append(row)
    total = sum(len(p) for p in projections)
    return row_basis(rows, total)


def _separator(eq_rows: Sequence[Vec], gt_rows: Sequence[Vec], dim: int) -> Optional[Vec]:
    cons = [LinConstraint.eq(b) for b in eq_rows] + [LinConstraint.gt(x) for x in gt_rows]
    out = lp(None, cons, dim=dim)
    return primitive(out.point) if isinstance(out, Feasible) else None


def verify_claim1(summands: Sequence[SummandSpec], g: Subgroup, quotients) -> Claim1Report:
    """Singularity of ``pi(G)``, no pure-coordinate elements, maximality of ``G``."""
    dims = [s.dim for s in summands]
    qdims = [q.group.dim for q in quotients]
    image = image_of(g.basis, [q.projection for q in quotients], dims)
    total = sum(qdims)
    qoffs = block_offsets(qdims)
    gens = [_embed(x, off, total) for q, off in zip(quotients, qoffs) for x in q.group.cone.generators]
    sep = _separator(image, gens, total)
    if sep is None:
        witness = is_singular(direct_sum([q.group for q in quotients]), Subgroup(total, image))
        raise PipelineAbort("claim 1", "pi(G) meets the positive cone", getattr(witness, "witness", None))
    pure = tuple(coordinate_zero_subgroup(Subgroup(total, image), i, qdims).basis for i in range(len(qdims)))
    for i, b in enumerate(pure):
        if b:
            raise PipelineAbort("claim 1", f"pi(G) has a nonzero element in block {i}", b[0])
    maximal = g.rank == sum(dims) - 1
    if not maximal:
        raise PipelineAbort("claim 1", "G is not maximally singular (codimension exceeds 1)")
    return Claim1Report(image, sep, pure, maximal)


def neg_pos_cones(quotients, image_basis: Sequence[Vec]) -> list[tuple[PolyCone, PolyCone]]:
    """Per block: (H^neg, H^pos) as canonical polyhedral cones."""
    qdims = [q.group.dim for q in quotients]
    qoffs = block_offsets(qdims)
    k = len(image_basis)
    out = []
    for i, (d, off) in enumerate(zip(qdims, qoffs)):
        if k == 0:
            zero = PolyCone.from_generators(d, [])
            out.append((zero, zero))
            continue
        ineqs, eqs = [], []
        for j, (q, offj) in enumerate(zip(quotients, qoffs)):
            if j == i:
                continue
            pc = q.group.cone.polycone
            blocks = [_block(b, offj, qdims[j]) for b in image_basis]
            ineqs += [tuple(dot(r, bb) for bb in blocks) for r in pc.inequalities]
            eqs += [tuple(dot(e, bb) for bb in blocks) for e in pc.equalities]
        rays, lin = double_description(k, ineqs, eqs)
        mine = [_block(b, off, d) for b in image_basis]
        gens = [combination(c, mine, d) for c in list(rays) + list(lin) + [neg(l) for l in lin]]
        negc = PolyCone.from_generators(d, gens)
        posc = PolyCone.from_generators(d, [neg(x) for x in negc.generators])
        out.append((negc, posc))
    for (negc, posc), q in zip(out, quotients):
        positive = q.group.cone.polycone
        joint = PolyCone.from_generators(negc.dim, list(positive.generators) + list(posc.generators))
        if joint.lineality:
            raise PipelineAbort("claim 3", "H^neg meets the positive cone", joint.lineality[0])
    return out


def claim2_state(summand: SummandSpec, zero: Subgroup, pos_preimage: Sequence[Vec]) -> tuple[State, bool]:
    """State killing ``zero`` and nonnegative on ``pos_preimage``.

    The vertex average of the feasible region is faithful whenever any
    feasible state is, so E-class summands abort exactly when no faithful
    choice exists.
    """
    tau = find_state(summand.group, zero, pos_preimage)
    faithful = all(tau(x) > 0 for x in summand.group.cone.generators)
    if summand.flavor is Flavor.E and not faithful:
        raise PipelineAbort("claim 2", "no faithful state kills G_i^zero and is nonnegative on H_i^pos", tau.functional)
    return tau, faithful


def induced_state(tau: State, lift: tuple) -> Vec:
    return matvec(transpose(lift), tau.functional) if lift else ()


def sign_state_vertices(sign_cone: PolyCone, unit: Vec) -> tuple:
    """Vertices of the state set of ``(H, K, unit)``."""
    rays, lin = double_description(sign_cone.dim, list(sign_cone.generators))
    if lin:
        raise PipelineAbort("claim 8", "sign cone is not full-dimensional", lin[0])
    out = []
    for r in rays:
        s = dot(r, unit)
        if s <= 0:
            raise PipelineAbort("claim 8", "unit is not an order unit for the sign cone", r)
        out.append(scale(1 / s, r))
    return tuple(sorted(out))


# --------------------------------------------------------------------------
# pipeline


def _summand_tuple(s: SummandSpec):
    return (s.dim, s.group.cone.generators, s.group.unit, s.flavor.value)


def kill_pipeline(summands: Sequence[SummandSpec], g: Subgroup, seed: int = 0, samples: int = 200) -> KillCertificate:
    summands = list(summands)
    if not summands:
        raise PreconditionError("no summands")
    dims = [s.dim for s in summands]
    total = sum(dims)
    if g.dim != total:
        raise ValueError(f"subgroup dimension {g.dim} does not match the direct sum ({total})")
    inputs = tuple(_summand_tuple(s) for s in summands)
    digest = input_digest(inputs, g.generators, seed, samples)
    common = dict(summands=inputs, subgroup=g.generators, seed=seed, sample_count=samples, input_digest=digest)
    if g.rank == 0:
        return KillCertificate(
            **common,
            trivial=True,
            separator=None,
            extended=False,
            subgroup_basis=(),
            image_basis=(),
            image_separator=None,
            pure_coordinate=(),
            records=(),
            sign_separator=None,
            samples=(),
            verdict=TRIVIAL_VERDICT,
        )

    whole = direct_sum([s.group for s in summands])
    separator = singular_separator(whole, g.as_qspan())
    if separator is None:
        sing = is_singular(whole, g)
        raise PipelineAbort("input", "G is not singular in the direct sum", getattr(sing, "witness", None))
    # Canonical maximal extension: the kernel of the canonical separator.
    gmax = Subgroup(total, kernel_basis([separator]))
    extended = gmax.rank != g.rank
    zeros = [coordinate_zero_subgroup(gmax, i, dims) for i in range(len(dims))]
    quotients = [quotient_order(s.group, z) for s, z in zip(summands, zeros)]
    c1 = verify_claim1(summands, gmax, quotients)
    cones = neg_pos_cones(quotients, c1.image_basis)

    records, oracles, induced = [], [], []
    for s, z, q, (negc, posc) in zip(summands, zeros, quotients, cones):
        pre = [matvec(q.lift, x) for x in posc.generators]
        tau, faithful = claim2_state(s, z, pre)
        tbar = induced_state(tau, q.lift)
        oracle = SignOracle.build(q.group.cone.polycone, negc)
        if oracle.sign_cone.lineality:
            raise PipelineAbort("claim 3", "some x has sign +1 and -1", oracle.sign_cone.lineality[0])
        for r in oracle.sign_cone.rays:
            if dot(tbar, r) < 0:
                raise PipelineAbort("claim 7", "induced state is negative on a sign-positive element", r)
        verts = sign_state_vertices(oracle.sign_cone, q.group.unit)
        if verts != (tbar,):
            raise PipelineAbort("claim 8", "sign order has more than one state, or not the induced one", verts)
        oracles.append(oracle)
        induced.append(tbar)
        records.append(
            SummandRecord(
                zero_basis=z.basis,
                projection=q.projection,
                lift=q.lift,
                quotient_generators=tuple(matvec(q.projection, x) for x in s.group.cone.generators),
                quotient_unit=q.group.unit,
                neg_rays=negc.rays,
                neg_lineality=negc.lineality,
                sign_cone_rays=oracle.sign_cone.rays,
                sign_cone_facets=oracle.sign_cone.inequalities,
                state=tau.functional,
                faithful=faithful,
                induced_state=tbar,
                sign_states=verts,
            )
        )

    qdims = [q.group.dim for q in quotients]
    qtotal = sum(qdims)
    qoffs = block_offsets(qdims)
    sign_gens = [_embed(r, off, qtotal) for o, off in zip(oracles, qoffs) for r in o.sign_cone.rays]
    sign_sep = _separator(c1.image_basis, sign_gens, qtotal)
    if sign_sep is None:
        raise PipelineAbort("claim 6", "pi(G) has a nonzero element with every sign >= 0")

    transcript = []
    for p in sample_points(c1.image_basis, qtotal, seed, samples):
        parts = [_block(p, off, d) for off, d in zip(qoffs, qdims)]
        signs = tuple(phi_sign(o, x) for o, x in zip(oracles, parts))
        if not is_zero(p) and all(sg >= 0 for sg in signs):
            raise PipelineAbort("claim 6", "sampled element of pi(G) has every sign >= 0", p)
        for sg, x, tbar in zip(signs, parts, induced):
            if sg >= 0 and dot(tbar, x) < 0:
                raise PipelineAbort("claim 7", "sign-positive element with negative induced state", x)
        transcript.append((p, signs))

    return KillCertificate(
        **common,
        trivial=False,
        separator=separator,
        extended=extended,
        subgroup_basis=gmax.basis,
        image_basis=c1.image_basis,
        image_separator=c1.image_separator,
        pure_coordinate=c1.pure_coordinate,
        records=tuple(records),
        sign_separator=sign_sep,
        samples=tuple(transcript),
        verdict=VERDICT,
    )


def sign_oracles(cert: KillCertificate) -> list[SignOracle]:
    """Rebuild the per-summand sign oracles recorded in a certificate."""
    out = []
    for r in cert.records:
        d = len(r.quotient_unit)
        positive = PolyCone.from_generators(d, r.quotient_generators)
        negc = PolyCone.from_generators(d, list(r.neg_rays) + list(r.neg_lineality) + [neg(x) for x in r.neg_lineality])
        out.append(SignOracle.build(positive, negc))
    return out

