"""Independent checker for kill certificates.

Only :mod:`k0embed.ratlin` is used here; no pipeline code. Every recorded
field is canonical, so the checker re-derives it from the certificate's
input and requires exact equality, and also re-checks the defining
equations of each witness.
"""

from __future__ import annotations

from typing import Any, Union

from .. import __version__
from ..ratlin import (
    Feasible,
    LinConstraint,
    PolyCone,
    combination,
    complement_indices,
    dot,
    double_description,
    inverse,
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
    unit_vector,
)
from .certificate import KillCertificate, from_document, input_digest
from .sampling import sample_points

FLAVORS = ("EClass", "AFClass")
VERDICT = "Singular"
TRIVIAL_VERDICT = "Singular (trivial subgroup)"


class _Fail(Exception):
    pass


def _need(cond: bool, message: str):
    if not cond:
        raise _Fail(message)


def _offsets(dims):
    out, k = [], 0
    for d in dims:
        out.append(k)
        k += d
    return out


def _embed(v, off, total):
    out = [0] * total
    out[off : off + len(v)] = v
    return tuple(out)


def _separator(eq_rows, gt_rows, dim):
    cons = [LinConstraint.eq(b) for b in eq_rows] + [LinConstraint.gt(x) for x in gt_rows]
    out = lp(None, cons, dim=dim)
    return primitive(out.point) if isinstance(out, Feasible) else None


def _block_zero(basis, lo, d, total):
    if not basis:
        return ()
    outside = [j for j in range(total) if not lo <= j < lo + d]
    system = [tuple(b[j] for b in basis) for j in outside]
    coeffs = kernel_basis(system, len(basis)) if system else kernel_basis([], len(basis))
    vectors = [tuple(combination(c, basis, total)[lo : lo + d]) for c in coeffs]
    return row_basis(vectors, d) if vectors else ()


def _quotient_maps(dim, basis):
    comp = complement_indices(basis, dim)
    cols = [unit_vector(dim, i) for i in comp] + list(basis)
    change = tuple(tuple(cols[j][i] for j in range(dim)) for i in range(dim))
    inv = inverse(change)
    projection = tuple(inv[: len(comp)])
    lift = tuple(tuple(unit_vector(dim, i)[r] for i in comp) for r in range(dim))
    return projection, lift


def _check_summand(dim, gens, unit, flavor, where):
    _need(flavor in FLAVORS, f"{where}: unknown flavor {flavor!r}")
    _need(len(gens) > 0, f"{where}: empty cone")
    pc = PolyCone.from_generators(dim, gens)
    _need(not pc.lineality, f"{where}: cone is not proper")
    _need(not pc.equalities and all(dot(a, unit) > 0 for a in pc.inequalities), f"{where}: unit is not an order unit")
    if flavor == "AFClass":
        _need(rank(gens) == len(gens), f"{where}: AF-class cone is not simplicial")
    else:
        rays, _ = double_description(dim, gens)
        verts = [scale(1 / dot(r, unit), r) for r in rays]
        avg = tuple(sum(v[i] for v in verts) / len(verts) for i in range(dim))
        _need(all(dot(avg, g) > 0 for g in gens), f"{where}: E-class summand has no faithful state")


def check_certificate(cert: Union[KillCertificate, dict, Any]) -> list[str]:
    """Return the list of failed checks (empty iff the certificate is valid).

    Structurally malformed documents raise ``MalformedDocument``.
    """
    if not isinstance(cert, KillCertificate):
        cert = from_document(cert)
    try:
        _check(cert)
    except _Fail as exc:
        return [str(exc)]
    except (ValueError, ZeroDivisionError, IndexError) as exc:
        return [f"inconsistent data: {exc}"]
    return []


def verify_certificate(cert) -> bool:
    return not check_certificate(cert)


def _check(c: KillCertificate):
    _need(c.tool_version == __version__, f"tool version {c.tool_version!r} differs from {__version__!r}")
    _need(c.input_digest == input_digest(c.summands, c.subgroup, c.seed, c.sample_count), "input digest mismatch")
    _need(c.sample_count >= 0, "negative sample count")
    dims = [s[0] for s in c.summands]
    _need(len(dims) > 0, "no summands")
    total = sum(dims)
    offs = _offsets(dims)
    for i, (dim, gens, unit, flavor) in enumerate(c.summands):
        _check_summand(dim, gens, unit, flavor, f"summand {i}")
    input_basis = row_basis(c.subgroup, total) if c.subgroup else ()

    if not input_basis:
        _need(c.trivial, "zero subgroup must give a trivial certificate")
        _need(
            c.separator is None
            and not c.extended
            and not c.subgroup_basis
            and not c.image_basis
            and c.image_separator is None
            and not c.pure_coordinate
            and not c.records
            and c.sign_separator is None
            and not c.samples,
            "trivial certificate carries data",
        )
        _need(c.verdict == TRIVIAL_VERDICT, "wrong verdict")
        return
    _need(not c.trivial, "nonzero subgroup marked trivial")

    all_gens = [_embed(g, off, total) for (_, gens, _, _), off in zip(c.summands, offs) for g in gens]
    sep = _separator(input_basis, all_gens, total)
    _need(sep is not None, "input subgroup is not singular")
    _need(c.separator == sep, "separator differs from the canonical one")
    _need(all(dot(sep, b) == 0 for b in c.subgroup) and all(dot(sep, g) > 0 for g in all_gens), "separator equations fail")
    gmax = row_basis(kernel_basis([sep]), total)
    _need(c.subgroup_basis == gmax, "maximal subgroup basis mismatch")
    _need(c.extended == (len(gmax) != len(input_basis)), "extension flag mismatch")
    _need(len(gmax) == total - 1, "subgroup is not maximally singular")
    _need(all(rank(list(gmax) + [b]) == len(gmax) for b in input_basis), "input subgroup not contained in its extension")

    _need(len(c.records) == len(dims), "one record per summand required")
    quotient = []
    for i, ((dim, gens, unit, _), off, r) in enumerate(zip(c.summands, offs, c.records)):
        w = f"summand {i}"
        zero = _block_zero(gmax, off, dim, total)
        _need(r.zero_basis == zero, f"{w}: G_i^zero basis mismatch")
        proj, lift = _quotient_maps(dim, zero)
        _need(r.projection == proj and r.lift == lift, f"{w}: quotient maps mismatch")
        m = len(proj)
        _need(all(is_zero(matvec(proj, z)) for z in zero), f"{w}: projection does not kill G_i^zero")
        _need(all(matvec(proj, matvec(lift, unit_vector(m, j))) == unit_vector(m, j) for j in range(m)), f"{w}: lift is not a section")
        qgens = tuple(matvec(proj, g) for g in gens)
        _need(r.quotient_generators == qgens, f"{w}: quotient generators mismatch")
        _need(r.quotient_unit == matvec(proj, unit), f"{w}: quotient unit mismatch")
        quotient.append((m, qgens))

    qdims = [m for m, _ in quotient]
    qtotal = sum(qdims)
    qoffs = _offsets(qdims)
    rows = []
    for b in gmax:
        row = ()
        for r, off, d in zip(c.records, offs, dims):
            row += matvec(r.projection, b[off : off + d]) if r.projection else ()
        rows.append(row)
    image = row_basis(rows, qtotal)
    _need(c.image_basis == image, "image basis mismatch")
    qall = [_embed(g, off, qtotal) for (m, qg), off in zip(quotient, qoffs) for g in qg if not is_zero(g)]
    isep = _separator(image, qall, qtotal)
    _need(isep is not None and c.image_separator == isep, "image separator mismatch (pi(G) singularity)")
    _need(all(dot(isep, b) == 0 for b in image) and all(dot(isep, g) > 0 for g in qall), "image separator equations fail")
    pure = tuple(_block_zero(image, off, d, qtotal) for off, d in zip(qoffs, qdims))
    _need(c.pure_coordinate == pure, "pure-coordinate record mismatch")
    _need(all(not b for b in pure), "pi(G) has a pure-coordinate element")

    sign_cones, induced = [], []
    k = len(image)
    for i, ((dim, gens, unit, flavor), r, (m, qg), off) in enumerate(zip(c.summands, c.records, quotient, qoffs)):
        w = f"summand {i}"
        positive = PolyCone.from_generators(m, qg)
        ineqs, eqs = [], []
        for j, ((mj, qgj), offj) in enumerate(zip(quotient, qoffs)):
            if j == i:
                continue
            pcj = PolyCone.from_generators(mj, qgj)
            blocks = [b[offj : offj + mj] for b in image]
            ineqs += [tuple(dot(a, bb) for bb in blocks) for a in pcj.inequalities]
            eqs += [tuple(dot(e, bb) for bb in blocks) for e in pcj.equalities]
        rays, lin = double_description(k, ineqs, eqs)
        mine = [b[off : off + m] for b in image]
        negc = PolyCone.from_generators(m, [combination(cc, mine, m) for cc in list(rays) + list(lin) + [neg(x) for x in lin]])
        _need(r.neg_rays == negc.rays and r.neg_lineality == negc.lineality, f"{w}: H^neg mismatch")
        posc = PolyCone.from_generators(m, [neg(x) for x in negc.generators])
        sign = PolyCone.from_generators(m, list(positive.generators) + [neg(x) for x in negc.generators])
        _need(r.sign_cone_rays == sign.rays and r.sign_cone_facets == sign.inequalities, f"{w}: sign cone mismatch")
        _need(not sign.lineality, f"{w}: some element has both signs")

        pre = [matvec(lift, x) for x in posc.generators] if (lift := r.lift) else []
        srays, slin = double_description(dim, list(gens) + pre, list(r.zero_basis))
        _need(not slin and srays, f"{w}: no state kills G_i^zero and is nonnegative on H^pos")
        verts = sorted(scale(1 / dot(x, unit), x) for x in srays)
        tau = tuple(sum(v[t] for v in verts) / len(verts) for t in range(dim))
        _need(r.state == tau, f"{w}: state differs from the canonical one")
        _need(dot(tau, unit) == 1 and all(dot(tau, g) >= 0 for g in gens), f"{w}: state equations fail")
        _need(all(dot(tau, z) == 0 for z in r.zero_basis) and all(dot(tau, p) >= 0 for p in pre), f"{w}: claim 2 fails")
        faithful = all(dot(tau, g) > 0 for g in gens)
        _need(r.faithful == faithful, f"{w}: faithfulness flag mismatch")
        _need(faithful or flavor == "AFClass", f"{w}: E-class state is not faithful")
        tbar = matvec(transpose(lift), tau) if lift else ()
        _need(r.induced_state == tbar, f"{w}: induced state mismatch")
        _need(all(dot(tbar, x) >= 0 for x in sign.rays), f"{w}: claim 7 fails on the sign cone")
        drays, dlin = double_description(m, list(sign.generators))
        qunit = r.quotient_unit
        _need(not dlin and all(dot(x, qunit) > 0 for x in drays), f"{w}: sign cone state set is unbounded")
        states = tuple(sorted(scale(1 / dot(x, qunit), x) for x in drays))
        _need(r.sign_states == states and states == (tbar,), f"{w}: claim 8 fails")
        sign_cones.append(sign)
        induced.append(tbar)

    sign_gens = [_embed(x, off, qtotal) for s, off in zip(sign_cones, qoffs) for x in s.rays]
    ssep = _separator(image, sign_gens, qtotal)
    _need(ssep is not None and c.sign_separator == ssep, "claim 6 separator mismatch")
    _need(all(dot(ssep, b) == 0 for b in image) and all(dot(ssep, g) > 0 for g in sign_gens), "claim 6 separator equations fail")

    points = sample_points(image, qtotal, c.seed, c.sample_count)
    _need(len(points) == len(c.samples), "sample count mismatch")
    for p, (rp, rs) in zip(points, c.samples):
        _need(p == rp, "sample point differs from the seeded one")
        signs = []
        for s, off, d in zip(sign_cones, qoffs, qdims):
            x = p[off : off + d]
            signs.append(0 if is_zero(x) else 1 if s.contains(x) else -1 if s.contains(neg(x)) else None)
        _need(None not in signs, "sample with undefined sign")
        _need(tuple(signs) == rs, "sample signs mismatch")
        _need(is_zero(p) or any(sg < 0 for sg in signs), "claim 6 fails on a sample")
        for sg, s, off, d, tbar in zip(signs, sign_cones, qoffs, qdims, induced):
            _need(sg < 0 or dot(tbar, p[off : off + d]) >= 0, "claim 7 fails on a sample")
    _need(c.verdict == VERDICT, "wrong verdict")
