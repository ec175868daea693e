"""``k0embed`` command line.

Exit codes: 0 when a verdict was computed (the verdict is printed), 1 when
a precondition or validation check failed (diagnostics are printed), 2 for
malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .. import __version__
from ..killing import PipelineAbort, check_certificate, kill_pipeline, phi_sign, sign_oracles
from ..nccc import (
    InconsistentInput,
    RankClass,
    classify,
    default_s,
    finiteness_census,
    reduce,
    validate,
)
from ..oracle import GridSpec, brute_infinitesimal, brute_membership, brute_phi, brute_reduce, grid_points
from ..ordgrp import (
    Maximal,
    NotSingular,
    PreconditionError,
    StateInfeasible,
    find_state,
    infinitesimals,
    is_maximally_singular,
    is_singular,
    maximalize,
    quotient_order,
)
from ..ratlin import fmt_vec, vec
from ..serial import MalformedDocument, parse_vec, qvec
from ..totalize import (
    Killable,
    doubling,
    faithful_kill_check,
    placements,
    totalize_with_state,
)
from . import documents as docs

# Concept each subcommand implements, printed with --paper-refs.
ANCHORS = {
    "check-singular": "singular subgroup: the span meets the positive cone only at 0",
    "quotient": "quotient order: x >= 0 iff x + y >= 0 for some y in the subgroup",
    "find-state": "state vanishing on H1 and nonnegative on H2",
    "infinitesimals": "infinitesimals: common kernel of all states (u + n x >= 0 for all n)",
    "maximalize": "maximally singular subgroup: the quotient order is total",
    "totalize": "lexicographic totalization through a faithful state",
    "placements": "three placements of an element killed by the state: positive, negative, zero",
    "doubling": "direct sum of an order and its reverse makes the diagonal singular",
    "faithful-kill": "obstruction: no faithful state vanishes on a singular element",
    "kill": "direct-sum killing pipeline: quotients, neg/pos cones, states, sign orders",
    "verify": "independent re-check of a kill certificate",
    "nccc": "rank calculus on cell complexes: W-set, deletion, Gamma split, case reduction",
    "oracle": "brute-force recomputation on small instances",
    "report": "figures and tables for the bundled examples",
    "corpus": "bundled example documents",
}

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


class Failure(Exception):
    """Precondition or validation failure (exit code 1)."""


def _vector(text: str, where: str) -> tuple:
    try:
        value = json.loads(text) if text.strip().startswith("[") else [t.strip() for t in text.split(",") if t.strip()]
    except json.JSONDecodeError:
        raise MalformedDocument(where, f"cannot read vector {text!r}") from None
    return parse_vec(value, where)


def _vector_or_doc(text: str, where: str, dim: Optional[int] = None) -> tuple:
    p = Path(text)
    if p.is_file():
        doc = docs.read_json(p)
        if isinstance(doc, dict) and doc.get("kind") == "subgroup":
            gens = docs.subgroup_from_doc(doc).generators
            if len(gens) != 1:
                raise MalformedDocument(text, "expected a subgroup document with exactly one generator")
            return gens[0]
        raise MalformedDocument(text, "expected a vector or a one-generator subgroup document")
    v = _vector(text, where)
    if dim is not None and len(v) != dim:
        raise MalformedDocument(where, f"expected length {dim}, got {len(v)}")
    return v


def _s_gens(items: Optional[Sequence[str]]):
    if not items:
        return None
    gens = []
    for item in items:
        p = Path(item)
        if p.is_file():
            sub = docs.load(p, "subgroup")
            gens += [tuple(int(x) for x in g) for g in sub.generators]
        else:
            v = _vector(item, "--s-gens")
            if any(x.denominator != 1 for x in v):
                raise MalformedDocument("--s-gens", "S generators must be integer vectors")
            gens.append(tuple(int(x) for x in v))
    return gens


def _write(doc: dict, out: Optional[str]):
    text = docs.dump(doc)
    if out:
        Path(out).write_text(text)
        print(f"wrote {out}")
    else:
        sys.stdout.write(text)


def _emit(doc: dict, out: Optional[str]):
    if out:
        Path(out).write_text(docs.dump(doc))
        print(f"wrote {out}")


# --------------------------------------------------------------------------
# commands


def cmd_check_singular(a):
    g = docs.load(a.group, "group")
    h = docs.load(a.subgroup, "subgroup")
    out = is_singular(g, h)
    if isinstance(out, NotSingular):
        print("NotSingular")
        print(f"witness: {fmt_vec(out.witness)}")
    else:
        print("Singular")


def cmd_quotient(a):
    g = docs.load(a.group, "group")
    h = docs.load(a.subgroup, "subgroup")
    q = quotient_order(g, h)
    print(f"quotient dimension: {q.group.dim}")
    for row in q.projection:
        print(f"projection row: {fmt_vec(row)}")
    print(f"cone: {json.dumps(docs.cone_to_doc(q.group.cone))}")
    print(f"unit: {fmt_vec(q.group.unit)}")
    _emit(docs.group_to_doc(q.group), a.out)


def cmd_find_state(a):
    g = docs.load(a.group, "group")
    h1 = docs.load(a.h1, "subgroup")
    h2 = docs.load(a.h2, "subgroup").generators if a.h2 else ()
    try:
        s = find_state(g, h1, h2)
    except StateInfeasible as exc:
        print("Infeasible")
        print(f"farkas: {qvec(exc.farkas)}")
        raise Failure("no state satisfies the constraints; the hypotheses on H1, H2 fail") from None
    print("State")
    print(f"functional: {fmt_vec(s.functional)}")
    _emit(docs.state_to_doc(s), a.out)


def cmd_infinitesimals(a):
    g = docs.load(a.group, "group")
    inf = infinitesimals(g)
    print(f"Infinitesimals (dimension {inf.rank})")
    for b in inf.basis:
        print(f"basis: {fmt_vec(b)}")


def cmd_maximalize(a):
    g = docs.load(a.group, "group")
    h = docs.load(a.subgroup, "subgroup")
    ext = maximalize(g, h, [_vector(c, "--candidate") for c in a.candidate or ()], complete=a.complete, differences=not a.no_differences)
    print(ext.flag.value)
    for b in ext.subgroup.basis:
        print(f"basis: {fmt_vec(b)}")
    verdict = is_maximally_singular(g, ext.subgroup)
    if not isinstance(verdict, Maximal):
        print(f"extension witness: {fmt_vec(verdict.witness)}")
    _emit(docs.subgroup_to_doc(ext.subgroup), a.out)


def _tiebreak(a, dim):
    return [_vector(t, "--tiebreak") for t in a.tiebreak] if a.tiebreak else None


def cmd_totalize(a):
    g = docs.load(a.group, "group")
    tau = docs.load(a.state, "state")
    p = totalize_with_state(g, tau, _tiebreak(a, g.dim), reverse=a.reverse)
    print("Totalized")
    for f in p.cone.functionals:
        print(f"functional: {fmt_vec(f)}")
    _emit(docs.group_to_doc(p), a.out)


def cmd_placements(a):
    g = docs.load(a.group, "group")
    tau = docs.load(a.state, "state")
    x = _vector_or_doc(a.x, "X", g.dim)
    rep = placements(g, tau, x, _tiebreak(a, g.dim))
    print(f"forward: {rep.sign_forward.value}")
    print(f"reverse: {rep.sign_reverse.value}")
    print(f"quotient: {rep.sign_quotient.value}")


def cmd_doubling(a):
    g = docs.load(a.group, "group")
    tau = docs.load(a.state, "state")
    d, diag = doubling(g, tau, _tiebreak(a, g.dim))
    print(f"Doubled group of dimension {d.dim}")
    for row in diag:
        print(f"diagonal row: {fmt_vec(row)}")
    _emit(docs.group_to_doc(d), a.out)


def cmd_faithful_kill(a):
    g = docs.load(a.group, "group")
    x = _vector_or_doc(a.x, "X", g.dim)
    strict = [_vector(s, "--strict-set") for s in a.strict_set] if a.strict_set else None
    out = faithful_kill_check(g, x, strict)
    if isinstance(out, Killable):
        print("Killable")
        print(f"state: {fmt_vec(out.state.functional)}")
    else:
        print("NotKillable")
        if out.blocking is not None:
            print(f"blocking element: {fmt_vec(out.blocking)}")
        else:
            print(f"no state vanishes at x; farkas: {qvec(out.farkas)}")


def cmd_kill(a):
    summands = docs.load(a.summands, "summands")
    h = docs.load(a.subgroup, "subgroup")
    cert = kill_pipeline(summands, h, seed=a.seed, samples=a.samples)
    _write(cert.to_document(), a.out)


def cmd_verify(a):
    doc = docs.read_json(a.cert)
    problems = check_certificate(doc)
    if problems:
        for p in problems:
            print(f"FAILED: {p}")
        raise Failure("certificate rejected")
    print("OK")


def _load_class(path: Optional[str], width: int) -> RankClass:
    if path is None:
        raise MalformedDocument("CLASS", "this subcommand needs a rank-class document")
    rc = docs.load(path, "rank-class")
    if len(rc.y) != width:
        raise MalformedDocument("rank-class.y", f"expected length {width}, got {len(rc.y)}")
    return rc


def cmd_nccc(a):
    desc = docs.load(a.desc, "nccc-descriptor")
    diags = validate(desc)
    if a.action == "validate":
        if diags:
            for d in diags:
                print(f"cell {d.cell}: {d.message} (residual {d.residual})")
            raise Failure("descriptor violates unitality or indexing")
        print("ok")
        return
    if diags:
        for d in diags:
            print(f"cell {d.cell}: {d.message} (residual {d.residual})")
        raise Failure("descriptor is invalid")
    s = _s_gens(a.s_gens)
    if a.action == "census":
        import itertools

        ys = list(itertools.product(range(a.box + 1), repeat=desc.width))
        c = finiteness_census(desc, ys, s)
        print(f"descriptors: {c.descriptors}")
        print(f"rank maps: {c.rank_maps}")
        print(f"bound: {c.bound}")
        return
    rc = _load_class(a.cls, desc.width)
    if not rc.witness_holds(default_s(desc) if s is None else s):
        raise Failure("the S-membership witness does not reproduce y")
    if a.action == "reduce":
        res = reduce(desc, s, rc.y)
        _print_reduction(res)
    else:
        cl = classify(desc, s, rc.y)
        print(cl.verdict.value)
        if cl.witness:
            print(f"witness: {list(cl.witness)}")
        if cl.result is not None:
            _print_reduction(cl.result)
            print(f"rank threshold: {cl.annotation['threshold']} (dimension {cl.annotation['dimension']})")


def _print_reduction(res):
    print(f"case trace: {[f'{c}({p})' for c, p in res.case_trace]}")
    print(f"image: {list(res.image_y)}")
    print(f"reduced blocks: {list(res.reduced.f0_blocks)} cells: {res.reduced.length}")
    if res.split is not None:
        print(f"split: F1 blocks {list(res.split.f1)}, B blocks {list(res.split.b_blocks)}")


def cmd_oracle(a):
    if a.what == "membership":
        g = docs.load(a.doc, "group")
        pts = grid_points(GridSpec(g.dim, a.den, a.bound))
        verdicts = brute_membership(g.cone, pts)
        print(f"points: {len(pts)} members: {sum(verdicts.values())}")
        if a.csv:
            with open(a.csv, "w") as fh:
                fh.write(",".join(f"x{i}" for i in range(g.dim)) + ",member\n")
                for p, v in verdicts.items():
                    fh.write(",".join(qvec(p)) + f",{int(v)}\n")
            print(f"wrote {a.csv}")
    elif a.what == "infinitesimal":
        g = docs.load(a.doc, "group")
        x = _vector_or_doc(a.x, "X", g.dim)
        print("Infinitesimal" if brute_infinitesimal(g.cone, g.unit, x, a.n_max) else "NotInfinitesimal")
    elif a.what == "phi":
        cert = docs.load(a.doc, "kill-certificate")
        if not cert.records:
            raise Failure("trivial certificate has no sign oracles")
        rec = cert.records[a.summand]
        x = _vector_or_doc(a.x, "X", len(rec.quotient_unit))
        negs = list(rec.neg_rays) + list(rec.neg_lineality) + [tuple(-t for t in v) for v in rec.neg_lineality]
        out = brute_phi(rec.quotient_generators, negs, x, a.k_max, a.coeff_bound)
        print("Inconclusive" if out is None else str(out))
        print(f"phi_sign: {phi_sign(sign_oracles(cert)[a.summand], x)}")
    elif a.what == "reduce":
        desc = docs.load(a.doc, "nccc-descriptor")
        rc = _load_class(a.x, desc.width)
        _print_reduction(brute_reduce(desc, _s_gens(a.s_gens), rc.y))


def cmd_report(a):
    from .report import build_report

    paths = build_report(Path(a.out_dir), group=a.group, state=a.state, descriptor=a.desc, s_gens=_s_gens(a.s_gens), radius=a.radius)
    for p in paths:
        print(f"wrote {p}")


def cmd_corpus(a):
    print(f"corpus: {CORPUS}")
    for p in sorted(CORPUS.glob("*.json")):
        print(p.name)


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="k0embed", description="Exact K0-level ordered-group computations with certificates.")
    p.add_argument("--version", action="version", version=f"k0embed {__version__}")
    p.add_argument("--paper-refs", action="store_true", help="print the concept each step implements")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("check-singular", cmd_check_singular, "decide whether a subgroup is singular")
    sp.add_argument("group")
    sp.add_argument("subgroup")

    sp = add("quotient", cmd_quotient, "quotient order by a singular subgroup")
    sp.add_argument("group")
    sp.add_argument("subgroup")
    sp.add_argument("--out")

    sp = add("find-state", cmd_find_state, "state killing H1 and nonnegative on H2")
    sp.add_argument("group")
    sp.add_argument("h1")
    sp.add_argument("h2", nargs="?")
    sp.add_argument("--out")

    sp = add("infinitesimals", cmd_infinitesimals, "basis of the infinitesimal subgroup")
    sp.add_argument("group")

    sp = add("maximalize", cmd_maximalize, "greedy extension to a maximal singular subgroup")
    sp.add_argument("group")
    sp.add_argument("subgroup")
    sp.add_argument("--candidate", action="append")
    sp.add_argument("--complete", action="store_true", help="append the kernel of a separating functional")
    sp.add_argument("--no-differences", action="store_true", help="skip cone-generator differences in the candidate stream")
    sp.add_argument("--out")

    for name, fn, help_ in (
        ("totalize", cmd_totalize, "lexicographic totalization through a faithful state"),
        ("doubling", cmd_doubling, "order plus reversed order, with the diagonal map"),
    ):
        sp = add(name, fn, help_)
        sp.add_argument("group")
        sp.add_argument("state")
        sp.add_argument("--tiebreak", action="append", help="tiebreak vector in ker(state); repeat in order")
        if name == "totalize":
            sp.add_argument("--reverse", action="store_true")
        sp.add_argument("--out")

    sp = add("placements", cmd_placements, "forward, reverse and quotient signs of x")
    sp.add_argument("group")
    sp.add_argument("state")
    sp.add_argument("x", help="vector like 1,-1 or a one-generator subgroup document")
    sp.add_argument("--tiebreak", action="append")

    sp = add("faithful-kill", cmd_faithful_kill, "can a faithful-on-S state vanish at x?")
    sp.add_argument("group")
    sp.add_argument("x")
    sp.add_argument("--strict-set", action="append")

    sp = add("kill", cmd_kill, "run the killing pipeline and emit a certificate")
    sp.add_argument("summands")
    sp.add_argument("subgroup")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--samples", type=int, default=200)
    sp.add_argument("--out")

    sp = add("verify", cmd_verify, "independently re-check a kill certificate")
    sp.add_argument("cert")

    sp = add("nccc", cmd_nccc, "cell-complex rank calculus")
    sp.add_argument("action", choices=["validate", "reduce", "classify", "census"])
    sp.add_argument("desc")
    sp.add_argument("cls", nargs="?", metavar="CLASS")
    sp.add_argument("--s-gens", action="append", help="integer S generator (or subgroup document); repeat")
    sp.add_argument("--box", type=int, default=2, help="census: enumerate y with entries 0..box")

    sp = add("oracle", cmd_oracle, "brute-force mirrors")
    sp.add_argument("what", choices=["membership", "infinitesimal", "phi", "reduce"])
    sp.add_argument("doc", help="group, certificate or descriptor document")
    sp.add_argument("x", nargs="?", help="vector, or rank-class document for reduce")
    sp.add_argument("--den", type=int, default=1)
    sp.add_argument("--bound", type=int, default=3)
    sp.add_argument("--csv")
    sp.add_argument("--n-max", type=int, default=50)
    sp.add_argument("--summand", type=int, default=0)
    sp.add_argument("--k-max", type=int, default=25)
    sp.add_argument("--coeff-bound", type=int, default=3)
    sp.add_argument("--s-gens", action="append")

    sp = add("report", cmd_report, "render figures and tables for a totalization and a census")
    sp.add_argument("--out-dir", default="report")
    sp.add_argument("--group")
    sp.add_argument("--state")
    sp.add_argument("--desc")
    sp.add_argument("--s-gens", action="append")
    sp.add_argument("--radius", type=int, default=10)

    add("corpus", cmd_corpus, "list the bundled example documents")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.paper_refs:
        key = args.command
        print(f"[concept] {ANCHORS.get(key, key)}")
    try:
        args.fn(args)
    except MalformedDocument as exc:
        print(f"malformed input: {exc}", file=sys.stderr)
        return 2
    except Failure as exc:
        print(f"failed: {exc}", file=sys.stderr)
        return 1
    except (PreconditionError, InconsistentInput, PipelineAbort) as exc:
        witness = getattr(exc, "witness", None)
        print(f"precondition failed: {exc}", file=sys.stderr)
        if witness is not None:
            print(f"witness: {_show(witness)}", file=sys.stderr)
        return 1
    except (ValueError, IndexError, TypeError) as exc:
        print(f"malformed input: {exc}", file=sys.stderr)
        return 2
    return 0


def _show(w) -> str:
    if isinstance(w, tuple) and w and all(not isinstance(t, (tuple, list)) for t in w):
        try:
            return fmt_vec(vec(w))
        except TypeError:
            pass
    return repr(w)


if __name__ == "__main__":
    sys.exit(main())
