"""Acceptance criteria, each at its stated tolerance.

Every test records one PASS/FAIL line; the lines are echoed in the pytest
terminal summary.
"""

import itertools
import random
import time

from acceptance_log import record
from instances import (
    leaf_paths,
    mutate,
    nccc_corpus,
    pipeline_instance,
    random_combination,
    random_fingen_group,
    state_instance,
)
from k0embed.cli import documents as docs
from k0embed.cli.main import CORPUS, main
from k0embed.killing import kill_pipeline, phi_sign, phi_sign_lp, sign_oracles, verify_certificate
from k0embed.nccc import (
    Verdict,
    classify,
    delete_cell,
    finiteness_census,
    reduce,
    validate,
)
from k0embed.oracle import brute_infinitesimal, brute_phi, brute_reduce
from k0embed.ordgrp import (
    DirectSum,
    Lex,
    NotSingular,
    ScaledOrderedGroup,
    Singleton,
    Singular,
    StateInfeasible,
    Subgroup,
    find_state,
    infinitesimals,
    is_singular,
    is_state,
    state_set,
)
from k0embed.ratlin import check_farkas, dot, matvec
from k0embed.serial import MalformedDocument
from k0embed.totalize import Sign, doubling, placements, totalize_with_state


def neg(x):
    return tuple(-t for t in x)


def plus(x, y):
    return tuple(a + b for a, b in zip(x, y))


def test_criterion_1_sphere_example(capsys):
    g, x = CORPUS / "ex46_group.json", CORPUS / "ex46_x.json"
    start = time.perf_counter()
    outputs = []
    for argv in (["check-singular", g, x], ["infinitesimals", g], ["faithful-kill", g, "0,1,-1"]):
        code = main([str(a) for a in argv])
        outputs.append((code, capsys.readouterr().out))
    elapsed = time.perf_counter() - start
    (c1, singular), (c2, inf), (c3, kill) = outputs
    ok = (
        (c1, c2, c3) == (0, 0, 0)
        and singular.splitlines()[0] == "Singular"
        and "(0, 1, 0)" in inf
        and kill.splitlines()[0] == "NotKillable"
        and "blocking element: (0, 0, 1)" in kill
        and elapsed < 1.0
    )
    record(1, ok, f"Singular / infinitesimal (0,1,0) / NotKillable blocked by (0,0,1) in {elapsed:.3f}s")
    assert ok, outputs


def test_criterion_2_plane_closed_form():
    g = docs.load(CORPUS / "ex44_group.json", "group")
    tau = docs.load(CORPUS / "ex44_state.json", "state")
    p = totalize_with_state(g, tau)
    mismatches = [
        (a, b)
        for a in range(-10, 11)
        for b in range(-10, 11)
        if p.cone.contains((a, b)) != (a + b > 0 or (a + b == 0 and a >= 0))
    ]
    record(2, not mismatches, f"441 grid points, {len(mismatches)} mismatches")
    assert not mismatches


def test_criterion_3_placements():
    start = time.perf_counter()
    failures = []
    for seed in range(200):
        rng = random.Random(3000 + seed)
        g, tau, ker = state_instance(rng, 5)
        x = random_combination(rng, ker)
        rep = placements(g, tau, x)
        pair = (rep.sign_forward, rep.sign_reverse)
        if pair not in ((Sign.POS, Sign.NEG), (Sign.NEG, Sign.POS)) or rep.sign_quotient is not Sign.ZERO:
            failures.append((seed, "signs", pair, rep.sign_quotient))
        if state_set(totalize_with_state(g, tau)) != Singleton(tau):
            failures.append((seed, "state set"))
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 30
    record(3, ok, f"200 instances, {len(failures)} failures, {elapsed:.1f}s")
    assert ok, failures[:5]


def test_criterion_4_doubling():
    failures, outside = [], 0
    for seed in range(300):
        rng = random.Random(4000 + seed)
        g, tau, ker = state_instance(rng, 4)
        d, diag = doubling(g, tau)
        x = random_combination(rng, ker)
        if is_singular(d, Subgroup(d.dim, [matvec(diag, x)])) != Singular():
            failures.append((seed, "kernel", x))
        if outside < 100:
            y = tuple(rng.randint(-3, 3) for _ in range(g.dim))
            if tau(y) != 0:
                outside += 1
                if not isinstance(is_singular(d, Subgroup(d.dim, [matvec(diag, y)])), NotSingular):
                    failures.append((seed, "outside", y))
    ok = not failures and outside == 100
    record(4, ok, f"300 kernel elements, {outside} outside elements, {len(failures)} failures")
    assert ok, failures[:5]


def _infeasible_instance(rng, kind):
    g = random_fingen_group(rng, rng.randint(1, 4))
    if kind == 0:
        return g, Subgroup(g.dim, [g.unit]), []
    if kind == 1:
        total = tuple(sum(gen[i] for gen in g.cone.generators) for i in range(g.dim))
        return g, Subgroup(g.dim, [total]), []
    return g, Subgroup(g.dim, []), [neg(g.unit)]


def test_criterion_5_find_state():
    failures = []
    for seed in range(100):
        rng = random.Random(5000 + seed)
        g, tau, ker = state_instance(rng, 4)
        h1 = [random_combination(rng, ker)]
        h2 = [gen for gen in g.cone.generators if rng.random() < 0.5]
        h2 += [y for y in (tuple(rng.randint(-3, 3) for _ in range(g.dim)) for _ in range(3)) if tau(y) >= 0]
        s = find_state(g, Subgroup(g.dim, h1), h2)
        if not (is_state(g, s.functional) and all(s(h) == 0 for h in h1) and all(s(h) >= 0 for h in h2)):
            failures.append((seed, "feasible"))
    for seed in range(20):
        rng = random.Random(5500 + seed)
        g, h1, h2 = _infeasible_instance(rng, seed % 3)
        try:
            find_state(g, h1, h2)
            failures.append((seed, "infeasible accepted"))
        except StateInfeasible as exc:
            if not check_farkas(exc.constraints, exc.farkas):
                failures.append((seed, "farkas"))
    record(5, not failures, f"100 feasible + 20 infeasible instances, {len(failures)} failures")
    assert not failures, failures[:5]


def _lex_piece(rng, dim):
    while True:
        fs = [tuple(rng.randint(-2, 2) for _ in range(dim)) for _ in range(rng.randint(1, dim))]
        if any(fs[0]):
            break
    unit = tuple(rng.randint(-2, 2) for _ in range(dim))
    while dot(fs[0], unit) <= 0:
        unit = tuple(rng.randint(-2, 2) for _ in range(dim))
    return Lex(dim, fs), unit


def infinitesimal_instance(rng):
    """FinGen groups (no infinitesimals) or sums with a lexicographic part."""
    dim = rng.randint(1, 5)
    if dim == 1 or rng.random() < 0.4:
        return random_fingen_group(rng, dim)
    k = rng.randint(2, dim)
    lex, lex_unit = _lex_piece(rng, k)
    if k == dim:
        return ScaledOrderedGroup(dim, lex, lex_unit)
    rest = random_fingen_group(rng, dim - k)
    return ScaledOrderedGroup(dim, DirectSum((lex, rest.cone)), lex_unit + tuple(rest.unit))


def test_criterion_6_infinitesimals_sweep():
    disagreements, nontrivial = [], 0
    for seed in range(500):
        rng = random.Random(6000 + seed)
        g = infinitesimal_instance(rng)
        inf = infinitesimals(g)
        nontrivial += bool(inf.basis)
        points = [tuple(rng.randint(-2, 2) for _ in range(g.dim)) for _ in range(6)]
        if inf.basis:
            points += list(inf.basis) + [random_combination(rng, inf.basis, 2) for _ in range(2)]
            points += [plus(p, b) for p, b in zip(points[:3], itertools.cycle(inf.basis))]
        for x in points:
            if inf.contains(x) != brute_infinitesimal(g.cone, g.unit, x, 50):
                disagreements.append((seed, x))
    record(6, not disagreements, f"500 instances ({nontrivial} with infinitesimals), {len(disagreements)} disagreements")
    assert not disagreements, disagreements[:5]


def _sign_checks(oracle, rec, rng):
    d = oracle.dim
    memo = {}

    def sign(x):
        if x not in memo:
            memo[x] = phi_sign(oracle, x)
        return memo[x]

    bad = []
    pool = [tuple(rng.randint(-3, 3) for _ in range(d)) for _ in range(60)] + [tuple(g) for g in rec.quotient_generators]
    if sign(tuple([0] * d)) != 0:
        bad.append("phi(0)")
    for _ in range(1000):
        x, y = rng.choice(pool), rng.choice(pool)
        s, t = sign(x), sign(y)
        if sign(neg(x)) != -s:
            bad.append(("antisymmetry", x))
        if s == t != 0 and sign(plus(x, y)) != s:
            bad.append(("additivity", x, y))
    for x in pool:
        if phi_sign_lp(oracle, x) != sign(x):
            bad.append(("lp route", x))
        if sign(x) >= 0 and dot(rec.induced_state, x) < 0:
            bad.append(("state compatibility", x))
    for gen in rec.quotient_generators:
        if sign(tuple(gen)) < 0:
            bad.append(("positivity", gen))
    inconclusive = 0
    for x in pool[:8]:
        verdict = brute_phi(rec.quotient_generators, rec.neg_rays, x, k_max=25)
        if verdict is None:
            inconclusive += 1
        elif verdict != sign(x):
            bad.append(("brute", x, verdict))
    return bad, inconclusive


def test_criterion_7_pipeline():
    start = time.perf_counter()
    failures, inconclusive = [], 0
    for seed in range(100):
        rng = random.Random(7000 + seed)
        summands, g = pipeline_instance(rng)
        cert = kill_pipeline(summands, g, seed=seed, samples=50)
        if not verify_certificate(cert):
            failures.append((seed, "verify"))
            continue
        oracles = sign_oracles(cert)
        dims = [o.dim for o in oracles]
        for oracle, rec in zip(oracles, cert.records):
            bad, inc = _sign_checks(oracle, rec, rng)
            inconclusive += inc
            failures += [(seed, b) for b in bad]
        # no nonzero element of the image has every block sign nonnegative
        if cert.image_basis:
            for _ in range(200):
                z = random_combination(rng, cert.image_basis, 3)
                blocks, off = [], 0
                for d in dims:
                    blocks.append(tuple(z[off : off + d]))
                    off += d
                if all(phi_sign(o, b) >= 0 for o, b in zip(oracles, blocks)):
                    failures.append((seed, "image singularity", z))
                    break
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 300
    record(7, ok, f"100 pipelines, {len(failures)} failures, {inconclusive} inconclusive brute probes, {elapsed:.1f}s")
    assert ok, failures[:5]


SEC6_S = [(1, 0, 2, 0), (0, 1, 0, 1), (0, 0, 0, 0)]


def test_criterion_8_nccc_calculus():
    start = time.perf_counter()
    corpus = nccc_corpus()
    rng = random.Random(8)
    failures = []
    for d in corpus:
        for j in range(1, d.length + 1):
            out, _ = delete_cell(d, j)
            if validate(out):
                failures.append((d, "conservation", j))
        ys = {tuple([0] * d.width), tuple([1] * d.width)}
        while len(ys) < min(4, 3**d.width):
            ys.add(tuple(rng.randint(0, 2) for _ in range(d.width)))
        for y in sorted(ys):
            res = reduce(d, None, y)
            if len(res.case_trace) > d.length:
                failures.append((d, "steps", y))
            if res != brute_reduce(d, None, y):
                failures.append((d, "brute", y))
        try:
            finiteness_census(d, sorted(ys))
        except AssertionError:
            failures.append((d, "census"))
    sec6 = docs.load(CORPUS / "sec6_descriptor.json", "nccc-descriptor")
    y = docs.load(CORPUS / "sec6_class.json", "rank-class").y
    cl = classify(sec6, SEC6_S, y)
    split = cl.result.split
    if cl.verdict is not Verdict.INFINITESIMAL or not (split.f1 and split.b_blocks):
        failures.append(("sec6", cl.verdict))
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 300
    record(8, ok, f"{len(corpus)} descriptors, {len(failures)} failures, {elapsed:.1f}s")
    assert ok, failures[:5]


def test_criterion_9_certificate_mutations():
    rejected, tried = 0, 0
    rng = random.Random(9)
    for seed in range(5):
        cert = kill_pipeline(*pipeline_instance(random.Random(9000 + seed)), seed=seed, samples=5)
        doc = cert.to_document()
        paths = [p for p in leaf_paths(doc) if p]
        for path in rng.sample(paths, 10):
            tried += 1
            try:
                accepted = verify_certificate(mutate(doc, path))
            except MalformedDocument:
                accepted = False
            rejected += not accepted
    ok = tried == 50 and rejected == 50
    record(9, ok, f"{rejected}/{tried} mutations rejected")
    assert ok
