import json
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from instances import leaf_paths, mutate, pipeline_instance
from k0embed.killing import (
    Flavor,
    PipelineAbort,
    SignOracle,
    SignUndefined,
    SummandSpec,
    check_certificate,
    coordinate_zero_subgroup,
    from_document,
    kill_pipeline,
    phi_sign,
    phi_sign_lp,
    sign_oracles,
    verify_certificate,
    verify_claim1,
)
from k0embed.oracle import brute_phi
from k0embed.ordgrp import FinGen, PreconditionError, ScaledOrderedGroup, Subgroup, quotient_order
from k0embed.ratlin import PolyCone
from k0embed.serial import MalformedDocument


def orthant(n):
    return ScaledOrderedGroup(n, FinGen(n, [tuple(int(i == j) for j in range(n)) for i in range(n)]), (1,) * n)


def two_planes():
    return [SummandSpec(orthant(2), Flavor.AF), SummandSpec(orthant(2), Flavor.AF)]


def test_two_planes_certificate():
    cert = kill_pipeline(two_planes(), Subgroup(4, [(1, -1, 0, 0)]), seed=0, samples=20)
    assert cert.extended and cert.separator == (1, 1, 1, 1)
    assert [r.state for r in cert.records] == [(F(1, 2), F(1, 2))] * 2
    assert [r.induced_state for r in cert.records] == [(F(1, 2),)] * 2
    assert check_certificate(cert) == []
    doc = json.loads(json.dumps(cert.to_document()))
    assert from_document(doc) == cert
    assert verify_certificate(doc)


def test_trivial_subgroup():
    cert = kill_pipeline(two_planes(), Subgroup(4, []))
    assert cert.trivial and cert.records == ()
    assert verify_certificate(cert)


def test_single_e_class_summand():
    cert = kill_pipeline([SummandSpec(orthant(2), Flavor.E)], Subgroup(2, [(1, -1)]))
    assert verify_certificate(cert)
    assert cert.records[0].faithful


def test_non_singular_input_aborts_with_witness():
    with pytest.raises(PipelineAbort) as exc:
        kill_pipeline(two_planes(), Subgroup(4, [(1, 1, 0, 0)]))
    assert exc.value.witness is not None


def test_af_summand_must_be_simplicial():
    g = ScaledOrderedGroup(2, FinGen(2, [(1, 0), (0, 1), (1, 2)]), (2, 3))
    with pytest.raises(PreconditionError):
        SummandSpec(g, Flavor.AF)


def test_pure_coordinate_check():
    # Skip the per-summand quotient so a pure block element survives.
    summands = two_planes()
    g = Subgroup(4, [(1, 0, 0, -1), (0, 1, 0, -1), (0, 0, 1, -1)])
    raw = [quotient_order(s.group, Subgroup(2, [])) for s in summands]
    with pytest.raises(PipelineAbort) as exc:
        verify_claim1(summands, g, raw)
    assert exc.value.stage == "claim 1"


def test_coordinate_zero_subgroup():
    g = Subgroup(4, [(1, 0, 0, -1), (0, 1, 0, -1), (0, 0, 1, -1)])
    z = coordinate_zero_subgroup(g, 0, [2, 2])
    assert z.basis == ((1, -1),)


def test_phi_sign_on_a_line():
    pos = PolyCone.from_generators(1, [(1,)])
    oracle = SignOracle.build(pos, PolyCone.from_generators(1, [(-1,)]))
    assert [phi_sign(oracle, (v,)) for v in (-2, 0, 3)] == [-1, 0, 1]
    assert phi_sign_lp(oracle, (3,)) == 1


def test_phi_sign_undefined():
    pos = PolyCone.from_generators(2, [(1, 0), (0, 1)])
    oracle = SignOracle.build(pos, PolyCone.from_generators(2, []))
    with pytest.raises(SignUndefined):
        phi_sign(oracle, (1, -1))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 100_000))
def test_random_pipeline_laws(seed):
    rng = random.Random(seed)
    summands, g = pipeline_instance(rng)
    cert = kill_pipeline(summands, g, seed=seed, samples=30)
    assert verify_certificate(cert)
    for oracle, rec in zip(sign_oracles(cert), cert.records):
        d = oracle.dim
        pts = [tuple(rng.randint(-3, 3) for _ in range(d)) for _ in range(15)]
        for x in pts:
            s = phi_sign(oracle, x)
            assert phi_sign(oracle, tuple(-t for t in x)) == -s
            assert phi_sign_lp(oracle, x) == s
            if s >= 0:
                assert sum(a * b for a, b in zip(rec.induced_state, x)) >= 0
            for y in pts[:5]:
                t = phi_sign(oracle, y)
                if s == t == 1 or s == t == -1:
                    assert phi_sign(oracle, tuple(a + b for a, b in zip(x, y))) == s
        for gen in rec.quotient_generators:
            assert phi_sign(oracle, gen) >= 0


def test_brute_phi_agrees_on_two_planes():
    cert = kill_pipeline(two_planes(), Subgroup(4, [(1, -1, 0, 0)]))
    oracle = sign_oracles(cert)[0]
    rec = cert.records[0]
    for v in (-2, -1, 1, 3):
        assert brute_phi(rec.quotient_generators, rec.neg_rays, (v,), k_max=5) == phi_sign(oracle, (v,))


def test_every_single_field_mutation_is_rejected():
    cert = kill_pipeline(*pipeline_instance(random.Random(11)), seed=2, samples=4)
    doc = cert.to_document()
    for path in leaf_paths(doc):
        if not path:
            continue
        bad = mutate(doc, path)
        try:
            accepted = not check_certificate(bad)
        except MalformedDocument:
            accepted = False
        assert not accepted, path


def test_unknown_field_is_malformed():
    doc = kill_pipeline(two_planes(), Subgroup(4, [(1, -1, 0, 0)]), samples=2).to_document()
    doc["extra"] = 1
    with pytest.raises(MalformedDocument):
        check_certificate(doc)
