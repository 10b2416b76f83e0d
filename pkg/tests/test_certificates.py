from __future__ import annotations

import json

import pytest

from twosite.bf import run_theorem_3_1
from twosite.certificates import Certificate, make_bundle, mutate, mutation_suite, seal, validate_bundle
from twosite.core import dump_json, materialize, window_to_dict
from twosite.finset import cat2_instance, codiscrete, discrete, jt_coverage, terminal
from twosite.fractions import (
    FractionSpan,
    enumerate_reps,
    equivalence_certificate,
    find_iso_rep,
    identity_span,
    is_equivalence_in_localisation,
    iso_rep_certificate,
    localisation_certificate,
    localise_one_cell,
    two_cells_equivalent,
)
from twosite.instance import find_one_cell, fixture_instance, instance_of
from twosite.site import verify_coverage_axioms


@pytest.fixture(scope="module")
def inst():
    return fixture_instance()


@pytest.fixture(scope="module")
def theorem_bundle(inst):
    rep = run_theorem_3_1(inst.site)
    return make_bundle(inst.K, inst.data, rep.certificates)


@pytest.fixture(scope="module")
def fractions_bundle(inst):
    K, site = inst.K, inst.site
    one, C2, BZ2 = (K.find_object(n) for n in ("1", "C2codisc", "BZ2"))
    S1 = FractionSpan(one, BZ2, one, K.id1(one), K.hom(one, BZ2)[0])
    S2 = FractionSpan(one, BZ2, C2, K.find_one_cell("C2codisc_to_1"), K.hom(C2, BZ2)[0])
    certs = []
    reps = enumerate_reps(S1, S2, site)
    for r1 in reps:
        for r2 in reps:
            v = two_cells_equivalent(r1, r2, site)
            if v and r1 != r2:
                certs.append(equivalence_certificate(r1, r2, v.witness))
    certs.append(iso_rep_certificate(K, find_iso_rep(S2, S2, site)))
    for w in site.W.members():
        li = is_equivalence_in_localisation(localise_one_cell(K, w), site)
        certs.append(localisation_certificate(K, li))
    return make_bundle(K, inst.data, certs)


def test_theorem_bundle_validates(theorem_bundle, inst):
    rep = validate_bundle(theorem_bundle, inst.data)
    assert rep.valid and rep.checked == 754


def test_bundle_survives_json_round_trip(theorem_bundle, inst):
    again = json.loads(dump_json(theorem_bundle))
    assert validate_bundle(again, inst.data).valid


def test_fractions_bundle_validates(fractions_bundle, inst):
    rep = validate_bundle(fractions_bundle, inst.data)
    assert rep.valid, rep.violations[:3]
    kinds = {c["kind"] for c in fractions_bundle["certificates"]}
    assert kinds == {"equivalence", "iso_rep", "localisation"}


def test_every_mutant_is_rejected_by_the_equations(theorem_bundle, fractions_bundle, inst):
    for bundle in (theorem_bundle, fractions_bundle):
        rep = mutation_suite(bundle, inst.data)
        assert rep.total == len(bundle["certificates"]) - len(rep.immutable)
        assert rep.rejected == rep.rejected_by_equations == rep.total
        assert not rep.survivors


def test_unsealed_mutant_fails_the_digest(theorem_bundle, inst):
    m = mutate(theorem_bundle, 0, inst.data)
    rep = validate_bundle(m, inst.data)
    assert (None, "bundle", "digest does not match the contents") in rep.violations


def test_bundle_for_another_instance_is_rejected(theorem_bundle):
    other = fixture_instance("identities_only")
    rep = validate_bundle(theorem_bundle, other.data)
    assert (None, "bundle", "instance hash does not match the instance") in rep.violations


def test_wrong_schema_is_rejected(theorem_bundle, inst):
    b = dict(theorem_bundle, schema="other/1")
    assert not validate_bundle(b, inst.data).valid


def test_swapped_lift_names_the_equation(inst):
    K = inst.K
    rep = run_theorem_3_1(inst.site)
    for c in rep.reports["BF4"].certificates:
        d = c.payload
        others = [b for b in K.cells2(K.dom2(d["beta"]), K.cod2(d["beta"])) if b != d["beta"]]
        if others:
            bad = dict(d, beta=others[0])
            bad.pop("beta_inv", None)
            break
    bundle = make_bundle(K, inst.data, [Certificate("bf4", bad)])
    rep = validate_bundle(bundle, inst.data)
    assert [v[2] for v in rep.violations] == ["alpha * v = w * beta"]


def test_hand_edited_certificate_resealed_is_still_caught(theorem_bundle, inst):
    m = mutate(theorem_bundle, 3, inst.data, reseal=True)
    rep = validate_bundle(m, inst.data)
    assert not rep.valid and all(i == 3 for i, _, _ in rep.violations)


# --------------------------------------------------------------------------
# tabulated windows


@pytest.fixture(scope="module")
def window_inst():
    K = cat2_instance([terminal(), codiscrete(2, "C2codisc"), discrete(2, "D2")])
    J = jt_coverage(K)
    w = materialize(K, "small")
    w.extra["coverage"] = [K.label(f) for f in K.one_cells() if f in J]
    return instance_of(window_to_dict(w))


def test_window_instance_certificates(window_inst):
    inst = window_inst
    assert inst.kind == "window"
    assert verify_coverage_axioms(inst.site).passed
    rep = run_theorem_3_1(inst.site)
    assert rep.passed
    bundle = make_bundle(inst.K, inst.data, rep.certificates)
    assert validate_bundle(bundle, inst.data).valid
    m = mutation_suite(bundle, inst.data)
    assert m.rejected_by_equations == m.total > 0


def test_window_localisation_certificate(window_inst):
    inst = window_inst
    K = inst.K
    f = find_one_cell(K, "C2codisc_to_1")
    li = is_equivalence_in_localisation(localise_one_cell(K, f), inst.site)
    bundle = make_bundle(K, inst.data, [localisation_certificate(K, li)])
    assert validate_bundle(bundle, inst.data).valid
    assert find_iso_rep(li.GF, identity_span(K, K.src(f)), inst.site)


def test_seal_is_deterministic(theorem_bundle):
    assert seal(theorem_bundle) == theorem_bundle
