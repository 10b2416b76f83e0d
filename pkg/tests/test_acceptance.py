"""Acceptance suite: one recorded PASS/FAIL line per criterion.

Runtime limits are pinned below; exact counts come from ``frozen_values``.
"""

from __future__ import annotations

import json
import subprocess
import sys
import time
from itertools import product

import pytest

from twosite.bf import run_theorem_3_1
from twosite.certificates import make_bundle, mutation_suite, validate_bundle
from twosite.finset import cat2_instance, essentially_surjective, fixture_categories, functor_fully_faithful, jt_coverage
from twosite.fractions import (
    FractionSpan,
    choose_filler,
    class_key,
    compose_witnesses,
    enumerate_hom_category,
    enumerate_reps,
    equivalence_certificate,
    is_equivalence_in_localisation,
    localisation_certificate,
    localise_one_cell,
    nf_legs,
    retract_two_cell_to_cofinal,
    symmetric_witness,
    tommasini_normal_form,
    two_cells_equivalent,
    witness_errors,
)
from twosite.instance import fixture_instance
from twosite.site import TwoSite, cofinal_witness, coverage_class, is_cofinal, is_weak_equivalence, verify_coverage_axioms
from twosite.slice import verify_slice_is_2site

from frozen_values import (
    FIXTURE_AXIOM_COUNTS,
    FIXTURE_BF_COUNTS,
    FROZEN_HOM_COUNTS,
    SLICE_C2CODISC_AXIOM_COUNTS,
    SLICE_C2CODISC_BF_COUNTS,
)

LIMIT_COVERAGE_S = 60.0
LIMIT_THEOREM_S = 300.0
LIMIT_SLICES_S = 600.0


@pytest.fixture(scope="module")
def inst():
    return fixture_instance()


@pytest.fixture(scope="module")
def standard(inst):
    """The two standard spans 1 <- 1 -> BZ2 and 1 <- C2codisc -> BZ2 with all their representatives."""
    K = inst.K
    one, C2, BZ2 = (K.find_object(n) for n in ("1", "C2codisc", "BZ2"))
    S1 = FractionSpan(one, BZ2, one, K.id1(one), K.hom(one, BZ2)[0])
    S2 = FractionSpan(one, BZ2, C2, K.find_one_cell("C2codisc_to_1"), K.hom(C2, BZ2)[0])
    reps = enumerate_reps(S1, S2, inst.site)
    n = len(reps)
    rel = {(i, j): two_cells_equivalent(reps[i], reps[j], inst.site) for i in range(n) for j in range(n)}
    return S1, S2, reps, rel


def test_criterion_1_coverage_axioms(inst, acceptance):
    t = time.perf_counter()
    rep = verify_coverage_axioms(inst.site)
    dt = time.perf_counter() - t
    counts = {k: r.checked for k, r in rep.results.items()}
    bad = sum(len(r.counterexamples) + len(r.unverified) for r in rep.results.values())
    ok = rep.passed and bad == 0 and counts == FIXTURE_AXIOM_COUNTS and dt < LIMIT_COVERAGE_S
    acceptance(1, ok, f"checked {counts}, {bad} counterexamples, {dt:.2f}s < {LIMIT_COVERAGE_S:.0f}s")


def test_criterion_2_theorem(inst, acceptance):
    K = inst.K
    t = time.perf_counter()
    rep = run_theorem_3_1(inst.site)
    dt = time.perf_counter() - t
    counts = {k: r.checked for k, r in rep.reports.items()}
    bf4 = [c.payload for c in rep.reports["BF4"].certificates]
    v_id = all(d["v"] == K.id1(K.src(d["f"])) for d in bf4)
    # uniqueness by enumerating every 2-cell f => g
    unique = all(
        [b for b in K.cells2(d["f"], d["g"]) if K.whisker_l(d["w"], b) == d["alpha"]] == [d["beta"]] for d in bf4
    )
    ok = rep.passed and counts == FIXTURE_BF_COUNTS and len(bf4) == counts["BF4"] and v_id and unique \
        and dt < LIMIT_THEOREM_S
    acceptance(2, ok, f"checked {counts}, BF4 v = id: {v_id}, unique beta: {unique}, {dt:.2f}s < {LIMIT_THEOREM_S:.0f}s")


def test_criterion_3_bunge_pare(inst, acceptance):
    K = inst.K
    cells = list(K.one_cells())
    agree = sum(bool(is_weak_equivalence(inst.site, f)) == (functor_fully_faithful(f) and essentially_surjective(f))
                for f in cells)
    acceptance(3, agree == len(cells), f"{agree}/{len(cells)} functors agree")


def test_criterion_4_localisation(inst, acceptance):
    K, site = inst.K, inst.site
    ws = list(site.W.members())
    certs, missing = [], []
    for w in ws:
        li = is_equivalence_in_localisation(localise_one_cell(K, w), site)
        if li:
            certs.append(localisation_certificate(K, li))
        else:
            missing.append(K.label(w))
    rep = validate_bundle(make_bundle(K, inst.data, certs), inst.data)
    none = is_equivalence_in_localisation(localise_one_cell(K, K.find_one_cell("D2_to_1")), site)
    ok = not missing and rep.valid and rep.checked == len(ws) and not none and not none.exhausted
    acceptance(4, ok, f"{len(certs)}/{len(ws)} weak equivalences inverted, {len(rep.violations)} certificate violations, "
                      f"D2_to_1: {'no inverse (exhaustive)' if not none and not none.exhausted else 'unexpected'}")


def test_criterion_5_equivalence_relation(inst, standard, acceptance):
    site = inst.site
    _, _, reps, rel = standard
    n = len(reps)
    reflexive = all(rel[(i, i)] for i in range(n))
    symmetric = all(bool(rel[(i, j)]) == bool(rel[(j, i)]) for i, j in product(range(n), repeat=2))
    triples = composed = 0
    for i, j, k in product(range(n), repeat=3):
        if rel[(i, j)] and rel[(j, k)]:
            triples += 1
            e = compose_witnesses(site, reps[i], reps[j], reps[k], rel[(i, j)].witness, rel[(j, k)].witness)
            composed += not witness_errors(site, reps[i], reps[k], e) and bool(rel[(i, k)])
    certs = []
    for (i, j), v in rel.items():
        if v:
            certs.append(equivalence_certificate(reps[i], reps[j], v.witness))
            certs.append(equivalence_certificate(reps[j], reps[i], symmetric_witness(v.witness)))
    rep = validate_bundle(make_bundle(inst.K, inst.data, certs), inst.data)
    ok = n == 12 and reflexive and symmetric and triples and composed == triples and rep.valid
    acceptance(5, ok, f"{n} reps, reflexive: {reflexive}, symmetric: {symmetric}, {composed}/{triples} triples compose, "
                      f"{rep.checked - len(rep.violations)}/{rep.checked} witnesses re-validate independently")


def test_criterion_6_normal_forms(inst, standard, acceptance):
    K, site = inst.K, inst.site
    S1, S2, reps, rel = standard
    fl = choose_filler(S1, S2, site)
    found = certified = 0
    certs = []
    for r in reps:
        nf = tommasini_normal_form(r, fl, site)
        if nf:
            found += 1
            certified += nf.qp in site.W and not witness_errors(site, r, nf.rep, nf.witness)
            certs.append(equivalence_certificate(r, nf.rep, nf.witness))
    rep = validate_bundle(make_bundle(K, inst.data, certs), inst.data)
    V = coverage_class(site)
    keys = [class_key(r, fl, site, V)[0] for r in reps]
    same = all((keys[i] == keys[j]) == bool(rel[(i, j)]) for i, j in product(range(len(reps)), repeat=2))
    ok = found == certified == len(reps) and rep.valid and same
    acceptance(6, ok, f"{found}/{len(reps)} normal forms, {certified} with q' in W and certified, "
                      f"key partition = raw partition: {same} ({len(set(keys))} classes)")


def test_criterion_7_hom_categories(inst, acceptance):
    K, site = inst.K, inst.site
    V = coverage_class(site)
    cof = is_cofinal(V, site.W, site)
    got, exhausted, sampled, retracted = {}, False, 0, 0
    certs = []
    for x, y in product(K.objects(), repeat=2):
        hp = enumerate_hom_category(x, y, site, V)
        exhausted |= hp.exhausted or bool(hp.composition_failures)
        got[(K.label(x), K.label(y))] = (*hp.counts.values(), len(hp.composition))
        for fl in hp.fillers.values():
            for q in nf_legs(site, fl, site.W):
                cw = cofinal_witness(K, V, q)
                for beta in K.cells2(K.compose1(fl.source.f, K.compose1(fl.p1, q)),
                                     K.compose1(fl.target.f, K.compose1(fl.p2, q))):
                    sampled += 1
                    if cw is None or cw.g not in V:
                        continue
                    r_qb, r_rg, e = retract_two_cell_to_cofinal(fl, q, beta, cw.g, cw.s, cw.cell, site)
                    if not witness_errors(site, r_qb, r_rg, e):
                        retracted += 1
                        certs.append(equivalence_certificate(r_qb, r_rg, e))
    rep = validate_bundle(make_bundle(K, inst.data, certs), inst.data)
    ok = cof.cofinal and not exhausted and got == FROZEN_HOM_COUNTS and sampled and retracted == sampled and rep.valid
    acceptance(7, ok, f"V cofinal in W: {cof.cofinal}, {len(got)} pairs terminate, counts frozen: {got == FROZEN_HOM_COUNTS}, "
                      f"{retracted}/{sampled} (q, beta) retracted and certified")


def test_criterion_8_slices(acceptance):
    t = time.perf_counter()
    lines, ok = [], True
    for groupoids in (False, True):
        K = cat2_instance(fixture_categories(), groupoids)
        site = TwoSite(K, jt_coverage(K))
        for X in ("1", "C2codisc"):
            for variant in (("groupoid",) if groupoids else ("lax", "strict")):
                rep, ssite = verify_slice_is_2site(site, K.find_object(X), variant)
                th = run_theorem_3_1(ssite)
                axioms = {k: r.checked for k, r in rep.results.items()}
                bf = {k: r.checked for k, r in th.reports.items()}
                want_bf = FIXTURE_BF_COUNTS if X == "1" else SLICE_C2CODISC_BF_COUNTS
                want_ax = dict(FIXTURE_AXIOM_COUNTS, iii_lift=13) if X == "1" else SLICE_C2CODISC_AXIOM_COUNTS
                good = rep.passed and th.passed and bf == want_bf and axioms == want_ax
                ok &= good
                lines.append(f"{variant}/{X}: {'ok' if good else 'FAILED'}")
    dt = time.perf_counter() - t
    ok &= dt < LIMIT_SLICES_S
    acceptance(8, ok, f"{', '.join(lines)}; {dt:.1f}s < {LIMIT_SLICES_S:.0f}s")


def _cli(tmp, *argv) -> int:
    return subprocess.run([sys.executable, "-m", "twosite.cli", *argv], cwd=tmp, capture_output=True).returncode


def test_criterion_9_determinism_and_certificates(inst, tmp_path, acceptance):
    K = inst.K
    wes = [K.label(w) for w in inst.site.W.members()]
    runs = []
    for n in (1, 2):
        d = tmp_path / f"run{n}"
        d.mkdir()
        codes = [
            _cli(d, "check-site", "--out", "site.json", "--cert", "site.cert.json"),
            _cli(d, "check-bf", "--out", "bf.json", "--cert", "bf.cert.json"),
            _cli(d, "homcat", "--out", "homcat.json", "--cert", "homcat.cert.json"),
            _cli(d, "slice", "--over", "C2codisc", "--variant", "groupoid", "--out", "slice.json"),
            _cli(d, "check-site", "--instance", "slice.json", "--out", "slice.site.json", "--cert", "slice.site.cert.json"),
            _cli(d, "check-bf", "--instance", "slice.json", "--out", "slice.bf.json", "--cert", "slice.bf.cert.json"),
        ]
        for i, label in enumerate(wes):
            codes.append(_cli(d, "we", "--cell", label, "--localise", "--out", f"we{i}.json", "--cert", f"we{i}.cert.json"))
        runs.append((d, codes))
    (d1, c1), (d2, c2) = runs
    files = sorted(p.name for p in d1.iterdir())
    identical = all((d1 / f).read_bytes() == (d2 / f).read_bytes() for f in files) and \
        files == sorted(p.name for p in d2.iterdir())
    instance_of_cert = {f: (json.loads((d1 / "slice.json").read_text()) if f.startswith("slice.") else inst.data)
                        for f in files if f.endswith(".cert.json")}
    total = valid = mutants = rejected = immutable = 0
    for f, data in instance_of_cert.items():
        bundle = json.loads((d1 / f).read_text())
        rep = validate_bundle(bundle, data)
        total += rep.checked
        valid += rep.checked - len({i for i, _, _ in rep.violations if i is not None})
        m = mutation_suite(bundle, data)
        mutants += m.total
        rejected += m.rejected_by_equations
        immutable += len(m.immutable)
    ok = set(c1) == set(c2) == {0} and identical and total and valid == total and mutants and rejected == mutants \
        and immutable == 0
    acceptance(9, ok, f"{len(files)} output files byte-identical: {identical}, {valid}/{total} certificates re-validate, "
                      f"{rejected}/{mutants} mutants rejected by the equations")
