from __future__ import annotations

import pytest

from twosite.bf import (
    bf3_errors,
    bf4_errors,
    check_bf1,
    check_bf2,
    check_bf3,
    check_bf4,
    run_theorem_3_1,
)
from twosite.site import TwoSite, all_cells, augmented, cell_set, identities_only, identity_cells


@pytest.fixture(scope="module")
def theorem(fx):
    return run_theorem_3_1(fx.site)


def test_bf1_examples(fx):
    K = fx.K
    assert check_bf1(K, all_cells(K)).passed
    assert check_bf1(K, fx.site.W).passed
    rep = check_bf1(K, identity_cells(K))
    assert not rep.passed and fx.C2_to_1 in rep.counterexamples


def test_bf2_examples(fx):
    K = fx.K
    assert check_bf2(K, all_cells(K)).passed
    assert check_bf2(K, fx.site.W).passed
    rep = check_bf2(K, cell_set(K, [fx.C2_to_1]))
    assert ("identity", K.id1(fx.one)) in rep.counterexamples


def test_bf3_identity_leg(fx):
    K = fx.K
    f = fx.points[1]
    sq = check_bf3(K, fx.site.W, K.id1(fx.C2codisc), f)
    assert (sq.corner, sq.top, sq.left) == (fx.one, f, K.id1(fx.one))


def test_bf3_cover_along_identity(fx):
    K = fx.K
    sq = check_bf3(K, fx.site.W, fx.C2_to_1, K.id1(fx.one))
    assert sq.corner == fx.C2codisc and sq.left == fx.C2_to_1
    assert not bf3_errors(K, fx.site.W, sq)


def test_bf3_between_the_two_points(fx):
    K = fx.K
    p0, p1 = fx.points
    sq = check_bf3(K, fx.site.W, p0, p1)
    assert sq.corner == fx.one
    assert K.is_invertible2(sq.cell) and sq.cell != K.id2(K.compose1(p1, sq.left))
    assert not bf3_errors(K, fx.site.W, sq)


def test_bf3_general_search_without_site(fx):
    K = fx.K
    W = cell_set(K, list(fx.site.W.members()))
    sq = check_bf3(K, W, fx.C2_to_1, fx.D2_to_1)
    assert sq and not bf3_errors(K, W, sq)


def test_bf4_identity_alpha(fx):
    K = fx.K
    f = fx.points[0]
    w = fx.C2_to_1
    wf = K.compose1(w, f)
    wit = check_bf4(K, fx.site.W, w, f, f, K.id2(wf))
    assert wit.v == K.id1(fx.one) and wit.beta == K.id2(f) and wit.unique


def test_bf4_unique_beta_for_C2codisc_cover(fx):
    K, w = fx.K, fx.C2_to_1
    for x in K.objects():
        hs = K.hom(x, fx.C2codisc)
        for f in hs:
            for g in hs:
                for alpha in K.cells2(K.compose1(w, f), K.compose1(w, g)):
                    wit = check_bf4(K, fx.site.W, w, f, g, alpha)
                    assert wit.unique
                    assert len([b for b in K.cells2(f, g) if K.whisker_l(w, b) == alpha]) == 1
                    assert not bf4_errors(K, fx.site.W, wit)


def test_bf4_non_ff_leg_has_no_unique_lift(fx):
    K, w = fx.K, fx.D2_to_1
    p, q = K.hom(fx.one, fx.D2)
    alpha = K.id2(K.compose1(w, p))
    assert K.compose1(w, p) == K.compose1(w, q)
    # no 2-cell p => q exists, so the ff route finds nothing
    assert not check_bf4(K, fx.site.W, w, p, q, alpha, ff=True)
    # the general search over v in W also fails: D2's points never become isomorphic
    W = cell_set(K, list(fx.site.W.members()) + [w])
    assert not check_bf4(K, W, w, p, q, alpha)


def test_bf4_competing_pairs_commute(fx):
    K, w = fx.K, fx.C2_to_1
    p0, p1 = fx.points
    for alpha in K.cells2(K.compose1(w, p0), K.compose1(w, p1)):
        wit = check_bf4(K, fx.site.W, w, p0, p1, alpha)
        assert wit.comparisons and not wit.failed_comparisons


def test_theorem_on_fixture(theorem):
    assert theorem.passed
    counts = {k: r.checked for k, r in theorem.reports.items()}
    assert counts == {"BF1": 17, "BF2": 88, "BF3": 225, "BF4": 429}
    assert theorem.j_in_w.checked == 13


def test_theorem_beta_invertible_when_alpha_is(fx, theorem):
    K = fx.K
    for c in theorem.reports["BF4"].certificates:
        d = c.payload
        assert d["v"] == K.id1(K.src(d["f"]))
        if K.is_invertible2(d["alpha"]):
            assert K.is_invertible2(d["beta"])


def test_theorem_with_identity_coverage(fx):
    assert run_theorem_3_1(TwoSite(fx.K, identities_only(fx.K))).passed


def test_theorem_failure_is_localised_to_the_non_ff_cover(fx):
    site = TwoSite(fx.K, augmented(fx.site.J, [fx.D2_to_1], "broken"), crosscheck=False)
    rep = run_theorem_3_1(site)
    assert not rep.passed
    for k in ("BF1", "BF2", "BF3"):
        assert rep.reports[k].passed
    bad = rep.reports["BF4"].counterexamples
    assert bad and {c[0] for c in bad} == {fx.D2_to_1}
    assert rep.j_in_w.counterexamples == [fx.D2_to_1]
