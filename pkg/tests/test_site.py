from __future__ import annotations

import pytest

from twosite.core import SearchBudget
from twosite.errors import OracleDisagreement
from twosite.finset import cat2_instance, codiscrete, discrete, jt_coverage, terminal
from twosite.site import (
    CoverageSpec,
    TwoSite,
    all_cells,
    augmented,
    cofinal_witness,
    coverage_class,
    filler_errors,
    find_filler,
    identities_only,
    identity_cells,
    is_cofinal,
    is_j_locally_split,
    is_weak_equivalence,
    splitting_errors,
    verify_coverage_axioms,
)


def test_identity_coverage_passes_with_identity_squares(fx):
    site = TwoSite(fx.K, identities_only(fx.K))
    rep = verify_coverage_axioms(site)
    assert rep.passed
    for sq in rep["ii"].witnesses:
        assert sq.q == fx.K.id1(fx.K.tgt(sq.q))
        assert sq.cell == fx.K.id2(fx.K.compose1(sq.q, sq.top))


def test_small_window_with_surjections_passes():
    K = cat2_instance([terminal(), codiscrete(2, "C2codisc"), discrete(2, "D2")])
    rep = verify_coverage_axioms(TwoSite(K, jt_coverage(K)))
    assert rep.passed
    assert rep["ii"].checked > 0 and rep["iii"].checked > 0


def test_fixture_coverage_axioms(fx):
    rep = verify_coverage_axioms(fx.site)
    assert rep.passed
    assert (rep["i"].checked, rep["ii"].checked, rep["iii"].checked) == (46, 161, 13)
    for sq in rep["ii"].witnesses:
        assert not filler_errors(fx.site, sq)


def test_augmenting_with_D2_to_1_breaks_axiom_iii(fx):
    site = TwoSite(fx.K, augmented(fx.site.J, [fx.D2_to_1], "broken"), crosscheck=False)
    rep = verify_coverage_axioms(site)
    assert not rep["iii"].passed
    assert [q for q, _ in rep["iii"].counterexamples] == [fx.D2_to_1]


def test_fillers_without_oracle_are_searched_in_the_window(fx):
    K = fx.K
    J = CoverageSpec(K, "searched", fx.site.J.__contains__)
    site = TwoSite(K, J)
    sq = find_filler(site, fx.C2_to_1, K.id1(fx.one))
    assert sq and not filler_errors(site, sq)
    sq = find_filler(site, fx.C2_to_1, fx.D2_to_1)
    # the strict pullback D2 x C2codisc has four objects, outside the window
    assert not sq or not filler_errors(site, sq)


def test_invalid_oracle_is_caught(fx):
    K = fx.K

    def liar(q, f):
        sq = jt_coverage(K).filler_oracle(q, f)
        return sq.__class__(q, f, sq.corner, sq.top, sq.top, sq.cell, sq.cell_inv)

    J = CoverageSpec(K, "liar", fx.site.J.__contains__, filler_oracle=liar)
    with pytest.raises(OracleDisagreement):
        find_filler(TwoSite(K, J), fx.C2_to_1, fx.D2_to_1)


# --------------------------------------------------------------------------
# splitting and weak equivalences


def test_identity_splits_trivially(fx):
    i = fx.K.id1(fx.D2)
    sp = is_j_locally_split(fx.site, i)
    assert (sp.cover, sp.section) == (i, i)


def test_point_inclusion_splits_over_identity_cover(fx):
    K, p = fx.K, fx.points[0]
    sp = is_j_locally_split(fx.site, p)
    assert sp.cover == K.id1(fx.C2codisc)
    assert K.tgt(sp.section) == fx.one and K.src(sp.section) == fx.C2codisc
    assert not splitting_errors(fx.site, sp)


def test_D2_to_1_is_split_but_not_a_weak_equivalence(fx):
    sp = is_j_locally_split(fx.site, fx.D2_to_1)
    assert sp.cover == fx.K.id1(fx.one)
    assert sp.section in fx.K.hom(fx.one, fx.D2)
    v = is_weak_equivalence(fx.site, fx.D2_to_1)
    assert not v and v.kind == "not_ff"
    assert v.ff.witness.z == fx.one


def test_weak_equivalence_examples(fx):
    for f in [fx.K.id1(x) for x in fx.K.objects()] + [fx.C2_to_1, *fx.points]:
        v = is_weak_equivalence(fx.site, f)
        assert v.kind == "weak_equivalence"
        assert not splitting_errors(fx.site, v.splitting)


def test_split_search_agrees_with_cover_enumeration(fx):
    """Splitting over the identity cover is equivalent to splitting over any J-cover."""
    K, J = fx.K, fx.site.J
    site = TwoSite(K, CoverageSpec(K, "enumerated", J.__contains__), crosscheck=False)
    for f in K.one_cells():
        assert bool(is_j_locally_split(site, f)) == bool(is_j_locally_split(fx.site, f)), K.label(f)


def test_J_is_contained_in_W(fx):
    for q in coverage_class(fx.site).members():
        assert is_weak_equivalence(fx.site, q)


def test_W_closed_under_composition(fx):
    K, W = fx.K, fx.site.W
    ws = list(W.members())
    for f in ws:
        for g in ws:
            if K.src(g) == K.tgt(f):
                assert K.compose1(g, f) in W


def test_split_budget_is_reported(fx):
    site = TwoSite(fx.K, fx.site.J)
    r = is_j_locally_split(site, fx.K.hom(fx.D2, fx.C2codisc)[0], SearchBudget(max_candidates=0))
    assert not r and r.exhausted


# --------------------------------------------------------------------------
# cofinality


def test_class_is_cofinal_in_itself(fx):
    rep = is_cofinal(fx.site.W, fx.site.W, fx.site)
    assert rep.cofinal
    assert all(w.g == w.f and w.s == fx.K.id1(fx.K.src(w.f)) for w in rep.witnesses)


def test_J_cofinal_in_W(fx):
    K = fx.K
    rep = is_cofinal(coverage_class(fx.site), fx.site.W, fx.site)
    assert rep.cofinal
    w = cofinal_witness(K, coverage_class(fx.site), fx.points[0])
    assert w.g == K.id1(fx.C2codisc)
    assert (K.src(w.s), K.tgt(w.s)) == (fx.C2codisc, fx.one)
    assert fx.K.first_iso(K.compose1(fx.points[0], w.s), w.g) is not None


def test_identities_cofinal_in_W_since_W_members_are_equivalences(fx):
    # every weak equivalence here has a pseudoinverse s with f∘s ≅ id
    assert is_cofinal(identity_cells(fx.K), fx.site.W, fx.site).cofinal


def test_identities_not_cofinal_in_all_cells(fx):
    rep = is_cofinal(identity_cells(fx.K), all_cells(fx.K), fx.site)
    assert not rep.cofinal
    f = rep.counterexample
    assert f == fx.K.hom(fx.one, fx.D2)[0]
    assert all(fx.K.first_iso(fx.K.compose1(f, s), fx.K.id1(fx.D2)) is None for s in fx.K.hom(fx.D2, fx.one))
