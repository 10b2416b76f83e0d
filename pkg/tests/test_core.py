from __future__ import annotations

import json

import pytest
from hypothesis import given, settings, strategies as st

from twosite.core import (
    FiniteWindow2Cat,
    NotFound,
    SearchBudget,
    check_pseudoinverse,
    dump_window,
    find_pseudoinverse,
    is_ff_one_cell,
    load_window,
    materialize,
    validate_window,
    window_from_dict,
    window_to_dict,
)
from twosite.errors import InstanceFormatError, MalformedTable, NotAOneCell
from twosite.finset import cat2_instance, from_preorder, terminal


def terminal_window() -> FiniteWindow2Cat:
    return FiniteWindow2Cat(
        ["*"], [("i", "*", "*")], [("e", "i", "i")],
        [("i", "i", "i")], [("e", "e", "e")], [("i", "e", "e")], [("e", "i", "e")],
        {"*": "i"}, {"i": "e"}, name="terminal",
    )


def arrow_window(bad_compose: bool = False) -> FiniteWindow2Cat:
    """Objects a, b and one 1-cell f: a -> b, with only identity 2-cells."""
    ones = [("ia", "a", "a"), ("ib", "b", "b"), ("f", "a", "b")]
    twos = [("ea", "ia", "ia"), ("eb", "ib", "ib"), ("ef", "f", "f")]
    c1 = [("ia", "ia", "ia"), ("ib", "ib", "ib"), ("f", "ia", "f"), ("ib", "f", "f")]
    if bad_compose:
        c1[2] = ("f", "ia", "ib")
    vc = [(e, e, e) for e in ("ea", "eb", "ef")]
    wl = [("ia", "ea", "ea"), ("ib", "eb", "eb"), ("f", "ea", "ef"), ("ib", "ef", "ef")]
    wr = [("ea", "ia", "ea"), ("eb", "ib", "eb"), ("ef", "ia", "ef"), ("eb", "f", "ef")]
    return FiniteWindow2Cat(["a", "b"], ones, twos, c1, vc, wl, wr,
                            {"a": "ia", "b": "ib"}, {"ia": "ea", "ib": "eb", "f": "ef"}, name="arrow")


def test_terminal_window_is_valid():
    assert validate_window(terminal_window()).valid


def test_wrong_composite_boundary_names_the_pair():
    rep = validate_window(arrow_window(bad_compose=True))
    assert not rep.valid
    assert any(v.cells[:2] == ("f", "ia") for v in rep.violations)


def test_unknown_cell_is_malformed():
    with pytest.raises(MalformedTable):
        FiniteWindow2Cat(["*"], [("i", "*", "*")], [("e", "i", "i")], [("i", "i", "nope")],
                         [("e", "e", "e")], [], [], {"*": "i"}, {"i": "e"})


def test_fixture_window_is_valid(fx):
    w = materialize(fx.K, "fixture")
    assert len(w.objects()) == 5
    assert validate_window(w).valid


def test_window_file_round_trips_bit_exactly(fx):
    w = materialize(cat2_instance([terminal(), fx.C2codisc]), "two")
    text = dump_window(w)
    again = dump_window(load_window(text))
    assert text == again
    assert window_to_dict(load_window(text)) == json.loads(text)


def test_window_file_keeps_extra_sections():
    d = window_to_dict(terminal_window())
    d["coverage"] = ["i"]
    assert window_to_dict(window_from_dict(d))["coverage"] == ["i"]


def test_window_file_schema_is_checked():
    d = window_to_dict(terminal_window())
    d["schema"] = "other/1"
    with pytest.raises(InstanceFormatError):
        window_from_dict(d)


# --------------------------------------------------------------------------
# ff 1-cells and pseudoinverses


def test_identity_is_ff(fx):
    for x in fx.K.objects():
        assert is_ff_one_cell(fx.K, fx.K.id1(x))


def test_D2_to_1_not_full_at_terminal(fx):
    v = is_ff_one_cell(fx.K, fx.D2_to_1)
    assert not v
    assert v.witness.kind == "not_full"
    assert v.witness.z == fx.one
    # the identity on the composite has no preimage between the two points
    (b,) = v.witness.cells
    assert fx.K.dom2(b) == fx.K.cod2(b) == fx.K.id1(fx.one)
    assert v.witness.f != v.witness.g


def test_C2codisc_to_1_is_ff(fx):
    assert is_ff_one_cell(fx.K, fx.C2_to_1)


def test_BZ2_to_1_not_faithful(fx):
    v = is_ff_one_cell(fx.K, fx.BZ2_to_1)
    assert not v and v.witness.kind == "not_faithful"


def test_ff_agrees_with_direct_enumeration(fx):
    K = fx.K
    for q in K.one_cells():
        expected = True
        for z in K.objects():
            for f in K.hom(z, K.src(q)):
                for g in K.hom(z, K.src(q)):
                    image = [K.whisker_l(q, a) for a in K.cells2(f, g)]
                    target = K.cells2(K.compose1(q, f), K.compose1(q, g))
                    if len(set(image)) != len(image) or set(image) != set(target):
                        expected = False
        assert bool(is_ff_one_cell(K, q)) == expected, K.label(q)


def test_pseudoinverse_of_identity(fx):
    w = find_pseudoinverse(fx.K, fx.K.id1(fx.D2))
    assert w.g == fx.K.id1(fx.D2)
    assert w.eta == fx.K.id2(fx.K.id1(fx.D2))


def test_pseudoinverse_of_C2codisc_to_1_is_a_point(fx):
    w = find_pseudoinverse(fx.K, fx.C2_to_1)
    assert w.g in fx.points
    assert not check_pseudoinverse(fx.K, w)


def test_D2_to_1_has_no_pseudoinverse(fx):
    r = find_pseudoinverse(fx.K, fx.D2_to_1)
    assert isinstance(r, NotFound) and not r.exhausted


def test_pseudoinverse_budget_is_reported(fx):
    r = find_pseudoinverse(fx.K, fx.D2_to_1, SearchBudget(max_candidates=0))
    assert isinstance(r, NotFound) and r.exhausted


def test_pseudoinverse_rejects_non_cells(fx):
    with pytest.raises(NotAOneCell):
        find_pseudoinverse(fx.K, "not a cell")


def test_equivalences_are_ff(fx):
    for f in fx.K.one_cells():
        if find_pseudoinverse(fx.K, f):
            assert is_ff_one_cell(fx.K, f)


# --------------------------------------------------------------------------
# properties


@st.composite
def preorders(draw, max_n: int = 3):
    n = draw(st.integers(1, max_n))
    rel = {(i, i) for i in range(n)}
    rel |= {p for p in draw(st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))))}
    changed = True
    while changed:
        extra = {(a, d) for a, b in rel for c, d in rel if b == c} - rel
        rel |= extra
        changed = bool(extra)
    return n, rel


@settings(max_examples=15, deadline=None)
@given(preorders())
def test_windows_of_random_preorders_are_strict_2_categories(p):
    n, rel = p
    K = cat2_instance([terminal(), from_preorder(n, rel, "P")])
    assert validate_window(materialize(K)).valid


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_interchange_and_whiskering(fx, data):
    K = fx.K
    objs = K.objects()
    A, B, C = (data.draw(st.sampled_from(objs)) for _ in range(3))
    hab, hbc = K.hom(A, B), K.hom(B, C)
    if not hab or not hbc:
        return
    f, g = data.draw(st.sampled_from(hab)), data.draw(st.sampled_from(hab))
    h, k = data.draw(st.sampled_from(hbc)), data.draw(st.sampled_from(hbc))
    alphas, betas = K.cells2(f, g), K.cells2(h, k)
    if not alphas or not betas:
        return
    a, b = data.draw(st.sampled_from(alphas)), data.draw(st.sampled_from(betas))
    assert K.vcomp(K.whisker_l(k, a), K.whisker_r(b, f)) == K.vcomp(K.whisker_r(b, g), K.whisker_l(h, a))
    assert K.hcomp(b, a) == K.vcomp(K.whisker_l(k, a), K.whisker_r(b, f))
    assert K.whisker_l(K.id1(B), a) == a and K.whisker_r(a, K.id1(A)) == a
