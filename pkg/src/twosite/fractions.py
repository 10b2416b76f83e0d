"""Hom-categories of the bicategory of fractions at window scale.

1-cells are spans ``x <-w- u -f-> y`` with ``w`` in W.  A 2-cell
representative between two spans is a mediator ``v`` with legs ``p1, p2``
and 2-cells ``alpha: w1 p1 => w2 p2`` (invertible) and
``beta: f1 p1 => f2 p2``.  Two representatives are identified by a bridging
diagram :class:`EquivalenceWitness`; all equations are checked by
evaluating pasted 2-cells in the ambient 2-category.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable

from .bf import check_bf3, check_bf4
from .certificates import Certificate
from .core import BudgetExhausted, NotFound, SearchBudget, TwoCategory
from .errors import BoundaryMismatch
from .site import OneCellClass, TwoSite, cofinal_witness


@dataclass(frozen=True)
class FractionSpan:
    x: Hashable
    y: Hashable
    apex: Hashable
    w: Hashable
    f: Hashable


@dataclass(frozen=True)
class FractionTwoCellRep:
    source: FractionSpan
    target: FractionSpan
    v: Hashable
    p1: Hashable
    p2: Hashable
    alpha: Hashable
    alpha_inv: Hashable
    beta: Hashable


@dataclass(frozen=True)
class EquivalenceWitness:
    """Bridge from ``r1`` to ``r2``: ``q: t -> v1``, ``qp: t -> v2``.

    ``gamma1: p1' qp => p1 q`` and ``gamma2: p2 q => p2' qp`` are invertible.
    """

    t: Hashable
    q: Hashable
    qp: Hashable
    gamma1: Hashable
    gamma1_inv: Hashable
    gamma2: Hashable
    gamma2_inv: Hashable


@dataclass
class EquivalenceVerdict:
    """``kind`` is ``equivalent``, ``not_equivalent`` (search over the
    mediator scope completed) or ``not_equivalent_within_bound``."""

    kind: str
    witness: EquivalenceWitness | None = None
    scope: tuple = ()

    def __bool__(self) -> bool:
        return self.kind == "equivalent"


# --------------------------------------------------------------------------
# validation


def span_errors(site: TwoSite, F: FractionSpan) -> list[str]:
    K = site.K
    errs = []
    if K.src(F.w) != F.apex or K.src(F.f) != F.apex:
        errs.append("legs do not start at the apex")
    if K.tgt(F.w) != F.x or K.tgt(F.f) != F.y:
        errs.append("legs do not end at x and y")
    if not errs and F.w not in site.W:
        errs.append("backward leg not in W")
    return errs


def _iso_errors(K: TwoCategory, a, a_inv, name: str) -> list[str]:
    f, g = K.dom2(a), K.cod2(a)
    if K.dom2(a_inv) != g or K.cod2(a_inv) != f:
        return [f"{name} inverse has the wrong boundary"]
    if K.vcomp(a_inv, a) != K.id2(f) or K.vcomp(a, a_inv) != K.id2(g):
        return [f"{name} is not invertible"]
    return []


def rep_errors(site: TwoSite, r: FractionTwoCellRep) -> list[str]:
    K = site.K
    S, T = r.source, r.target
    if (S.x, S.y) != (T.x, T.y):
        return ["spans have different endpoints"]
    if K.src(r.p1) != r.v or K.src(r.p2) != r.v or K.tgt(r.p1) != S.apex or K.tgt(r.p2) != T.apex:
        return ["mediator legs have the wrong boundary"]
    errs = []
    a1, a2 = K.compose1(S.w, r.p1), K.compose1(T.w, r.p2)
    b1, b2 = K.compose1(S.f, r.p1), K.compose1(T.f, r.p2)
    if (K.dom2(r.alpha), K.cod2(r.alpha)) != (a1, a2):
        errs.append("alpha has the wrong boundary")
    else:
        errs += _iso_errors(K, r.alpha, r.alpha_inv, "alpha")
    if (K.dom2(r.beta), K.cod2(r.beta)) != (b1, b2):
        errs.append("beta has the wrong boundary")
    if a1 not in site.W:
        errs.append("w1 p1 not in W")
    if a2 not in site.W:
        errs.append("w2 p2 not in W")
    return errs


def witness_errors(site: TwoSite, r1: FractionTwoCellRep, r2: FractionTwoCellRep, e: EquivalenceWitness) -> list[str]:
    """Every violated condition of the bridging diagram, by name."""
    K = site.K
    w1, w2 = r1.source.w, r1.target.w
    f1, f2 = r1.source.f, r1.target.f
    if K.src(e.q) != e.t or K.src(e.qp) != e.t or K.tgt(e.q) != r1.v or K.tgt(e.qp) != r2.v:
        return ["bridge legs have the wrong boundary"]
    p1q, p2q = K.compose1(r1.p1, e.q), K.compose1(r1.p2, e.q)
    p1qp, p2qp = K.compose1(r2.p1, e.qp), K.compose1(r2.p2, e.qp)
    errs = []
    if (K.dom2(e.gamma1), K.cod2(e.gamma1)) != (p1qp, p1q):
        errs.append("gamma1 has the wrong boundary")
    if (K.dom2(e.gamma2), K.cod2(e.gamma2)) != (p2q, p2qp):
        errs.append("gamma2 has the wrong boundary")
    if errs:
        return errs
    errs += _iso_errors(K, e.gamma1, e.gamma1_inv, "gamma1")
    errs += _iso_errors(K, e.gamma2, e.gamma2_inv, "gamma2")
    lhs = K.vcompose(K.whisker_l(w2, e.gamma2), K.whisker_r(r1.alpha, e.q), K.whisker_l(w1, e.gamma1))
    if lhs != K.whisker_r(r2.alpha, e.qp):
        errs.append("alpha pasting: (w2 gamma2)(alpha q)(w1 gamma1) != alpha' q'")
    lhs = K.vcompose(K.whisker_l(f2, e.gamma2), K.whisker_r(r1.beta, e.q), K.whisker_l(f1, e.gamma1))
    if lhs != K.whisker_r(r2.beta, e.qp):
        errs.append("beta pasting: (f2 gamma2)(beta q)(f1 gamma1) != beta' q'")
    if K.compose1(w1, p1q) not in site.W:
        errs.append("w1 p1 q not in W")
    if K.compose1(w1, p1qp) not in site.W:
        errs.append("w1 p1' q' not in W")
    return errs


# --------------------------------------------------------------------------
# basic constructions


def localise_one_cell(K: TwoCategory, f) -> FractionSpan:
    x = K.src(f)
    return FractionSpan(x, K.tgt(f), x, K.id1(x), f)


def identity_span(K: TwoCategory, x) -> FractionSpan:
    return localise_one_cell(K, K.id1(x))


def identity_rep(K: TwoCategory, F: FractionSpan) -> FractionTwoCellRep:
    i = K.id1(F.apex)
    a = K.id2(F.w)
    return FractionTwoCellRep(F, F, F.apex, i, i, a, a, K.id2(F.f))


def formal_inverse(K: TwoCategory, r: FractionTwoCellRep) -> FractionTwoCellRep:
    """The reversed representative; needs ``beta`` invertible."""
    b_inv = K.inverse2(r.beta)
    if b_inv is None:
        raise ValueError("beta is not invertible")
    return FractionTwoCellRep(r.target, r.source, r.v, r.p2, r.p1, r.alpha_inv, r.alpha, b_inv)


def reflexive_witness(K: TwoCategory, r: FractionTwoCellRep) -> EquivalenceWitness:
    i = K.id1(r.v)
    g1, g2 = K.id2(r.p1), K.id2(r.p2)
    return EquivalenceWitness(r.v, i, i, g1, g1, g2, g2)


def symmetric_witness(e: EquivalenceWitness) -> EquivalenceWitness:
    return EquivalenceWitness(e.t, e.qp, e.q, e.gamma1_inv, e.gamma1, e.gamma2_inv, e.gamma2)


def _dedupe(seq: Iterable) -> list:
    out, seen = [], set()
    for c in seq:
        if c not in seen:
            seen.add(c)
            out.append(c)
    return out


def _mediators(site: TwoSite, first: Iterable, extra: Iterable = ()) -> list:
    return _dedupe(list(first) + list(extra) + list(site.K.objects()))


def compose_spans(G: FractionSpan, F: FractionSpan, site: TwoSite, budget: SearchBudget | None = None,
                  W: OneCellClass | None = None, with_square: bool = False):
    """``G∘F`` over a BF3 square for ``(w_G, f_F)``.

    ``W`` defaults to the site's weak equivalences (constructive square);
    passing another class object with the same members selects the
    window-search square instead.  With ``with_square`` returns
    ``(span, square)``.
    """
    K = site.K
    if F.y != G.x:
        raise BoundaryMismatch("spans are not composable")
    sq = check_bf3(K, W or site.W, G.w, F.f, budget)
    if not sq:
        return sq
    H = FractionSpan(F.x, G.y, sq.corner, K.compose1(F.w, sq.left), K.compose1(G.f, sq.top))
    errs = span_errors(site, H)
    if errs:
        raise AssertionError("; ".join(errs))
    return (H, sq) if with_square else H


# --------------------------------------------------------------------------
# the equivalence relation


def _tower(site: TwoSite, r1: FractionTwoCellRep, r2: FractionTwoCellRep, depth: int) -> list:
    """Corners of strict pullbacks of the representatives' legs.

    Depth 1 adds the pullback of ``w1 p1`` against ``w1 p1'``; depth 2 also
    adds the pullbacks of ``p1, p1'`` and ``p2, p2'``.
    """
    K = site.K
    sq = getattr(K, "strict_square", None)
    if sq is None or depth <= 0:
        return []
    w1 = r1.source.w
    out = [sq(K.compose1(w1, r1.p1), K.compose1(w1, r2.p1))[0]]
    if depth >= 2:
        out.append(sq(r1.p1, r2.p1)[0])
        out.append(sq(r1.p2, r2.p2)[0])
    return out


def _search_bridge(site: TwoSite, r1, r2, ts, meter):
    K, W = site.K, site.W
    w1, w2 = r1.source.w, r1.target.w
    f1, f2 = r1.source.f, r1.target.f
    for t in ts:
        qps = [qp for qp in K.hom(t, r2.v) if K.compose1(w1, K.compose1(r2.p1, qp)) in W]
        if not qps:
            continue
        for q in K.hom(t, r1.v):
            p1q, p2q = K.compose1(r1.p1, q), K.compose1(r1.p2, q)
            if K.compose1(w1, p1q) not in W:
                continue
            aq, bq = K.whisker_r(r1.alpha, q), K.whisker_r(r1.beta, q)
            for qp in qps:
                meter.tick()
                g1s = K.iso_cells2(K.compose1(r2.p1, qp), p1q)
                if not g1s:
                    continue
                g2s = K.iso_cells2(p2q, K.compose1(r2.p2, qp))
                a_t, b_t = K.whisker_r(r2.alpha, qp), K.whisker_r(r2.beta, qp)
                for g1 in g1s:
                    wg1, fg1 = K.whisker_l(w1, g1), K.whisker_l(f1, g1)
                    for g2 in g2s:
                        if K.vcompose(K.whisker_l(w2, g2), aq, wg1) != a_t:
                            continue
                        if K.vcompose(K.whisker_l(f2, g2), bq, fg1) != b_t:
                            continue
                        return EquivalenceWitness(t, q, qp, g1, K.inverse2(g1), g2, K.inverse2(g2))
    return None


def two_cells_equivalent(r1: FractionTwoCellRep, r2: FractionTwoCellRep, site: TwoSite,
                         budget: SearchBudget | None = None, mediators: Iterable = ()) -> EquivalenceVerdict:
    """Search a bridging diagram from ``r1`` to ``r2``.

    Mediators tried: the window objects, the two representatives'
    mediators, ``mediators`` and then (on backends with strict pullbacks) corners of
    pullbacks of the legs up to ``budget.max_depth``.  ``not_equivalent``
    means every candidate mediator was searched exhaustively.
    """
    K = site.K
    if (r1.source, r1.target) != (r2.source, r2.target):
        raise BoundaryMismatch("representatives between different spans")
    if r1 == r2:
        return EquivalenceVerdict("equivalent", reflexive_witness(K, r1))
    budget = budget or SearchBudget()
    meter = budget.meter()
    # window objects first: off-window mediators (composites, pullback
    # corners) can have hom-sets too large to enumerate
    ts = _dedupe(list(K.objects()) + [r1.v, r2.v] + list(mediators))
    try:
        e = _search_bridge(site, r1, r2, ts, meter)
        if e is None:
            more = [t for t in _tower(site, r1, r2, budget.max_depth) if t not in set(ts)]
            ts = ts + more
            e = _search_bridge(site, r1, r2, more, meter)
    except BudgetExhausted:
        return EquivalenceVerdict("not_equivalent_within_bound", None, tuple(ts))
    if e is None:
        return EquivalenceVerdict("not_equivalent", None, tuple(ts))
    assert not witness_errors(site, r1, r2, e), witness_errors(site, r1, r2, e)
    return EquivalenceVerdict("equivalent", e, tuple(ts))


def compose_witnesses(site: TwoSite, r1, r2, r3, e12: EquivalenceWitness, e23: EquivalenceWitness,
                      budget: SearchBudget | None = None) -> EquivalenceWitness:
    """Bridge ``r1 ~ r3`` from bridges ``r1 ~ r2`` and ``r2 ~ r3``.

    The two bridge legs into ``v2`` become W-legs after ``A = w1 p1''``; a
    BF3 square on them, lifted along ``A`` by BF4, gives a common
    refinement on which the 2-cells paste.
    """
    K, W = site.K, site.W
    A = K.compose1(r2.source.w, r2.p1)
    sq = check_bf3(K, W, K.compose1(A, e23.q), K.compose1(A, e12.qp), budget)
    if not sq:
        raise RuntimeError(f"no BF3 square for the bridge cospan: {sq.reason}")
    n, m = sq.top, sq.left
    lift = check_bf4(K, W, A, K.compose1(e23.q, n), K.compose1(e12.qp, m), sq.cell, budget)
    if not lift:
        raise RuntimeError(f"no BF4 lift: {lift.reason}")
    n, m = K.compose1(n, lift.v), K.compose1(m, lift.v)
    th, th_inv = lift.beta, lift.beta_inv  # e23.q n => e12.qp m
    Q, Qp = K.compose1(e12.q, m), K.compose1(e23.qp, n)
    g1 = K.vcompose(K.whisker_r(e12.gamma1, m), K.whisker_l(r2.p1, th), K.whisker_r(e23.gamma1, n))
    g1i = K.vcompose(K.whisker_r(e23.gamma1_inv, n), K.whisker_l(r2.p1, th_inv), K.whisker_r(e12.gamma1_inv, m))
    g2 = K.vcompose(K.whisker_r(e23.gamma2, n), K.whisker_l(r2.p2, th_inv), K.whisker_r(e12.gamma2, m))
    g2i = K.vcompose(K.whisker_r(e12.gamma2_inv, m), K.whisker_l(r2.p2, th), K.whisker_r(e23.gamma2_inv, n))
    return EquivalenceWitness(K.src(m), Q, Qp, g1, g1i, g2, g2i)


# --------------------------------------------------------------------------
# vertical composition


def vertical_compose(r23: FractionTwoCellRep, r12: FractionTwoCellRep, site: TwoSite,
                     budget: SearchBudget | None = None) -> FractionTwoCellRep:
    """``r23 ∘ r12`` on a common refinement of the two mediators.

    A BF3 square for ``(w2 p1', w2 p2)`` gives legs ``a, b`` and a 2-cell
    ``w2 p2 a => w2 p1' b``, which BF4 lifts along ``w2``.
    """
    K, W = site.K, site.W
    if r12.target != r23.source:
        raise BoundaryMismatch("representatives are not composable")
    w2 = r12.target.w
    f2 = r12.target.f
    sq = check_bf3(K, W, K.compose1(w2, r23.p1), K.compose1(w2, r12.p2), budget)
    if not sq:
        raise RuntimeError(f"no BF3 square: {sq.reason}")
    b, a = sq.top, sq.left
    lift = check_bf4(K, W, w2, K.compose1(r12.p2, a), K.compose1(r23.p1, b), sq.cell_inv, budget)
    if not lift:
        raise RuntimeError(f"no BF4 lift: {lift.reason}")
    a, b = K.compose1(a, lift.v), K.compose1(b, lift.v)
    d, d_inv = lift.beta, lift.beta_inv
    alpha = K.vcompose(K.whisker_r(r23.alpha, b), K.whisker_l(w2, d), K.whisker_r(r12.alpha, a))
    alpha_inv = K.vcompose(K.whisker_r(r12.alpha_inv, a), K.whisker_l(w2, d_inv), K.whisker_r(r23.alpha_inv, b))
    beta = K.vcompose(K.whisker_r(r23.beta, b), K.whisker_l(f2, d), K.whisker_r(r12.beta, a))
    r = FractionTwoCellRep(r12.source, r23.target, K.src(a), K.compose1(r12.p1, a), K.compose1(r23.p2, b),
                           alpha, alpha_inv, beta)
    errs = rep_errors(site, r)
    if errs:
        raise AssertionError("; ".join(errs))
    return r


# --------------------------------------------------------------------------
# normal forms


@dataclass(frozen=True)
class SpanFiller:
    """Chosen filler for the cospan of two spans: ``alpha: w1 p1 => w2 p2``."""

    source: FractionSpan
    target: FractionSpan
    corner: Hashable
    p1: Hashable
    p2: Hashable
    alpha: Hashable
    alpha_inv: Hashable


def choose_filler(F1: FractionSpan, F2: FractionSpan, site: TwoSite, budget: SearchBudget | None = None,
                  W: OneCellClass | None = None) -> SpanFiller:
    """BF3 square for ``(w2, w1)``; ``W`` as in :func:`compose_spans`."""
    K = site.K
    sq = check_bf3(K, W or site.W, F2.w, F1.w, budget)
    if not sq:
        raise RuntimeError(f"no BF3 square: {sq.reason}")
    fl = SpanFiller(F1, F2, sq.corner, sq.left, sq.top, sq.cell_inv, sq.cell)
    for leg in (K.compose1(F1.w, fl.p1), K.compose1(F2.w, fl.p2)):
        if leg not in site.W:
            raise AssertionError("filler legs not in W")
    return fl


def nf_rep(K: TwoCategory, fl: SpanFiller, qp, beta) -> FractionTwoCellRep:
    return FractionTwoCellRep(fl.source, fl.target, K.src(qp), K.compose1(fl.p1, qp), K.compose1(fl.p2, qp),
                              K.whisker_r(fl.alpha, qp), K.whisker_r(fl.alpha_inv, qp), beta)


@dataclass(frozen=True)
class NormalForm:
    rep: FractionTwoCellRep
    qp: Hashable
    witness: EquivalenceWitness  # from the input to ``rep``


def tommasini_normal_form(r: FractionTwoCellRep, fl: SpanFiller, site: TwoSite,
                          budget: SearchBudget | None = None, mediators: Iterable = ()):
    """An equivalent representative over the filler corner: legs ``p_i q'``,
    alpha ``alpha0 q'`` with ``q'`` in W.  Returns :class:`NormalForm` or
    :class:`NotFound`."""
    K, W = site.K, site.W
    if (r.source, r.target) != (fl.source, fl.target):
        raise BoundaryMismatch("filler is for a different pair of spans")
    w1, w2 = r.source.w, r.target.w
    f1, f2 = r.source.f, r.target.f
    for qp in K.hom(r.v, fl.corner):
        if qp in W and nf_rep(K, fl, qp, r.beta) == r:
            return NormalForm(r, qp, reflexive_witness(K, r))
    meter = (budget or SearchBudget()).meter()
    try:
        for t in _mediators(site, [r.v, fl.corner], mediators):
            qps = [qp for qp in K.hom(t, fl.corner) if qp in W]
            for m in K.hom(t, r.v):
                p1m, p2m = K.compose1(r.p1, m), K.compose1(r.p2, m)
                if K.compose1(w1, p1m) not in W:
                    continue
                am, bm = K.whisker_r(r.alpha, m), K.whisker_r(r.beta, m)
                for qp in qps:
                    meter.tick()
                    g1s = K.iso_cells2(K.compose1(fl.p1, qp), p1m)
                    if not g1s:
                        continue
                    g2s = K.iso_cells2(p2m, K.compose1(fl.p2, qp))
                    target = K.whisker_r(fl.alpha, qp)
                    for g1 in g1s:
                        for g2 in g2s:
                            if K.vcompose(K.whisker_l(w2, g2), am, K.whisker_l(w1, g1)) != target:
                                continue
                            beta = K.vcompose(K.whisker_l(f2, g2), bm, K.whisker_l(f1, g1))
                            nf = nf_rep(K, fl, qp, beta)
                            i = K.id1(t)
                            e = EquivalenceWitness(t, m, i, g1, K.inverse2(g1), g2, K.inverse2(g2))
                            errs = witness_errors(site, r, nf, e)
                            if errs:
                                raise AssertionError("; ".join(errs))
                            return NormalForm(nf, qp, e)
    except BudgetExhausted:
        return NotFound("budget exhausted", exhausted=True)
    return NotFound("no normal form over the mediator scope")


def nf_legs(site: TwoSite, fl: SpanFiller, V: OneCellClass) -> list:
    """Candidate ``q'`` in ``V`` into the filler corner, identity first."""
    K = site.K
    i = K.id1(fl.corner)
    return _dedupe(([i] if i in V else []) + list(V.into(fl.corner)))


def class_key(r: FractionTwoCellRep, fl: SpanFiller, site: TwoSite, V: OneCellClass,
              budget: SearchBudget | None = None):
    """Canonical normal form of the class of ``r``.

    The first ``(q', beta)`` in enumeration order (``q'`` from
    :func:`nf_legs`, ``beta`` from the hom-category) whose normal-form
    representative is equivalent to ``r``; returns ``((i, j), rep)`` or
    :class:`NotFound`.
    """
    K = site.K
    exhausted = False
    for i, qp in enumerate(nf_legs(site, fl, V)):
        for j, beta in enumerate(K.cells2(K.compose1(r.source.f, K.compose1(fl.p1, qp)),
                                          K.compose1(r.target.f, K.compose1(fl.p2, qp)))):
            cand = nf_rep(K, fl, qp, beta)
            v = two_cells_equivalent(r, cand, site, budget)
            if v:
                return (i, j), cand
            exhausted |= v.kind == "not_equivalent_within_bound"
    return NotFound("no equivalent normal form", exhausted=exhausted)


# --------------------------------------------------------------------------
# cofinal classes


def normalize_backward_leg(F: FractionSpan, V: OneCellClass, site: TwoSite, budget: SearchBudget | None = None):
    """Isomorphic span with backward leg in ``V``: ``(span, rep F => span)``."""
    K = site.K
    if F.w in V:
        return F, identity_rep(K, F)
    cw = cofinal_witness(K, V, F.w, (budget or SearchBudget()).meter())
    if cw is None:
        return NotFound("no cofinal factorisation of the backward leg")
    G = FractionSpan(F.x, F.y, K.src(cw.g), cw.g, K.compose1(F.f, cw.s))
    i = K.id1(G.apex)
    rep = FractionTwoCellRep(F, G, G.apex, cw.s, i, cw.cell, K.inverse2(cw.cell), K.id2(G.f))
    errs = rep_errors(site, rep)
    if errs:
        raise AssertionError("; ".join(errs))
    return G, rep


def retract_two_cell_to_cofinal(fl: SpanFiller, q, beta, r, s, phi, site: TwoSite):
    """Move the normal form ``(q, beta)`` to ``(r, gamma)`` along ``phi: q s => r``.

    ``gamma = (f2 p2 phi)(beta s)(f1 p1 phi^-1)``.  Returns the two
    representatives and the bridge from ``(q, beta)`` to ``(r, gamma)``,
    which is the span ``v0 <= v0 -s-> v'`` with 2-cells ``phi^-1, phi``.
    """
    K = site.K
    if K.dom2(phi) != K.compose1(q, s) or K.cod2(phi) != r:
        raise BoundaryMismatch("phi must go from q∘s to r")
    phi_inv = K.inverse2(phi)
    if phi_inv is None:
        raise ValueError("phi is not invertible")
    f1p1, f2p2 = K.compose1(fl.source.f, fl.p1), K.compose1(fl.target.f, fl.p2)
    gamma = K.vcompose(K.whisker_l(f2p2, phi), K.whisker_r(beta, s), K.whisker_l(f1p1, phi_inv))
    r_qb, r_rg = nf_rep(K, fl, q, beta), nf_rep(K, fl, r, gamma)
    g1 = K.whisker_l(fl.p1, phi_inv)
    g2 = K.whisker_l(fl.p2, phi)
    e = EquivalenceWitness(K.src(s), s, K.id1(K.src(s)), g1, K.whisker_l(fl.p1, phi), g2, K.whisker_l(fl.p2, phi_inv))
    return r_qb, r_rg, e


# --------------------------------------------------------------------------
# hom-categories


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i: int, j: int) -> None:
        a, b = self.find(i), self.find(j)
        if a != b:
            self.parent[max(a, b)] = min(a, b)

    def classes(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for i in range(len(self.parent)):
            out.setdefault(self.find(i), []).append(i)
        return list(out.values())


def find_iso_rep(F1: FractionSpan, F2: FractionSpan, site: TwoSite, budget: SearchBudget | None = None,
                 mediators: Iterable = ()):
    """A representative ``F1 => F2`` with ``beta`` invertible, or :class:`NotFound`."""
    K, W = site.K, site.W
    meter = (budget or SearchBudget()).meter()
    try:
        for v in _mediators(site, [F1.apex, F2.apex], mediators):
            for p1 in K.hom(v, F1.apex):
                a1 = K.compose1(F1.w, p1)
                if a1 not in W:
                    continue
                b1 = K.compose1(F1.f, p1)
                for p2 in K.hom(v, F2.apex):
                    meter.tick()
                    alpha = K.first_iso(a1, K.compose1(F2.w, p2))
                    if alpha is None:
                        continue
                    beta = K.first_iso(b1, K.compose1(F2.f, p2))
                    if beta is None:
                        continue
                    r = FractionTwoCellRep(F1, F2, v, p1, p2, alpha, K.inverse2(alpha), beta)
                    if not rep_errors(site, r):
                        return r
    except BudgetExhausted:
        return NotFound("budget exhausted", exhausted=True)
    return NotFound("no invertible representative over the mediator scope")


def enumerate_reps(F1: FractionSpan, F2: FractionSpan, site: TwoSite, mediators: Iterable | None = None) -> list:
    """Every representative ``F1 => F2`` with mediator among ``mediators``
    (default: window objects)."""
    K, W = site.K, site.W
    out = []
    for v in (K.objects() if mediators is None else mediators):
        for p1 in K.hom(v, F1.apex):
            a1 = K.compose1(F1.w, p1)
            if a1 not in W:
                continue
            for p2 in K.hom(v, F2.apex):
                a2 = K.compose1(F2.w, p2)
                if a2 not in W:
                    continue
                b1, b2 = K.compose1(F1.f, p1), K.compose1(F2.f, p2)
                for alpha in K.iso_cells2(a1, a2):
                    ai = K.inverse2(alpha)
                    for beta in K.cells2(b1, b2):
                        out.append(FractionTwoCellRep(F1, F2, v, p1, p2, alpha, ai, beta))
    return out


@dataclass
class HomCatPresentation:
    """``spans`` with backward leg in V, grouped in ``span_classes`` (index
    lists); ``representatives`` indexes the first span of each class.
    ``two_cells[(i, j)]`` lists class normal forms between representatives
    ``i`` and ``j``; ``composition[(i, j, k, a, b)] = c`` says class ``b``
    after class ``a`` is class ``c``."""

    x: Hashable
    y: Hashable
    spans: list[FractionSpan]
    span_classes: list[list[int]]
    representatives: list[int]
    fillers: dict = field(default_factory=dict)
    two_cells: dict = field(default_factory=dict)
    composition: dict = field(default_factory=dict)
    composition_failures: list = field(default_factory=list)
    exhausted: bool = False

    @property
    def counts(self) -> dict:
        return {
            "spans": len(self.spans),
            "span_classes": len(self.span_classes),
            "two_cell_classes": sum(len(v) for v in self.two_cells.values()),
        }


def enumerate_hom_category(x, y, site: TwoSite, V: OneCellClass, budget: SearchBudget | None = None,
                           compose: bool = True) -> HomCatPresentation:
    K = site.K
    spans = [
        FractionSpan(x, y, u, w, f)
        for u in K.objects()
        for w in K.hom(u, x)
        if w in V
        for f in K.hom(u, y)
    ]
    uf = _UnionFind(len(spans))
    exhausted = False
    for i in range(len(spans)):
        for j in range(i + 1, len(spans)):
            if uf.find(i) == uf.find(j):
                continue
            r = find_iso_rep(spans[i], spans[j], site, budget)
            if r:
                uf.union(i, j)
            else:
                exhausted |= r.exhausted
    classes = sorted(uf.classes())
    reps = [c[0] for c in classes]
    hp = HomCatPresentation(x, y, spans, classes, reps, exhausted=exhausted)
    for i in reps:
        for j in reps:
            Fi, Fj = spans[i], spans[j]
            fl = choose_filler(Fi, Fj, site, budget)
            hp.fillers[(i, j)] = fl
            cands = [nf_rep(K, fl, qp, b) for qp in nf_legs(site, fl, V)
                     for b in K.cells2(K.compose1(Fi.f, K.compose1(fl.p1, qp)), K.compose1(Fj.f, K.compose1(fl.p2, qp)))]
            found: list = []
            for c in cands:
                v = None
                for d in found:
                    v = two_cells_equivalent(d, c, site, budget)
                    if v:
                        break
                    hp.exhausted |= v.kind == "not_equivalent_within_bound"
                if not v:
                    found.append(c)
            hp.two_cells[(i, j)] = found
    if compose:
        for i in reps:
            for j in reps:
                for k in reps:
                    for a, ra in enumerate(hp.two_cells[(i, j)]):
                        for b, rb in enumerate(hp.two_cells[(j, k)]):
                            rc = vertical_compose(rb, ra, site, budget)
                            c = next((n for n, d in enumerate(hp.two_cells[(i, k)])
                                      if two_cells_equivalent(rc, d, site, budget)), None)
                            if c is None:
                                hp.composition_failures.append((i, j, k, a, b))
                            else:
                                hp.composition[(i, j, k, a, b)] = c
    return hp


# --------------------------------------------------------------------------
# localisation


@dataclass(frozen=True)
class LocalisationInverse:
    """``unit: id_x => G∘F`` and ``counit: F∘G => id_y`` with invertible beta."""

    F: FractionSpan
    G: FractionSpan
    GF: FractionSpan
    FG: FractionSpan
    unit: FractionTwoCellRep
    counit: FractionTwoCellRep
    square_GF: object = None
    square_FG: object = None


def is_equivalence_in_localisation(F: FractionSpan, site: TwoSite, budget: SearchBudget | None = None):
    """Search a span ``G: y -> x`` inverse to ``F`` up to invertible 2-cells.

    Candidate apexes are ``F``'s apex and then the window; forward legs try
    the identity first.  Returns :class:`LocalisationInverse` or
    :class:`NotFound`.
    """
    K, W = site.K, site.W
    exhausted = False
    for u in _dedupe([F.apex] + list(K.objects())):
        for w in K.hom(u, F.y):
            if w not in W:
                continue
            fs = list(K.hom(u, F.x))
            if u == F.x:
                i = K.id1(u)
                fs = [i] + [f for f in fs if f != i]
            for f in fs:
                G = FractionSpan(F.y, F.x, u, w, f)
                gf, fg = compose_spans(G, F, site, budget, with_square=True), compose_spans(F, G, site, budget, with_square=True)
                if not gf or not fg:
                    exhausted = True
                    continue
                (GF, sq_gf), (FG, sq_fg) = gf, fg
                unit = find_iso_rep(identity_span(K, F.x), GF, site, budget)
                if not unit:
                    exhausted |= unit.exhausted
                    continue
                counit = find_iso_rep(FG, identity_span(K, F.y), site, budget)
                if not counit:
                    exhausted |= counit.exhausted
                    continue
                return LocalisationInverse(F, G, GF, FG, unit, counit, sq_gf, sq_fg)
    return NotFound("no inverse span over the window", exhausted=exhausted)


# --------------------------------------------------------------------------
# certificates


def span_payload(F: FractionSpan) -> dict:
    return {"x": F.x, "y": F.y, "apex": F.apex, "w": F.w, "f": F.f}


def rep_payload(r: FractionTwoCellRep) -> dict:
    return {"v": r.v, "p1": r.p1, "p2": r.p2, "alpha": r.alpha, "alpha_inv": r.alpha_inv, "beta": r.beta}


def equivalence_certificate(r1: FractionTwoCellRep, r2: FractionTwoCellRep, e: EquivalenceWitness) -> Certificate:
    return Certificate("equivalence", {
        "F1": span_payload(r1.source), "F2": span_payload(r1.target),
        "r1": rep_payload(r1), "r2": rep_payload(r2),
        "witness": {"t": e.t, "q": e.q, "qp": e.qp, "gamma1": e.gamma1, "gamma1_inv": e.gamma1_inv,
                    "gamma2": e.gamma2, "gamma2_inv": e.gamma2_inv},
    })


def iso_rep_certificate(K: TwoCategory, r: FractionTwoCellRep) -> Certificate:
    return Certificate("iso_rep", {
        "F1": span_payload(r.source), "F2": span_payload(r.target),
        "rep": rep_payload(r), "beta_inv": K.inverse2(r.beta),
    })


def _square_payload(sq) -> dict:
    return {"w": sq.q, "f": sq.f, "corner": sq.corner, "top": sq.top, "v": sq.left, "cell": sq.cell, "cell_inv": sq.cell_inv}


def localisation_certificate(K: TwoCategory, li: LocalisationInverse) -> Certificate:
    return Certificate("localisation", {
        "F": span_payload(li.F), "G": span_payload(li.G),
        "GF": span_payload(li.GF), "FG": span_payload(li.FG),
        "square_GF": _square_payload(li.square_GF), "square_FG": _square_payload(li.square_FG),
        "unit": rep_payload(li.unit), "unit_beta_inv": K.inverse2(li.unit.beta),
        "counit": rep_payload(li.counit), "counit_beta_inv": K.inverse2(li.counit.beta),
    })
