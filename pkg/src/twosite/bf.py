"""Witness search for the fraction axioms BF1-BF4.

For an arbitrary class W the checks are bounded searches over the window.
When W is the class of weak equivalences of a 2-site, each check runs the
constructive argument instead: equivalences are split and ff, splittings
compose through a coverage filler, BF3 squares are a splitting followed by a
filler, and BF4 lifts 2-cells uniquely along ff 1-cells with ``v = id``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable

from .certificates import Certificate
from .core import BudgetExhausted, NotFound, SearchBudget, TwoCategory, find_pseudoinverse
from .site import (
    FillerSquare,
    LocalSplitting,
    OneCellClass,
    TwoSite,
    coverage_class,
    find_filler,
    is_j_locally_split,
    splitting_errors,
    weak_equivalences,
)


@dataclass
class BFReport:
    axiom: str
    checked: int = 0
    counterexamples: list = field(default_factory=list)
    unverified: list = field(default_factory=list)
    certificates: list[Certificate] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.counterexamples and not self.unverified


def _site_of(W: OneCellClass) -> TwoSite | None:
    return getattr(W, "site", None)


# --------------------------------------------------------------------------
# BF1


def check_bf1(K: TwoCategory, W: OneCellClass, budget: SearchBudget | None = None) -> BFReport:
    rep = BFReport("BF1")
    for f in K.one_cells():
        pi = find_pseudoinverse(K, f, budget)
        if not pi:
            if pi.exhausted:
                rep.unverified.append(f)
            continue
        rep.checked += 1
        if f not in W:
            rep.counterexamples.append(f)
        else:
            rep.certificates.append(Certificate("bf1", {
                "f": pi.f, "g": pi.g, "eta": pi.eta, "eps": pi.eps, "eta_inv": pi.eta_inv, "eps_inv": pi.eps_inv,
            }))
    return rep


# --------------------------------------------------------------------------
# BF2


def compose_splittings(site: TwoSite, sp_f: LocalSplitting, sp_g: LocalSplitting) -> LocalSplitting:
    """Splitting of ``g∘f`` from splittings of ``f`` and ``g``.

    The cover of ``f`` and the section of ``g`` form a cospan over the middle
    object; a coverage filler for it gives the new cover (filler leg then the
    cover of ``g``) and the new section (filler top then the section of ``f``).
    """
    K = site.K
    f, g = sp_f.f, sp_g.f
    sq = find_filler(site, sp_f.cover, sp_g.section)
    if not sq:
        raise RuntimeError("coverage filler missing")
    cover = K.compose1(sp_g.cover, sq.left)
    section = K.compose1(sp_f.section, sq.top)
    cell = K.vcompose(
        K.whisker_r(sp_g.cell, sq.left),
        K.whisker_l(g, sq.cell),
        K.whisker_l(g, K.whisker_r(sp_f.cell, sq.top)),
    )
    inv = K.vcompose(
        K.whisker_l(g, K.whisker_r(sp_f.cell_inv, sq.top)),
        K.whisker_l(g, sq.cell_inv),
        K.whisker_r(sp_g.cell_inv, sq.left),
    )
    return LocalSplitting(K.compose1(g, f), cover, section, cell, inv)


def transport_splitting(site: TwoSite, sp: LocalSplitting, a, a_inv, f) -> LocalSplitting:
    """Splitting of ``f`` from one of ``w`` and an invertible ``a: w => f``."""
    K = site.K
    cell = K.vcomp(sp.cell, K.whisker_r(a_inv, sp.section))
    inv = K.vcomp(K.whisker_r(a, sp.section), sp.cell_inv)
    return LocalSplitting(f, sp.cover, sp.section, cell, inv)


def check_bf2(K: TwoCategory, W: OneCellClass, budget: SearchBudget | None = None) -> BFReport:
    """Identities, binary composites and invertible 2-cells stay in W.

    Identities are checked as nullary composites.
    """
    rep = BFReport("BF2")
    site = _site_of(W)
    for x in K.objects():
        rep.checked += 1
        if K.id1(x) not in W:
            rep.counterexamples.append(("identity", K.id1(x)))
    members = list(W.members())
    for w1 in members:
        for w2 in members:
            if K.src(w2) != K.tgt(w1):
                continue
            rep.checked += 1
            c = K.compose1(w2, w1)
            if c not in W:
                rep.counterexamples.append(("composite", w2, w1))
                continue
            if site is not None:
                sp = compose_splittings(site, W_split(site, w1), W_split(site, w2))
                errs = splitting_errors(site, sp)
                if errs or not site.ff(c):
                    rep.counterexamples.append(("composite construction", w2, w1, errs))
                    continue
                rep.certificates.append(Certificate("bf2_composite", {
                    "w1": w1, "w2": w2, "composite": c,
                    "cover": sp.cover, "section": sp.section, "cell": sp.cell, "cell_inv": sp.cell_inv,
                }))
    for w in members:
        for f in K.hom(K.src(w), K.tgt(w)):
            if f == w:
                continue
            a = K.first_iso(w, f)
            if a is None:
                continue
            rep.checked += 1
            if f not in W:
                rep.counterexamples.append(("isomorphic", w, f))
                continue
            if site is not None:
                a_inv = K.inverse2(a)
                sp = transport_splitting(site, W_split(site, w), a, a_inv, f)
                errs = splitting_errors(site, sp)
                if errs:
                    rep.counterexamples.append(("isomorphic construction", w, f, errs))
                    continue
                rep.certificates.append(Certificate("bf2_iso", {
                    "w": w, "f": f, "a": a, "a_inv": a_inv,
                    "cover": sp.cover, "section": sp.section, "cell": sp.cell, "cell_inv": sp.cell_inv,
                }))
    return rep


def W_split(site: TwoSite, w) -> LocalSplitting:
    sp = is_j_locally_split(site, w)
    if not sp:
        raise RuntimeError(f"{site.K.label(w)} is not J-locally split")
    return sp


# --------------------------------------------------------------------------
# BF3


def bf3_errors(K: TwoCategory, W: OneCellClass, sq: FillerSquare) -> list[str]:
    errs = []
    if K.src(sq.top) != sq.corner or K.tgt(sq.top) != K.src(sq.q) or K.src(sq.left) != sq.corner or K.tgt(sq.left) != K.src(sq.f):
        return ["square legs have the wrong boundary"]
    lhs, rhs = K.compose1(sq.q, sq.top), K.compose1(sq.f, sq.left)
    if (K.dom2(sq.cell), K.cod2(sq.cell)) != (lhs, rhs):
        errs.append("square 2-cell has the wrong boundary")
    elif K.vcomp(sq.cell_inv, sq.cell) != K.id2(lhs) or K.vcomp(sq.cell, sq.cell_inv) != K.id2(rhs):
        errs.append("square 2-cell is not invertible")
    if sq.left not in W:
        errs.append("leg v is not in W")
    return errs


def check_bf3(K: TwoCategory, W: OneCellClass, w, f, budget: SearchBudget | None = None):
    """Square ``w∘top => f∘v`` with ``v`` in W, as a :class:`FillerSquare` (``left`` is ``v``).

    For weak equivalences of a 2-site: split ``w`` over a cover ``q``, fill
    the cospan ``(q, f)`` with a J-leg, and paste.
    """
    site = _site_of(W)
    if site is not None:
        sp = W_split(site, w)
        fill = find_filler(site, sp.cover, f, budget)
        if not fill:
            return fill
        top = K.compose1(sp.section, fill.top)
        cell = K.vcomp(fill.cell, K.whisker_r(sp.cell, fill.top))
        inv = K.vcomp(K.whisker_r(sp.cell_inv, fill.top), fill.cell_inv)
        sq = FillerSquare(w, f, fill.corner, top, fill.left, cell, inv)
        errs = bf3_errors(K, W, sq)
        if errs:
            return NotFound("; ".join(errs))
        return sq
    meter = (budget or SearchBudget()).meter()
    a1, c = K.src(w), K.src(f)
    if w == K.id1(K.tgt(w)) and K.id1(c) in W:
        i = K.id2(f)
        return FillerSquare(w, f, c, f, K.id1(c), i, i)
    try:
        for p in K.objects():
            tops = K.hom(p, a1)
            for v in K.hom(p, c):
                if v not in W:
                    continue
                fv = K.compose1(f, v)
                for top in tops:
                    meter.tick()
                    cell = K.first_iso(K.compose1(w, top), fv)
                    if cell is not None:
                        return FillerSquare(w, f, p, top, v, cell, K.inverse2(cell))
    except BudgetExhausted:
        return NotFound("budget exhausted", exhausted=True)
    return NotFound("no square with corner in the window")


# --------------------------------------------------------------------------
# BF4


@dataclass
class BF4Witness:
    """``alpha * v = w * beta`` with ``v`` in W.

    ``count`` is the number of ``beta`` found with ``v = id`` (``None`` when
    the general search was used).  ``comparisons`` holds competing pairs
    ``(v', beta')`` with the comparison data ``(u, u', eps)`` that makes the
    square of 2-cells commute; ``failed_comparisons`` those for which no
    such data was found.
    """

    w: Hashable
    f: Hashable
    g: Hashable
    alpha: Hashable
    v: Hashable
    beta: Hashable
    count: int | None = None
    beta_inv: Hashable | None = None
    comparisons: list = field(default_factory=list)
    failed_comparisons: list = field(default_factory=list)

    @property
    def unique(self) -> bool:
        return self.count == 1


def bf4_errors(K: TwoCategory, W: OneCellClass, wit: BF4Witness) -> list[str]:
    errs = []
    if wit.v not in W:
        errs.append("v is not in W")
    if K.whisker_r(wit.alpha, wit.v) != K.whisker_l(wit.w, wit.beta):
        errs.append("alpha * v != w * beta")
    if K.is_invertible2(wit.alpha) and not K.is_invertible2(wit.beta):
        errs.append("alpha invertible but beta is not")
    for vp, bp, u, up, eps in wit.comparisons:
        lhs = K.vcomp(K.whisker_l(wit.g, eps), K.whisker_r(wit.beta, u))
        rhs = K.vcomp(K.whisker_r(bp, up), K.whisker_l(wit.f, eps))
        if lhs != rhs:
            errs.append("comparison square does not commute")
    return errs


def competing_pairs(K: TwoCategory, W: OneCellClass, w, f, g, alpha):
    """Window pairs ``(v', beta')`` with ``alpha * v' = w * beta'``."""
    x = K.src(f)
    for vp in W.into(x):
        target = K.whisker_r(alpha, vp)
        for bp in K.cells2(K.compose1(f, vp), K.compose1(g, vp)):
            if K.whisker_l(w, bp) == target:
                yield vp, bp


def check_bf4(K: TwoCategory, W: OneCellClass, w, f, g, alpha, budget: SearchBudget | None = None,
              competitors=None, ff: bool | None = None):
    """BF4 for ``alpha: w∘f => w∘g``.

    If ``w`` is ff the witness has ``v = id`` and ``beta`` is found by
    enumerating ``K(f, g)``; ``count`` records how many ``beta`` satisfy
    ``w * beta = alpha``.  Competing pairs default to every window pair.
    Otherwise falls back to a search over ``v`` in W into the source.
    """
    x = K.src(f)
    site = _site_of(W)
    if ff is None:
        ff = bool(site.ff(w)) if site is not None else False
    if ff:
        betas = [b for b in K.cells2(f, g) if K.whisker_l(w, b) == alpha]
        if not betas:
            return NotFound("no beta with w * beta = alpha")
        beta = betas[0]
        wit = BF4Witness(w, f, g, alpha, K.id1(x), beta, len(betas), K.inverse2(beta))
        if competitors is None:
            competitors = competing_pairs(K, W, w, f, g, alpha)
        for vp, bp in competitors:
            # v = id, u = v', u' = id, eps = identity
            u, up, eps = vp, K.id1(K.src(vp)), K.id2(vp)
            if K.whisker_r(beta, vp) == bp:
                wit.comparisons.append((vp, bp, u, up, eps))
            else:
                wit.failed_comparisons.append((vp, bp))
        return wit
    meter = (budget or SearchBudget()).meter()
    try:
        for v in W.into(x):
            target = K.whisker_r(alpha, v)
            for b in K.cells2(K.compose1(f, v), K.compose1(g, v)):
                meter.tick()
                if K.whisker_l(w, b) == target:
                    if K.is_invertible2(alpha) and not K.is_invertible2(b):
                        continue
                    return BF4Witness(w, f, g, alpha, v, b, None, K.inverse2(b))
    except BudgetExhausted:
        return NotFound("budget exhausted", exhausted=True)
    return NotFound("no (v, beta) in the window")


# --------------------------------------------------------------------------
# the theorem


@dataclass
class TheoremReport:
    site_name: str
    reports: dict[str, BFReport]
    j_in_w: BFReport

    @property
    def passed(self) -> bool:
        return self.j_in_w.passed and all(r.passed for r in self.reports.values())

    @property
    def exhausted(self) -> bool:
        return any(r.unverified for r in self.reports.values())

    @property
    def certificates(self) -> list[Certificate]:
        out = []
        for r in self.reports.values():
            out.extend(r.certificates)
        return out


def run_theorem_3_1(site: TwoSite, budget: SearchBudget | None = None) -> TheoremReport:
    """Check BF1-BF4 for the weak equivalences of ``site`` over the whole window.

    BF4 is run for every weak equivalence and also for every J-member, since
    the argument relies on J being contained in W; a non-ff cover is where
    BF4 uniqueness breaks.
    """
    K = site.K
    W = weak_equivalences(site)
    J = coverage_class(site)
    inc = BFReport("J in W")
    for q in J.members():
        inc.checked += 1
        if q not in W:
            inc.counterexamples.append(q)

    bf1 = check_bf1(K, W, budget)
    bf2 = check_bf2(K, W, budget)

    bf3 = BFReport("BF3")
    for w in W.members():
        for z in K.objects():
            for f in K.hom(z, K.tgt(w)):
                bf3.checked += 1
                sq = check_bf3(K, W, w, f, budget)
                if not sq:
                    (bf3.unverified if sq.exhausted else bf3.counterexamples).append((w, f, sq.reason))
                    continue
                bf3.certificates.append(Certificate("bf3", {
                    "w": w, "f": f, "corner": sq.corner, "top": sq.top, "v": sq.left,
                    "cell": sq.cell, "cell_inv": sq.cell_inv,
                }))

    bf4 = BFReport("BF4")
    tested = list(W.members())
    tested += [q for q in J.members() if q not in set(tested)]
    for w in tested:
        y = K.src(w)
        is_ff = bool(site.ff(w))
        for x in K.objects():
            hs = K.hom(x, y)
            for f in hs:
                for g in hs:
                    for alpha in K.cells2(K.compose1(w, f), K.compose1(w, g)):
                        bf4.checked += 1
                        wit = check_bf4(K, W, w, f, g, alpha, budget, ff=is_ff)
                        if not wit:
                            (bf4.unverified if wit.exhausted else bf4.counterexamples).append((w, f, g, alpha, wit.reason))
                            continue
                        errs = bf4_errors(K, W, wit)
                        if is_ff and not wit.unique:
                            errs.append(f"{wit.count} solutions beta")
                        if wit.failed_comparisons:
                            errs.append("competing pair without comparison data")
                        if errs:
                            bf4.counterexamples.append((w, f, g, alpha, errs))
                            continue
                        payload = {"w": w, "f": f, "g": g, "alpha": alpha, "v": wit.v, "beta": wit.beta}
                        if wit.beta_inv is not None:
                            payload["beta_inv"] = wit.beta_inv
                        bf4.certificates.append(Certificate("bf4", payload))
    return TheoremReport(site.J.name, {"BF1": bf1, "BF2": bf2, "BF3": bf3, "BF4": bf4}, inc)
