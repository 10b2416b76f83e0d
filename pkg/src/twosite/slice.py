"""Lax, strict and groupoid slices of a 2-category over a fixed object.

A 1-cell ``(Z1, p1) -> (Z2, p2)`` is a pair ``(f, a)`` with
``a: p2∘f => p1``; a 2-cell ``(f1, a1) => (f2, a2)`` is a base 2-cell
``beta: f1 => f2`` with ``a2 ∘ (p2 beta) = a1``.  Composition is
``(g, b)∘(f, a) = (g∘f, a ∘ (b f))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable

from .core import SearchBudget, TwoCategory
from .errors import BoundaryMismatch, CodomainMismatch, NotAGroupoid, NotAnObject
from .site import (
    AxiomResult,
    AxiomReport,
    CoverageSpec,
    FillerSquare,
    TwoSite,
    find_filler,
    verify_coverage_axioms,
)

VARIANTS = ("lax", "strict", "groupoid")


@dataclass(frozen=True)
class SliceObject:
    Z: Hashable
    p: Hashable


@dataclass(frozen=True)
class SliceOneCell:
    """``a: tgt.p ∘ f => src.p`` (the triangle's 2-cell)."""

    src: SliceObject
    tgt: SliceObject
    f: Hashable
    a: Hashable


@dataclass(frozen=True)
class SliceTwoCell:
    src: SliceOneCell
    tgt: SliceOneCell
    beta: Hashable


class SliceCat(TwoCategory):
    """The slice of ``K`` over ``X``; the window is every structure map from
    a window object of ``K``."""

    def __init__(self, K: TwoCategory, X, variant: str = "lax"):
        if variant not in VARIANTS:
            raise ValueError(f"unknown variant {variant!r}")
        if X not in K.objects():
            raise NotAnObject(K.label(X))
        if variant == "groupoid" and not getattr(K, "groupoids_only", False):
            raise NotAGroupoid("the groupoid slice needs a groupoid backend")
        self.K = K
        self.X = X
        self.variant = variant
        self.exhaustive = K.exhaustive
        self.name = f"{K.name}/{variant} {K.label(X)}"
        self._objects = tuple(SliceObject(Z, p) for Z in K.objects() for p in K.hom(Z, X))
        self._homs: dict = {}
        self._cells: dict = {}

    def objects(self) -> tuple:
        return self._objects

    def _triangle_ok(self, a) -> bool:
        return self.variant == "lax" or self.K.is_invertible2(a)

    def hom(self, x, y) -> tuple:
        key = (x, y)
        hs = self._homs.get(key)
        if hs is None:
            K = self.K
            hs = self._homs[key] = tuple(
                SliceOneCell(x, y, f, a)
                for f in K.hom(x.Z, y.Z)
                for a in K.cells2(K.compose1(y.p, f), x.p)
                if self._triangle_ok(a)
            )
        return hs

    def cells2(self, f, g) -> tuple:
        key = (f, g)
        cs = self._cells.get(key)
        if cs is None:
            K = self.K
            if (f.src, f.tgt) != (g.src, g.tgt):
                raise BoundaryMismatch("parallel 1-cells required")
            p2 = f.tgt.p
            cs = self._cells[key] = tuple(
                SliceTwoCell(f, g, b) for b in K.cells2(f.f, g.f) if K.vcomp(g.a, K.whisker_l(p2, b)) == f.a
            )
        return cs

    def src(self, f):
        return f.src

    def tgt(self, f):
        return f.tgt

    def dom2(self, a):
        return a.src

    def cod2(self, a):
        return a.tgt

    def compose1(self, g, f):
        if f.tgt != g.src:
            raise BoundaryMismatch("slice 1-cells are not composable")
        K = self.K
        return SliceOneCell(f.src, g.tgt, K.compose1(g.f, f.f), K.vcomp(f.a, K.whisker_r(g.a, f.f)))

    def id1(self, x):
        return SliceOneCell(x, x, self.K.id1(x.Z), self.K.id2(x.p))

    def vcomp(self, b, a):
        if a.tgt != b.src:
            raise BoundaryMismatch("slice 2-cells are not composable")
        return SliceTwoCell(a.src, b.tgt, self.K.vcomp(b.beta, a.beta))

    def id2(self, f):
        return SliceTwoCell(f, f, self.K.id2(f.f))

    def whisker_l(self, h, a):
        return SliceTwoCell(self.compose1(h, a.src), self.compose1(h, a.tgt), self.K.whisker_l(h.f, a.beta))

    def whisker_r(self, a, h):
        return SliceTwoCell(self.compose1(a.src, h), self.compose1(a.tgt, h), self.K.whisker_r(a.beta, h.f))

    def inverse2(self, a):
        b = self.K.inverse2(a.beta)
        return None if b is None else SliceTwoCell(a.tgt, a.src, b)

    def is_one_cell(self, c) -> bool:
        return isinstance(c, SliceOneCell)

    def is_valid_one_cell(self, f: SliceOneCell) -> bool:
        K = self.K
        return (
            K.src(f.f) == f.src.Z
            and K.tgt(f.f) == f.tgt.Z
            and (K.dom2(f.a), K.cod2(f.a)) == (K.compose1(f.tgt.p, f.f), f.src.p)
            and self._triangle_ok(f.a)
        )

    def label(self, c) -> str:
        K = self.K
        if isinstance(c, SliceObject):
            return f"({K.label(c.Z)},{K.label(c.p)})"
        if isinstance(c, SliceOneCell):
            return f"({K.label(c.f)},{K.label(c.a)}):{self.label(c.src)}->{self.label(c.tgt)}"
        if isinstance(c, SliceTwoCell):
            return f"[{K.label(c.beta)}]:{self.label(c.src)}=>{self.label(c.tgt)}"
        return str(c)


def build_lax_slice(K: TwoCategory, X, variant: str = "lax") -> SliceCat:
    return SliceCat(K, X, variant)


def slice_coverage(site: TwoSite, S: SliceCat) -> CoverageSpec:
    """J_X: base 1-cell in J and invertible triangle; fillers by :func:`slice_pullback_lift`.

    J_X covers split strictly (a section of the base cover with the inverted
    triangle), so the identity cover suffices for local splitting.
    """
    K = site.K

    def member(f: SliceOneCell) -> bool:
        return f.f in site.J and K.is_invertible2(f.a)

    return CoverageSpec(
        S,
        f"{site.J.name}/{K.label(S.X)}",
        member,
        filler_oracle=lambda q, f: slice_pullback_lift(q, f, site, S),
        identity_cover_suffices=True,
    )


def slice_pullback_lift(qX: SliceOneCell, fX: SliceOneCell, site: TwoSite, S: SliceCat, through: str = "w") -> FillerSquare:
    """Lift a base filler of ``(w, f)`` to the slice.

    With ``through="w"`` the corner's structure map is ``pY∘w~``, the legs
    are ``(w~, id)`` and ``(f~, c)`` with ``c = (b w~)(pZ sigma)(a^-1 f~)``,
    ``sigma`` the base square's 2-cell.  ``through="f"`` uses ``pU∘f~``
    instead, with legs ``(w~, c^-1)`` and ``(f~, id)``.
    """
    K = site.K
    if qX.tgt != fX.tgt:
        raise CodomainMismatch("slice cospan legs have different targets")
    a_inv = K.inverse2(qX.a)
    if a_inv is None:
        raise ValueError("the covering leg's triangle is not invertible")
    base = find_filler(site, qX.f, fX.f)
    if not base:
        raise RuntimeError(f"no base filler: {base.reason}")
    wt, ft = base.left, base.top
    pY, pU, pZ = fX.src.p, qX.src.p, qX.tgt.p
    c = K.vcompose(K.whisker_r(fX.a, wt), K.whisker_l(pZ, base.cell), K.whisker_r(a_inv, ft))
    if through == "w":
        P = SliceObject(base.corner, K.compose1(pY, wt))
        left = SliceOneCell(P, fX.src, wt, K.id2(P.p))
        top = SliceOneCell(P, qX.src, ft, c)
    elif through == "f":
        P = SliceObject(base.corner, K.compose1(pU, ft))
        left = SliceOneCell(P, fX.src, wt, K.inverse2(c))
        top = SliceOneCell(P, qX.src, ft, K.id2(P.p))
    else:
        raise ValueError(through)
    dom, cod = S.compose1(qX, top), S.compose1(fX, left)
    return FillerSquare(qX, fX, P, top, left, SliceTwoCell(dom, cod, base.cell), SliceTwoCell(cod, dom, base.cell_inv))


def ff_lift_errors(S: SliceCat, site: TwoSite, qX: SliceOneCell, budget: SearchBudget | None = None) -> list:
    """Run the lifting argument for full faithfulness of ``qX`` on the window.

    For slice 1-cells ``(f, b), (g, c)`` into the source of ``qX = (w, a)``
    and each slice 2-cell ``alpha`` between the composites, the unique base
    ``beta`` with ``w beta = alpha`` must satisfy ``b = c (pZ beta)``, and
    ``b`` must equal the pasting ``c (a g) (pY alpha) (a^-1 f)``.
    """
    K = site.K
    errs = []
    a_inv = K.inverse2(qX.a)
    Z2 = qX.src
    pY = qX.tgt.p
    for z in S.objects():
        hs = S.hom(z, Z2)
        for f in hs:
            for g in hs:
                for al in S.cells2(S.compose1(qX, f), S.compose1(qX, g)):
                    betas = [b for b in K.cells2(f.f, g.f) if K.whisker_l(qX.f, b) == al.beta]
                    if len(betas) != 1:
                        errs.append(("base lift not unique", f, g, al, len(betas)))
                        continue
                    beta = betas[0]
                    pasted = K.vcompose(g.a, K.whisker_r(qX.a, g.f), K.whisker_l(pY, al.beta), K.whisker_r(a_inv, f.f))
                    if pasted != f.a or K.vcomp(g.a, K.whisker_l(Z2.p, beta)) != f.a:
                        errs.append(("lift is not a slice 2-cell", f, g, al))
    return errs


def verify_slice_is_2site(site: TwoSite, X, variant: str = "lax", budget: SearchBudget | None = None,
                          S: SliceCat | None = None) -> tuple[AxiomReport, TwoSite]:
    """Coverage axioms for ``(slice, J_X)`` plus the lifting argument for (iii).

    Returns the report (with an extra ``"iii_lift"`` entry) and the slice site.
    """
    S = S or build_lax_slice(site.K, X, variant)
    ssite = TwoSite(S, slice_coverage(site, S))
    rep = verify_coverage_axioms(ssite, budget)
    lift = AxiomResult("iii_lift")
    for q in ssite.J.members():
        lift.checked += 1
        errs = ff_lift_errors(S, site, q, budget)
        if errs:
            lift.counterexamples.append((q, errs))
    rep.results["iii_lift"] = lift
    return rep, ssite
