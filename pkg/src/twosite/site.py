"""Singleton coverages on 2-categories, local splitting and weak equivalences."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Iterator

from .core import (
    BudgetExhausted,
    FfVerdict,
    NotFound,
    SearchBudget,
    TwoCategory,
    is_ff_one_cell,
)
from .errors import OracleDisagreement


@dataclass(frozen=True)
class FillerSquare:
    """Square for the cospan ``q: u -> x``, ``f: y -> x``.

    ``corner`` is the apex ``v``, ``top: v -> u``, ``left: v -> y`` and
    ``cell: q∘top => f∘left`` is invertible with inverse ``cell_inv``.
    """

    q: Hashable
    f: Hashable
    corner: Hashable
    top: Hashable
    left: Hashable
    cell: Hashable
    cell_inv: Hashable


@dataclass(frozen=True)
class LocalSplitting:
    """``cell: f∘section => cover`` invertible, with ``cover`` in J."""

    f: Hashable
    cover: Hashable
    section: Hashable
    cell: Hashable
    cell_inv: Hashable


class CoverageSpec:
    """A class J of 1-cells of ``K`` with optional oracles.

    ``filler_oracle(q, f)`` returns a :class:`FillerSquare`; its output is
    always re-validated.  ``split_criterion(f)`` is an independent decision
    of J-local splitness (``None`` when it does not apply) used as a
    cross-check.  ``identity_cover_suffices`` records that a 1-cell is
    J-locally split iff it is split over the identity cover.
    """

    def __init__(
        self,
        K: TwoCategory,
        name: str,
        membership: Callable[[Hashable], bool],
        filler_oracle: Callable | None = None,
        split_criterion: Callable | None = None,
        identity_cover_suffices: bool = False,
    ):
        self.K = K
        self.name = name
        self._member = membership
        self.filler_oracle = filler_oracle
        self.split_criterion = split_criterion
        self.identity_cover_suffices = identity_cover_suffices
        self._cache: dict = {}

    def __contains__(self, f) -> bool:
        r = self._cache.get(f)
        if r is None:
            r = self._cache[f] = bool(self._member(f))
        return r

    def members(self) -> Iterator:
        for f in self.K.one_cells():
            if f in self:
                yield f

    def enumerate_into(self, y) -> Iterator:
        """Identity first, then J-members from window objects into ``y``."""
        K = self.K
        i = K.id1(y)
        if i in self:
            yield i
        for z in K.objects():
            for q in K.hom(z, y):
                if q != i and q in self:
                    yield q


def identities_only(K: TwoCategory) -> CoverageSpec:
    return CoverageSpec(K, "identities_only", lambda f: f == K.id1(K.src(f)))


def extensional(K: TwoCategory, members: Iterable, name: str = "extensional") -> CoverageSpec:
    s = set(members)
    return CoverageSpec(K, name, lambda f: f in s)


def augmented(J: CoverageSpec, extra: Iterable, name: str | None = None) -> CoverageSpec:
    """``J`` plus extra 1-cells; oracles are dropped since they no longer cover every member."""
    s = set(extra)
    return CoverageSpec(J.K, name or f"{J.name}+extra", lambda f: f in s or f in J)


class TwoSite:
    def __init__(self, K: TwoCategory, J: CoverageSpec, crosscheck: bool = True):
        self.K = K
        self.J = J
        self.crosscheck = crosscheck
        self._we: dict = {}
        self._ff: dict = {}
        self._W: OneCellClass | None = None

    @property
    def W(self) -> "OneCellClass":
        """The weak equivalences, as a class shared by all callers."""
        if self._W is None:
            self._W = weak_equivalences(self)
        return self._W

    def ff(self, q) -> FfVerdict:
        v = self._ff.get(q)
        if v is None:
            v = self._ff[q] = is_ff_one_cell(self.K, q)
        return v


# --------------------------------------------------------------------------
# validation of witnesses


def filler_errors(site: TwoSite, sq: FillerSquare) -> list[str]:
    K = site.K
    errs = []
    if K.tgt(sq.q) != K.tgt(sq.f):
        return ["q and f do not form a cospan"]
    if K.src(sq.top) != sq.corner or K.tgt(sq.top) != K.src(sq.q):
        errs.append("top leg has the wrong boundary")
    if K.src(sq.left) != sq.corner or K.tgt(sq.left) != K.src(sq.f):
        errs.append("left leg has the wrong boundary")
    if errs:
        return errs
    if sq.left not in site.J:
        errs.append("left leg is not in J")
    lhs, rhs = K.compose1(sq.q, sq.top), K.compose1(sq.f, sq.left)
    if (K.dom2(sq.cell), K.cod2(sq.cell)) != (lhs, rhs):
        errs.append("square 2-cell has the wrong boundary")
    elif K.vcomp(sq.cell_inv, sq.cell) != K.id2(lhs) or K.vcomp(sq.cell, sq.cell_inv) != K.id2(rhs):
        errs.append("square 2-cell is not invertible")
    return errs


def splitting_errors(site: TwoSite, sp: LocalSplitting) -> list[str]:
    K = site.K
    y = K.tgt(sp.f)
    if K.tgt(sp.cover) != y or K.src(sp.section) != K.src(sp.cover) or K.tgt(sp.section) != K.src(sp.f):
        return ["splitting legs have the wrong boundary"]
    errs = []
    if sp.cover not in site.J:
        errs.append("cover is not in J")
    fs = K.compose1(sp.f, sp.section)
    if (K.dom2(sp.cell), K.cod2(sp.cell)) != (fs, sp.cover):
        errs.append("splitting 2-cell has the wrong boundary")
    elif K.vcomp(sp.cell_inv, sp.cell) != K.id2(fs) or K.vcomp(sp.cell, sp.cell_inv) != K.id2(sp.cover):
        errs.append("splitting 2-cell is not invertible")
    return errs


# --------------------------------------------------------------------------
# fillers


def trivial_filler(site: TwoSite, q, f) -> FillerSquare | None:
    K = site.K
    if q == K.id1(K.tgt(q)):
        i = K.id2(f)
        return FillerSquare(q, f, K.src(f), f, K.id1(K.src(f)), i, i)
    if f == K.id1(K.tgt(f)) and q in site.J:
        i = K.id2(q)
        return FillerSquare(q, f, K.src(q), K.id1(K.src(q)), q, i, i)
    return None


def find_filler(site: TwoSite, q, f, budget: SearchBudget | None = None):
    """A filler with left leg in J for the cospan ``(q, f)``.

    Oracle output is validated; an invalid oracle answer raises
    :class:`OracleDisagreement`.  Without an oracle the corner is searched
    over the window objects.
    """
    K = site.K
    sq = trivial_filler(site, q, f)
    if sq is not None:
        return sq
    if site.J.filler_oracle is not None:
        sq = site.J.filler_oracle(q, f)
        errs = filler_errors(site, sq)
        if errs:
            raise OracleDisagreement(f"filler oracle produced an invalid square: {errs}")
        return sq
    meter = (budget or SearchBudget()).meter()
    u, y = K.src(q), K.src(f)
    try:
        for v in K.objects():
            tops = K.hom(v, u)
            for k in K.hom(v, y):
                if k not in site.J:
                    continue
                fk = K.compose1(f, k)
                for top in tops:
                    meter.tick()
                    c = K.first_iso(K.compose1(q, top), fk)
                    if c is not None:
                        return FillerSquare(q, f, v, top, k, c, K.inverse2(c))
    except BudgetExhausted:
        return NotFound("budget exhausted", exhausted=True)
    return NotFound("no filler with corner in the window")


# --------------------------------------------------------------------------
# axioms


@dataclass
class AxiomResult:
    name: str
    checked: int = 0
    counterexamples: list = field(default_factory=list)
    unverified: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.counterexamples and not self.unverified


@dataclass
class AxiomReport:
    results: dict[str, AxiomResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results.values())

    @property
    def exhausted(self) -> bool:
        return any(r.unverified for r in self.results.values())

    def __getitem__(self, k) -> AxiomResult:
        return self.results[k]


def verify_coverage_axioms(site: TwoSite, budget: SearchBudget | None = None) -> AxiomReport:
    """Check identities/composition, fillers and ff-ness of every window J-member."""
    K, J = site.K, site.J
    r1, r2, r3 = AxiomResult("i"), AxiomResult("ii"), AxiomResult("iii")
    for x in K.objects():
        r1.checked += 1
        if K.id1(x) not in J:
            r1.counterexamples.append(("identity not in J", K.id1(x)))
    members = list(J.members())
    for f in members:
        for g in members:
            if K.src(g) != K.tgt(f):
                continue
            r1.checked += 1
            if K.compose1(g, f) not in J:
                r1.counterexamples.append(("composite not in J", g, f))
    for q in members:
        x = K.tgt(q)
        for z in K.objects():
            for f in K.hom(z, x):
                r2.checked += 1
                sq = find_filler(site, q, f, budget)
                if not sq:
                    (r2.unverified if sq.exhausted else r2.counterexamples).append((q, f))
                    continue
                errs = filler_errors(site, sq)
                if errs:
                    r2.counterexamples.append((q, f, errs))
                else:
                    r2.witnesses.append(sq)
        r3.checked += 1
        v = site.ff(q)
        if not v:
            r3.counterexamples.append((q, v.witness))
    return AxiomReport({"i": r1, "ii": r2, "iii": r3})


# --------------------------------------------------------------------------
# local splitting and weak equivalences


def _split_over(site: TwoSite, f, q, meter) -> LocalSplitting | None:
    K = site.K
    for s in K.hom(K.src(q), K.src(f)):
        meter.tick()
        c = K.first_iso(K.compose1(f, s), q)
        if c is not None:
            return LocalSplitting(f, q, s, c, K.inverse2(c))
    return None


def is_j_locally_split(site: TwoSite, f, budget: SearchBudget | None = None):
    """A validated :class:`LocalSplitting` of ``f`` or :class:`NotFound`.

    Tries ``f`` itself (when in J), then the identity cover, then every
    window J-member into the codomain.
    """
    K, J = site.K, site.J
    meter = (budget or SearchBudget()).meter()
    y = K.tgt(f)
    found = None
    exhausted = False
    try:
        if f in J:
            i = K.id2(f)
            found = LocalSplitting(f, f, K.id1(K.src(f)), i, i)
        if found is None:
            found = _split_over(site, f, K.id1(y), meter)
        if found is None and not J.identity_cover_suffices:
            for q in J.enumerate_into(y):
                found = _split_over(site, f, q, meter)
                if found is not None:
                    break
    except BudgetExhausted:
        exhausted = True

    if site.crosscheck and not exhausted:
        crit = J.split_criterion(f) if J.split_criterion else None
        if crit is not None and crit != (found is not None):
            raise OracleDisagreement(f"split criterion says {crit} for {K.label(f)}")
        if found is None and J.identity_cover_suffices:
            for q in J.enumerate_into(y):
                if _split_over(site, f, q, SearchBudget().meter()) is not None:
                    raise OracleDisagreement(f"{K.label(f)} splits over a non-identity cover only")
    if found is None:
        return NotFound("budget exhausted" if exhausted else "no splitting", exhausted)
    assert not splitting_errors(site, found), splitting_errors(site, found)
    return found


@dataclass(frozen=True)
class WeVerdict:
    """``kind`` is ``weak_equivalence``, ``not_ff`` or ``not_split``."""

    kind: str
    ff: FfVerdict
    splitting: LocalSplitting | None = None
    exhausted: bool = False

    def __bool__(self) -> bool:
        return self.kind == "weak_equivalence"


def is_weak_equivalence(site: TwoSite, f, budget: SearchBudget | None = None) -> WeVerdict:
    v = site._we.get(f)
    if v is not None:
        return v
    ff = site.ff(f)
    if not ff:
        v = WeVerdict("not_ff", ff)
    else:
        sp = is_j_locally_split(site, f, budget)
        v = WeVerdict("weak_equivalence", ff, sp) if sp else WeVerdict("not_split", ff, None, sp.exhausted)
    if not v.exhausted:
        site._we[f] = v
    return v


# --------------------------------------------------------------------------
# classes of 1-cells and cofinality


class OneCellClass:
    """A class of 1-cells given by a predicate.

    ``site`` is set when the class is the weak equivalences of that site, so
    that the fraction-axiom checks can follow the constructive argument.
    """

    def __init__(self, K: TwoCategory, name: str, member: Callable[[Hashable], bool], site: "TwoSite | None" = None):
        self.K = K
        self.name = name
        self.site = site
        self._member = member
        self._cache: dict = {}

    def __contains__(self, f) -> bool:
        r = self._cache.get(f)
        if r is None:
            r = self._cache[f] = bool(self._member(f))
        return r

    def members(self) -> Iterator:
        for f in self.K.one_cells():
            if f in self:
                yield f

    def into(self, y) -> Iterator:
        for z in self.K.objects():
            for g in self.K.hom(z, y):
                if g in self:
                    yield g


def all_cells(K: TwoCategory) -> OneCellClass:
    return OneCellClass(K, "all", lambda f: True)


def identity_cells(K: TwoCategory) -> OneCellClass:
    return OneCellClass(K, "identities", lambda f: f == K.id1(K.src(f)))


def cell_set(K: TwoCategory, cells: Iterable, name: str = "set") -> OneCellClass:
    s = set(cells)
    return OneCellClass(K, name, lambda f: f in s)


def weak_equivalences(site: TwoSite) -> OneCellClass:
    return OneCellClass(site.K, f"W[{site.J.name}]", lambda f: bool(is_weak_equivalence(site, f)), site)


def coverage_class(site: TwoSite) -> OneCellClass:
    return OneCellClass(site.K, site.J.name, lambda f: f in site.J)


@dataclass(frozen=True)
class CofinalWitness:
    """``cell: f∘s => g`` invertible with ``g`` in the subclass."""

    f: Hashable
    g: Hashable
    s: Hashable
    cell: Hashable


@dataclass
class CofinalityReport:
    witnesses: list[CofinalWitness] = field(default_factory=list)
    counterexample: Hashable | None = None
    exhausted: bool = False

    @property
    def cofinal(self) -> bool:
        return self.counterexample is None and not self.exhausted

    def __bool__(self) -> bool:
        return self.cofinal


def cofinal_witness(K: TwoCategory, sub: OneCellClass, f, meter=None) -> CofinalWitness | None:
    meter = meter or SearchBudget().meter()
    x = K.src(f)
    if f in sub:
        return CofinalWitness(f, f, K.id1(x), K.id2(f))
    y = K.tgt(f)
    i = K.id1(y)
    # the identity first, so targets outside the window are still covered
    candidates = ([i] if i in sub else []) + [g for g in sub.into(y) if g != i]
    for g in candidates:
        for s in K.hom(K.src(g), x):
            meter.tick()
            c = K.first_iso(K.compose1(f, s), g)
            if c is not None:
                return CofinalWitness(f, g, s, c)
    return None


def is_cofinal(sub: OneCellClass, cls: OneCellClass, site: TwoSite | TwoCategory, budget: SearchBudget | None = None) -> CofinalityReport:
    """Test cofinality of ``sub`` in ``cls`` for every window member of ``cls``.

    Verdicts are relative to the window: the subclass is enumerated over
    window objects only.
    """
    K = site.K if isinstance(site, TwoSite) else site
    rep = CofinalityReport()
    meter = (budget or SearchBudget()).meter()
    try:
        for f in cls.members():
            w = cofinal_witness(K, sub, f, meter)
            if w is None:
                rep.counterexample = f
                return rep
            rep.witnesses.append(w)
    except BudgetExhausted:
        rep.exhausted = True
    return rep
