"""Strict 2-categories: the abstract contract and a table-backed finite window.

Every higher module talks to a 2-category only through :class:`TwoCategory`.
Cells are opaque hashable values; a backend decides what they are (string ids
for :class:`FiniteWindow2Cat`, functors and natural transformations for the
finite-category backend, triangles for slices).

Searches iterate ``objects()``, ``hom`` and ``cells2`` in their declared
order, so the first witness found is always the same one.
"""

from __future__ import annotations

import json
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Hashable, Iterable, Iterator

from .errors import BoundaryMismatch, InstanceFormatError, MalformedTable, NotAOneCell

WINDOW_SCHEMA = "twocat-window/1"


@dataclass(frozen=True)
class SearchBudget:
    """Bound on a witness search.

    ``max_candidates`` caps the number of candidate tuples examined by one
    search (``None`` means unbounded, i.e. exhaustive over the enumerable
    data).  ``max_depth`` caps iterated constructions such as pullback towers.
    """

    max_candidates: int | None = None
    max_depth: int = 2

    @classmethod
    def exhaustive(cls) -> "SearchBudget":
        return cls(None, 2)

    def meter(self) -> "Meter":
        return Meter(self.max_candidates)


class BudgetExhausted(Exception):
    pass


class Meter:
    def __init__(self, limit: int | None):
        self.left = limit

    def tick(self, n: int = 1) -> None:
        if self.left is None:
            return
        self.left -= n
        if self.left < 0:
            raise BudgetExhausted


@dataclass(frozen=True)
class NotFound:
    """Falsy outcome of a bounded search.

    ``exhausted`` is true when the budget ran out before the search space
    did; otherwise the search space was fully enumerated.
    """

    reason: str
    exhausted: bool = False

    def __bool__(self) -> bool:
        return False


class TwoCategory(ABC):
    """A strict 2-category presented by enumerable hom-categories.

    ``objects()`` is the enumeration window.  When ``exhaustive`` is true it
    lists every object; otherwise the instance is open (hom and cells2 still
    work for objects outside the window, e.g. pullback corners).
    """

    exhaustive: bool = False
    name: str = "K"

    @abstractmethod
    def objects(self) -> tuple: ...

    @abstractmethod
    def hom(self, x, y) -> tuple: ...

    @abstractmethod
    def cells2(self, f, g) -> tuple: ...

    @abstractmethod
    def src(self, f): ...

    @abstractmethod
    def tgt(self, f): ...

    @abstractmethod
    def dom2(self, a): ...

    @abstractmethod
    def cod2(self, a): ...

    @abstractmethod
    def compose1(self, g, f): ...

    @abstractmethod
    def id1(self, x): ...

    @abstractmethod
    def vcomp(self, b, a): ...

    @abstractmethod
    def id2(self, f): ...

    @abstractmethod
    def whisker_l(self, h, a):
        """``h * a`` : post-composition of the 2-cell ``a`` with the 1-cell ``h``."""

    @abstractmethod
    def whisker_r(self, a, h):
        """``a * h`` : pre-composition of the 2-cell ``a`` with the 1-cell ``h``."""

    @abstractmethod
    def is_one_cell(self, c) -> bool: ...

    def label(self, c) -> str:
        return str(c)

    def ff_oracle(self, q) -> "FfVerdict | None":
        """Backend-specific decision of representable full faithfulness."""
        return None

    # derived structure

    def compose(self, *cells):
        """Compose 1-cells right to left: ``compose(h, g, f) = h∘g∘f``."""
        out = cells[-1]
        for c in reversed(cells[:-1]):
            out = self.compose1(c, out)
        return out

    def vcompose(self, *cells):
        """Vertical composite, right to left."""
        out = cells[-1]
        for c in reversed(cells[:-1]):
            out = self.vcomp(c, out)
        return out

    def hcomp(self, b, a):
        """Horizontal composite via interchange: ``(b * cod a) ∘ (dom b * a)``."""
        return self.vcomp(self.whisker_r(b, self.cod2(a)), self.whisker_l(self.dom2(b), a))

    def one_cells(self) -> Iterator:
        objs = self.objects()
        for x in objs:
            for y in objs:
                yield from self.hom(x, y)

    def inverse2(self, a):
        f, g = self.dom2(a), self.cod2(a)
        idf, idg = self.id2(f), self.id2(g)
        for b in self.cells2(g, f):
            if self.vcomp(b, a) == idf and self.vcomp(a, b) == idg:
                return b
        return None

    def is_invertible2(self, a) -> bool:
        return self.inverse2(a) is not None

    def iso_cells2(self, f, g) -> list:
        return [a for a in self.cells2(f, g) if self.is_invertible2(a)]

    def first_iso(self, f, g):
        for a in self.cells2(f, g):
            if self.is_invertible2(a):
                return a
        return None


# --------------------------------------------------------------------------
# finite windows


@dataclass
class Violation:
    law: str
    cells: tuple

    def __str__(self) -> str:
        return f"{self.law}: {', '.join(map(str, self.cells))}"


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)
    checked: int = 0

    @property
    def valid(self) -> bool:
        return not self.violations

    def add(self, law: str, *cells) -> None:
        self.violations.append(Violation(law, cells))


class FiniteWindow2Cat(TwoCategory):
    """A 2-category given by explicit finite composition tables.

    Cells are string ids.  Tables are the only source of truth; nothing is
    derived, so a broken table is observable through :func:`validate_window`.
    """

    exhaustive = True

    def __init__(
        self,
        objects: Iterable[str],
        one_cells: Iterable[tuple[str, str, str]],
        two_cells: Iterable[tuple[str, str, str]],
        compose1: Iterable[tuple[str, str, str]],
        vcomp: Iterable[tuple[str, str, str]],
        whisker_l: Iterable[tuple[str, str, str]],
        whisker_r: Iterable[tuple[str, str, str]],
        id1: dict[str, str],
        id2: dict[str, str],
        name: str = "window",
        extra: dict | None = None,
    ):
        self.name = name
        self._objects = tuple(objects)
        one_cells, two_cells = list(one_cells), list(two_cells)
        self._one = {c: (s, t) for c, s, t in one_cells}
        self._two = {c: (s, t) for c, s, t in two_cells}
        self._one_order = tuple(c for c, _, _ in one_cells)
        self._two_order = tuple(c for c, _, _ in two_cells)
        self.tables = {
            "compose1": [tuple(e) for e in compose1],
            "vcomp": [tuple(e) for e in vcomp],
            "whisker_l": [tuple(e) for e in whisker_l],
            "whisker_r": [tuple(e) for e in whisker_r],
        }
        self._id1 = dict(id1)
        self._id2 = dict(id2)
        self.extra = dict(extra or {})
        self._check_references()
        self._c1 = {(g, f): h for g, f, h in self.tables["compose1"]}
        self._vc = {(b, a): c for b, a, c in self.tables["vcomp"]}
        self._wl = {(h, a): c for h, a, c in self.tables["whisker_l"]}
        self._wr = {(a, h): c for a, h, c in self.tables["whisker_r"]}
        self._homs: dict[tuple[str, str], list[str]] = {}
        for c in self._one_order:
            self._homs.setdefault(self._one[c], []).append(c)
        self._cells: dict[tuple[str, str], list[str]] = {}
        for c in self._two_order:
            self._cells.setdefault(self._two[c], []).append(c)

    def _check_references(self) -> None:
        objs = set(self._objects)
        for c, (s, t) in self._one.items():
            if s not in objs or t not in objs:
                raise MalformedTable(f"1-cell {c} references unknown object")
        for c, (s, t) in self._two.items():
            if s not in self._one or t not in self._one:
                raise MalformedTable(f"2-cell {c} references unknown 1-cell")
        kinds = {
            "compose1": (self._one, self._one, self._one),
            "vcomp": (self._two, self._two, self._two),
            "whisker_l": (self._one, self._two, self._two),
            "whisker_r": (self._two, self._one, self._two),
        }
        for tname, entries in self.tables.items():
            for entry in entries:
                if len(entry) != 3:
                    raise MalformedTable(f"{tname} entry {entry!r} is not a triple")
                for cell, pool in zip(entry, kinds[tname]):
                    if cell not in pool:
                        raise MalformedTable(f"{tname} entry {entry!r} references unknown cell {cell!r}")
        for x, c in self._id1.items():
            if x not in objs or c not in self._one:
                raise MalformedTable(f"identity 1-cell entry {x!r} -> {c!r} references unknown cell")
        for f, c in self._id2.items():
            if f not in self._one or c not in self._two:
                raise MalformedTable(f"identity 2-cell entry {f!r} -> {c!r} references unknown cell")

    def objects(self) -> tuple:
        return self._objects

    def hom(self, x, y) -> tuple:
        return tuple(self._homs.get((x, y), ()))

    def cells2(self, f, g) -> tuple:
        return tuple(self._cells.get((f, g), ()))

    @property
    def one_cell_ids(self) -> tuple:
        return self._one_order

    @property
    def two_cell_ids(self) -> tuple:
        return self._two_order

    def src(self, f):
        return self._one[f][0]

    def tgt(self, f):
        return self._one[f][1]

    def dom2(self, a):
        return self._two[a][0]

    def cod2(self, a):
        return self._two[a][1]

    def _lookup(self, table: dict, key: tuple, what: str):
        try:
            return table[key]
        except KeyError:
            raise BoundaryMismatch(f"{what} undefined on {key!r}") from None

    def compose1(self, g, f):
        return self._lookup(self._c1, (g, f), "compose1")

    def id1(self, x):
        return self._id1[x]

    def vcomp(self, b, a):
        return self._lookup(self._vc, (b, a), "vcomp")

    def id2(self, f):
        return self._id2[f]

    def whisker_l(self, h, a):
        return self._lookup(self._wl, (h, a), "whisker_l")

    def whisker_r(self, a, h):
        return self._lookup(self._wr, (a, h), "whisker_r")

    def is_one_cell(self, c) -> bool:
        return c in self._one

    def is_two_cell(self, c) -> bool:
        return c in self._two


def validate_window(w: FiniteWindow2Cat) -> ValidationReport:
    """Check every strict 2-category law on every table entry.

    Unknown references raise :class:`MalformedTable` at construction; this
    reports missing entries, boundary mismatches, and failures of
    associativity, unitality, whiskering functoriality and interchange.
    """
    rep = ValidationReport()
    one, two = w._one, w._two
    c1, vc, wl, wr = w._c1, w._vc, w._wl, w._wr

    def get(table, key, law):
        v = table.get(key)
        if v is None:
            rep.add(f"missing {law} entry", *key)
        return v

    for x in w.objects():
        i = w._id1.get(x)
        if i is None:
            rep.add("missing identity 1-cell", x)
        elif one[i] != (x, x):
            rep.add("identity 1-cell boundary", x, i)
    for f in w.one_cell_ids:
        i = w._id2.get(f)
        if i is None:
            rep.add("missing identity 2-cell", f)
        elif two[i] != (f, f):
            rep.add("identity 2-cell boundary", f, i)
    if not rep.valid:
        return rep

    # boundaries of recorded entries
    for (g, f), h in c1.items():
        rep.checked += 1
        if one[g][0] != one[f][1]:
            rep.add("compose1 of non-composable pair", g, f)
        elif one[h] != (one[f][0], one[g][1]):
            rep.add("compose1 boundary", g, f)
    for (b, a), c in vc.items():
        rep.checked += 1
        if two[b][0] != two[a][1]:
            rep.add("vcomp of non-composable pair", b, a)
        elif two[c] != (two[a][0], two[b][1]):
            rep.add("vcomp boundary", b, a)
    for (h, a), c in wl.items():
        rep.checked += 1
        f, g = two[a]
        if one[h][0] != one[f][1]:
            rep.add("whisker_l of non-composable pair", h, a)
        elif two[c] != (c1.get((h, f)), c1.get((h, g))):
            rep.add("whisker_l boundary", h, a)
    for (a, h), c in wr.items():
        rep.checked += 1
        f, g = two[a]
        if one[h][1] != one[f][0]:
            rep.add("whisker_r of non-composable pair", a, h)
        elif two[c] != (c1.get((f, h)), c1.get((g, h))):
            rep.add("whisker_r boundary", a, h)
    if not rep.valid:
        return rep

    objs = w.objects()
    # compose1: totality, unit, associativity
    for x, y in product(objs, objs):
        for f in w.hom(x, y):
            if get(c1, (w.id1(y), f), "compose1") != f or get(c1, (f, w.id1(x)), "compose1") != f:
                rep.add("unit law for compose1", f)
            for z in objs:
                for g in w.hom(y, z):
                    gf = get(c1, (g, f), "compose1")
                    if gf is None:
                        continue
                    for t in objs:
                        for h in w.hom(z, t):
                            rep.checked += 1
                            hg = get(c1, (h, g), "compose1")
                            if hg is None:
                                continue
                            if c1.get((h, gf)) != c1.get((hg, f)):
                                rep.add("associativity of compose1", h, g, f)
    if not rep.valid:
        return rep

    one_ids = w.one_cell_ids
    # vcomp: totality, unit, associativity
    for f in one_ids:
        for g in one_ids:
            for a in w.cells2(f, g):
                if get(vc, (w.id2(g), a), "vcomp") != a or get(vc, (a, w.id2(f)), "vcomp") != a:
                    rep.add("unit law for vcomp", a)
                for h in one_ids:
                    for b in w.cells2(g, h):
                        ba = get(vc, (b, a), "vcomp")
                        if ba is None:
                            continue
                        for k in one_ids:
                            for c in w.cells2(h, k):
                                rep.checked += 1
                                cb = get(vc, (c, b), "vcomp")
                                if cb is None:
                                    continue
                                if vc.get((c, ba)) != vc.get((cb, a)):
                                    rep.add("associativity of vcomp", c, b, a)
    if not rep.valid:
        return rep

    def hom_2cells(x, y):
        for f in w.hom(x, y):
            for g in w.hom(x, y):
                yield from w.cells2(f, g)

    # whiskering: totality, functoriality, unit, and mixed associativity
    for x, y in product(objs, objs):
        cells_xy = list(hom_2cells(x, y))
        for a in cells_xy:
            f, g = two[a]
            if get(wl, (w.id1(y), a), "whisker_l") != a or get(wr, (a, w.id1(x)), "whisker_r") != a:
                rep.add("whiskering by identity 1-cell", a)
            for z in objs:
                for h in w.hom(y, z):
                    ha = get(wl, (h, a), "whisker_l")
                    if ha is None:
                        continue
                    rep.checked += 1
                    if f == g and a == w.id2(f) and ha != w.id2(c1[(h, f)]):
                        rep.add("whisker_l preserves identities", h, a)
                    for t in objs:
                        for k in w.hom(z, t):
                            rep.checked += 1
                            if wl.get((k, ha)) != wl.get((c1[(k, h)], a)):
                                rep.add("whisker_l associativity", k, h, a)
                for h in w.hom(z, x):
                    ah = get(wr, (a, h), "whisker_r")
                    if ah is None:
                        continue
                    rep.checked += 1
                    if f == g and a == w.id2(f) and ah != w.id2(c1[(f, h)]):
                        rep.add("whisker_r preserves identities", a, h)
                    for t in objs:
                        for k in w.hom(t, z):
                            rep.checked += 1
                            if wr.get((ah, k)) != wr.get((a, c1[(h, k)])):
                                rep.add("whisker_r associativity", a, h, k)
                    for t in objs:
                        for k in w.hom(y, t):
                            rep.checked += 1
                            if wl.get((k, ah)) != wr.get((wl.get((k, a)), h)):
                                rep.add("whisker_l/whisker_r commute", k, a, h)
    if not rep.valid:
        return rep

    for x, y in product(objs, objs):
        for f in w.hom(x, y):
            for g in w.hom(x, y):
                for a in w.cells2(f, g):
                    for h in w.hom(x, y):
                        for b in w.cells2(g, h):
                            ba = vc[(b, a)]
                            for z in objs:
                                for k in w.hom(y, z):
                                    rep.checked += 1
                                    if wl[(k, ba)] != vc.get((wl[(k, b)], wl[(k, a)])):
                                        rep.add("whisker_l preserves vcomp", k, b, a)
                                for k in w.hom(z, x):
                                    rep.checked += 1
                                    if wr[(ba, k)] != vc.get((wr[(b, k)], wr[(a, k)])):
                                        rep.add("whisker_r preserves vcomp", b, a, k)
    if not rep.valid:
        return rep

    # interchange: (b * f') ∘ (g * a) = (g' * a) ∘ (b * f)
    for x, y, z in product(objs, objs, objs):
        for a in hom_2cells(x, y):
            f, f2 = two[a]
            for b in hom_2cells(y, z):
                g, g2 = two[b]
                rep.checked += 1
                left = vc.get((wr[(b, f2)], wl[(g, a)]))
                right = vc.get((wl[(g2, a)], wr[(b, f)]))
                if left is None or left != right:
                    rep.add("interchange", b, a)
    return rep


# --------------------------------------------------------------------------
# window files


def window_to_dict(w: FiniteWindow2Cat) -> dict:
    d: dict[str, Any] = {"schema": WINDOW_SCHEMA, "name": w.name}
    d["objects"] = list(w.objects())
    d["one_cells"] = [{"id": c, "src": w.src(c), "tgt": w.tgt(c)} for c in w.one_cell_ids]
    d["two_cells"] = [{"id": c, "src": w.dom2(c), "tgt": w.cod2(c)} for c in w.two_cell_ids]
    d["tables"] = {
        "identities": {"one": dict(w._id1), "two": dict(w._id2)},
        "compose1": [list(e) for e in w.tables["compose1"]],
        "vcomp": [list(e) for e in w.tables["vcomp"]],
        "whisker_l": [list(e) for e in w.tables["whisker_l"]],
        "whisker_r": [list(e) for e in w.tables["whisker_r"]],
    }
    d.update(w.extra)
    return d


def window_from_dict(d: dict) -> FiniteWindow2Cat:
    if d.get("schema") != WINDOW_SCHEMA:
        raise InstanceFormatError(f"expected schema {WINDOW_SCHEMA!r}, got {d.get('schema')!r}")
    try:
        t = d["tables"]
        known = {"schema", "name", "objects", "one_cells", "two_cells", "tables"}
        return FiniteWindow2Cat(
            d["objects"],
            [(c["id"], c["src"], c["tgt"]) for c in d["one_cells"]],
            [(c["id"], c["src"], c["tgt"]) for c in d["two_cells"]],
            t["compose1"],
            t["vcomp"],
            t["whisker_l"],
            t["whisker_r"],
            t["identities"]["one"],
            t["identities"]["two"],
            name=d.get("name", "window"),
            extra={k: v for k, v in d.items() if k not in known},
        )
    except (KeyError, TypeError) as e:
        raise InstanceFormatError(f"malformed window file: {e}") from None


def dump_json(d: dict) -> str:
    return json.dumps(d, indent=1, ensure_ascii=False) + "\n"


def dump_window(w: FiniteWindow2Cat) -> str:
    return dump_json(window_to_dict(w))


def load_window(text: str) -> FiniteWindow2Cat:
    return window_from_dict(json.loads(text))


def materialize(K: TwoCategory, name: str | None = None) -> FiniteWindow2Cat:
    """Tabulate the full sub-2-category of ``K`` on its window objects."""
    objs = K.objects()
    olabel = {x: K.label(x) for x in objs}
    ones: list = []
    for x in objs:
        for y in objs:
            ones.extend(K.hom(x, y))
    l1 = {f: K.label(f) for f in ones}
    if len(set(l1.values())) != len(l1):
        raise MalformedTable("1-cell labels are not unique")
    twos: list = []
    by_hom: dict = {}
    for x in objs:
        for y in objs:
            hs = K.hom(x, y)
            by_hom[(x, y)] = hs
            for f in hs:
                for g in hs:
                    twos.extend(K.cells2(f, g))
    l2 = {a: K.label(a) for a in twos}
    if len(set(l2.values())) != len(l2):
        raise MalformedTable("2-cell labels are not unique")

    def cells_of(x, y):
        hs = by_hom[(x, y)]
        for f in hs:
            for g in hs:
                yield from K.cells2(f, g)

    compose1, vcomp, wl, wr = [], [], [], []
    for x, y, z in product(objs, objs, objs):
        for f in by_hom[(x, y)]:
            for g in by_hom[(y, z)]:
                compose1.append((l1[g], l1[f], l1[K.compose1(g, f)]))
        for a in cells_of(x, y):
            for h in by_hom[(y, z)]:
                wl.append((l1[h], l2[a], l2[K.whisker_l(h, a)]))
        for a in cells_of(y, z):
            for h in by_hom[(x, y)]:
                wr.append((l2[a], l1[h], l2[K.whisker_r(a, h)]))
    for x, y in product(objs, objs):
        hs = by_hom[(x, y)]
        for f, g, h in product(hs, hs, hs):
            for a in K.cells2(f, g):
                for b in K.cells2(g, h):
                    vcomp.append((l2[b], l2[a], l2[K.vcomp(b, a)]))
    return FiniteWindow2Cat(
        [olabel[x] for x in objs],
        [(l1[f], olabel[K.src(f)], olabel[K.tgt(f)]) for f in ones],
        [(l2[a], l1[K.dom2(a)], l1[K.cod2(a)]) for a in twos],
        compose1,
        vcomp,
        wl,
        wr,
        {olabel[x]: l1[K.id1(x)] for x in objs},
        {l1[f]: l2[K.id2(f)] for f in ones},
        name=name or K.name,
    )


# --------------------------------------------------------------------------
# ff 1-cells and equivalences


@dataclass(frozen=True)
class FfWitness:
    """Failure of ``q_*: K(z,u) -> K(z,x)``.

    ``kind`` is ``"not_full"`` (``cell`` is a 2-cell ``q f => q g`` with no
    preimage) or ``"not_faithful"`` (``cells`` are two distinct 2-cells
    ``f => g`` with equal image).
    """

    kind: str
    z: Hashable
    f: Hashable
    g: Hashable
    cells: tuple


@dataclass(frozen=True)
class FfVerdict:
    ff: bool
    witness: FfWitness | None = None
    checked_objects: tuple = ()

    def __bool__(self) -> bool:
        return self.ff


def ff_at(K: TwoCategory, q, z) -> FfWitness | None:
    """Exhaustively test full faithfulness of ``q_*`` on ``K(z, src q)``."""
    u = K.src(q)
    hs = K.hom(z, u)
    for f in hs:
        qf = K.compose1(q, f)
        for g in hs:
            qg = K.compose1(q, g)
            cells = K.cells2(f, g)
            image: dict = {}
            for a in cells:
                qa = K.whisker_l(q, a)
                if qa in image:
                    return FfWitness("not_faithful", z, f, g, (image[qa], a))
                image[qa] = a
            for b in K.cells2(qf, qg):
                if b not in image:
                    return FfWitness("not_full", z, f, g, (b,))
    return None


def is_ff_one_cell(K: TwoCategory, q, objects: Iterable | None = None) -> FfVerdict:
    """Decide whether post-composition with ``q`` is fully faithful.

    Uses the backend oracle when one exists; otherwise enumerates every
    object ``z`` of the window.
    """
    if not K.is_one_cell(q):
        raise NotAOneCell(repr(q))
    if objects is None:
        verdict = K.ff_oracle(q)
        if verdict is not None:
            return verdict
        objects = K.objects()
    objects = tuple(objects)
    for z in objects:
        wit = ff_at(K, q, z)
        if wit is not None:
            return FfVerdict(False, wit, objects)
    return FfVerdict(True, None, objects)


@dataclass(frozen=True)
class EquivalenceWitness1Cell:
    """``f: x -> y`` with pseudoinverse ``g`` and invertible ``eta: 1 => g f``, ``eps: f g => 1``."""

    f: Hashable
    g: Hashable
    eta: Hashable
    eps: Hashable
    eta_inv: Hashable
    eps_inv: Hashable


def check_pseudoinverse(K: TwoCategory, w: EquivalenceWitness1Cell) -> list[str]:
    errs = []
    x, y = K.src(w.f), K.tgt(w.f)
    if K.src(w.g) != y or K.tgt(w.g) != x:
        return ["pseudoinverse has wrong boundary"]
    gf, fg = K.compose1(w.g, w.f), K.compose1(w.f, w.g)
    if (K.dom2(w.eta), K.cod2(w.eta)) != (K.id1(x), gf):
        errs.append("eta boundary")
    if (K.dom2(w.eps), K.cod2(w.eps)) != (fg, K.id1(y)):
        errs.append("eps boundary")
    if errs:
        return errs
    for name, a, b in (("eta", w.eta, w.eta_inv), ("eps", w.eps, w.eps_inv)):
        if K.vcomp(b, a) != K.id2(K.dom2(a)) or K.vcomp(a, b) != K.id2(K.cod2(a)):
            errs.append(f"{name} is not inverted by the recorded inverse")
    return errs


def find_pseudoinverse(K: TwoCategory, f, budget: SearchBudget | None = None):
    """Search ``g`` in ``K(y, x)`` with invertible unit and counit.

    Returns an :class:`EquivalenceWitness1Cell` (re-validated) or
    :class:`NotFound`.  The search space is ``K(y,x)`` and the two 2-cell
    sets, which every backend enumerates completely.
    """
    if not K.is_one_cell(f):
        raise NotAOneCell(repr(f))
    meter = (budget or SearchBudget()).meter()
    x, y = K.src(f), K.tgt(f)
    try:
        for g in K.hom(y, x):
            meter.tick()
            gf, fg = K.compose1(g, f), K.compose1(f, g)
            eta = K.first_iso(K.id1(x), gf)
            if eta is None:
                continue
            eps = K.first_iso(fg, K.id1(y))
            if eps is None:
                continue
            wit = EquivalenceWitness1Cell(f, g, eta, eps, K.inverse2(eta), K.inverse2(eps))
            assert not check_pseudoinverse(K, wit)
            return wit
    except BudgetExhausted:
        return NotFound("budget exhausted", exhausted=True)
    return NotFound("no pseudoinverse")
