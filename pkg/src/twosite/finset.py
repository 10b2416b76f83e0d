"""Categories internal to finite sets, i.e. ordinary finite categories.

Objects and morphisms are stored by index; names are kept only for files
and labels.  :class:`Cat2` packages a list of categories as an open strict
2-category (objects: categories, 1-cells: functors, 2-cells: natural
transformations) whose hom-categories are enumerated on demand.
"""

from __future__ import annotations

import hashlib
import json
from itertools import product
from typing import Callable, Iterable, NamedTuple

from .core import FfVerdict, FfWitness, TwoCategory
from .errors import AxiomViolation, CodomainMismatch, InstanceFormatError, NotAGroupoid

CATEGORY_SCHEMA = "fincat/1"
FUNCTOR_SCHEMA = "finfunctor/1"
NATTRANS_SCHEMA = "finnat/1"
INSTANCE_SCHEMA = "finset-window/1"


def canonical_hash(d) -> str:
    blob = json.dumps(d, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:16]


class FiniteCategory:
    """A finite category with an explicit composition table.

    ``morphisms`` are ``(id, src, tgt)`` triples, ``identities`` maps each
    object to its identity morphism, ``compose`` holds ``(g, f, g∘f)``
    triples.  Composites with an identity may be omitted and are filled in.
    Construction does not check the axioms; call :meth:`validate`.
    """

    def __init__(
        self,
        name: str,
        objects: Iterable[str],
        morphisms: Iterable[tuple[str, str, str]],
        identities: dict[str, str],
        compose: Iterable[tuple[str, str, str]],
    ):
        self.name = name
        self.objects = tuple(objects)
        self.oidx = {o: i for i, o in enumerate(self.objects)}
        if len(self.oidx) != len(self.objects):
            raise AxiomViolation(f"{name}: duplicate object names")
        morphisms = list(morphisms)
        self.morphisms = tuple(m for m, _, _ in morphisms)
        self.midx = {m: i for i, m in enumerate(self.morphisms)}
        if len(self.midx) != len(self.morphisms):
            raise AxiomViolation(f"{name}: duplicate morphism names")
        try:
            self.msrc = tuple(self.oidx[s] for _, s, _ in morphisms)
            self.mtgt = tuple(self.oidx[t] for _, _, t in morphisms)
            self.ident = tuple(self.midx[identities[o]] for o in self.objects)
            comp = {}
            for g, f, h in compose:
                comp[(self.midx[g], self.midx[f])] = self.midx[h]
        except KeyError as e:
            raise AxiomViolation(f"{name}: unknown name {e}") from None
        for m in range(len(self.morphisms)):
            comp.setdefault((self.ident[self.mtgt[m]], m), m)
            comp.setdefault((m, self.ident[self.msrc[m]]), m)
        self.comp = comp
        homs: dict[tuple[int, int], list[int]] = {}
        for m in range(len(self.morphisms)):
            homs.setdefault((self.msrc[m], self.mtgt[m]), []).append(m)
        self._homs = {k: tuple(v) for k, v in homs.items()}
        self.key = canonical_hash(self.to_dict())
        self._hash = hash(self.key)
        self._inv: dict[int, int | None] | None = None

    def __eq__(self, other):
        return isinstance(other, FiniteCategory) and self.key == other.key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"FiniteCategory({self.name!r}, {len(self.objects)} obj, {len(self.morphisms)} mor)"

    def hom(self, a: int, b: int) -> tuple[int, ...]:
        return self._homs.get((a, b), ())

    def compose(self, g: int, f: int) -> int:
        return self.comp[(g, f)]

    def inverse(self, m: int) -> int | None:
        if self._inv is None:
            inv = {}
            for i in range(len(self.morphisms)):
                inv[i] = None
                for j in self.hom(self.mtgt[i], self.msrc[i]):
                    if self.comp.get((j, i)) == self.ident[self.msrc[i]] and self.comp.get((i, j)) == self.ident[self.mtgt[i]]:
                        inv[i] = j
                        break
            self._inv = inv
        return self._inv[m]

    def is_groupoid(self) -> bool:
        return all(self.inverse(m) is not None for m in range(len(self.morphisms)))

    def axiom_violations(self) -> list[str]:
        out = []
        n = len(self.morphisms)
        for o, i in enumerate(self.ident):
            if (self.msrc[i], self.mtgt[i]) != (o, o):
                out.append(f"identity of {self.objects[o]} has wrong boundary")
        for f in range(n):
            for c in range(len(self.objects)):
                for g in self.hom(self.mtgt[f], c):
                    h = self.comp.get((g, f))
                    if h is None:
                        out.append(f"composite {self.morphisms[g]}∘{self.morphisms[f]} missing")
                    elif (self.msrc[h], self.mtgt[h]) != (self.msrc[f], self.mtgt[g]):
                        out.append(f"composite {self.morphisms[g]}∘{self.morphisms[f]} has wrong boundary")
        for (g, f) in self.comp:
            if self.msrc[g] != self.mtgt[f]:
                out.append(f"table composes non-composable {self.morphisms[g]}, {self.morphisms[f]}")
        if out:
            return out
        for f in range(n):
            for g in range(n):
                if self.msrc[g] != self.mtgt[f]:
                    continue
                gf = self.comp[(g, f)]
                for h in range(n):
                    if self.msrc[h] != self.mtgt[g]:
                        continue
                    if self.comp[(h, gf)] != self.comp[(self.comp[(h, g)], f)]:
                        out.append(
                            f"associativity fails on {self.morphisms[h]}, {self.morphisms[g]}, {self.morphisms[f]}"
                        )
        return out

    def validate(self) -> "FiniteCategory":
        errs = self.axiom_violations()
        if errs:
            raise AxiomViolation(f"{self.name}: {errs[0]}")
        return self

    def to_dict(self) -> dict:
        idn = set(self.ident)
        return {
            "schema": CATEGORY_SCHEMA,
            "name": self.name,
            "objects": list(self.objects),
            "morphisms": [
                {"id": m, "src": self.objects[self.msrc[i]], "tgt": self.objects[self.mtgt[i]]}
                for i, m in enumerate(self.morphisms)
            ],
            "identities": {o: self.morphisms[self.ident[i]] for i, o in enumerate(self.objects)},
            "compose": [
                [self.morphisms[g], self.morphisms[f], self.morphisms[h]]
                for (g, f), h in sorted(self.comp.items())
                if g not in idn and f not in idn
            ],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "FiniteCategory":
        if d.get("schema") != CATEGORY_SCHEMA:
            raise InstanceFormatError(f"expected schema {CATEGORY_SCHEMA!r}")
        try:
            return cls(
                d["name"],
                d["objects"],
                [(m["id"], m["src"], m["tgt"]) for m in d["morphisms"]],
                d["identities"],
                [tuple(t) for t in d["compose"]],
            )
        except (KeyError, TypeError) as e:
            raise InstanceFormatError(f"malformed category file: {e}") from None


# --------------------------------------------------------------------------
# fixture categories


def terminal(name: str = "1") -> FiniteCategory:
    return FiniteCategory(name, ["*"], [("id*", "*", "*")], {"*": "id*"}, [])


def discrete(n: int, name: str | None = None) -> FiniteCategory:
    objs = [str(i) for i in range(n)]
    return FiniteCategory(name or f"D{n}", objs, [(f"id{o}", o, o) for o in objs], {o: f"id{o}" for o in objs}, [])


def codiscrete(n: int, name: str | None = None) -> FiniteCategory:
    objs = [str(i) for i in range(n)]
    mors = [(f"{a}->{b}", a, b) for a in objs for b in objs]
    comp = [(f"{b}->{c}", f"{a}->{b}", f"{a}->{c}") for a in objs for b in objs for c in objs]
    return FiniteCategory(name or f"C{n}codisc", objs, mors, {o: f"{o}->{o}" for o in objs}, comp)


def cyclic_group(n: int, name: str | None = None) -> FiniteCategory:
    """The one-object groupoid B(Z/n)."""
    mors = [(f"g{i}", "*", "*") for i in range(n)]
    comp = [(f"g{i}", f"g{j}", f"g{(i + j) % n}") for i in range(n) for j in range(n)]
    return FiniteCategory(name or f"BZ{n}", ["*"], mors, {"*": "g0"}, comp)


def arrow(name: str = "2") -> FiniteCategory:
    """The walking arrow 0 -> 1."""
    return FiniteCategory(name, ["0", "1"], [("id0", "0", "0"), ("id1", "1", "1"), ("u", "0", "1")], {"0": "id0", "1": "id1"}, [])


def coproduct(a: FiniteCategory, b: FiniteCategory, name: str | None = None) -> FiniteCategory:
    objs = [f"inl.{o}" for o in a.objects] + [f"inr.{o}" for o in b.objects]
    mors, ids, comp = [], {}, []
    for tag, c in (("inl", a), ("inr", b)):
        for i, m in enumerate(c.morphisms):
            mors.append((f"{tag}.{m}", f"{tag}.{c.objects[c.msrc[i]]}", f"{tag}.{c.objects[c.mtgt[i]]}"))
        for i, o in enumerate(c.objects):
            ids[f"{tag}.{o}"] = f"{tag}.{c.morphisms[c.ident[i]]}"
        for (g, f), h in c.comp.items():
            comp.append((f"{tag}.{c.morphisms[g]}", f"{tag}.{c.morphisms[f]}", f"{tag}.{c.morphisms[h]}"))
    return FiniteCategory(name or f"{a.name}+{b.name}", objs, mors, ids, comp)


def from_preorder(n: int, leq: set[tuple[int, int]], name: str = "P") -> FiniteCategory:
    """The thin category of the reflexive-transitive closure of ``leq``."""
    rel = {(i, i) for i in range(n)} | set(leq)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in product(list(rel), list(rel)):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    pairs = sorted(rel)
    objs = [str(i) for i in range(n)]
    mors = [(f"{a}<={b}", str(a), str(b)) for a, b in pairs]
    comp = [(f"{b}<={c}", f"{a}<={b}", f"{a}<={c}") for a, b in pairs for b2, c in pairs if b == b2]
    return FiniteCategory(name, objs, mors, {str(i): f"{i}<={i}" for i in range(n)}, comp)


def fixture_categories() -> list[FiniteCategory]:
    """The standard window {1, C2codisc, D2, BZ2, 1+1}."""
    one = terminal("1")
    return [one, codiscrete(2, "C2codisc"), discrete(2, "D2"), cyclic_group(2, "BZ2"), coproduct(one, one, "1+1")]


# --------------------------------------------------------------------------
# functors and natural transformations


class FiniteFunctor:
    __slots__ = ("src", "tgt", "obj", "mor", "_hash")

    def __init__(self, src: FiniteCategory, tgt: FiniteCategory, obj: tuple[int, ...], mor: tuple[int, ...]):
        self.src, self.tgt = src, tgt
        self.obj, self.mor = tuple(obj), tuple(mor)
        self._hash = hash((src.key, tgt.key, self.obj, self.mor))

    def __eq__(self, other):
        return (
            isinstance(other, FiniteFunctor)
            and self._hash == other._hash
            and self.obj == other.obj
            and self.mor == other.mor
            and self.src == other.src
            and self.tgt == other.tgt
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"FiniteFunctor({self.src.name}->{self.tgt.name}, obj={self.obj}, mor={self.mor})"

    @classmethod
    def identity(cls, c: FiniteCategory) -> "FiniteFunctor":
        return cls(c, c, tuple(range(len(c.objects))), tuple(range(len(c.morphisms))))

    def after(self, f: "FiniteFunctor") -> "FiniteFunctor":
        """``self ∘ f``."""
        if f.tgt != self.src:
            raise CodomainMismatch(f"cannot compose {self!r} after {f!r}")
        return FiniteFunctor(f.src, self.tgt, tuple(self.obj[i] for i in f.obj), tuple(self.mor[m] for m in f.mor))

    def violations(self) -> list[str]:
        A, B = self.src, self.tgt
        out = []
        if len(self.obj) != len(A.objects) or len(self.mor) != len(A.morphisms):
            return ["map sizes do not match the source category"]
        for m in range(len(A.morphisms)):
            n = self.mor[m]
            if (B.msrc[n], B.mtgt[n]) != (self.obj[A.msrc[m]], self.obj[A.mtgt[m]]):
                out.append(f"{A.morphisms[m]} is sent to a morphism with the wrong boundary")
        for o in range(len(A.objects)):
            if self.mor[A.ident[o]] != B.ident[self.obj[o]]:
                out.append(f"identity of {A.objects[o]} not preserved")
        if out:
            return out
        for (g, f), h in A.comp.items():
            if B.comp[(self.mor[g], self.mor[f])] != self.mor[h]:
                out.append(f"composite {A.morphisms[g]}∘{A.morphisms[f]} not preserved")
        return out

    def to_dict(self) -> dict:
        A, B = self.src, self.tgt
        return {
            "schema": FUNCTOR_SCHEMA,
            "src": A.key,
            "tgt": B.key,
            "obj_map": {A.objects[i]: B.objects[j] for i, j in enumerate(self.obj)},
            "mor_map": {A.morphisms[i]: B.morphisms[j] for i, j in enumerate(self.mor)},
        }

    @classmethod
    def from_dict(cls, d: dict, cats: dict[str, FiniteCategory]) -> "FiniteFunctor":
        try:
            A, B = cats[d["src"]], cats[d["tgt"]]
            obj = tuple(B.oidx[d["obj_map"][o]] for o in A.objects)
            mor = tuple(B.midx[d["mor_map"][m]] for m in A.morphisms)
        except KeyError as e:
            raise InstanceFormatError(f"functor references unknown name {e}") from None
        return cls(A, B, obj, mor)


class FiniteNatTrans:
    __slots__ = ("src", "tgt", "comp", "_hash")

    def __init__(self, src: FiniteFunctor, tgt: FiniteFunctor, comp: tuple[int, ...]):
        self.src, self.tgt, self.comp = src, tgt, tuple(comp)
        self._hash = hash((src, tgt, self.comp))

    def __eq__(self, other):
        return (
            isinstance(other, FiniteNatTrans)
            and self._hash == other._hash
            and self.comp == other.comp
            and self.src == other.src
            and self.tgt == other.tgt
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"FiniteNatTrans({self.src!r} => {self.tgt!r}, {self.comp})"

    @classmethod
    def identity(cls, F: FiniteFunctor) -> "FiniteNatTrans":
        B = F.tgt
        return cls(F, F, tuple(B.ident[F.obj[o]] for o in range(len(F.src.objects))))

    def violations(self) -> list[str]:
        F, G = self.src, self.tgt
        A, B = F.src, F.tgt
        if G.src != A or G.tgt != B:
            return ["source and target functors are not parallel"]
        if len(self.comp) != len(A.objects):
            return ["wrong number of components"]
        out = []
        for o, c in enumerate(self.comp):
            if (B.msrc[c], B.mtgt[c]) != (F.obj[o], G.obj[o]):
                out.append(f"component at {A.objects[o]} has the wrong boundary")
        if out:
            return out
        for m in range(len(A.morphisms)):
            a, b = A.msrc[m], A.mtgt[m]
            if B.comp[(G.mor[m], self.comp[a])] != B.comp[(self.comp[b], F.mor[m])]:
                out.append(f"naturality square at {A.morphisms[m]} does not commute")
        return out

    def to_dict(self) -> dict:
        B = self.src.tgt
        A = self.src.src
        return {
            "schema": NATTRANS_SCHEMA,
            "src": self.src.to_dict(),
            "tgt": self.tgt.to_dict(),
            "components": {A.objects[o]: B.morphisms[c] for o, c in enumerate(self.comp)},
        }

    @classmethod
    def from_dict(cls, d: dict, cats: dict[str, FiniteCategory]) -> "FiniteNatTrans":
        F = FiniteFunctor.from_dict(d["src"], cats)
        G = FiniteFunctor.from_dict(d["tgt"], cats)
        try:
            comp = tuple(F.tgt.midx[d["components"][o]] for o in F.src.objects)
        except KeyError as e:
            raise InstanceFormatError(f"natural transformation references unknown name {e}") from None
        return cls(F, G, comp)


def enumerate_functors(A: FiniteCategory, B: FiniteCategory) -> list[FiniteFunctor]:
    """All functors ``A -> B`` in lexicographic order of (object map, morphism map)."""
    nA = len(A.morphisms)
    # composition constraints become checkable once their largest index is assigned
    checks: list[list[tuple[int, int, int]]] = [[] for _ in range(nA)]
    for (g, f), h in A.comp.items():
        checks[max(g, f, h)].append((g, f, h))
    out = []
    for obj in product(range(len(B.objects)), repeat=len(A.objects)):
        cands = []
        for m in range(nA):
            a, b = A.msrc[m], A.mtgt[m]
            if A.ident[a] == m:
                cands.append((B.ident[obj[a]],))
            else:
                cands.append(B.hom(obj[a], obj[b]))
        if any(not c for c in cands):
            continue
        mor = [0] * nA

        def extend(m):
            if m == nA:
                out.append(FiniteFunctor(A, B, obj, tuple(mor)))
                return
            for n in cands[m]:
                mor[m] = n
                if all(B.comp[(mor[g], mor[f])] == mor[h] for g, f, h in checks[m]):
                    extend(m + 1)

        extend(0)
    return out


def enumerate_nat_trans(F: FiniteFunctor, G: FiniteFunctor) -> list[FiniteNatTrans]:
    """All natural transformations ``F => G`` in lexicographic order of components."""
    A, B = F.src, F.tgt
    n = len(A.objects)
    checks: list[list[int]] = [[] for _ in range(n)]
    for m in range(len(A.morphisms)):
        checks[max(A.msrc[m], A.mtgt[m])].append(m)
    cands = [B.hom(F.obj[o], G.obj[o]) for o in range(n)]
    out: list[FiniteNatTrans] = []
    comp = [0] * n

    def extend(o):
        if o == n:
            out.append(FiniteNatTrans(F, G, tuple(comp)))
            return
        for c in cands[o]:
            comp[o] = c
            ok = True
            for m in checks[o]:
                a, b = A.msrc[m], A.mtgt[m]
                if B.comp[(G.mor[m], comp[a])] != B.comp[(comp[b], F.mor[m])]:
                    ok = False
                    break
            if ok:
                extend(o + 1)

    extend(0)
    return out


# --------------------------------------------------------------------------
# properties of functors


def ff_failure(F: FiniteFunctor):
    """First hom-set where ``F`` is not bijective: ``(kind, a, b, data)`` or None."""
    A, B = F.src, F.tgt
    for a in range(len(A.objects)):
        for b in range(len(A.objects)):
            hs = A.hom(a, b)
            image = {}
            for m in hs:
                n = F.mor[m]
                if n in image:
                    return ("not_faithful", a, b, (image[n], m))
                image[n] = m
            for n in B.hom(F.obj[a], F.obj[b]):
                if n not in image:
                    return ("not_full", a, b, (n,))
    return None


def functor_fully_faithful(F: FiniteFunctor) -> bool:
    return ff_failure(F) is None


def object_surjective(F: FiniteFunctor) -> bool:
    return set(F.obj) == set(range(len(F.tgt.objects)))


def essentially_surjective(F: FiniteFunctor) -> bool:
    B = F.tgt
    image = set(F.obj)
    for b in range(len(B.objects)):
        if b in image:
            continue
        if not any(B.inverse(m) is not None for a in image for m in B.hom(a, b)):
            return False
    return True


def _surjections(obj_map: tuple[int, ...], n: int) -> bool:
    return set(obj_map) == set(range(n))


# In FinSet every surjection has a section, so both names give the same class;
# they are kept apart so other finite pretopologies can be registered here.
OBJECT_COVERS: dict[str, Callable[[tuple[int, ...], int], bool]] = {
    "surjections": _surjections,
    "split_epis": _surjections,
    "identities": lambda obj_map, n: obj_map == tuple(range(n)),
}


def j_of_t_membership(F: FiniteFunctor, cover: str = "surjections") -> bool:
    """Membership in J(T): fully faithful with object component a T-cover."""
    return OBJECT_COVERS[cover](F.obj, len(F.tgt.objects)) and functor_fully_faithful(F)


class Pullback(NamedTuple):
    corner: FiniteCategory
    w_tilde: FiniteFunctor  # corner -> dom f, opposite q
    f_tilde: FiniteFunctor  # corner -> dom q, opposite f


def strict_pullback(q: FiniteFunctor, f: FiniteFunctor) -> Pullback:
    """Strict pullback ``dom f ×_Z dom q`` of ``q: U -> Z`` along ``f: Y -> Z``.

    Pulling back along an identity returns the other leg unchanged rather
    than an isomorphic copy.
    """
    if q.tgt != f.tgt:
        raise CodomainMismatch(f"{q.tgt.name} != {f.tgt.name}")
    Y, U = f.src, q.src
    if q == FiniteFunctor.identity(q.tgt):
        return Pullback(Y, FiniteFunctor.identity(Y), f)
    if f == FiniteFunctor.identity(f.tgt):
        return Pullback(U, q, FiniteFunctor.identity(U))
    opairs = [(y, u) for y in range(len(Y.objects)) for u in range(len(U.objects)) if f.obj[y] == q.obj[u]]
    mpairs = [(m, n) for m in range(len(Y.morphisms)) for n in range(len(U.morphisms)) if f.mor[m] == q.mor[n]]
    oname = {p: f"({Y.objects[p[0]]},{U.objects[p[1]]})" for p in opairs}
    mname = {p: f"({Y.morphisms[p[0]]},{U.morphisms[p[1]]})" for p in mpairs}
    mors = [
        (mname[(m, n)], oname[(Y.msrc[m], U.msrc[n])], oname[(Y.mtgt[m], U.mtgt[n])]) for m, n in mpairs
    ]
    ids = {oname[(y, u)]: mname[(Y.ident[y], U.ident[u])] for y, u in opairs}
    mset = set(mpairs)
    comp = []
    for (g1, g2), (f1, f2) in product(mpairs, mpairs):
        if Y.msrc[g1] == Y.mtgt[f1] and U.msrc[g2] == U.mtgt[f2]:
            h = (Y.comp[(g1, f1)], U.comp[(g2, f2)])
            assert h in mset
            comp.append((mname[(g1, g2)], mname[(f1, f2)], mname[h]))
    P = FiniteCategory(f"({Y.name}x[{q.tgt.name}]{U.name})", [oname[p] for p in opairs], mors, ids, comp)
    w_t = FiniteFunctor(P, Y, tuple(y for y, _ in opairs), tuple(m for m, _ in mpairs))
    f_t = FiniteFunctor(P, U, tuple(u for _, u in opairs), tuple(n for _, n in mpairs))
    return Pullback(P, w_t, f_t)


# --------------------------------------------------------------------------
# the 2-category Cat(FinSet) on a window of categories


class Cat2(TwoCategory):
    """Finite categories, functors and natural transformations.

    ``objects()`` is the declared window, but hom-categories are available
    for any pair of finite categories, so constructions such as strict
    pullbacks may leave the window.
    """

    exhaustive = False

    def __init__(self, cats: Iterable[FiniteCategory], groupoids_only: bool = False, name: str = "Cat(FinSet)"):
        self.window = tuple(cats)
        self.groupoids_only = groupoids_only
        self.name = name
        names = [c.name for c in self.window]
        if len(set(names)) != len(names):
            raise AxiomViolation("window categories must have distinct names")
        for c in self.window:
            c.validate()
            if groupoids_only and not c.is_groupoid():
                raise NotAGroupoid(c.name)
        self._homs: dict = {}
        self._cells: dict = {}
        self._terminal = next((c for c in self.window if len(c.objects) == 1 and len(c.morphisms) == 1), None) or terminal()

    def objects(self) -> tuple:
        return self.window

    def hom(self, x, y) -> tuple:
        key = (x, y)
        hs = self._homs.get(key)
        if hs is None:
            hs = self._homs[key] = tuple(enumerate_functors(x, y))
        return hs

    def cells2(self, f, g) -> tuple:
        key = (f, g)
        cs = self._cells.get(key)
        if cs is None:
            cs = self._cells[key] = tuple(enumerate_nat_trans(f, g))
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
        return g.after(f)

    def id1(self, x):
        return FiniteFunctor.identity(x)

    def vcomp(self, b, a):
        if a.tgt != b.src:
            raise CodomainMismatch("vertical composite of non-composable 2-cells")
        B = a.src.tgt
        return FiniteNatTrans(a.src, b.tgt, tuple(B.comp[(y, x)] for x, y in zip(a.comp, b.comp)))

    def id2(self, f):
        return FiniteNatTrans.identity(f)

    def whisker_l(self, h, a):
        return FiniteNatTrans(h.after(a.src), h.after(a.tgt), tuple(h.mor[c] for c in a.comp))

    def whisker_r(self, a, h):
        return FiniteNatTrans(a.src.after(h), a.tgt.after(h), tuple(a.comp[h.obj[o]] for o in range(len(h.src.objects))))

    def inverse2(self, a):
        B = a.src.tgt
        inv = []
        for c in a.comp:
            i = B.inverse(c)
            if i is None:
                return None
            inv.append(i)
        return FiniteNatTrans(a.tgt, a.src, tuple(inv))

    def is_one_cell(self, c) -> bool:
        return isinstance(c, FiniteFunctor)

    def strict_square(self, a, b):
        """Strict pullback of ``a`` and ``b``: ``(P, pa, pb)`` with ``a∘pa = b∘pb``."""
        pb = strict_pullback(b, a)
        return pb.corner, pb.w_tilde, pb.f_tilde

    @property
    def terminal(self) -> FiniteCategory:
        return self._terminal

    def points(self, c: FiniteCategory) -> list[FiniteFunctor]:
        one = self._terminal
        return [FiniteFunctor(one, c, (o,), (c.ident[o],)) for o in range(len(c.objects))]

    def ff_oracle(self, q) -> FfVerdict:
        """Exact for Cat: ``q_*`` is ff for all z iff ``q`` is ff, and z = 1 detects failures."""
        fail = ff_failure(q)
        if fail is None:
            return FfVerdict(True, None, ())
        kind, a, b, data = fail
        one = self._terminal
        pa, pb = self.points(q.src)[a], self.points(q.src)[b]
        if kind == "not_faithful":
            cells = tuple(FiniteNatTrans(pa, pb, (m,)) for m in data)
        else:
            cells = (FiniteNatTrans(q.after(pa), q.after(pb), (data[0],)),)
        return FfVerdict(False, FfWitness(kind, one, pa, pb, cells), (one,))

    def label(self, c) -> str:
        if isinstance(c, FiniteCategory):
            return c.name
        if isinstance(c, FiniteFunctor):
            base = f"{c.src.name}_to_{c.tgt.name}"
            if c.src in self.window and c.tgt in self.window:
                hs = self.hom(c.src, c.tgt)
                if len(hs) == 1:
                    return base
                return f"{base}_{hs.index(c)}"
            return base + "[" + ",".join(c.tgt.morphisms[m] for m in c.mor) + "]"
        if isinstance(c, FiniteNatTrans):
            cs = self.cells2(c.src, c.tgt)
            base = f"{self.label(c.src)}=>{self.label(c.tgt)}"
            return base if len(cs) == 1 else f"{base}_{cs.index(c)}"
        return str(c)

    def find_one_cell(self, label: str) -> FiniteFunctor:
        for f in self.one_cells():
            if self.label(f) == label:
                return f
        raise KeyError(label)

    def find_object(self, name: str) -> FiniteCategory:
        for c in self.window:
            if c.name == name:
                return c
        raise KeyError(name)


def cat2_instance(cats: Iterable[FiniteCategory], groupoids_only: bool = False) -> Cat2:
    return Cat2(cats, groupoids_only)


def instance_to_dict(K: Cat2, coverage: str = "jt_surjections") -> dict:
    return {
        "schema": INSTANCE_SCHEMA,
        "name": K.name,
        "groupoids_only": K.groupoids_only,
        "coverage": coverage,
        "categories": [c.to_dict() for c in K.window],
    }


def instance_from_dict(d: dict) -> tuple[Cat2, str]:
    if d.get("schema") != INSTANCE_SCHEMA:
        raise InstanceFormatError(f"expected schema {INSTANCE_SCHEMA!r}")
    cats = [FiniteCategory.from_dict(c) for c in d["categories"]]
    return Cat2(cats, d.get("groupoids_only", False), d.get("name", "Cat(FinSet)")), d.get("coverage", "jt_surjections")


def jt_coverage(K: Cat2, cover: str = "surjections"):
    """J(T) on ``K``: fully faithful functors whose object map is a T-cover.

    Fillers come from :func:`strict_pullback`.  Because T-covers of finite
    sets split, a functor is J-locally split iff it is split over the
    identity cover, and for fully faithful functors this is equivalent to
    essential surjectivity; the latter is registered as the cross-check.
    """
    from .site import CoverageSpec, FillerSquare

    def filler(q, f):
        pb = strict_pullback(q, f)
        i = K.id2(q.after(pb.f_tilde))
        return FillerSquare(q, f, pb.corner, pb.f_tilde, pb.w_tilde, i, i)

    def criterion(f):
        return essentially_surjective(f) if functor_fully_faithful(f) else None

    return CoverageSpec(
        K,
        "jt_" + cover,
        lambda f: j_of_t_membership(f, cover),
        filler_oracle=filler,
        split_criterion=criterion,
        identity_cover_suffices=True,
    )
