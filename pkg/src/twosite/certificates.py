"""Certificate bundles and their independent re-validation.

A bundle is JSON: the instance hash, the encoded witness data of every
certificate, any categories the witnesses mention that are not in the
instance (pullback corners), and a digest over all of it.  Validation never
calls the engine: :class:`RawFinset` and :class:`RawWindow` re-evaluate
compositions, whiskerings and W-membership directly from the JSON.  W is
re-decided by a second route (for finite categories: fully faithful and
essentially surjective), so a certificate checked here does not inherit
the engine's search.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any

from .core import FiniteWindow2Cat
from .finset import Cat2, FiniteCategory, FiniteFunctor, FiniteNatTrans, canonical_hash

BUNDLE_SCHEMA = "twosite-cert/1"
_TAGS = ("cat", "functor", "nat", "obj", "one", "two")


@dataclass(frozen=True)
class Certificate:
    """A witness bundle; ``payload`` maps role names to cells or nested dicts of cells."""

    kind: str
    payload: dict[str, Any]


# --------------------------------------------------------------------------
# encoding


class _Encoder:
    def __init__(self, K, instance_keys: set[str]):
        self.K = K
        self.instance_keys = instance_keys
        self.extra: dict[str, dict] = {}

    def _cat(self, c: FiniteCategory) -> str:
        if c.key not in self.instance_keys and c.key not in self.extra:
            self.extra[c.key] = c.to_dict()
        return c.key

    def enc(self, v):
        if isinstance(v, dict):
            return {k: self.enc(x) for k, x in v.items()}
        if isinstance(v, (list, tuple)):
            return [self.enc(x) for x in v]
        if isinstance(self.K, FiniteWindow2Cat):
            if v in self.K.objects():
                return {"obj": v}
            if self.K.is_one_cell(v):
                return {"one": v}
            if self.K.is_two_cell(v):
                return {"two": v}
            raise TypeError(f"cannot encode {v!r}")
        if isinstance(v, FiniteCategory):
            return {"cat": self._cat(v)}
        if isinstance(v, FiniteFunctor):
            self._cat(v.src), self._cat(v.tgt)
            return {"functor": v.to_dict()}
        if isinstance(v, FiniteNatTrans):
            for c in (v.src.src, v.src.tgt):
                self._cat(c)
            return {"nat": v.to_dict()}
        raise TypeError(f"cannot encode {v!r}")


def digest(bundle: dict) -> str:
    body = {k: v for k, v in bundle.items() if k != "digest"}
    blob = json.dumps(body, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def seal(bundle: dict) -> dict:
    bundle = dict(bundle)
    bundle["digest"] = digest(bundle)
    return bundle


def make_bundle(K, instance: dict, certs: list[Certificate]) -> dict:
    """Encode ``certs`` for the instance file contents ``instance``."""
    if isinstance(K, Cat2):
        kind = "finset"
        keys = {c.key for c in K.window}
    elif isinstance(K, FiniteWindow2Cat):
        kind = "window"
        keys = set()
    else:
        raise TypeError("certificates are supported for finset and window instances")
    e = _Encoder(K, keys)
    encoded = [{"kind": c.kind, "data": e.enc(c.payload)} for c in certs]
    return seal({
        "schema": BUNDLE_SCHEMA,
        "instance_hash": canonical_hash(instance),
        "instance_kind": kind,
        "categories": dict(sorted(e.extra.items())),
        "certificates": encoded,
    })


# --------------------------------------------------------------------------
# raw evaluators


class RawError(Exception):
    pass


class _RawCat:
    def __init__(self, d: dict):
        self.name = d["name"]
        self.objects = list(d["objects"])
        self.mors = {m["id"]: (m["src"], m["tgt"]) for m in d["morphisms"]}
        self.ident = dict(d["identities"])
        self.comp = {(g, f): h for g, f, h in d["compose"]}
        for m, (s, t) in self.mors.items():
            self.comp[(self.ident[t], m)] = m
            self.comp[(m, self.ident[s])] = m
        for (g, f), h in list(self.comp.items()):
            if self.mors[g][0] != self.mors[f][1] or self.mors[h] != (self.mors[f][0], self.mors[g][1]):
                raise RawError(f"{self.name}: ill-typed composite {g}∘{f}")
        for (g, f), gf in list(self.comp.items()):
            for e, (s, t) in self.mors.items():
                if t == self.mors[f][0] and self.compose(gf, e) != self.compose(g, self.compose(f, e)):
                    raise RawError(f"{self.name}: composition is not associative")

    def compose(self, g: str, f: str) -> str:
        try:
            return self.comp[(g, f)]
        except KeyError:
            raise RawError(f"{self.name}: composite {g}∘{f} undefined") from None

    def hom(self, a: str, b: str) -> list[str]:
        return [m for m, st in self.mors.items() if st == (a, b)]

    def invertible(self, m: str) -> bool:
        s, t = self.mors[m]
        return any(self.comp.get((n, m)) == self.ident[s] and self.comp.get((m, n)) == self.ident[t] for n in self.hom(t, s))


@dataclass(frozen=True)
class RawFunctor:
    A: str
    B: str
    om: tuple
    mm: tuple

    @property
    def o(self) -> dict:
        return dict(self.om)

    @property
    def m(self) -> dict:
        return dict(self.mm)


@dataclass(frozen=True)
class RawNat:
    F: RawFunctor
    G: RawFunctor
    comp: tuple

    @property
    def c(self) -> dict:
        return dict(self.comp)


class RawFinset:
    """Finite categories, functors and natural transformations from JSON."""

    kind = "finset"

    def __init__(self, instance: dict, extra: dict):
        self.cats: dict[str, _RawCat] = {}
        self.window: list[str] = []
        for d in instance["categories"]:
            k = canonical_hash(d)
            self.cats[k] = _RawCat(d)
            self.window.append(k)
        for k, d in extra.items():
            if canonical_hash(d) != k:
                raise RawError(f"category {d.get('name')} does not match its key")
            self.cats[k] = _RawCat(d)
        self.cover = instance.get("coverage", "jt_surjections").removeprefix("jt_")

    # decoding, with well-formedness checks

    def cat(self, k: str) -> _RawCat:
        try:
            return self.cats[k]
        except KeyError:
            raise RawError(f"unknown category {k}") from None

    def decode(self, v):
        if isinstance(v, dict) and len(v) == 1 and next(iter(v)) in _TAGS:
            tag, body = next(iter(v.items()))
            if tag == "cat":
                self.cat(body)
                return ("cat", body)
            if tag == "functor":
                return self.functor(body)
            if tag == "nat":
                return self.nat(body)
            raise RawError(f"tag {tag} does not belong to a finset bundle")
        if isinstance(v, dict):
            return {k: self.decode(x) for k, x in v.items()}
        if isinstance(v, list):
            return [self.decode(x) for x in v]
        return v

    def functor(self, d: dict) -> RawFunctor:
        A, B = self.cat(d["src"]), self.cat(d["tgt"])
        om, mm = d["obj_map"], d["mor_map"]
        if set(om) != set(A.objects) or set(mm) != set(A.mors):
            raise RawError("functor map is not total")
        for m, (s, t) in A.mors.items():
            if mm[m] not in B.mors or B.mors[mm[m]] != (om[s], om[t]):
                raise RawError(f"functor sends {m} to an ill-typed morphism")
        for o, i in A.ident.items():
            if mm[i] != B.ident[om[o]]:
                raise RawError("functor does not preserve identities")
        for (g, f), h in A.comp.items():
            if B.compose(mm[g], mm[f]) != mm[h]:
                raise RawError("functor does not preserve composition")
        return RawFunctor(d["src"], d["tgt"], tuple(sorted(om.items())), tuple(sorted(mm.items())))

    def nat(self, d: dict) -> RawNat:
        F, G = self.functor(d["src"]), self.functor(d["tgt"])
        if (F.A, F.B) != (G.A, G.B):
            raise RawError("natural transformation between non-parallel functors")
        A, B = self.cat(F.A), self.cat(F.B)
        c = d["components"]
        if set(c) != set(A.objects):
            raise RawError("components are not total")
        fo, go, fm, gm = F.o, G.o, F.m, G.m
        for o in A.objects:
            if c[o] not in B.mors or B.mors[c[o]] != (fo[o], go[o]):
                raise RawError(f"component at {o} is ill-typed")
        for m, (s, t) in A.mors.items():
            if B.compose(gm[m], c[s]) != B.compose(c[t], fm[m]):
                raise RawError(f"naturality fails at {m}")
        return RawNat(F, G, tuple(sorted(c.items())))

    # 2-category operations

    def src(self, f: RawFunctor):
        return ("cat", f.A)

    def tgt(self, f: RawFunctor):
        return ("cat", f.B)

    def dom2(self, a: RawNat):
        return a.F

    def cod2(self, a: RawNat):
        return a.G

    def id1(self, x):
        C = self.cat(x[1])
        return RawFunctor(x[1], x[1], tuple(sorted((o, o) for o in C.objects)), tuple(sorted((m, m) for m in C.mors)))

    def compose1(self, g: RawFunctor, f: RawFunctor) -> RawFunctor:
        if f.B != g.A:
            raise RawError("1-cells are not composable")
        go, gm = g.o, g.m
        return RawFunctor(f.A, g.B, tuple((o, go[x]) for o, x in f.om), tuple((m, gm[x]) for m, x in f.mm))

    def id2(self, f: RawFunctor) -> RawNat:
        B = self.cat(f.B)
        return RawNat(f, f, tuple((o, B.ident[x]) for o, x in f.om))

    def vcomp(self, b: RawNat, a: RawNat) -> RawNat:
        if a.G != b.F:
            raise RawError("2-cells are not composable")
        B = self.cat(a.F.B)
        bc = b.c
        return RawNat(a.F, b.G, tuple((o, B.compose(bc[o], x)) for o, x in a.comp))

    def whisker_l(self, h: RawFunctor, a: RawNat) -> RawNat:
        hm = h.m
        return RawNat(self.compose1(h, a.F), self.compose1(h, a.G), tuple((o, hm[x]) for o, x in a.comp))

    def whisker_r(self, a: RawNat, h: RawFunctor) -> RawNat:
        ac = a.c
        return RawNat(self.compose1(a.F, h), self.compose1(a.G, h), tuple((o, ac[x]) for o, x in h.om))

    # membership, decided directly

    def _ff(self, f: RawFunctor) -> bool:
        A, B = self.cat(f.A), self.cat(f.B)
        fo, fm = f.o, f.m
        for a in A.objects:
            for b in A.objects:
                image = [fm[m] for m in A.hom(a, b)]
                if len(set(image)) != len(image) or set(image) != set(B.hom(fo[a], fo[b])):
                    return False
        return True

    def in_J(self, f: RawFunctor) -> bool:
        B = self.cat(f.B)
        fo = f.o
        if self.cover == "identities":
            if f.A != f.B or any(k != v for k, v in fo.items()):
                return False
        elif set(fo.values()) != set(B.objects):
            return False
        return self._ff(f)

    def in_W(self, f: RawFunctor) -> bool:
        if not self._ff(f):
            return False
        B = self.cat(f.B)
        image = set(f.o.values())
        return all(
            b in image or any(B.invertible(m) for a in image for m in B.hom(a, b))
            for b in B.objects
        )


class RawWindow:
    """A finite window from its tables, with J listed in the instance."""

    kind = "window"

    def __init__(self, instance: dict, extra: dict):
        self.objects = list(instance["objects"])
        self.ones = {c["id"]: (c["src"], c["tgt"]) for c in instance["one_cells"]}
        self.twos = {c["id"]: (c["src"], c["tgt"]) for c in instance["two_cells"]}
        t = instance["tables"]
        self.i1 = dict(t["identities"]["one"])
        self.i2 = dict(t["identities"]["two"])
        self.c1 = {(g, f): h for g, f, h in t["compose1"]}
        self.vc = {(b, a): c for b, a, c in t["vcomp"]}
        self.wl = {(h, a): c for h, a, c in t["whisker_l"]}
        self.wr = {(a, h): c for a, h, c in t["whisker_r"]}
        self.J = set(instance.get("coverage", ()))
        self._w: dict = {}

    def decode(self, v):
        if isinstance(v, dict) and len(v) == 1 and next(iter(v)) in _TAGS:
            tag, body = next(iter(v.items()))
            table = {"obj": set(self.objects), "one": self.ones, "two": self.twos}.get(tag)
            if table is None or body not in table:
                raise RawError(f"unknown {tag} {body!r}")
            return (tag, body)
        if isinstance(v, dict):
            return {k: self.decode(x) for k, x in v.items()}
        if isinstance(v, list):
            return [self.decode(x) for x in v]
        return v

    def _get(self, table, key, what):
        try:
            return table[key]
        except KeyError:
            raise RawError(f"{what} of {key} undefined") from None

    def src(self, f):
        return ("obj", self.ones[f[1]][0])

    def tgt(self, f):
        return ("obj", self.ones[f[1]][1])

    def dom2(self, a):
        return ("one", self.twos[a[1]][0])

    def cod2(self, a):
        return ("one", self.twos[a[1]][1])

    def id1(self, x):
        return ("one", self.i1[x[1]])

    def id2(self, f):
        return ("two", self.i2[f[1]])

    def compose1(self, g, f):
        return ("one", self._get(self.c1, (g[1], f[1]), "compose1"))

    def vcomp(self, b, a):
        return ("two", self._get(self.vc, (b[1], a[1]), "vcomp"))

    def whisker_l(self, h, a):
        return ("two", self._get(self.wl, (h[1], a[1]), "whisker_l"))

    def whisker_r(self, a, h):
        return ("two", self._get(self.wr, (a[1], h[1]), "whisker_r"))

    def _hom(self, x, y):
        return [c for c, st in self.ones.items() if st == (x, y)]

    def _cells(self, f, g):
        return [c for c, st in self.twos.items() if st == (f, g)]

    def _iso(self, f, g) -> bool:
        for a in self._cells(f, g):
            for b in self._cells(g, f):
                if self.vc.get((b, a)) == self.i2[f] and self.vc.get((a, b)) == self.i2[g]:
                    return True
        return False

    def in_J(self, f) -> bool:
        return f[1] in self.J

    def in_W(self, f) -> bool:
        q = f[1]
        if q in self._w:
            return self._w[q]
        u, y = self.ones[q]
        ok = True
        for z in self.objects:
            hs = self._hom(z, u)
            for a in hs:
                for b in hs:
                    image = [self.wl[(q, c)] for c in self._cells(a, b)]
                    if len(set(image)) != len(image) or set(image) != set(self._cells(self.c1[(q, a)], self.c1[(q, b)])):
                        ok = False
        if ok:
            ok = any(
                self._iso(self.c1[(q, s)], cov)
                for cov in sorted(self.J)
                if self.ones[cov][1] == y
                for s in self._hom(self.ones[cov][0], u)
            )
        self._w[q] = ok
        return ok


# --------------------------------------------------------------------------
# per-kind checks


class _Checker:
    def __init__(self, R):
        self.R = R
        self.errs: list[str] = []

    def need(self, cond: bool, what: str) -> None:
        if not cond:
            self.errs.append(what)

    def boundary(self, a, f, g, name: str) -> bool:
        ok = self.R.dom2(a) == f and self.R.cod2(a) == g
        self.need(ok, f"{name} has the wrong boundary")
        return ok

    def inverse(self, a, b, name: str) -> None:
        R = self.R
        ok = R.dom2(b) == R.cod2(a) and R.cod2(b) == R.dom2(a)
        ok = ok and R.vcomp(b, a) == R.id2(R.dom2(a)) and R.vcomp(a, b) == R.id2(R.cod2(a))
        self.need(ok, f"{name} is not inverted by {name}_inv")

    def leg(self, f, x, y, name: str) -> bool:
        ok = self.R.src(f) == x and self.R.tgt(f) == y
        self.need(ok, f"{name} has the wrong source or target")
        return ok


def _check_square(c: _Checker, d: dict, q: str, leg: str, in_class) -> None:
    R = c.R
    if not (c.leg(d["top"], d["corner"], R.src(d[q]), "top") and c.leg(d[leg], d["corner"], R.src(d["f"]), leg)):
        return
    lhs, rhs = R.compose1(d[q], d["top"]), R.compose1(d["f"], d[leg])
    if c.boundary(d["cell"], lhs, rhs, "cell"):
        c.inverse(d["cell"], d["cell_inv"], "cell")
    c.need(in_class(d[leg]), f"{leg} not in {'J' if in_class == R.in_J else 'W'}")


def _check_splitting(c: _Checker, d: dict, f) -> None:
    R = c.R
    if not (c.leg(d["cover"], R.src(d["cover"]), R.tgt(f), "cover") and c.leg(d["section"], R.src(d["cover"]), R.src(f), "section")):
        return
    fs = R.compose1(f, d["section"])
    if c.boundary(d["cell"], fs, d["cover"], "splitting cell"):
        c.inverse(d["cell"], d["cell_inv"], "cell")
    c.need(R.in_J(d["cover"]), "cover not in J")


def _check_span(c: _Checker, S: dict, name: str) -> bool:
    R = c.R
    ok = c.leg(S["w"], S["apex"], S["x"], f"{name}.w") and c.leg(S["f"], S["apex"], S["y"], f"{name}.f")
    if ok:
        c.need(R.in_W(S["w"]), f"{name}: backward leg not in W")
    return ok


def _check_rep(c: _Checker, r: dict, S: dict, T: dict, name: str) -> bool:
    R = c.R
    if not (c.leg(r["p1"], r["v"], S["apex"], f"{name}.p1") and c.leg(r["p2"], r["v"], T["apex"], f"{name}.p2")):
        return False
    a1, a2 = R.compose1(S["w"], r["p1"]), R.compose1(T["w"], r["p2"])
    if c.boundary(r["alpha"], a1, a2, f"{name}.alpha"):
        c.inverse(r["alpha"], r["alpha_inv"], f"{name}.alpha")
    c.boundary(r["beta"], R.compose1(S["f"], r["p1"]), R.compose1(T["f"], r["p2"]), f"{name}.beta")
    c.need(R.in_W(a1), f"{name}: w1 p1 not in W")
    c.need(R.in_W(a2), f"{name}: w2 p2 not in W")
    return True


def _check_equivalence(c: _Checker, d: dict) -> None:
    R = c.R
    S, T, r1, r2, e = d["F1"], d["F2"], d["r1"], d["r2"], d["witness"]
    if not (_check_span(c, S, "F1") and _check_span(c, T, "F2")):
        return
    if not (_check_rep(c, r1, S, T, "r1") and _check_rep(c, r2, S, T, "r2")):
        return
    if not (c.leg(e["q"], e["t"], r1["v"], "q") and c.leg(e["qp"], e["t"], r2["v"], "qp")):
        return
    p1q, p2q = R.compose1(r1["p1"], e["q"]), R.compose1(r1["p2"], e["q"])
    p1qp, p2qp = R.compose1(r2["p1"], e["qp"]), R.compose1(r2["p2"], e["qp"])
    ok1 = c.boundary(e["gamma1"], p1qp, p1q, "gamma1")
    ok2 = c.boundary(e["gamma2"], p2q, p2qp, "gamma2")
    if not (ok1 and ok2):
        return
    c.inverse(e["gamma1"], e["gamma1_inv"], "gamma1")
    c.inverse(e["gamma2"], e["gamma2_inv"], "gamma2")
    lhs = R.vcomp(R.whisker_l(T["w"], e["gamma2"]), R.vcomp(R.whisker_r(r1["alpha"], e["q"]), R.whisker_l(S["w"], e["gamma1"])))
    c.need(lhs == R.whisker_r(r2["alpha"], e["qp"]), "alpha pasting: (w2 gamma2)(alpha q)(w1 gamma1) = alpha' q'")
    lhs = R.vcomp(R.whisker_l(T["f"], e["gamma2"]), R.vcomp(R.whisker_r(r1["beta"], e["q"]), R.whisker_l(S["f"], e["gamma1"])))
    c.need(lhs == R.whisker_r(r2["beta"], e["qp"]), "beta pasting: (f2 gamma2)(beta q)(f1 gamma1) = beta' q'")
    c.need(R.in_W(R.compose1(S["w"], p1q)), "w1 p1 q not in W")
    c.need(R.in_W(R.compose1(S["w"], p1qp)), "w1 p1' q' not in W")


def _check_composite(c: _Checker, sq: dict, G: dict, F: dict, H: dict, name: str) -> None:
    """``H = G∘F`` along the BF3 square ``sq`` for ``(w_G, f_F)``."""
    R = c.R
    c.need(sq["w"] == G["w"] and sq["f"] == F["f"], f"{name}: square is not on (w_G, f_F)")
    _check_square(c, sq, "w", "v", R.in_W)
    if not c.errs:
        c.need(H["apex"] == sq["corner"] and H["w"] == R.compose1(F["w"], sq["v"]) and H["f"] == R.compose1(G["f"], sq["top"]),
               f"{name}: composite span does not match the square")


def check_certificate(R, kind: str, d: dict) -> list[str]:
    c = _Checker(R)
    try:
        if kind == "filler":
            _check_square(c, d, "q", "left", R.in_J)
            c.need(R.in_J(d["q"]), "q not in J")
        elif kind == "splitting":
            _check_splitting(c, d, d["f"])
        elif kind == "bf1":
            f, g = d["f"], d["g"]
            if c.leg(g, R.tgt(f), R.src(f), "g"):
                if c.boundary(d["eta"], R.id1(R.src(f)), R.compose1(g, f), "eta"):
                    c.inverse(d["eta"], d["eta_inv"], "eta")
                if c.boundary(d["eps"], R.compose1(f, g), R.id1(R.tgt(f)), "eps"):
                    c.inverse(d["eps"], d["eps_inv"], "eps")
            c.need(R.in_W(f), "equivalence not in W")
        elif kind == "bf2_composite":
            c.need(R.compose1(d["w2"], d["w1"]) == d["composite"], "composite != w2∘w1")
            _check_splitting(c, d, d["composite"])
            for k in ("w1", "w2", "composite"):
                c.need(R.in_W(d[k]), f"{k} not in W")
        elif kind == "bf2_iso":
            if c.boundary(d["a"], d["w"], d["f"], "a"):
                c.inverse(d["a"], d["a_inv"], "a")
            _check_splitting(c, d, d["f"])
            c.need(R.in_W(d["w"]), "w not in W")
            c.need(R.in_W(d["f"]), "f not in W")
        elif kind == "bf3":
            _check_square(c, d, "w", "v", R.in_W)
            c.need(R.in_W(d["w"]), "w not in W")
        elif kind == "bf4":
            w, f, g, v = d["w"], d["f"], d["g"], d["v"]
            if c.boundary(d["alpha"], R.compose1(w, f), R.compose1(w, g), "alpha") and \
                    c.boundary(d["beta"], R.compose1(f, v), R.compose1(g, v), "beta"):
                c.need(R.whisker_r(d["alpha"], v) == R.whisker_l(w, d["beta"]), "alpha * v = w * beta")
                if "beta_inv" in d:
                    c.inverse(d["beta"], d["beta_inv"], "beta")
            c.need(R.in_W(v), "v not in W")
        elif kind == "equivalence":
            _check_equivalence(c, d)
        elif kind == "iso_rep":
            if _check_span(c, d["F1"], "F1") and _check_span(c, d["F2"], "F2"):
                if _check_rep(c, d["rep"], d["F1"], d["F2"], "rep") and not c.errs:
                    c.inverse(d["rep"]["beta"], d["beta_inv"], "beta")
        elif kind == "localisation":
            F, G = d["F"], d["G"]
            for name in ("F", "G", "GF", "FG"):
                _check_span(c, d[name], name)
            if not c.errs:
                _check_composite(c, d["square_GF"], G, F, d["GF"], "GF")
                _check_composite(c, d["square_FG"], F, G, d["FG"], "FG")
            if not c.errs:
                idx = {"x": F["x"], "y": F["x"], "apex": F["x"], "w": R.id1(F["x"]), "f": R.id1(F["x"])}
                idy = {"x": F["y"], "y": F["y"], "apex": F["y"], "w": R.id1(F["y"]), "f": R.id1(F["y"])}
                if _check_rep(c, d["unit"], idx, d["GF"], "unit") and not c.errs:
                    c.inverse(d["unit"]["beta"], d["unit_beta_inv"], "unit.beta")
                if _check_rep(c, d["counit"], d["FG"], idy, "counit") and not c.errs:
                    c.inverse(d["counit"]["beta"], d["counit_beta_inv"], "counit.beta")
        else:
            c.errs.append(f"unknown certificate kind {kind!r}")
    except (RawError, KeyError, TypeError) as e:
        c.errs.append(f"malformed: {e}")
    return c.errs


@dataclass
class BundleReport:
    checked: int = 0
    violations: list[tuple] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations


def validate_bundle(bundle: dict, instance: dict) -> BundleReport:
    """Re-check a bundle against the instance file contents; lists every violation."""
    rep = BundleReport()
    if bundle.get("schema") != BUNDLE_SCHEMA:
        rep.violations.append((None, "bundle", f"expected schema {BUNDLE_SCHEMA!r}"))
        return rep
    if bundle.get("digest") != digest(bundle):
        rep.violations.append((None, "bundle", "digest does not match the contents"))
    if bundle.get("instance_hash") != canonical_hash(instance):
        rep.violations.append((None, "bundle", "instance hash does not match the instance"))
    try:
        R = (RawFinset if bundle["instance_kind"] == "finset" else RawWindow)(instance, bundle.get("categories", {}))
    except (RawError, KeyError, TypeError) as e:
        rep.violations.append((None, "bundle", f"cannot evaluate instance: {e}"))
        return rep
    for i, cert in enumerate(bundle.get("certificates", [])):
        rep.checked += 1
        try:
            data = R.decode(cert["data"])
        except (RawError, KeyError, TypeError) as e:
            rep.violations.append((i, cert.get("kind"), f"malformed: {e}"))
            continue
        for msg in check_certificate(R, cert["kind"], data):
            rep.violations.append((i, cert["kind"], msg))
    return rep


# --------------------------------------------------------------------------
# mutation


def _cell_sites(data, tags, path=()):
    """Paths to encoded cells with one of ``tags``, in key order."""
    if isinstance(data, dict):
        if len(data) == 1 and next(iter(data)) in tags:
            yield path
            return
        for k in sorted(data):
            yield from _cell_sites(data[k], tags, path + (k,))
    elif isinstance(data, list):
        for i, x in enumerate(data):
            yield from _cell_sites(x, tags, path + (i,))


def _bump(node: dict, instance: dict, cats: dict) -> bool:
    """Change one entry of an encoded cell in place; False if impossible."""
    if "two" in node or "one" in node:
        tag = "two" if "two" in node else "one"
        ids = [c["id"] for c in instance["two_cells" if tag == "two" else "one_cells"]]
        if len(ids) < 2:
            return False
        node[tag] = ids[(ids.index(node[tag]) + 1) % len(ids)]
        return True
    if "nat" in node:
        nat = node["nat"]
        mors = [m["id"] for m in cats[nat["src"]["tgt"]]["morphisms"]]
        if len(mors) < 2:
            return False
        o = sorted(nat["components"])[0]
        nat["components"][o] = mors[(mors.index(nat["components"][o]) + 1) % len(mors)]
        return True
    fun = node["functor"]
    objs = cats[fun["tgt"]]["objects"]
    if len(objs) < 2 or not fun["obj_map"]:
        keys = sorted(cats)
        fun["tgt"] = keys[(keys.index(fun["tgt"]) + 1) % len(keys)]
        return len(keys) > 1
    o = sorted(fun["obj_map"])[0]
    fun["obj_map"][o] = objs[(objs.index(fun["obj_map"][o]) + 1) % len(objs)]
    return True


def mutate(bundle: dict, index: int, instance: dict, site: int = 0, reseal: bool = False) -> dict | None:
    """Copy of ``bundle`` with one entry of one cell of certificate ``index`` changed.

    2-cells are tried first (a component of a natural transformation moves
    to the next morphism of its target, a window 2-cell id to the next id),
    then 1-cells (an object image, or a window 1-cell id; a functor into a
    one-object category gets another target category).  ``site`` picks
    the starting cell.  Entries that cannot change are skipped; returns None
    if nothing can be changed.
    """
    b = dict(bundle)
    b["certificates"] = list(bundle["certificates"])
    b["certificates"][index] = json.loads(json.dumps(bundle["certificates"][index]))
    data = b["certificates"][index]["data"]
    cats = {canonical_hash(d): d for d in instance.get("categories", [])}
    cats.update(bundle.get("categories", {}))
    for tags in (("nat", "two"), ("functor", "one")):
        sites = list(_cell_sites(data, tags))
        for n in range(len(sites)):
            node = data
            for k in sites[(site + n) % len(sites)]:
                node = node[k]
            if _bump(node, instance, cats):
                return seal(b) if reseal else b
    return None


@dataclass
class MutationReport:
    total: int = 0
    rejected: int = 0
    rejected_by_equations: int = 0
    immutable: list[int] = field(default_factory=list)
    survivors: list[int] = field(default_factory=list)


def mutation_suite(bundle: dict, instance: dict) -> MutationReport:
    """Mutate each certificate once and re-validate it.

    ``rejected`` counts mutants the validator refuses (digest included);
    ``rejected_by_equations`` counts those refused after resealing the
    digest, i.e. by the mathematical checks alone.
    """
    rep = MutationReport()
    R = (RawFinset if bundle["instance_kind"] == "finset" else RawWindow)(instance, bundle.get("categories", {}))
    for i in range(len(bundle["certificates"])):
        m = mutate(bundle, i, instance)
        if m is None:
            rep.immutable.append(i)
            continue
        rep.total += 1
        cert = m["certificates"][i]
        try:
            errs = check_certificate(R, cert["kind"], R.decode(cert["data"]))
        except (RawError, KeyError, TypeError) as e:
            errs = [f"malformed: {e}"]
        if errs:
            rep.rejected_by_equations += 1
        # the digest covers every certificate, so it fails exactly when the
        # mutant differs from the original
        if errs or cert != bundle["certificates"][i]:
            rep.rejected += 1
        else:
            rep.survivors.append(i)
    return rep
