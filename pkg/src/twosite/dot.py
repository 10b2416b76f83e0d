"""DOT rendering of certificate diagrams.

Convention: every 1-cell edge ``a -> b`` is drawn through a small point node
``m`` placed at its midpoint (``a -> m`` without arrowhead, then ``m -> b``
carrying the label).  A 2-cell is a dashed, labelled edge from the midpoint
of the first 1-cell of its domain path to the midpoint of the first 1-cell of
its codomain path.  Identity 1-cells of a path are still drawn, so every
2-cell has both endpoints.
"""

from __future__ import annotations

from .core import TwoCategory
from .finset import Cat2, FiniteCategory, FiniteFunctor, FiniteNatTrans

DOT_SCHEMA = "twosite-dot/1"


def _quote(s: str) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


class Diagram:
    """Nodes, 1-cell edges and 2-cell edges, emitted in insertion order."""

    def __init__(self, name: str):
        self.name = name
        self.nodes: dict[str, str] = {}
        self.edges: list[tuple[str, str, str, str]] = []
        self.cells: list[tuple[str, str, str]] = []

    def node(self, key: str, label: str) -> str:
        self.nodes.setdefault(key, label)
        return key

    def edge(self, src: str, tgt: str, label: str) -> str:
        mid = f"m{len(self.edges)}"
        self.edges.append((mid, src, tgt, label))
        return mid

    def cell(self, dom_edge: str, cod_edge: str, label: str) -> None:
        self.cells.append((dom_edge, cod_edge, label))

    def to_dot(self) -> str:
        out = [f"// schema: {DOT_SCHEMA}", f"digraph {_quote(self.name)} {{", "  rankdir=LR;"]
        for key, label in self.nodes.items():
            out.append(f"  {_quote(key)} [label={_quote(label)}];")
        for mid, src, tgt, label in self.edges:
            out.append(f"  {mid} [shape=point, width=0.05];")
            out.append(f"  {_quote(src)} -> {mid} [arrowhead=none];")
            out.append(f"  {mid} -> {_quote(tgt)} [label={_quote(label)}];")
        for dom, cod, label in self.cells:
            out.append(f"  {dom} -> {cod} [style=dashed, constraint=false, label={_quote(label)}];")
        out.append("}")
        return "\n".join(out) + "\n"


# --------------------------------------------------------------------------
# decoding encoded cells into labels


class Labeller:
    """Turns encoded certificate cells back into the engine's labels."""

    def __init__(self, K: TwoCategory, categories: dict | None = None):
        self.K = K
        self.cats: dict[str, FiniteCategory] = {}
        if isinstance(K, Cat2):
            self.cats = {c.key: c for c in K.window}
            for key, d in (categories or {}).items():
                self.cats[key] = FiniteCategory.from_dict(d)

    def __call__(self, node) -> str:
        if not isinstance(node, dict) or len(node) != 1:
            raise ValueError(f"not an encoded cell: {node!r}")
        (tag, v), = node.items()
        if tag in ("obj", "one", "two"):
            return str(v)
        if tag == "cat":
            return self.cats[v].name
        if tag == "functor":
            return self.K.label(FiniteFunctor.from_dict(v, self.cats))
        if tag == "nat":
            return self.K.label(FiniteNatTrans.from_dict(v, self.cats))
        raise ValueError(f"unknown cell tag {tag!r}")

    def ends(self, node) -> tuple[str, str]:
        """Source and target object labels of an encoded 1-cell."""
        (tag, v), = node.items()
        if tag == "one":
            return str(self.K.src(v)), str(self.K.tgt(v))
        if tag == "functor":
            F = FiniteFunctor.from_dict(v, self.cats)
            return F.src.name, F.tgt.name
        raise ValueError(f"not an encoded 1-cell: {node!r}")


# --------------------------------------------------------------------------
# shapes


def _span(D: Diagram, L: Labeller, S: dict, prefix: str) -> tuple[str, str, str, str]:
    """Draw ``x <- apex -> y``; returns the node keys and the two leg midpoints."""
    x, y = D.node(L(S["x"]), L(S["x"])), D.node(L(S["y"]), L(S["y"]))
    u = D.node(f"{prefix}:{L(S['apex'])}", L(S["apex"]))
    return x, y, D.edge(u, x, L(S["w"])), D.edge(u, y, L(S["f"]))


def _rep(D: Diagram, L: Labeller, S: dict, T: dict, r: dict, prefix: str) -> tuple[str, str, str]:
    """Draw a 2-cell rep between spans; returns the mediator node and its leg midpoints."""
    _, _, w1, f1 = _span(D, L, S, prefix + "1")
    _, _, w2, f2 = _span(D, L, T, prefix + "2")
    v = D.node(f"{prefix}v:{L(r['v'])}", L(r["v"]))
    m1 = D.edge(v, f"{prefix}1:{L(S['apex'])}", L(r["p1"]))
    m2 = D.edge(v, f"{prefix}2:{L(T['apex'])}", L(r["p2"]))
    D.cell(w1, w2, L(r["alpha"]))
    D.cell(f1, f2, L(r["beta"]))
    return v, m1, m2


def _square(D: Diagram, L: Labeller, d: dict, q: str, leg: str) -> None:
    (u_obj, x_obj), (y_obj, _) = L.ends(d[q]), L.ends(d["f"])
    x, u, y = D.node("x", f"x = {x_obj}"), D.node("u", f"u = {u_obj}"), D.node("y", f"y = {y_obj}")
    p = D.node("p", f"corner = {L(d['corner'])}")
    top = D.edge(p, u, L(d["top"]))
    D.edge(u, x, L(d[q]))
    lft = D.edge(p, y, L(d[leg]))
    D.edge(y, x, L(d["f"]))
    D.cell(top, lft, L(d["cell"]))


def render_certificate(kind: str, data: dict, L: Labeller, name: str = "certificate") -> str:
    D = Diagram(name)
    if kind in ("filler", "bf3"):
        _square(D, L, data, "q" if kind == "filler" else "w", "left" if kind == "filler" else "v")
    elif kind in ("splitting", "bf2_composite", "bf2_iso"):
        f = data.get("f", data.get("composite"))
        (s_obj, c_obj), (_, x_obj) = L.ends(data["section"]), L.ends(f)
        s, c, x = D.node("s", f"s = {s_obj}"), D.node("c", f"c = {c_obj}"), D.node("x", f"x = {x_obj}")
        sec = D.edge(s, c, L(data["section"]))
        D.edge(c, x, L(f))
        cov = D.edge(s, x, L(data["cover"]))
        D.cell(sec, cov, L(data["cell"]))
    elif kind == "bf1":
        a_obj, b_obj = L.ends(data["f"])
        a, b = D.node("a", f"a = {a_obj}"), D.node("b", f"b = {b_obj}")
        f = D.edge(a, b, L(data["f"]))
        g = D.edge(b, a, L(data["g"]))
        D.cell(f, g, L(data["eta"]))
        D.cell(g, f, L(data["eps"]))
    elif kind == "bf4":
        (z_obj, y_obj), (_, x_obj), (t_obj, _) = L.ends(data["f"]), L.ends(data["w"]), L.ends(data["v"])
        z, y = D.node("z", f"z = {z_obj}"), D.node("y", f"y = {y_obj}")
        x, t = D.node("x", f"x = {x_obj}"), D.node("t", f"t = {t_obj}")
        ef, eg = D.edge(z, y, L(data["f"])), D.edge(z, y, L(data["g"]))
        D.edge(y, x, L(data["w"]))
        D.edge(t, z, L(data["v"]))
        D.cell(ef, eg, f"{L(data['alpha'])} / {L(data['beta'])}")
    elif kind in ("iso_rep", "equivalence"):
        S, T = data["F1"], data["F2"]
        if kind == "iso_rep":
            _rep(D, L, S, T, data["rep"], "r")
        else:
            e = data["witness"]
            _, a1, b1 = _rep(D, L, S, T, data["r1"], "r")
            _, a2, b2 = _rep(D, L, S, T, data["r2"], "r'")
            t = D.node("t:" + L(e["t"]), L(e["t"]))
            D.edge(t, f"rv:{L(data['r1']['v'])}", L(e["q"]))
            D.edge(t, f"r'v:{L(data['r2']['v'])}", L(e["qp"]))
            D.cell(a2, a1, L(e["gamma1"]))
            D.cell(b1, b2, L(e["gamma2"]))
    elif kind == "localisation":
        for span in ("F", "G", "GF", "FG"):
            _span(D, L, data[span], span)
        for name, span, end in (("unit", "GF", "x"), ("counit", "FG", "y")):
            r = data[name]
            v = D.node(f"{name}:{L(r['v'])}", L(r["v"]))
            to_id = D.node(L(data["F"][end]), L(data["F"][end]))
            a = D.edge(v, to_id, L(r["p1" if name == "unit" else "p2"]))
            b = D.edge(v, f"{span}:{L(data[span]['apex'])}", L(r["p2" if name == "unit" else "p1"]))
            D.cell(a, b, f"{name}: {L(r['alpha'])} / {L(r['beta'])}")
    else:
        raise ValueError(f"no diagram for certificate kind {kind!r}")
    return D.to_dot()
