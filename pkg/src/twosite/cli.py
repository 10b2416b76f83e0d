"""Command-line front-end.

Every command writes a JSON report (to ``--out`` or stdout) carrying the
instance hash, and a short human summary on stderr.  Exit status: 0 pass,
1 counterexample, 2 budget exhausted, 3 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .bf import run_theorem_3_1
from .certificates import Certificate, make_bundle, validate_bundle
from .core import FfWitness, FiniteWindow2Cat, NotFound, SearchBudget, dump_json, materialize, validate_window, window_to_dict
from .dot import Labeller, render_certificate
from .errors import TwoSiteError
from .fractions import (
    enumerate_hom_category,
    find_iso_rep,
    iso_rep_certificate,
    is_equivalence_in_localisation,
    localisation_certificate,
    localise_one_cell,
)
from .instance import COVERAGES, Instance, find_object, find_one_cell, fixture_instance, instance_of, load_instance
from .site import (
    coverage_class,
    is_cofinal,
    is_weak_equivalence,
    verify_coverage_axioms,
)
from .slice import VARIANTS, SliceCat, slice_coverage

REPORT_SCHEMA = "twosite-report/1"
BUDGET_ENV = "TWOSITE_BUDGET"

PASS, COUNTEREXAMPLE, EXHAUSTED, INPUT_ERROR = 0, 1, 2, 3
STATUS = {PASS: "pass", COUNTEREXAMPLE: "counterexample", EXHAUSTED: "budget_exhausted"}


class InputError(Exception):
    pass


def _labels(K, v):
    """JSON-ready form of a result with every cell replaced by its label."""
    if isinstance(v, (list, tuple)):
        return [_labels(K, x) for x in v]
    if isinstance(v, dict):
        return {str(k): _labels(K, x) for k, x in v.items()}
    if isinstance(v, (str, int, bool)) or v is None:
        return v
    if isinstance(v, NotFound):
        return {"not_found": v.reason, "exhausted": v.exhausted}
    if isinstance(v, FfWitness):
        return {"kind": v.kind, "z": K.label(v.z), "f": K.label(v.f), "g": K.label(v.g), "cells": [K.label(c) for c in v.cells]}
    return K.label(v)


def _status(counterexamples: bool, unverified: bool) -> int:
    if counterexamples:
        return COUNTEREXAMPLE
    return EXHAUSTED if unverified else PASS


def _budget(args) -> SearchBudget:
    cand, depth = args.budget_candidates, args.budget_depth
    env = os.environ.get(BUDGET_ENV, "")
    if env:
        parts = env.split(":")
        try:
            if cand is None and parts[0] not in ("", "none"):
                cand = int(parts[0])
            if depth is None and len(parts) > 1:
                depth = int(parts[1])
        except ValueError:
            raise InputError(f"{BUDGET_ENV} must look like CANDIDATES[:DEPTH], got {env!r}") from None
    if (cand is not None and cand <= 0) or (depth is not None and depth < 0):
        raise InputError("budgets must be positive")
    return SearchBudget(cand, 2 if depth is None else depth)


def _instance(args, path_attr: str = "instance") -> Instance:
    path = getattr(args, path_attr)
    if path is None:
        return fixture_instance(args.coverage or "jt_surjections")
    inst = load_instance(path, args.coverage)
    if isinstance(inst.K, FiniteWindow2Cat):
        rep = validate_window(inst.K)
        if not rep.valid:
            raise InputError(f"window violates the 2-category laws: {rep.violations[0]}")
    return inst


def _report(inst: Instance, command: str, budget: SearchBudget, status: int, result: dict) -> dict:
    return {
        "schema": REPORT_SCHEMA,
        "command": command,
        "instance_hash": inst.hash,
        "coverage": inst.site.J.name,
        "budget": {"max_candidates": budget.max_candidates, "max_depth": budget.max_depth},
        "status": STATUS[status],
        "result": result,
    }


def _write(path, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _emit(args, report: dict, inst: Instance | None = None, certs: list[Certificate] | None = None) -> None:
    _write(args.out, dump_json(report))
    if getattr(args, "cert", None) and inst is not None and certs is not None:
        _write(args.cert, dump_json(make_bundle(inst.K, inst.data, certs)))


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


def _axiom_json(K, r) -> dict:
    return {"checked": r.checked, "counterexamples": _labels(K, r.counterexamples), "unverified": _labels(K, r.unverified)}


# --------------------------------------------------------------------------
# commands


def cmd_check_site(args) -> int:
    inst, budget = _instance(args), _budget(args)
    rep = verify_coverage_axioms(inst.site, budget)
    status = _status(any(r.counterexamples for r in rep.results.values()), rep.exhausted)
    certs = [Certificate("filler", {"q": sq.q, "f": sq.f, "corner": sq.corner, "top": sq.top, "left": sq.left,
                                    "cell": sq.cell, "cell_inv": sq.cell_inv}) for sq in rep["ii"].witnesses]
    result = {k: _axiom_json(inst.K, r) for k, r in rep.results.items()}
    _emit(args, _report(inst, "check-site", budget, status, result), inst, certs)
    for k, r in rep.results.items():
        _say(f"coverage axiom ({k}): {r.checked} checked, {len(r.counterexamples)} counterexamples, {len(r.unverified)} unverified")
    return status


def cmd_check_bf(args) -> int:
    inst, budget = _instance(args), _budget(args)
    rep = run_theorem_3_1(inst.site, budget)
    parts = dict(rep.reports)
    parts["J in W"] = rep.j_in_w
    status = _status(any(r.counterexamples for r in parts.values()), rep.exhausted)
    result = {k: _axiom_json(inst.K, r) for k, r in parts.items()}
    _emit(args, _report(inst, "check-bf", budget, status, result), inst, rep.certificates)
    for k, r in parts.items():
        _say(f"{k}: {r.checked} checked, {len(r.counterexamples)} counterexamples, {len(r.unverified)} unverified")
    return status


def cmd_we(args) -> int:
    inst, budget = _instance(args), _budget(args)
    K = inst.K
    f = find_one_cell(K, args.cell)
    v = is_weak_equivalence(inst.site, f, budget)
    result = {"cell": args.cell, "kind": v.kind, "ff": v.ff.ff, "ff_witness": _labels(K, v.ff.witness)}
    certs = []
    if v.splitting is not None:
        sp = v.splitting
        result["splitting"] = _labels(K, {"cover": sp.cover, "section": sp.section, "cell": sp.cell})
        certs.append(Certificate("splitting", {"f": sp.f, "cover": sp.cover, "section": sp.section,
                                               "cell": sp.cell, "cell_inv": sp.cell_inv}))
        if args.localise:
            li = is_equivalence_in_localisation(localise_one_cell(K, f), inst.site, budget)
            if li:
                certs.append(localisation_certificate(K, li))
                result["localisation_inverse"] = _labels(K, {"apex": li.G.apex, "w": li.G.w, "f": li.G.f})
            else:
                result["localisation_inverse"] = _labels(K, li)
    status = PASS if v else (EXHAUSTED if v.exhausted else COUNTEREXAMPLE)
    _emit(args, _report(inst, "we", budget, status, result), inst, certs)
    msg = f"{args.cell}: {v.kind}"
    if v.ff.witness is not None:
        msg += f" ({v.ff.witness.kind} at {K.label(v.ff.witness.z)})"
    _say(msg)
    return status


def cmd_homcat(args) -> int:
    inst, budget = _instance(args), _budget(args)
    K, site = inst.K, inst.site
    V = coverage_class(site)
    cof = is_cofinal(V, site.W, site, budget)
    xs = [find_object(K, args.x)] if args.x else list(K.objects())
    ys = [find_object(K, args.y)] if args.y else list(K.objects())
    pairs, certs = [], []
    failures = exhausted = False
    for x in xs:
        for y in ys:
            hp = enumerate_hom_category(x, y, site, V, budget)
            failures |= bool(hp.composition_failures)
            exhausted |= hp.exhausted
            counts = dict(hp.counts, composition=len(hp.composition))
            classes = [[_labels(K, [hp.spans[i].apex, hp.spans[i].w, hp.spans[i].f]) for i in c] for c in hp.span_classes]
            pairs.append({"x": K.label(x), "y": K.label(y), "counts": counts, "span_classes": classes,
                          "composition_failures": len(hp.composition_failures)})
            for c in hp.span_classes:
                for i in c[1:]:
                    r = find_iso_rep(hp.spans[c[0]], hp.spans[i], site, budget)
                    if r:
                        certs.append(iso_rep_certificate(K, r))
    status = _status(failures or cof.counterexample is not None, exhausted or cof.exhausted)
    result = {"V": V.name, "V_cofinal_in_W": cof.cofinal, "hom_categories": pairs}
    _emit(args, _report(inst, "homcat", budget, status, result), inst, certs)
    for p in pairs:
        c = p["counts"]
        _say(f"{p['x']} -> {p['y']}: {c['spans']} spans, {c['span_classes']} span classes, {c['two_cell_classes']} 2-cell classes")
    return status


def cmd_slice(args) -> int:
    inst = _instance(args, "base")
    K, site = inst.K, inst.site
    if args.variant == "groupoid" and not getattr(K, "groupoids_only", False):
        _say("note: groupoid slice needs a groupoid backend; rebuilding the instance with groupoids_only")
        if inst.kind != "finset":
            raise InputError("the groupoid slice of a window instance is not supported")
        data = dict(inst.data, groupoids_only=True)
        inst = instance_of(data)
        K, site = inst.K, inst.site
    X = find_object(K, args.over)
    S = SliceCat(K, X, args.variant)
    J = slice_coverage(site, S)
    w = materialize(S, S.name)
    w.extra["coverage"] = [S.label(f) for f in S.one_cells() if f in J]
    w.extra["coverage_name"] = J.name
    w.extra["base_instance_hash"] = inst.hash
    _write(args.out, dump_json(window_to_dict(w)))
    _say(f"slice over {args.over} ({args.variant}): {len(w.objects())} objects, {len(w.one_cell_ids)} 1-cells, "
         f"{len(w.extra['coverage'])} covers")
    return PASS


def cmd_validate_cert(args) -> int:
    inst = _instance(args)
    try:
        bundle = json.loads(Path(args.cert).read_text(encoding="utf-8"))
    except OSError as e:
        raise InputError(f"cannot read {args.cert}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{args.cert} is not JSON: {e}") from None
    rep = validate_bundle(bundle, inst.data)
    status = PASS if rep.valid else COUNTEREXAMPLE
    result = {"checked": rep.checked,
              "violations": [{"certificate": i, "kind": k, "violation": m} for i, k, m in rep.violations]}
    _write(args.out, dump_json(_report(inst, "validate-cert", SearchBudget(), status, result)))
    for i, k, m in rep.violations:
        _say(f"certificate {i} ({k}): {m}" if i is not None else f"bundle: {m}")
    _say(f"{rep.checked} certificates checked, {len(rep.violations)} violations")
    return status


def cmd_render_dot(args) -> int:
    inst = _instance(args)
    try:
        bundle = json.loads(Path(args.cert).read_text(encoding="utf-8"))
        cert = bundle["certificates"][args.index]
    except OSError as e:
        raise InputError(f"cannot read {args.cert}: {e.strerror}") from None
    except (json.JSONDecodeError, KeyError, IndexError, TypeError) as e:
        raise InputError(f"no certificate {args.index} in {args.cert}: {e}") from None
    L = Labeller(inst.K, bundle.get("categories", {}))
    text = render_certificate(cert["kind"], cert["data"], L, f"{cert['kind']}_{args.index}")
    _write(args.dot, text)
    return PASS


# --------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="twosite", description="Check 2-sites and compute their bicategories of fractions.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, instance_flag: str = "--instance"):
        sp.add_argument(instance_flag, dest=instance_flag.lstrip("-"), default=None,
                        help="instance file (finset-window/1 or twocat-window/1); default: the built-in fixture")
        sp.add_argument("--coverage", choices=COVERAGES, default=None, help="coverage for a finset instance")
        sp.add_argument("--budget-candidates", type=int, default=None,
                        help=f"candidate cap per search (default: ${BUDGET_ENV} or exhaustive)")
        sp.add_argument("--budget-depth", type=int, default=None, help="pullback tower depth (default 2)")
        sp.add_argument("--out", default=None, help="report path (default stdout)")

    sp = sub.add_parser("check-site", help="verify the coverage axioms")
    common(sp)
    sp.add_argument("--cert", default=None, help="write filler certificates here")
    sp.set_defaults(func=cmd_check_site)

    sp = sub.add_parser("check-bf", help="check BF1-BF4 for the weak equivalences")
    common(sp)
    sp.add_argument("--cert", default=None, help="write BF certificates here")
    sp.set_defaults(func=cmd_check_bf)

    sp = sub.add_parser("we", help="decide whether a 1-cell is a weak equivalence")
    common(sp)
    sp.add_argument("--cell", required=True, help="1-cell label, e.g. D2_to_1")
    sp.add_argument("--localise", action="store_true", help="also search an inverse span in the localisation")
    sp.add_argument("--cert", default=None, help="write splitting/localisation certificates here")
    sp.set_defaults(func=cmd_we)

    sp = sub.add_parser("homcat", help="present hom-categories of the localisation")
    common(sp)
    sp.add_argument("--x", default=None, help="source object (default: all)")
    sp.add_argument("--y", default=None, help="target object (default: all)")
    sp.add_argument("--cert", default=None, help="write span isomorphism certificates here")
    sp.set_defaults(func=cmd_homcat)

    sp = sub.add_parser("slice", help="materialize a slice as a window file")
    common(sp, "--base")
    sp.add_argument("--over", required=True, help="object to slice over")
    sp.add_argument("--variant", choices=VARIANTS, default="lax")
    sp.set_defaults(func=cmd_slice)

    sp = sub.add_parser("validate-cert", help="re-validate a certificate bundle")
    common(sp)
    sp.add_argument("--cert", required=True)
    sp.set_defaults(func=cmd_validate_cert)

    sp = sub.add_parser("render-dot", help="draw one certificate as a DOT graph")
    common(sp)
    sp.add_argument("--cert", required=True)
    sp.add_argument("--index", type=int, default=0)
    sp.add_argument("--dot", default=None, help="DOT output path (default stdout)")
    sp.set_defaults(func=cmd_render_dot)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return INPUT_ERROR if e.code else PASS
    try:
        return args.func(args)
    except (InputError, TwoSiteError) as e:
        _say(f"error: {e}")
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
