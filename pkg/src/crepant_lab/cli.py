"""Command-line frontend.

Each module is exposed as a subcommand; `pipeline` runs the five-step
decision procedure (cheap recognizers first, triangulation census last).
Exit codes: 0 success, 64 parse/validation error, 65 non-Gorenstein
input, 70 budget exhausted.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from fractions import Fraction

from . import __version__
from .grouptype import (
    BudgetError,
    DEFAULT_BUDGET,
    QuotientType,
    TypeError_,
    enumerate_elements,
    is_gorenstein,
    msc_core,
    parse_type,
    structure_report,
)
from .counting import b_counts, cohomology_dims, ehrhart_eval, ehrhart_poly, mp_count_r4
from .hilbert import first_criterion, hilbert_basis
from .criteria import second_criterion
from . import series as series_mod
from . import triangulate as tri_mod

EXIT_OK = 0
EXIT_PARSE = 64
EXIT_NOT_GORENSTEIN = 65
EXIT_BUDGET = 70

SCHEMA = "crepant-lab/1"


def _jsonable(obj):
    """Recursively convert to deterministic JSON-serializable data."""
    if isinstance(obj, Fraction):
        return str(obj) if obj.denominator != 1 else obj.numerator
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: _jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in sorted(obj.items(), key=lambda kv: str(kv[0]))}
    if isinstance(obj, frozenset):
        return sorted(_jsonable(x) for x in obj)
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    return obj


def _emit(payload: dict, as_json: bool, lines=None) -> None:
    if as_json:
        payload = {"schema": SCHEMA, **payload}
        print(json.dumps(_jsonable(payload), sort_keys=True))
    else:
        for line in lines or []:
            print(line)


def _parse(text: str) -> QuotientType:
    t = parse_type(text)
    if not is_gorenstein(t):
        raise _NotGorenstein(f"{t} is not Gorenstein (weights of some factor do not sum to 0 mod its order)")
    return t


class _NotGorenstein(ValueError):
    pass


def _delta_str(t: QuotientType, delta) -> str:
    return "(%s)/%d" % (",".join(str(x) for x in delta), t.exp_g)


def _point_str(p) -> str:
    from math import lcm

    den = lcm(*[x.denominator for x in p]) if p else 1
    return "(%s)/%d" % (",".join(str(x * den) for x in p), den)


# ---------------------------------------------------------------------------
# subcommands

def _cmd_analyze(args) -> int:
    t = _parse(args.type)
    rep = structure_report(t, args.budget_elems)
    elems = [g for g in enumerate_elements(t, args.budget_elems) if not g.is_identity]
    elems.sort(key=lambda g: (g.age, g.delta))
    table = [
        {"delta": list(g.delta), "age": g.age, "height": g.height}
        for g in elems
    ]
    lines = [
        f"type       {t}",
        f"order      {t.order}   exp {t.exp_g}   r {t.r}",
        f"msc        {rep.is_msc} (splitting codim {rep.splitting_codim})",
        f"isolated   {rep.is_isolated}",
        "age hist   " + " ".join(f"{a + 1}:{c}" for a, c in enumerate(rep.age_histogram)),
    ] + [
        f"  {_delta_str(t, g.delta):<24} age {g.age}  ht {g.height}" for g in elems
    ]
    _emit({"type": str(t), "structure": rep, "elements": table}, args.json, lines)
    return EXIT_OK


def _cmd_count(args) -> int:
    t = _parse(args.type)
    ed = ehrhart_poly(t, args.budget_elems)
    hstar, vol = cohomology_dims(t, args.budget_elems)
    payload = {
        "type": str(t),
        "ehrhart_coefficients": list(ed.coefficients),
        "values": {str(nu): ehrhart_eval(t, nu, args.budget_elems) for nu in range(1, 4)},
        "hstar": list(hstar),
        "normalized_volume": vol,
    }
    lines = [
        f"type     {t}",
        "Ehrhart  " + " + ".join(
            f"({c})t^{i}" for i, c in enumerate(ed.coefficients)
        ),
        f"h*       {tuple(hstar)}   (sum {sum(hstar)})",
    ]
    if t.is_cyclic and t.r == 4 and all(w != 0 for w in t.factors[0][1]):
        count, coeffs = mp_count_r4(t)
        payload["mp_count"] = count
        payload["mp_coefficients"] = list(coeffs)
        lines.append(f"lattice points at level 1 (closed form): {count}")
    bc = b_counts(t, args.budget_elems)
    payload["b_counts"] = {f"{i},{k}": v for (i, k), v in bc.totals.items()}
    _emit(payload, args.json, lines)
    return EXIT_OK


def _cmd_hilbert(args) -> int:
    t = _parse(args.type)
    hb = hilbert_basis(t, args.budget_elems)
    ok, witnesses = first_criterion(t, args.budget_elems)
    lines = [f"type  {t}", f"Hilbert basis ({len(hb.elements)} elements):"]
    for p, vert, age in zip(hb.elements, hb.is_vertex, hb.ages):
        tag = "vertex" if vert else f"age {age}"
        lines.append(f"  {_point_str(p):<28} {tag}")
    lines.append(
        "contained in junior simplex: " + ("yes" if ok else
        "NO  (witnesses: " + ", ".join(_point_str(p) for p in witnesses) + ")")
    )
    _emit(
        {
            "type": str(t),
            "elements": [list(p) for p in hb.elements],
            "ages": list(hb.ages),
            "is_vertex": list(hb.is_vertex),
            "first_criterion": ok,
            "witnesses": [list(p) for p in witnesses],
        },
        args.json,
        lines,
    )
    return EXIT_OK


def _cmd_criteria(args) -> int:
    t = _parse(args.type)
    rep = second_criterion(t, args.budget_elems)
    lines = [
        f"type   {t}",
        f"b      {rep.point_count}   (boundary {rep.boundary_count})",
        f"bound  {rep.bound}   ({rep.variant})",
        f"l <= bound: {'PASS' if rep.passed else 'FAIL'}  (l = {rep.l})",
    ]
    if rep.conjectural_bound is not None:
        lines.append(f"conjectural bound (non-binding): {rep.conjectural_bound}")
    _emit({"type": str(t), "report": rep}, args.json, lines)
    return EXIT_OK


def _tri_payload(cfg, tri, with_props=True) -> dict:
    out = {"simplices": [list(s) for s in tri.simplices]}
    if with_props:
        f, h = tri_mod.fh_vectors(tri)
        basic, _ = tri_mod.basicness(cfg, tri)
        out["f_vector"] = list(f)
        out["h_vector"] = list(h)
        out["basic"] = basic
    return out


def _cmd_triangulate(args) -> int:
    t = _parse(args.type)
    cfg = tri_mod.config_from_type(t, args.budget_elems)
    res = tri_mod.explore(
        cfg,
        maximal_only="maximal" in args.filter or "basic" in args.filter,
        coherent_only="coherent" in args.filter,
        basic_only="basic" in args.filter,
        budget_nodes=args.budget_nodes,
        seed_orders=args.seed_orders,
    )
    if not res.complete:
        raise BudgetError(f"flip-graph budget ({args.budget_nodes} nodes) exhausted")
    payload = {
        "type": str(t),
        "points": [list(p) for p in cfg.points],
        "labels": list(cfg.labels),
        "count": len(res.triangulations),
        "nodes_visited": res.nodes_visited,
        "triangulations": [_tri_payload(cfg, tr) for tr in res.triangulations],
    }
    lines = [f"type    {t}", f"points  {cfg.n}", f"census  {len(res.triangulations)} triangulation(s) [{','.join(args.filter)}]"]
    for i, tr in enumerate(res.triangulations):
        f, h = tri_mod.fh_vectors(tr)
        basic, _ = tri_mod.basicness(cfg, tr)
        lines.append(
            f"  #{i}: {len(tr.simplices)} cells, h = {h}" + ("  basic" if basic else "")
        )
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write("graph flips {\n")
            for (a, b), c in sorted(res.flip_edges.items()):
                fh.write(f'  n{a} -- n{b} [label="{",".join(map(str, c.points))}"];\n')
            fh.write("}\n")
        lines.append(f"flip graph written to {args.dot}")
    _emit(payload, args.json, lines)
    return EXIT_OK


def _cmd_series(args) -> int:
    t = _parse(args.type)
    check = {
        "hyper": series_mod.hypersurface_check,
        "oneparam": series_mod.one_param_check,
        "twoparam": series_mod.two_param_check,
        "gp": series_mod.gp_check,
    }[args.verb]
    m = check(t)
    lines = [f"type     {t}", f"series   {m.kind}", f"verdict  {m.verdict}"]
    lines += [f"  {k} = {v}" for k, v in {**m.parameters, **m.trace}.items()]
    _emit({"type": str(t), "match": m}, args.json, lines)
    return EXIT_OK


# ---------------------------------------------------------------------------
# the decision pipeline

@dataclasses.dataclass
class DecisionReport:
    input: str
    reduced: str | None  # msc core when coordinates were dropped
    steps: list  # {"step", "name", "outcome", ...payload}
    verdict: str  # RESOLVABLE | NOT_RESOLVABLE | UNDECIDED
    budgets: dict


def run_pipeline(
    t: QuotientType,
    budget_elems: int = DEFAULT_BUDGET,
    budget_nodes: int = 100_000,
    seed_orders: int = 1,
) -> DecisionReport:
    """Five steps in order of increasing cost; the first decisive step
    sets the verdict.  Non-msc inputs are reduced to their msc core
    first (same resolution question in smaller dimension)."""
    original = str(t)
    reduced = None
    core, kept = msc_core(t)
    if core.r < t.r:
        reduced = str(core)
        t = core
    budgets = {
        "elements": budget_elems,
        "nodes": budget_nodes,
        "seed_orders": seed_orders,
    }
    steps: list[dict] = []

    if t.r <= 3:
        steps.append(
            {"step": 0, "name": "dimension", "outcome": "resolvable", "r": t.r}
        )
        return DecisionReport(original, reduced, steps, "RESOLVABLE", budgets)

    m = series_mod.hypersurface_check(t, budget_elems)
    steps.append({"step": 1, "name": "hypersurface", "outcome": m.verdict, "match": m})
    if m.verdict == "resolvable":
        return DecisionReport(original, reduced, steps, "RESOLVABLE", budgets)

    for check in (series_mod.gp_check, series_mod.one_param_check, series_mod.two_param_check):
        m = check(t)
        if m.kind != "none":
            break
    steps.append({"step": 2, "name": "series", "outcome": m.verdict if m.kind != "none" else "inconclusive", "match": m})
    if m.verdict == "resolvable":
        return DecisionReport(original, reduced, steps, "RESOLVABLE", budgets)
    if m.verdict == "not_resolvable":
        return DecisionReport(original, reduced, steps, "NOT_RESOLVABLE", budgets)

    rep = second_criterion(t, budget_elems)
    steps.append(
        {
            "step": 3,
            "name": "order bound",
            "outcome": "inconclusive" if rep.passed else "not_resolvable",
            "report": rep,
        }
    )
    if not rep.passed:
        return DecisionReport(original, reduced, steps, "NOT_RESOLVABLE", budgets)

    ok, witnesses = first_criterion(t, budget_elems)
    steps.append(
        {
            "step": 4,
            "name": "Hilbert basis",
            "outcome": "inconclusive" if ok else "not_resolvable",
            "witnesses": [list(p) for p in witnesses],
        }
    )
    if not ok:
        return DecisionReport(original, reduced, steps, "NOT_RESOLVABLE", budgets)

    cfg = tri_mod.config_from_type(t, budget_elems)
    res = tri_mod.explore(
        cfg,
        maximal_only=True,
        coherent_only=True,
        budget_nodes=budget_nodes,
        seed_orders=seed_orders,
    )
    witness = None
    for tr in res.triangulations:
        basic, _ = tri_mod.basicness(cfg, tr)
        if basic:
            witness = tr
            break
    rec = {
        "step": 5,
        "name": "census",
        "census_size": len(res.triangulations),
        "complete": res.complete,
    }
    if witness is not None:
        rec["outcome"] = "resolvable"
        rec["witness"] = _tri_payload(cfg, witness, with_props=True)
        rec["points"] = [list(p) for p in cfg.points]
        steps.append(rec)
        return DecisionReport(original, reduced, steps, "RESOLVABLE", budgets)
    rec["outcome"] = "not_resolvable" if res.complete else "inconclusive"
    steps.append(rec)
    return DecisionReport(
        original, reduced, steps, "NOT_RESOLVABLE" if res.complete else "UNDECIDED", budgets
    )


def _cmd_pipeline(args) -> int:
    t = _parse(args.type)
    rep = run_pipeline(t, args.budget_elems, args.budget_nodes, args.seed_orders)
    lines = [f"type  {rep.input}"]
    if rep.reduced:
        lines.append(f"reduced to msc core {rep.reduced}")
    for s in rep.steps:
        lines.append(f"  step {s['step']} ({s['name']}): {s['outcome']}")
    lines.append(f"verdict: {rep.verdict}")
    _emit({"report": rep}, args.json, lines)
    return EXIT_OK


# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="crepant-lab",
        description="Existence of projective crepant resolutions for Gorenstein abelian quotient singularities",
    )
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("type", help='singularity type, e.g. "1/12(1,2,3,6)" or a product joined by x')
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--budget-elems", type=int, default=DEFAULT_BUDGET, metavar="N")

    p = sub.add_parser("analyze", help="group elements, ages, structure flags")
    common(p)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("count", help="Ehrhart data, h*-vector, closed-form counts")
    common(p)
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("hilbert", help="Hilbert basis and containment check")
    common(p)
    p.set_defaults(func=_cmd_hilbert)

    p = sub.add_parser("criteria", help="group-order upper bound")
    common(p)
    p.set_defaults(func=_cmd_criteria)

    p = sub.add_parser("triangulate", help="census of the flip graph")
    common(p)
    p.add_argument("--filter", action="append", default=None, choices=["maximal", "coherent", "basic"])
    p.add_argument("--budget-nodes", type=int, default=100_000, metavar="N")
    p.add_argument("--seed-orders", type=int, default=1, metavar="N")
    p.add_argument("--dot", metavar="FILE", help="write the flip graph in DOT format")
    p.set_defaults(func=_cmd_triangulate)

    p = sub.add_parser("series", help="special-series recognizers")
    p.add_argument("verb", choices=["gp", "hyper", "oneparam", "twoparam"])
    common(p)
    p.set_defaults(func=_cmd_series)

    p = sub.add_parser("pipeline", help="run the full decision procedure")
    common(p)
    p.add_argument("--budget-nodes", type=int, default=100_000, metavar="N")
    p.add_argument("--seed-orders", type=int, default=1, metavar="N")
    p.set_defaults(func=_cmd_pipeline)
    return ap


def main(argv=None) -> int:
    ap = _build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "filter", "absent") is None:
        args.filter = ["maximal", "coherent"]
    try:
        return args.func(args)
    except _NotGorenstein as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_GORENSTEIN
    except BudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (TypeError_, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
