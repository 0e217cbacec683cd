"""Command-line interface.  Exit status 0 means every check passed, 2 means a
bound violation, a cross-check disagreement or a failed duality check."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import constructions as C
from .census import CensusJob, CrossCheckError, run_census, write_census
from .criticality import critical_boundaries, is_flow_critical
from .density import check_bounds, density_functionals
from .flows import BorderedGraph, count_nz_flows, find_nz_flow
from .formats import encode_graph6, encode_sparse6, graph_from_json, load_graphs
from .groups import Group, parse_boundary
from .multigraph import GraphError
from .topology import DEFAULT_GENUS_BUDGET, GenusBudgetExceeded, euler_genus

EXIT_OK, EXIT_VIOLATION = 0, 2


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def _group(text: str) -> Group:
    return Group.parse(text)


def cmd_flow(args) -> int:
    group = _group(args.group)
    for g in load_graphs(args.graph):
        beta = parse_boundary(group, args.beta, g.n) if args.beta else None
        bg = BorderedGraph(g, group, beta) if beta else BorderedGraph.zero(g, group)
        flow = find_nz_flow(bg)
        out = {"graph6": encode_graph6(g) if g.is_simple() else encode_sparse6(g),
               "has_flow": flow is not None, "flow": flow.to_json() if flow else None}
        if args.count:
            out["count"] = count_nz_flows(bg)
        _emit(out)
    return EXIT_OK


def cmd_critical(args) -> int:
    group = _group(args.group)
    for g in load_graphs(args.graph):
        if args.all_boundaries:
            betas = critical_boundaries(g, group, up_to_symmetry=True)
            _emit({"critical_boundaries": [[list(x) for x in b] for b in betas]})
        else:
            beta = parse_boundary(group, args.beta, g.n) if args.beta else None
            bg = BorderedGraph(g, group, beta) if beta else BorderedGraph.zero(g, group)
            _emit(is_flow_critical(bg, args.mode).to_json())
    return EXIT_OK


def cmd_census(args) -> int:
    job = CensusJob(
        n_max=args.n, n_min=args.n_min,
        graphs=load_graphs(args.input) if args.input else None,
        group=_group(args.group), mode="all" if args.all_boundaries else "zero",
        genus=args.genus, genus_budget=args.genus_budget,
        brute_rate=args.brute_rate, seed=args.seed,
    )
    try:
        records, summary = run_census(job, workers=args.workers)
    except CrossCheckError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_VIOLATION
    jpath, cpath = write_census(records, summary, args.out)
    _emit({"graphs": summary["graphs"], "critical": summary["critical_count"],
           "violations": summary["violations"], "json": str(jpath), "csv": str(cpath)})
    return EXIT_VIOLATION if summary["violations"] else EXIT_OK


def cmd_construct(args) -> int:
    fam, p = args.family, args.param
    if fam == "dual4ore":
        entries = C.dual_4ore_catalog(p)
        if args.out:
            C.save_catalog(entries, args.out)
        lines = [encode_graph6(e.graph) for e in entries]
    elif fam == "4ore":
        lines = [encode_graph6(g) for g in C.primal_4ore_catalog(p)]
    elif fam == "k3nplus":
        lines = [encode_graph6(C.k3n_plus(p))]
    else:
        lines = [encode_graph6(C.flower_snark(p))]
    if args.out and fam != "dual4ore":
        Path(args.out).write_text("".join(x + "\n" for x in lines))
    for line in lines:
        print(line)
    return EXIT_OK


def cmd_genus(args) -> int:
    for g in load_graphs(args.graph):
        try:
            _emit(euler_genus(g, args.budget).to_json())
        except GenusBudgetExceeded as exc:
            _emit({"genus": None, "lower_bound": exc.lower_bound, "status": "unknown"})
    return EXIT_OK


def cmd_bounds(args) -> int:
    status = EXIT_OK
    group = _group(args.group)
    for g in load_graphs(args.graph):
        genus = args.genus
        if genus is None:
            try:
                genus = euler_genus(g, args.budget).genus
            except GenusBudgetExceeded:
                genus = None
        critical = is_flow_critical(BorderedGraph.zero(g, group)).is_critical
        report = check_bounds(g, genus, critical=critical, report=density_functionals(g, genus))
        _emit({"critical": critical, **report.to_json()})
        if report.violations():
            status = EXIT_VIOLATION
    return status


def cmd_duality(args) -> int:
    text = Path(args.plane_graph).read_text()
    obj = json.loads(text) if text.lstrip()[:1] in "{[" else None
    if obj is not None and "rotation" in obj:
        pgs = [C.PlaneGraph.from_json(obj)]
    elif obj is not None:
        pgs = [C.PlaneGraph.of(graph_from_json(obj))]
    else:
        pgs = [C.PlaneGraph.of(g) for g in load_graphs(args.plane_graph)]
    status = EXIT_OK
    for pg in pgs:
        colorable = C.is_k_colorable(pg.graph, 3)
        dual = pg.dual()
        flows = find_nz_flow(BorderedGraph.zero(dual, Group((3,)))) is not None
        _emit({"three_colorable": colorable, "dual_has_nz_z3_flow": flows, "agree": colorable == flows})
        if colorable != flows:
            status = EXIT_VIOLATION
    return status


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="flowcrit", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("flow", help="find a nowhere-zero flow")
    p.add_argument("--graph", required=True)
    p.add_argument("--group", default="3")
    p.add_argument("--beta")
    p.add_argument("--count", action="store_true")
    p.set_defaults(func=cmd_flow)

    p = sub.add_parser("critical", help="test flow-criticality")
    p.add_argument("--graph", required=True)
    p.add_argument("--group", default="3")
    p.add_argument("--beta")
    p.add_argument("--mode", choices=["fast", "brute"], default="fast")
    p.add_argument("--all-boundaries", action="store_true")
    p.set_defaults(func=cmd_critical)

    p = sub.add_parser("census", help="run a census over small graphs")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--n", type=int)
    src.add_argument("--input")
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--group", default="3")
    p.add_argument("--all-boundaries", action="store_true")
    p.add_argument("--genus", action="store_true")
    p.add_argument("--genus-budget", type=int, default=DEFAULT_GENUS_BUDGET)
    p.add_argument("--brute-rate", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("construct", help="emit members of a graph family")
    p.add_argument("--family", choices=["dual4ore", "4ore", "k3nplus", "flower"], required=True)
    p.add_argument("--param", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("genus", help="exact Euler genus with a certificate")
    p.add_argument("--graph", required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_GENUS_BUDGET)
    p.set_defaults(func=cmd_genus)

    p = sub.add_parser("bounds", help="density functionals and edge bounds")
    p.add_argument("--graph", required=True)
    p.add_argument("--genus", type=int)
    p.add_argument("--group", default="3")
    p.add_argument("--budget", type=int, default=DEFAULT_GENUS_BUDGET)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("duality", help="3-colourability of a plane graph vs Z3-flows of its dual")
    p.add_argument("--plane-graph", required=True)
    p.set_defaults(func=cmd_duality)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
