"""Command line interface.

Exit codes: 0 success, 1 invalid input, 2 verification mismatch.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import io, report
from . import separation as sep
from .exceptions import InvalidParameter, VerificationMismatch
from .facets import facet_predicate
from .model import as_sequence
from .solver import BUDGET_ENV, enumeration_budget, solve
from .transform import lift_path_to_cycle, undirected_counterpart
from .verify import CATALOG, GRAPH_KIND, Polytope, is_facet, is_valid, sweep_ids, sweep_theorem

EXIT_OK, EXIT_INVALID, EXIT_MISMATCH = 0, 1, 2


def _check_budget(n):
    budget = enumeration_budget()
    if n > budget:
        raise InvalidParameter(f"n={n} exceeds the enumeration budget {budget} (set {BUDGET_ENV} to raise it)")


def _polytope(inst):
    _check_budget(inst.n)
    return Polytope(inst.kind, inst.n, inst.c)


def _fmt_c(c):
    return "(" + ",".join(map(str, c)) + ")"


def cmd_dim(args):
    inst = io.load_instance(args.instance)
    poly = _polytope(inst)
    print(f"{inst.kind} n={inst.n} c={_fmt_c(inst.c)}: {len(poly)} vertices, dimension {poly.dim}")
    if args.report_dir:
        report.dim_report(args.report_dir, inst.kind, inst.n, inst.c, poly.dim, len(poly))
    return EXIT_OK


def cmd_enumerate(args):
    inst = io.load_instance(args.instance)
    poly = _polytope(inst)
    for v in poly.vertices:
        print(f"{v.cardinality}: {' '.join(map(str, v.walk))}")
    print(f"{len(poly)} vertices")
    if args.report_dir:
        report.enumerate_report(args.report_dir, poly.vertices)
    return EXIT_OK


def cmd_facet_check(args):
    inst = io.load_instance(args.instance)
    ineq = io.load_inequality(args.inequality)
    if (ineq.kind, ineq.n) != (inst.kind, inst.n):
        raise InvalidParameter("inequality and instance live on different graphs")
    poly = _polytope(inst)
    val = is_valid(ineq, poly)
    print(f"inequality: {ineq.describe()}")
    print(f"valid: {val.valid}")
    if not val.valid:
        print(f"violated by: {' '.join(map(str, val.counterexample.walk))}")
        print("facet: False")
        return EXIT_OK
    print(f"facet: {is_facet(ineq, poly, poly.dim)}")
    if ineq.tag != "custom":
        print(f"published condition: {facet_predicate(ineq.tag, dict(ineq.params), inst.n, as_sequence(inst.c), inst.kind)}")
    return EXIT_OK


def cmd_sweep(args):
    if args.sweep_id not in CATALOG:
        raise InvalidParameter(f"unknown sweep {args.sweep_id!r}; choose from {', '.join(sweep_ids())}")
    inst = io.load_instance(args.instance)
    spec = CATALOG[args.sweep_id]
    if GRAPH_KIND[spec.variant] != inst.kind:
        raise InvalidParameter(f"sweep {args.sweep_id} runs on {GRAPH_KIND[spec.variant]} instances, got {inst.kind}")
    _check_budget(inst.n)
    rep = sweep_theorem(args.sweep_id, inst.n, inst.c, canonical=not args.full)
    print(rep.text())
    print(json.dumps(rep.summary(), sort_keys=True))
    if args.report_dir:
        report.sweep_report(args.report_dir, rep)
    return EXIT_OK if rep.ok else EXIT_MISMATCH


def run_separators(inst, x, budget=None):
    D = inst.graph
    c = as_sequence(inst.c)
    out = {
        "one_sided_min_cut": sep.separate_one_sided_min_cut(D, x),
        "cf_greedy": sep.separate_cf_greedy(D, x, c),
        "cf_arc": sep.separate_cf_arc(D, x, c),
    }
    if inst.kind == "cycle":
        out["mcf"] = sep.separate_mcf(D, x, c)
    if c.all_parity(0) and inst.kind != "ucycle":
        out["odd_excl"] = sep.separate_parity_exclusion(D, x, c, "odd", budget)
    elif c.all_parity(1) and c.first >= 3:
        out["even_excl"] = sep.separate_parity_exclusion(D, x, c, "even", budget)
    out["card_subgraph"] = sep.separate_cardinality_subgraph(D, x, c, budget)
    return out


def cmd_separate(args):
    inst = io.load_instance(args.instance)
    kind, n, point = io.load_point(args.point_file)
    if (kind, n) != (inst.kind, inst.n):
        raise InvalidParameter("point and instance live on different graphs")
    results = run_separators(inst, point.entries, enumeration_budget())
    for name, res in results.items():
        mode = "" if res.exhausted else " (heuristic)"
        print(f"{name}{mode}: {len(res.violated)} violated")
        for v in res.violated:
            print(f"  {v.amount}  {v.inequality.describe()}")
    if args.report_dir:
        report.separate_report(args.report_dir, results)
    return EXIT_OK


def cmd_solve(args):
    inst = io.load_instance(args.instance)
    _check_budget(inst.n)
    log = solve(inst)
    print(f"status: {log.status}")
    if log.vector is not None:
        D = inst.graph
        arcs = [f"({u},{v})" for (u, v), e in zip(D.arcs, log.vector) if e]
        print(f"value: {log.value}")
        print(f"arcs: {' '.join(arcs)}")
    print(f"certificate: {log.certificate}")
    print(f"iterations: {len(log.iterations)}, search nodes: {log.nodes}")
    for tag, k in sorted(log.cuts_by_class().items()):
        print(f"  cuts {tag}: {k}")
    if args.report_dir:
        report.solve_report(args.report_dir, log)
    return EXIT_OK


def cmd_lift(args):
    ineq = io.load_inequality(args.inequality)
    c = tuple(args.c) if args.c else ineq.c
    if c is None:
        raise InvalidParameter("lifting needs a cardinality sequence (pass --c)")
    print(io.dump_inequality(lift_path_to_cycle(ineq, c)))
    return EXIT_OK


def cmd_deorient(args):
    ineq = io.load_inequality(args.inequality)
    out = undirected_counterpart(ineq)
    if out is None:
        raise InvalidParameter("no (pseudo-)symmetric form exists for this inequality")
    print(io.dump_inequality(out))
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="cardpoly", description="Cardinality constrained path and cycle polytopes")
    p.add_argument("--report-dir", default=None, help="write CSV tables and figures here")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("dim", help="polytope dimension")
    s.add_argument("instance")
    s.set_defaults(func=cmd_dim)

    s = sub.add_parser("enumerate", help="list the polytope's vertices")
    s.add_argument("instance")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("facet-check", help="validity and facet certificate of an inequality")
    s.add_argument("instance")
    s.add_argument("inequality")
    s.set_defaults(func=cmd_facet_check)

    s = sub.add_parser("sweep", help="compare a published facet condition with certificates")
    s.add_argument("sweep_id", metavar="sweep-id")
    s.add_argument("instance")
    s.add_argument("--full", action="store_true", help="skip symmetry reduction")
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("separate", help="run the separators on a fractional point")
    s.add_argument("instance")
    s.add_argument("point_file", metavar="point-file")
    s.set_defaults(func=cmd_separate)

    s = sub.add_parser("solve", help="exact branch-and-cut")
    s.add_argument("instance")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("lift", help="lift a path inequality to the cycle polytope")
    s.add_argument("inequality")
    s.add_argument("--c", type=int, nargs="+", help="cardinality sequence of the cycle polytope")
    s.set_defaults(func=cmd_lift)

    s = sub.add_parser("deorient", help="undirected counterpart of an inequality")
    s.add_argument("inequality")
    s.set_defaults(func=cmd_deorient)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InvalidParameter, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except VerificationMismatch as exc:
        print(f"mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
