"""Command-line interface: ``morsewalk <subcommand> ...``.

Every subcommand writes JSON to stdout (``enumerate`` without ``--count-only`` writes
one walk per line, ``render`` writes SVG).  Exit codes: 0 success, 2 precondition
or usage error, 3 resource cap, 4 invariant violation.  Failures print
``{"error": ..., "kind": ...}``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import distributions as dist
from .domset import (alon_spencer_bound, exact_min_dominating_set, greedy_dominating_set,
                     probabilistic_dominating_set)
from .enumeration import (DEFAULT_CAP, count_walks_length, delta, enumerate_walks, lengths, m_number,
                          shifted_positions, simplest_walks)
from .errors import InvariantViolation, PreconditionError, ResourceCapError
from .lattice_walk import Censored, CompletedWalk, StepProbabilities, simulate
from .morse_skeleton import skeleton_from_walk
from .render import render_walks
from .walkgraph import build_graph, degree_report

EXIT_OK, EXIT_USAGE, EXIT_CAP, EXIT_INVARIANT = 0, 2, 3, 4
SEED_ENV = "MORSEWALK_SEED"


def _probs(args) -> StepProbabilities:
    return StepProbabilities.parse(args.pr, args.pl, args.pd)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _check_degrees(graph, g: int) -> dict:
    report = degree_report(graph)
    if graph.vertex_count > 1 and report.min_degree < 1:
        raise InvariantViolation(f"minimum degree {report.min_degree} < 1 for g={g}")
    if graph.vertex_count > 1 and report.min_degree < delta(g):
        worst = graph.degrees().index(report.min_degree)
        raise InvariantViolation(
            f"minimum degree {report.min_degree} < delta({g}) = {delta(g)} at walk "
            f"{str(graph.walks[worst])!r}")
    return {
        "min_degree": report.min_degree,
        "max_degree": report.max_degree,
        "degree_histogram": {str(k): v for k, v in report.degree_histogram.items()},
        "delta": delta(g),
    }


def cmd_simulate(args, out):
    probs = _probs(args)
    if args.trials < 1:
        raise PreconditionError(f"--trials must be >= 1, got {args.trials}")
    outcomes = []
    for i in range(args.trials):
        o = simulate(probs, args.seed, args.max_steps, trial=i)
        if isinstance(o, Censored):
            outcomes.append({"trial": i, "status": "censored",
                             "steps": "".join(s.value for s in o.steps),
                             "position": list(o.position)})
            continue
        rec = {"trial": i, "status": "completed", **o.walk.to_json()}
        if args.skeleton:
            rec["skeleton"] = skeleton_from_walk(o.walk).to_json()
        outcomes.append(rec)
    censored = sum(o["status"] == "censored" for o in outcomes)
    out.write(_dump({
        "probs": probs.as_dict(), "seed": args.seed, "trials": args.trials,
        "max_steps": args.max_steps, "completed": args.trials - censored,
        "censored": censored, "outcomes": outcomes,
    }))


def cmd_moments(args, out):
    probs = _probs(args)
    if probs.drift == 0:
        raise PreconditionError("expected duration infinite (p_l + p_d = p_r)")
    if probs.drift < 0:
        raise PreconditionError("expectations require p_l + p_d > p_r")
    if args.trials < 0:
        raise PreconditionError(f"--trials must be >= 0, got {args.trials}")
    exact = dist.closed_forms(probs)
    summed = dist.summed_expectations(probs)
    mc = None
    if args.trials:
        mc = dist.monte_carlo_moments(probs, args.trials, args.seed, args.max_steps, threads=args.threads)
    stats = []
    for name in dist.STATISTICS:
        rep = mc[name] if mc else None
        stats.append({
            "statistic": name,
            "closed_form": str(exact[name]),
            "closed_form_float": float(exact[name]),
            "summed_mean": str(summed[name]),
            "summed_mean_float": float(summed[name]),
            "mc_estimate": rep.estimate if rep else None,
            "std_error": rep.std_error if rep else None,
        })
    censored = next(iter(mc.values())).censored if mc else 0
    out.write(_dump({
        "probs": probs.as_dict(), "seed": args.seed, "trials": args.trials,
        "max_steps": args.max_steps, "censored": censored, "statistics": stats,
    }))


def cmd_dist(args, out):
    probs = _probs(args)
    if args.max_len < 0:
        raise PreconditionError(f"--max-len must be >= 0, got {args.max_len}")
    rows = dist.length_table(args.max_len, probs, by_genus=args.by_genus)
    if args.format == "csv":
        buf = io.StringIO()
        cols = ["n", "y"] if args.by_genus else ["n"]
        cols += ["probability", "probability_float", "cumulative", "cumulative_float"]
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(cols)
        for r in rows:
            writer.writerow([r["n"]] + ([r["y"]] if args.by_genus else [])
                            + [str(r["probability"]), float(r["probability"]),
                               str(r["cumulative"]), float(r["cumulative"])])
        out.write(buf.getvalue())
        return
    table = []
    for r in rows:
        rec = {"n": r["n"]}
        if args.by_genus:
            rec["y"] = r["y"]
        rec.update(probability=str(r["probability"]), probability_float=float(r["probability"]),
                   cumulative=str(r["cumulative"]), cumulative_float=float(r["cumulative"]))
        table.append(rec)
    out.write(_dump({"probs": probs.as_dict(), "max_len": args.max_len, "rows": table}))


def cmd_enumerate(args, out):
    total = m_number(args.max_crit, args.genus)
    if args.count_only:
        out.write(_dump({
            "genus": args.genus, "max_crit": args.max_crit, "count": str(total),
            "per_length": {str(n): str(count_walks_length(n, args.genus))
                           for n in lengths(args.max_crit, args.genus)},
        }))
        return
    for w in enumerate_walks(args.max_crit, args.genus, cap=args.cap):
        out.write(f"{w}\n")


def cmd_graph(args, out):
    graph = build_graph(enumerate_walks(args.max_crit, args.genus, cap=args.cap))
    degrees = _check_degrees(graph, args.genus)
    doc = {"genus": args.genus, "max_crit": args.max_crit, "vertex_count": graph.vertex_count,
           "edge_count": graph.edge_count, **degrees}
    if not args.summary:
        doc["walks"] = [str(w) for w in graph.walks]
        doc["adjacency"] = [list(a) for a in graph.adjacency]
    if args.edges:
        with open(args.edges, "w") as fh:
            fh.writelines(f"{i} {j}\n" for i, j in graph.edges())
        doc["edges_file"] = args.edges
    out.write(_dump(doc))


def cmd_domset(args, out):
    g, N = args.genus, args.max_crit
    graph = build_graph(enumerate_walks(N, g, cap=args.cap))
    _check_degrees(graph, g)
    if args.method == "prob":
        res = probabilistic_dominating_set(graph, args.seed, args.max_attempts)
    elif args.method == "greedy":
        res = greedy_dominating_set(graph)
    else:
        res = exact_min_dominating_set(graph)
    walks = [graph.walks[i] for i in res.vertex_ids]
    out.write(_dump({
        "genus": g, "max_crit": N, "method": res.method, "vertex_count": graph.vertex_count,
        "size": res.size, "bound": res.bound,
        "catalan_bound": alon_spencer_bound(graph.vertex_count, delta(g)),
        "vertices": list(res.vertex_ids), "walks": [str(w) for w in walks],
        "skeletons": [skeleton_from_walk(w).to_json() for w in walks],
        "attempts": res.attempts,
    }))


def cmd_render(args, out):
    walks = [CompletedWalk.from_string(s) for s in args.walk]
    if args.genus is not None:
        if args.max_crit is None:
            raise PreconditionError("--genus needs --max-crit")
        walks.extend(enumerate_walks(args.max_crit, args.genus, cap=args.cap))
    overlays = []
    if args.overlay_simplest is not None:
        if not walks:
            raise PreconditionError("--overlay-simplest needs at least one walk for its genus")
        if args.overlay_simplest < 1:
            raise PreconditionError("--overlay-simplest start column must be >= 1")
        overlays = [shifted_positions(w, args.overlay_simplest - 1) for w in simplest_walks(walks[0].g)]
    svg = render_walks(walks, highlight=args.highlight, overlays=overlays, mark_shared=args.mark_shared)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(svg)
        out.write(_dump({"out": args.out, "walks": len(walks), "overlays": len(overlays)}))
    else:
        out.write(svg)


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise PreconditionError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Turns usage errors into the same JSON error payload as precondition failures."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="morsewalk",
        description="Random-walk Morse functions on closed orientable surfaces.",
        epilog="Exit codes: 0 ok, 2 precondition/usage error, 3 resource cap, 4 invariant violation.")
    sub = parser.add_subparsers(dest="command", required=True)

    def probs_opts(p):
        p.add_argument("--pr", default="1/3", help="probability of a right step, exact rational p/q in (0,1) (default 1/3)")
        p.add_argument("--pl", default="1/3", help="probability of a left step, exact rational (default 1/3)")
        p.add_argument("--pd", default="1/3", help="probability of an up-and-left step, exact rational (default 1/3); pr+pl+pd must equal 1")

    def seed_opt(p):
        p.add_argument("--seed", type=int, default=None,
                       help=f"64-bit master seed (default: ${SEED_ENV} or 0)")

    def catalog_opts(p, required=True):
        p.add_argument("--genus", type=int, required=required, help="genus g of the closed surface (walks end at (1, g))")
        p.add_argument("--max-crit", type=int, required=required,
                       help="N, the maximum number of critical points; walks have length <= N-2; needs N >= 2g+2")
        p.add_argument("--cap", type=int, default=DEFAULT_CAP, help=f"refuse catalogs larger than this many walks (default {DEFAULT_CAP})")

    p = sub.add_parser("simulate", help="simulate walks",
                       description="Simulate walks from (1,0) until they exit the domain. "
                                   "Each trial i uses its own counter-based stream derived from (seed, i).")
    probs_opts(p)
    seed_opt(p)
    p.add_argument("--trials", type=int, default=1, help="number of walks (>= 1)")
    p.add_argument("--max-steps", type=int, default=10_000, help="in-domain step cap per walk; longer walks are reported as censored (>= 1)")
    p.add_argument("--skeleton", action="store_true", help="attach the Morse skeleton of each completed walk")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("moments", help="closed-form expectations with optional Monte Carlo check",
                       description="Expected critical points, genus, local maxima, cobordism class and "
                                   "index-one count. Requires pl+pd > pr (pl+pd = pr: expected duration infinite).")
    probs_opts(p)
    seed_opt(p)
    p.add_argument("--trials", type=int, default=0, help="Monte Carlo trials; 0 skips simulation (default 0)")
    p.add_argument("--max-steps", type=int, default=100_000, help="in-domain step cap per simulated walk (default 100000)")
    p.add_argument("--threads", type=int, default=1, help="worker threads for simulation; results do not depend on it")
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("dist", help="exact length (and genus) distribution",
                       description="Probability that a walk completes with n steps (n+2 critical points), "
                                   "optionally split by genus y, for all even n <= --max-len.")
    probs_opts(p)
    p.add_argument("--max-len", type=int, default=20, help="largest walk length n (even lengths only are listed)")
    p.add_argument("--by-genus", action="store_true", help="split each length by final genus y in [0, n/2]")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("enumerate", help="list or count walks ending at (1, g)",
                       description="All walks from (1,0) to (1,g) of length <= N-2, one per line "
                                   "(R, L, D steps), ordered by length then R < L < D.")
    catalog_opts(p)
    p.add_argument("--count-only", action="store_true", help="print counts as JSON instead of the walks")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("graph", help="walk intersection graph",
                       description="Walks are adjacent when they share a lattice point at height 1..g-1. "
                                   "Needs g >= 2. Exits 4 if the minimum degree is below 1 or catalan(g)-1.")
    catalog_opts(p)
    p.add_argument("--edges", metavar="FILE", help="also write an edge list 'i j' (i < j), one per line")
    p.add_argument("--summary", action="store_true", help="omit the walk list and adjacency lists")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("domset", help="dominating set of the walk graph",
                       description="prob: sample-then-repair until the size bound holds; greedy: max-coverage; "
                                   "exact: branch and bound (at most 30 vertices).")
    catalog_opts(p)
    seed_opt(p)
    p.add_argument("--method", choices=("prob", "greedy", "exact"), default="prob")
    p.add_argument("--max-attempts", type=int, default=50, help="retries for the probabilistic method (>= 1)")
    p.set_defaults(func=cmd_domset)

    p = sub.add_parser("render", help="SVG drawing of walks",
                       description="Draw walks as polylines on the lattice. Walks must share one genus.")
    catalog_opts(p, required=False)
    p.add_argument("--walk", action="append", default=[], help="walk string over R, L, D (repeatable)")
    p.add_argument("--highlight", type=int, help="index of the walk drawn bold")
    p.add_argument("--mark-shared", action="store_true", help="ring points at heights 1..g-1 visited by several walks")
    p.add_argument("--overlay-simplest", type=int, metavar="A",
                   help="overlay all shortest walks translated to start at (A, 0)")
    p.add_argument("--out", metavar="FILE", help="write the SVG here instead of stdout")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        out.write(_dump({"error": str(exc), "kind": "usage"}))
        return EXIT_USAGE
    try:
        if hasattr(args, "seed") and args.seed is None:
            args.seed = _default_seed()
        args.func(args, out)
    except PreconditionError as exc:
        out.write(_dump({"error": str(exc), "kind": "precondition"}))
        return EXIT_USAGE
    except ResourceCapError as exc:
        out.write(_dump({"error": str(exc), "kind": "resource_cap"}))
        return EXIT_CAP
    except InvariantViolation as exc:
        out.write(_dump({"error": str(exc), "kind": "invariant_violation"}))
        return EXIT_INVARIANT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
