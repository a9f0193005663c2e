"""Command-line interface.

Subcommands: ``gen`` (topology generation), ``route`` (one query with a
chosen solver), ``compare`` (agreement harness over random instances),
``bench`` (runtime scaling), ``export`` (DOT).  The report commands write
CSV plus a rendered PNG figure next to it (suppress with ``--no-fig``).

Exit codes: 0 success, 2 bad usage, 3 I/O failure, 4 infeasible route.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from typing import Optional

from .bench import (
    ALGORITHMS,
    BenchParams,
    compare_on_instance,
    fit_complexity_exponent,
    measure_runtime,
    run_algorithm,
)
from .errors import (
    GraphFormatError,
    InsufficientDataError,
    InvalidParamsError,
    InvalidQueryError,
    QuantizationError,
    WmnrouteError,
)
from .graph import Graph, RouteQuery, RouteResult
from .graph_io import load_graph, save_dot, save_graph
from .rng import Xoshiro256PlusPlus
from .routing import route_mra
from .topology import TopologyParams, ValueModel, generate_topology

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_INFEASIBLE = 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wmnroute",
        description=(
            "Maximum-capacity routing under an end-to-end delay bound on "
            "wireless-mesh-style graphs."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a random geometric topology")
    gen.add_argument("--n", type=int, required=True, help="node count")
    gen.add_argument("--area", type=float, default=1000.0, help="square side (m)")
    gen.add_argument("--radius", type=float, default=200.0, help="coverage radius (m)")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument(
        "--rate-model", default="uniform:1,10",
        help="link rate (Mbps): 'uniform:LO,HI' or 'constant:C'",
    )
    gen.add_argument(
        "--delay-model", default="constant:2",
        help="link delay (ms): 'constant:C' or 'uniform:LO,HI'",
    )
    gen.add_argument("--out", required=True, help="output graph JSON")
    gen.add_argument("--fig", help="also render the topology to this image")

    route = sub.add_parser("route", help="answer one routing query")
    route.add_argument("--in", dest="infile", required=True, help="graph JSON")
    route.add_argument(
        "--algo", required=True,
        choices=ALGORITHMS + ("oracle",),
    )
    route.add_argument("--src", required=True, help="source node id")
    route.add_argument("--dst", required=True, help="destination node id")
    route.add_argument("--tau", type=float, required=True, help="delay bound (ms)")
    route.add_argument("--tick", type=float, help="delay tick for mra (ms)")
    route.add_argument(
        "--exact-delay", action="store_true",
        help="mra only: require the route delay to equal the bound exactly",
    )
    route.add_argument("--json", action="store_true", help="machine-readable output")
    route.add_argument("--fig", help="render topology with the route highlighted")

    comp = sub.add_parser("compare", help="agreement harness over random instances")
    comp.add_argument("--trials", type=int, required=True)
    comp.add_argument("--n", type=int, default=8, help="nodes per instance")
    comp.add_argument("--tau-list", default="4,6,8,10,12,14,16,18,20")
    comp.add_argument("--seed", type=int, default=1)
    comp.add_argument("--area", type=float, default=1000.0)
    comp.add_argument("--radius", type=float, help="default: degree-8 density")
    comp.add_argument("--rate-model", default="uniform:1,10")
    comp.add_argument("--delay-model", default="constant:2")
    comp.add_argument("--out-csv", required=True)
    comp.add_argument(
        "--counterexample-dir",
        help="where to persist divergence bundles "
        "(default: $WMNROUTE_COUNTEREXAMPLE_DIR or ./counterexamples)",
    )
    comp.add_argument("--fig", help="agreement figure path (default: beside the CSV)")
    comp.add_argument("--no-fig", action="store_true")

    bench = sub.add_parser("bench", help="measure runtime scaling")
    bench.add_argument(
        "--algos", default="dijkstra,bellman-ford,floyd-warshall",
        help="comma-separated solver names",
    )
    bench.add_argument("--sizes", default="50,100,200,400")
    bench.add_argument("--reps", type=int, default=5)
    bench.add_argument("--seed", type=int, default=1)
    bench.add_argument("--degree", type=float, default=12.0,
                       help="expected node degree (density is held fixed)")
    bench.add_argument("--tau", type=float, default=50.0)
    bench.add_argument("--out-csv", required=True)
    bench.add_argument("--fig", help="timing figure path (default: beside the CSV)")
    bench.add_argument("--no-fig", action="store_true")

    exp = sub.add_parser("export", help="export a graph (and optional route) as DOT")
    exp.add_argument("--in", dest="infile", required=True)
    exp.add_argument("--out", required=True)
    exp.add_argument(
        "--route", metavar="SRC,DST,TAU",
        help="highlight the exact optimal route for this query",
    )
    exp.add_argument("--fig", help="also render the topology to this image")
    return parser


def _usage_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_USAGE


def _print_result(graph: Graph, result: RouteResult, as_json: bool) -> None:
    if as_json:
        payload: dict = {"status": result.status.value}
        if result.is_found:
            payload["path"] = [graph.node_name(i) for i in result.path.nodes]
            # the single-node route carries the infinite-rate sentinel,
            # which strict JSON cannot represent as a number
            payload["rate_mbps"] = (
                result.rate if math.isfinite(result.rate) else "inf"
            )
            payload["delay_ms"] = result.delay
        print(json.dumps(payload))
        return
    print(f"status: {result.status.value}")
    if result.is_found:
        print("path:", " -> ".join(str(graph.node_name(i)) for i in result.path.nodes))
        print(f"rate_mbps: {result.rate:g}")
        print(f"delay_ms: {result.delay:g}")


def _cmd_gen(args) -> int:
    try:
        params = TopologyParams(
            n=args.n,
            area_side=args.area,
            radius=args.radius,
            seed=args.seed,
            rate_model=ValueModel.parse(args.rate_model),
            delay_model=ValueModel.parse(args.delay_model),
        )
        graph = generate_topology(params)
    except InvalidParamsError as exc:
        return _usage_error(str(exc))
    header = {
        "n": params.n,
        "area_side_m": params.area_side,
        "radius_m": params.radius,
        "seed": params.seed,
        "rate_model": params.rate_model.spec(),
        "delay_model": params.delay_model.spec(),
    }
    save_graph(graph, args.out, generator=header)
    print(f"nodes: {graph.n}")
    print(f"links: {graph.link_count}")
    if args.fig:
        from .figures import save_topology_figure

        save_topology_figure(graph, args.fig, title=f"n={graph.n}, seed={params.seed}")
    return EXIT_OK


def _cmd_route(args) -> int:
    graph = load_graph(args.infile)
    try:
        src = graph.node_index(args.src)
        dst = graph.node_index(args.dst)
        query = RouteQuery(src, dst, args.tau)
        if args.algo == "mra":
            result = route_mra(graph, query, args.tick, exact_delay=args.exact_delay)
        else:
            result = run_algorithm(args.algo, graph, query)
    except (InvalidQueryError, QuantizationError, InvalidParamsError) as exc:
        return _usage_error(str(exc))
    _print_result(graph, result, args.json)
    if args.fig:
        from .figures import save_topology_figure

        save_topology_figure(
            graph,
            args.fig,
            route=result.path if result.is_found else None,
            title=f"{args.src} -> {args.dst}, tau={args.tau:g} ms ({args.algo})",
        )
    return EXIT_OK if result.is_found else EXIT_INFEASIBLE


def _compare_rows(args):
    try:
        taus = [float(t) for t in args.tau_list.split(",") if t.strip()]
    except ValueError:
        raise InvalidParamsError(f"bad --tau-list {args.tau_list!r}") from None
    if args.trials < 1:
        raise InvalidParamsError("--trials must be >= 1")
    if not taus:
        raise InvalidParamsError("--tau-list is empty")
    rate_model = ValueModel.parse(args.rate_model)
    delay_model = ValueModel.parse(args.delay_model)
    if args.radius is not None:
        radius = args.radius
    else:
        from .bench import radius_for_expected_degree

        radius = radius_for_expected_degree(args.n, args.area, 8.0)
    for trial in range(args.trials):
        seed = args.seed + trial
        params = TopologyParams(
            n=args.n,
            area_side=args.area,
            radius=radius,
            seed=seed,
            rate_model=rate_model,
            delay_model=delay_model,
        )
        graph = generate_topology(params)
        picker = Xoshiro256PlusPlus(seed ^ 0x5DEECE66D)
        src = picker.randrange(graph.n)
        dst = picker.randrange(graph.n)
        tau = taus[trial % len(taus)]
        yield seed, graph, RouteQuery(src, dst, tau)


def _cmd_compare(args) -> int:
    try:
        rows = list(_compare_rows(args))
    except InvalidParamsError as exc:
        return _usage_error(str(exc))
    fieldnames = (
        ["seed", "n", "L", "src", "dst", "tau"]
        + [f"rate_{name}" for name in ALGORITHMS]
        + ["oracle_rate", "agree", "matches_oracle"]
    )
    agreements = {name: 0 for name in ALGORITHMS}
    checked = 0
    mismatches = []
    with open(args.out_csv, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=fieldnames)
        writer.writeheader()
        for seed, graph, query in rows:
            report = compare_on_instance(
                graph,
                query,
                instance={"seed": seed, "n": graph.n},
                counterexample_dir=args.counterexample_dir,
            )
            checked += 1
            for name in ALGORITHMS:
                if report.matches_oracle.get(name):
                    agreements[name] += 1
            if not report.clean:
                mismatches.append(report)
            row = {
                "seed": seed,
                "n": graph.n,
                "L": graph.link_count,
                "src": graph.node_name(query.source),
                "dst": graph.node_name(query.destination),
                "tau": f"{query.bound:g}",
                "oracle_rate": _csv_rate(report.oracle),
                "agree": str(report.agree_rates).lower(),
                "matches_oracle": str(
                    all(v is True for v in report.matches_oracle.values())
                ).lower(),
            }
            for name in ALGORITHMS:
                row[f"rate_{name}"] = _csv_rate(report.results[name])
            writer.writerow(row)
    print(f"instances: {checked}")
    for name in ALGORITHMS:
        print(f"agreement {name}: {agreements[name]}/{checked}")
    if mismatches:
        print(f"divergent instances: {len(mismatches)}")
        for report in mismatches:
            print(f"  counterexample: {report.counterexample_path}")
    else:
        print("divergent instances: 0")
    if not args.no_fig:
        from .figures import save_agreement_figure

        fig_path = args.fig or _default_fig_path(args.out_csv)
        save_agreement_figure(
            {name: agreements[name] / checked for name in ALGORITHMS},
            fig_path,
            trials=checked,
        )
    return EXIT_OK


def _csv_rate(result: Optional[RouteResult]) -> str:
    if result is None or not result.is_found:
        return ""
    return repr(result.rate)


def _default_fig_path(csv_path: str) -> str:
    return (csv_path[:-4] if csv_path.endswith(".csv") else csv_path) + ".png"


def _cmd_bench(args) -> int:
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    try:
        sizes = sorted({int(s) for s in args.sizes.split(",") if s.strip()})
        if not sizes or not algos:
            raise ValueError("empty --sizes or --algos")
    except ValueError as exc:
        return _usage_error(str(exc))
    aliases = {"fw": "floyd-warshall", "bf": "bellman-ford"}
    algos = [aliases.get(a, a) for a in algos]
    unknown = [a for a in algos if a not in ALGORITHMS]
    if unknown:
        return _usage_error(f"unknown algorithms: {', '.join(unknown)}")
    try:
        params = BenchParams(
            seed=args.seed,
            expected_degree=args.degree,
            repetitions=args.reps,
            bound=args.tau,
        )
        all_records = []
        fits = []
        for algo in algos:
            records = measure_runtime(algo, sizes, params)
            all_records.extend(records)
            try:
                fits.append(
                    fit_complexity_exponent(
                        records, min_sizes=min(4, len(sizes)), min_span=2.0
                    )
                )
            except InsufficientDataError as exc:
                print(f"no slope for {algo}: {exc}", file=sys.stderr)
    except InvalidParamsError as exc:
        return _usage_error(str(exc))
    with open(args.out_csv, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["algo", "n", "L", "reps", "median_ms", "slope"])
        for rec in all_records:
            writer.writerow(
                [rec.algorithm, rec.n, rec.links, rec.repetitions,
                 f"{rec.median_s * 1e3:.6f}", ""]
            )
        for fit in fits:
            writer.writerow([fit.algorithm, "", "", "", "", f"{fit.slope:.4f}"])
    for rec in all_records:
        print(
            f"{rec.algorithm:16s} n={rec.n:<6d} L={rec.links:<7d} "
            f"median={rec.median_s * 1e3:.3f} ms"
        )
    for fit in fits:
        print(f"{fit.algorithm:16s} slope={fit.slope:.3f}")
    if not args.no_fig and all_records:
        from .figures import save_timing_figure

        save_timing_figure(all_records, fits, args.fig or _default_fig_path(args.out_csv))
    return EXIT_OK


def _cmd_export(args) -> int:
    graph = load_graph(args.infile)
    route_path = None
    if args.route:
        try:
            src_s, dst_s, tau_s = args.route.split(",")
            query = RouteQuery(
                graph.node_index(src_s.strip()),
                graph.node_index(dst_s.strip()),
                float(tau_s),
            )
        except (ValueError, InvalidQueryError) as exc:
            return _usage_error(f"bad --route: {exc}")
        from .oracle import threshold_exact_route

        result = threshold_exact_route(graph, query)
        if result.is_found:
            route_path = result.path
        else:
            print("route: infeasible (nothing highlighted)", file=sys.stderr)
    save_dot(graph, args.out, route=route_path)
    print(f"wrote {args.out}")
    if args.fig:
        from .figures import save_topology_figure

        save_topology_figure(graph, args.fig, route=route_path)
    return EXIT_OK


_COMMANDS = {
    "gen": _cmd_gen,
    "route": _cmd_route,
    "compare": _cmd_compare,
    "bench": _cmd_bench,
    "export": _cmd_export,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except GraphFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except WmnrouteError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
