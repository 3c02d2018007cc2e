"""Command-line interface.

Subcommands: ``centrality``, ``sweep``, ``affinity``, ``compare``,
``contrast`` and ``generate``. Exit codes: 0 success, 1 usage error,
2 input/parse error, 3 numerical failure.

Data outputs depend only on the flags and input files. Run metadata that
varies between runs (wall-clock duration, ``--jobs``) goes to a separate
``*.manifest.json`` / ``manifest.json`` file next to the outputs.
"""

import argparse
import json
import math
import re
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__, reports
from .datasets import (
    GeneratorParams,
    format_labels,
    karate_club,
    load_edge_list,
    planted_partition,
)
from .errors import ConvergenceError, EdgeListError, GraphError
from .experiments import (
    affinity,
    centrality_population_report,
    compare_generators,
    edge_removal_sweep,
    laplacian_sweep_noncorrelation,
    partition_by_reference,
)
from .graph import format_edge_list
from .walk import DEFAULT_DT_FRACTION, Generator, WalkConfig

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_time(text):
    """Parse a duration: a float literal, ``pi``, or ``<number>pi`` (e.g. ``100pi``)."""
    s = text.strip().lower()
    m = re.fullmatch(r"([0-9.eE+-]*)\s*\*?\s*pi", s)
    try:
        if m:
            factor = float(m.group(1)) if m.group(1) else 1.0
            return factor * math.pi
        return float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid time {text!r}") from None


def _add_input(p, required=True):
    src = p.add_mutually_exclusive_group(required=required)
    src.add_argument("--dataset", choices=["karate"], help="embedded network")
    src.add_argument("--input", type=Path, help="edge-list file (one 'u v' pair per line)")
    p.add_argument("--labels", type=Path, help="labels sidecar ('node_id community_id' per line)")


def _add_walk(p, generator=True, initial=True):
    p.add_argument("--T", dest="T", type=parse_time, default=100 * math.pi,
                   help="total time; literal or e.g. '100pi' (default 100pi)")
    p.add_argument("--dt-frac", type=float, default=DEFAULT_DT_FRACTION,
                   help="sampling step as a fraction of T (default 1e-3)")
    p.add_argument("--dt", type=float, default=None, help="absolute sampling step; overrides --dt-frac")
    if generator:
        p.add_argument("--generator", choices=[g.value for g in Generator], default="adjacency")
    if initial:
        p.add_argument("--initial", choices=["uniform", "localized"], default="uniform")
        p.add_argument("--start", type=int, default=None, help="start node for --initial localized")


def build_parser():
    parser = _Parser(prog="qwalknet", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("centrality", help="degree centrality vs time-averaged population")
    _add_input(p)
    _add_walk(p, generator=False, initial=False)
    p.add_argument("-o", "--output", type=Path, help="output file (default: stdout)")
    p.add_argument("--format", choices=["csv", "json"], default=None,
                   help="output format (default: from the output suffix, else csv)")

    p = sub.add_parser("sweep", help="remove each edge in turn and record population flows")
    _add_input(p)
    _add_walk(p)
    p.add_argument("-o", "--output-dir", type=Path, required=True)
    p.add_argument("--jobs", type=int, default=1, help="worker threads (output is independent of this)")

    p = sub.add_parser("affinity", help="node affinity matrix and SVG heatmap")
    _add_input(p, required=False)
    p.add_argument("--sweep", type=Path, help="sweep.json from a previous 'sweep' run")
    _add_walk(p)
    p.add_argument("-o", "--output-dir", type=Path, required=True)
    p.add_argument("--reference", type=int, default=1, help="reference node for the bipartition summary")
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("compare", help="adjacency vs Laplacian populations from a localized start")
    _add_input(p)
    _add_walk(p, generator=False, initial=False)
    p.add_argument("--start", type=int, required=True)
    p.add_argument("-o", "--output", type=Path, help="output CSV (default: stdout)")

    p = sub.add_parser("contrast", help="community flow-sign agreement: adjacency vs Laplacian sweeps")
    _add_input(p)
    _add_walk(p, generator=False, initial=False)
    p.add_argument("--start", type=int, default=1, help="localized start of the Laplacian walk")
    p.add_argument("-o", "--output", type=Path, help="output JSON (default: stdout)")
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("generate", help="planted-partition benchmark graph")
    p.add_argument("-c", "--communities", type=int, required=True)
    p.add_argument("-s", "--size", type=int, required=True, help="nodes per community")
    p.add_argument("--pin", type=float, required=True)
    p.add_argument("--pout", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", type=Path, required=True,
                   help="output prefix; writes PREFIX.edges and PREFIX.labels")
    return parser


def _load(args):
    if getattr(args, "dataset", None) == "karate":
        net = karate_club()
        source = {"dataset": "karate"}
    else:
        net = load_edge_list(args.input, getattr(args, "labels", None))
        source = {"input": str(args.input)}
        if args.labels is not None:
            source["labels"] = str(args.labels)
    return net, source


def _config(args, generator=None, start=None):
    gen = Generator(generator or getattr(args, "generator", "adjacency"))
    if start is None and getattr(args, "initial", "uniform") == "localized":
        if args.start is None:
            raise UsageError("--initial localized requires --start")
        start = args.start
    dt = args.dt if args.dt is not None else args.T * args.dt_frac
    try:
        return WalkConfig(generator=gen, T=args.T, dt=dt, start=start)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _check_start(start, n):
    if start is not None and not 1 <= start <= n:
        raise UsageError(f"start node {start} out of range 1..{n}")


def _walk_params(cfg):
    return {"T": cfg.T, "dt": cfg.dt, "generator": cfg.generator.value, "initial": cfg.initial}


def _manifest(command, params):
    return {"command": command, "parameters": params, "version": __version__}


def _write_run_manifest(path, manifest, started, **extra):
    run = dict(manifest)
    run.update(extra)
    run["duration_seconds"] = round(time.perf_counter() - started, 6)
    reports.atomic_write(path, json.dumps(run, indent=1) + "\n")


def _emit(path, text):
    if path is None:
        sys.stdout.write(text)
    else:
        reports.atomic_write(path, text)


def cmd_centrality(args, started):
    net, source = _load(args)
    cfg = _config(args, generator="adjacency")
    report = centrality_population_report(net.graph, cfg)
    manifest = _manifest("centrality", {**source, **_walk_params(cfg)})
    fmt_ = args.format or ("json" if args.output and args.output.suffix == ".json" else "csv")
    text = reports.centrality_json(report, manifest) if fmt_ == "json" else reports.centrality_csv(report)
    _emit(args.output, text)
    rho = "undefined" if report.spearman_rho is None else f"{report.spearman_rho:.6f}"
    print(f"spearman_rho={rho}", file=sys.stderr)
    if args.output is not None:
        _write_run_manifest(args.output.with_name(args.output.name + ".manifest.json"), manifest, started)


def _run_sweep(args, net, source):
    cfg = _config(args)
    _check_start(cfg.start, net.graph.n)
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    sweep = edge_removal_sweep(net.graph, cfg, jobs=args.jobs)
    return sweep, {**source, **_walk_params(cfg)}


def cmd_sweep(args, started):
    net, source = _load(args)
    sweep, params = _run_sweep(args, net, source)
    manifest = _manifest("sweep", params)
    out = args.output_dir
    files = {
        "baseline.csv": reports.baseline_csv(sweep),
        "deltas.csv": reports.deltas_csv(sweep),
        "signs.csv": reports.signs_csv(sweep),
        "sweep.json": reports.sweep_json(sweep, net.graph, manifest),
    }
    for name, text in files.items():
        reports.atomic_write(out / name, text)
    near_zero = sum(r.near_zero_count for r in sweep.per_edge)
    bridges = sum(r.disconnected for r in sweep.per_edge)
    print(f"edges={len(sweep.per_edge)} bridges={bridges} near_zero_deltas={near_zero}", file=sys.stderr)
    _write_run_manifest(out / "manifest.json", manifest, started, jobs=args.jobs)


def cmd_affinity(args, started):
    if args.sweep is not None:
        if args.dataset or args.input:
            raise UsageError("--sweep cannot be combined with --dataset/--input")
        try:
            sweep, graph, upstream = reports.read_sweep(args.sweep)
        except (KeyError, TypeError, ValueError) as exc:
            raise EdgeListError(f"cannot read sweep file {args.sweep}: {exc}") from exc
        params = {"sweep": str(args.sweep), "upstream": upstream}
    elif args.dataset or args.input:
        net, source = _load(args)
        graph = net.graph
        sweep, params = _run_sweep(args, net, source)
    else:
        raise UsageError("one of --sweep, --dataset or --input is required")
    if not 1 <= args.reference <= graph.n:
        raise UsageError(f"reference node {args.reference} out of range 1..{graph.n}")
    alpha = affinity(sweep)
    manifest = _manifest("affinity", params)
    out = args.output_dir
    reports.atomic_write(out / "affinity.csv", reports.affinity_csv(alpha))
    reports.atomic_write(out / "affinity.svg", reports.heatmap_svg(alpha))
    part = partition_by_reference(alpha, args.reference)
    print(f"with_reference={list(part.with_reference)}", file=sys.stderr)
    print(f"against_reference={list(part.against_reference)} ambiguous={len(part.ambiguous)}",
          file=sys.stderr)
    _write_run_manifest(out / "manifest.json", manifest, started)


def cmd_compare(args, started):
    net, source = _load(args)
    _check_start(args.start, net.graph.n)
    cfg = _config(args, generator="adjacency", start=args.start)
    cmp = compare_generators(net.graph, args.start, cfg)
    _emit(args.output, reports.comparison_csv(cmp))
    print(f"max_gap={cmp.max_gap:.6e}", file=sys.stderr)
    if args.output is not None:
        params = {**source, **_walk_params(cfg), "generator": "both"}
        _write_run_manifest(args.output.with_name(args.output.name + ".manifest.json"),
                            _manifest("compare", params), started)


def cmd_contrast(args, started):
    net, source = _load(args)
    if net.labels is None:
        raise UsageError("contrast needs community labels (--labels, or --dataset karate)")
    _check_start(args.start, net.graph.n)
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    cfg = _config(args, generator="adjacency")
    res = laplacian_sweep_noncorrelation(net.graph, args.start, cfg, net.labels, jobs=args.jobs)
    manifest = _manifest("contrast", {**source, "T": cfg.T, "dt": cfg.dt, "start": args.start})
    doc = {
        "adjacency_uniform": {"per_community": {str(k): v for k, v in res.adjacency.per_community.items()},
                              "overall": res.adjacency.overall},
        "laplacian_localized": {"per_community": {str(k): v for k, v in res.laplacian.per_community.items()},
                                "overall": res.laplacian.overall},
        "manifest": manifest,
    }
    _emit(args.output, json.dumps(doc, indent=1) + "\n")


def cmd_generate(args, started):
    try:
        params = GeneratorParams(args.communities, args.size, args.pin, args.pout, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    net = planted_partition(params)
    prefix = args.output
    reports.atomic_write(prefix.with_name(prefix.name + ".edges"), format_edge_list(net.graph))
    reports.atomic_write(prefix.with_name(prefix.name + ".labels"), format_labels(net.labels))
    if not net.connected:
        print(f"warning: graph is disconnected after retries (seed {net.seed})", file=sys.stderr)
    manifest = _manifest("generate", {
        "communities": args.communities, "size": args.size, "p_in": args.pin, "p_out": args.pout,
        "seed": args.seed, "seed_used": net.seed, "connected": net.connected,
    })
    _write_run_manifest(prefix.with_name(prefix.name + ".manifest.json"), manifest, started)


COMMANDS = {
    "centrality": cmd_centrality,
    "sweep": cmd_sweep,
    "affinity": cmd_affinity,
    "compare": cmd_compare,
    "contrast": cmd_contrast,
    "generate": cmd_generate,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    started = time.perf_counter()
    try:
        with np.errstate(invalid="raise", divide="raise", over="raise"):
            COMMANDS[args.command](args, started)
    except UsageError as exc:
        print(f"qwalknet {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GraphError, OSError) as exc:
        print(f"qwalknet {args.command}: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ConvergenceError, FloatingPointError) as exc:
        print(f"qwalknet {args.command}: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"qwalknet {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
