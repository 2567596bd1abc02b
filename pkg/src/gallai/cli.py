"""``gallai`` command line: decompose, verify, oracle, table, pseudo-tree, experiment.

Exit codes: 0 success, 1 structured failure or invalid input decomposition,
2 usage, parse, or connectivity errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import FORMAT_VERSION, __version__
from .bpd import DEFAULT_RETRIES
from .experiment import CorpusError, report_csv, report_json, run_experiment
from .graph import (
    GraphError,
    parse_decomposition,
    parse_graph,
    serialize_decomposition,
    verify_decomposition,
)
from .ham_table import Permutation, apply_permutation, build_table, verify_table
from .methods import METHODS, result_record, run_method
from .oracle import KERNEL, KERNEL_MAX_EDGES, EdgeLimitExceeded, default_limit, min_path_decomposition
from .pseudo_tree import bfs_label, build_pseudo_tree

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _load_graph(path: str):
    try:
        g = parse_graph(_read(path))
    except GraphError as exc:
        raise UsageError(f"{path}: {exc}") from exc
    try:
        g.require_connected()
    except GraphError as exc:
        raise UsageError(f"{path}: {exc}") from exc
    return g


def cmd_decompose(args: argparse.Namespace) -> int:
    g = _load_graph(args.graph)
    res = run_method(args.method, g, seed=args.seed, retries=args.retries)
    rec = result_record(g, res)
    if args.trace:
        for tr in res.stats.get("trace", []):
            print(json.dumps(tr, sort_keys=True))
    if args.json:
        print(json.dumps(rec, sort_keys=True))
    elif rec["valid"]:
        sys.stdout.write(serialize_decomposition(res.decomposition))
    else:
        print(f"{args.method} failed at {rec['failure']['stage']}", file=sys.stderr)
        print(json.dumps(rec["failure"]["detail"], sort_keys=True), file=sys.stderr)
    return EXIT_OK if rec["valid"] else EXIT_FAILED


def cmd_verify(args: argparse.Namespace) -> int:
    g = _load_graph(args.graph)
    try:
        d = parse_decomposition(_read(args.decomposition))
    except GraphError as exc:
        raise UsageError(f"{args.decomposition}: {exc}") from exc
    rep = verify_decomposition(g, d)
    out = {
        "valid": rep.valid,
        "covers_all_edges": rep.covers_all_edges,
        "edge_disjoint": rep.edge_disjoint,
        "paths_simple": rep.paths_simple,
        "path_count": rep.path_count,
        "bound": rep.bound,
        "within_bound": rep.within_bound,
        "offending_items": list(rep.offending_items),
    }
    print(json.dumps(out, indent=2, sort_keys=True))
    return EXIT_OK if rep.valid else EXIT_FAILED


def cmd_oracle(args: argparse.Namespace) -> int:
    g = _load_graph(args.graph)
    limit = args.max_edges if args.max_edges is not None else default_limit()
    if limit > KERNEL_MAX_EDGES:
        raise UsageError(f"--max-edges cannot exceed {KERNEL_MAX_EDGES}")
    try:
        res = min_path_decomposition(g, limit)
    except EdgeLimitExceeded as exc:
        print(f"oracle: {exc}; raise --max-edges to search anyway", file=sys.stderr)
        return EXIT_FAILED
    if not verify_decomposition(g, res.witness).valid:
        print("oracle: witness failed verification", file=sys.stderr)
        return EXIT_FAILED
    if args.json:
        print(
            json.dumps(
                {
                    "minimum": res.minimum,
                    "witness": res.witness.as_lists(),
                    "nodes_explored": res.nodes_explored,
                    "kernel": KERNEL,
                },
                sort_keys=True,
            )
        )
    else:
        print(f"minimum {res.minimum}")
        sys.stdout.write(serialize_decomposition(res.witness))
    return EXIT_OK


def cmd_table(args: argparse.Namespace) -> int:
    try:
        t = build_table(args.order)
        if args.permute is not None:
            t = apply_permutation(t, Permutation.random(args.order, args.permute))
    except GraphError as exc:
        raise UsageError(str(exc)) from exc
    if not verify_table(t):
        print("table failed verification", file=sys.stderr)
        return EXIT_FAILED
    print(t)
    return EXIT_OK


def cmd_pseudo_tree(args: argparse.Namespace) -> int:
    g = _load_graph(args.graph)
    sys.stdout.write(build_pseudo_tree(g, bfs_label(g, args.start)).dump())
    return EXIT_OK


def cmd_experiment(args: argparse.Namespace) -> int:
    try:
        report = run_experiment(
            args.corpus,
            args.methods,
            seed=args.seed,
            retries=args.retries,
            oracle_limit=args.max_edges,
            timing=args.timing,
            fixtures_dir=args.fixtures_dir,
        )
    except (CorpusError, GraphError) as exc:
        raise UsageError(str(exc)) from exc
    text = report_json(report)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(report_csv(report))
    invalid = sum(m["invalid_emitted"] for m in report["aggregates"]["methods"].values())
    return EXIT_FAILED if invalid else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gallai", description="Edge-disjoint path decompositions of graphs.")
    p.add_argument(
        "--version",
        action="version",
        version=f"gallai {__version__} (format {FORMAT_VERSION}, oracle kernel {KERNEL})",
    )
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("decompose", help="decompose a graph file into paths")
    d.add_argument("--method", choices=METHODS, required=True)
    d.add_argument("--seed", type=int, default=0)
    d.add_argument("--retries", type=int, default=DEFAULT_RETRIES)
    d.add_argument("--json", action="store_true", help="print the JSON report instead of paths")
    d.add_argument("--trace", action="store_true", help="emit insertion traces as JSON lines")
    d.add_argument("graph")
    d.set_defaults(func=cmd_decompose)

    v = sub.add_parser("verify", help="check a decomposition file against a graph file")
    v.add_argument("graph")
    v.add_argument("decomposition")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help="exact minimum path decomposition")
    o.add_argument("--max-edges", type=int, default=None)
    o.add_argument("--json", action="store_true")
    o.add_argument("graph")
    o.set_defaults(func=cmd_oracle)

    t = sub.add_parser("table", help="print a Hamiltonian path table of K_order")
    t.add_argument("order", type=int)
    t.add_argument("--permute", metavar="SEED", default=None, help="relabel by a seeded random permutation")
    t.set_defaults(func=cmd_table)

    pt = sub.add_parser("pseudo-tree", help="dump the pseudo tree of a graph")
    pt.add_argument("--start", type=int, default=1)
    pt.add_argument("graph")
    pt.set_defaults(func=cmd_pseudo_tree)

    x = sub.add_parser("experiment", help="run methods over a corpus and write a JSON report")
    x.add_argument("--corpus", required=True, help="trees:N | connected:N | random:N,E,COUNT,SEED | dir:PATH | standard[:SEED]")
    x.add_argument("--methods", default="all", help="all, or a comma list including oracle")
    x.add_argument("--seed", type=int, default=0)
    x.add_argument("--retries", type=int, default=DEFAULT_RETRIES)
    x.add_argument("--max-edges", type=int, default=None, help="oracle edge limit")
    x.add_argument("--output", "-o", default=None)
    x.add_argument("--csv", default=None)
    x.add_argument("--timing", action="store_true", help="include wall-clock runtimes (breaks byte-identity)")
    x.add_argument("--fixtures-dir", default=None, help="write conjecture violations here as graph files")
    x.set_defaults(func=cmd_experiment)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"gallai: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GraphError as exc:
        print(f"gallai: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
