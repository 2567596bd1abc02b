"""Corpus runner: every method on every graph, re-verified, aggregated into one report.

Reports are byte-identical for identical flags and seed unless wall-clock
timings are requested.
"""

from __future__ import annotations

import csv
import io
import json
import os
import time
from dataclasses import dataclass
from pathlib import Path as FsPath
from typing import Iterable, Optional

from . import FORMAT_VERSION, __version__
from .bpd import DEFAULT_RETRIES
from .generators import (
    all_connected_graphs,
    all_labeled_trees,
    random_connected_graph,
    random_graph_corpus,
)
from .graph import DecompResult, Graph, GraphError, gallai_bound, parse_graph, serialize_graph
from .mepp import average_length_stats
from .methods import METHODS, result_record, run_method
from .oracle import EdgeLimitExceeded, default_limit, min_path_decomposition

ALL_METHODS = METHODS + ("oracle",)
STANDARD_RANDOM = 200
STANDARD_MAX_N = 12
STANDARD_MAX_TREE_N = 7


class CorpusError(ValueError):
    pass


@dataclass(frozen=True)
class CorpusItem:
    name: str
    graph: Graph


def load_corpus(spec: str) -> tuple[dict, list[CorpusItem]]:
    """Parse a corpus descriptor into ``(descriptor, items)``.

    Forms: ``trees:N``, ``connected:N``, ``random:N,E,COUNT,SEED``,
    ``dir:PATH`` and ``standard[:SEED]`` (200 random graphs with n <= 12 plus
    every labelled tree with n <= 7).
    """
    kind, _, arg = spec.partition(":")
    try:
        if kind == "trees":
            n = int(arg)
            items = [CorpusItem(f"trees:{n}#{i}", t) for i, t in enumerate(all_labeled_trees(n))]
            return {"kind": kind, "n": n}, items
        if kind == "connected":
            n = int(arg)
            items = [CorpusItem(f"connected:{n}#{i}", g) for i, g in enumerate(all_connected_graphs(n))]
            return {"kind": kind, "n": n}, items
        if kind == "random":
            n, e, count, seed = (int(x) for x in arg.split(","))
            items = [
                CorpusItem(f"random:{n},{e},{seed}#{i}", random_connected_graph(n, e, seed=f"{seed}:{i}"))
                for i in range(count)
            ]
            return {"kind": kind, "n": n, "e": e, "count": count, "seed": seed}, items
        if kind == "standard":
            seed = int(arg) if arg else 0
            items = [
                CorpusItem(f"standard:{seed}#random{i}", g)
                for i, g in enumerate(random_graph_corpus(STANDARD_RANDOM, STANDARD_MAX_N, seed))
            ]
            for n in range(1, STANDARD_MAX_TREE_N + 1):
                items += [CorpusItem(f"trees:{n}#{i}", t) for i, t in enumerate(all_labeled_trees(n))]
            return {"kind": kind, "seed": seed}, items
        if kind == "dir":
            root = FsPath(arg)
            if not root.is_dir():
                raise CorpusError(f"corpus directory {arg!r} does not exist")
            items = []
            for f in sorted(p for p in root.iterdir() if p.is_file()):
                try:
                    g = parse_graph(f.read_text(encoding="utf-8"))
                except GraphError as exc:
                    raise CorpusError(f"{f.name}: {exc}") from exc
                items.append(CorpusItem(f.name, g))
            return {"kind": kind, "path": arg}, items
    except (ValueError, GraphError) as exc:
        if isinstance(exc, CorpusError):
            raise
        raise CorpusError(f"bad corpus {spec!r}: {exc}") from exc
    raise CorpusError(
        f"unknown corpus {spec!r}; use trees:N, connected:N, random:N,E,COUNT,SEED, dir:PATH or standard[:SEED]"
    )


def parse_methods(spec: str) -> tuple[str, ...]:
    if spec == "all":
        return ALL_METHODS
    names = tuple(x.strip() for x in spec.split(",") if x.strip())
    bad = [x for x in names if x not in ALL_METHODS]
    if bad or not names:
        raise CorpusError(f"unknown method(s) {', '.join(bad) or spec!r}; choose from {', '.join(ALL_METHODS)}")
    return names


def _oracle_record(g: Graph, limit: int) -> tuple[dict, Optional[int]]:
    try:
        res = min_path_decomposition(g, limit)
    except EdgeLimitExceeded as exc:
        rec = result_record(g, DecompResult("oracle"))
        rec["failure"] = {"stage": "edge_limit", "detail": {"e": exc.e, "limit": exc.limit}}
        return rec, None
    rec = result_record(g, DecompResult("oracle", res.witness))
    rec["nodes_explored"] = res.nodes_explored
    return rec, res.minimum


def _probes(g: Graph, results: dict[str, DecompResult]) -> dict:
    """Conjecture probes; each runs its decomposer if the method list did not."""
    if g.e == 0:
        return {}
    out = {}
    mepp = results.get("mepp") or run_method("mepp", g)
    if mepp.ok:
        st = average_length_stats(g, mepp)
        out["avg_length_probe"] = {
            "avg_length": f"{st.avg_length.numerator}/{st.avg_length.denominator}",
            "threshold": st.threshold,
            "holds": st.holds,
        }
    pt = results.get("pseudo-tree") or run_method("pseudo-tree", g)
    out["pair_count_probe"] = {
        "D": pt.stats["D"],
        "S": pt.stats["S"],
        "bound": gallai_bound(g.n),
        "holds": pt.stats["pairs_within_bound"],
    }
    return out


def _rate(num: int, den: int) -> Optional[float]:
    return round(num / den, 6) if den else None


def _aggregate(graphs: list[dict], methods: Iterable[str]) -> dict:
    agg: dict = {"methods": {}, "probes": {}}
    for name in methods:
        recs = [gr["methods"][name] for gr in graphs]
        runs = len(recs)
        ok = [r for r in recs if r["valid"]]
        invalid = sum(1 for r in recs if r["failure"] and r["failure"]["stage"] == "verify")
        within = sum(1 for r in ok if r["within_bound"])
        stages: dict[str, int] = {}
        for r in recs:
            if r["failure"]:
                stages[r["failure"]["stage"]] = stages.get(r["failure"]["stage"], 0) + 1
        gaps = [r["gap_to_minimum"] for r in ok if "gap_to_minimum" in r]
        agg["methods"][name] = {
            "runs": runs,
            "successes": len(ok),
            "success_rate": _rate(len(ok), runs),
            "within_bound": within,
            "within_bound_rate": _rate(within, len(ok)),
            "invalid_emitted": invalid,
            "failures_by_stage": dict(sorted(stages.items())),
            "mean_gap_to_minimum": round(sum(gaps) / len(gaps), 6) if gaps else None,
        }
    for probe in ("avg_length_probe", "pair_count_probe"):
        evaluated = [gr for gr in graphs if probe in gr["probes"]]
        holds = sum(1 for gr in evaluated if gr["probes"][probe]["holds"])
        agg["probes"][probe] = {
            "evaluated": len(evaluated),
            "holds": holds,
            "hold_rate": _rate(holds, len(evaluated)),
            "violations": [gr["index"] for gr in evaluated if not gr["probes"][probe]["holds"]],
        }
    return agg


def _write_fixture(fixtures_dir: str, probe: str, corpus: str, gr: dict, g: Graph) -> str:
    os.makedirs(fixtures_dir, exist_ok=True)
    fname = f"{probe}_{gr['index']:06d}.txt"
    header = [
        f"# {probe} violation",
        f"# corpus {corpus} item {gr['name']}",
        f"# {json.dumps(gr['probes'][probe], sort_keys=True)}",
    ]
    with open(os.path.join(fixtures_dir, fname), "w", encoding="utf-8") as fh:
        fh.write("\n".join(header) + "\n" + serialize_graph(g))
    return fname


def run_experiment(
    corpus: str,
    methods: str | Iterable[str] = "all",
    seed: int = 0,
    retries: int = DEFAULT_RETRIES,
    oracle_limit: Optional[int] = None,
    timing: bool = False,
    fixtures_dir: Optional[str] = None,
) -> dict:
    descriptor, items = load_corpus(corpus)
    names = parse_methods(methods) if isinstance(methods, str) else tuple(methods)
    limit = default_limit() if oracle_limit is None else oracle_limit
    graphs = []
    for index, item in enumerate(items):
        g = item.graph
        if not g.is_connected():
            raise CorpusError(f"{item.name}: graph is disconnected")
        results: dict[str, DecompResult] = {}
        recs: dict[str, dict] = {}
        minimum = None
        if "oracle" in names:
            t0 = time.perf_counter()
            recs["oracle"], minimum = _oracle_record(g, limit)
            if timing:
                recs["oracle"]["runtime_ms"] = round((time.perf_counter() - t0) * 1000, 3)
        for name in names:
            if name == "oracle":
                continue
            t0 = time.perf_counter()
            res = run_method(name, g, seed=seed, retries=retries)
            elapsed = time.perf_counter() - t0
            results[name] = res
            rec = result_record(g, res)
            if minimum is not None and rec["valid"]:
                rec["gap_to_minimum"] = rec["path_count"] - minimum
            if timing:
                rec["runtime_ms"] = round(elapsed * 1000, 3)
            recs[name] = rec
        gr = {
            "index": index,
            "name": item.name,
            "n": g.n,
            "e": g.e,
            "methods": {name: recs[name] for name in names},
            "probes": _probes(g, results),
        }
        if fixtures_dir is not None:
            for probe, val in gr["probes"].items():
                if not val["holds"]:
                    val["fixture"] = _write_fixture(fixtures_dir, probe, corpus, gr, g)
        graphs.append(gr)
    return {
        "toolkit_version": __version__,
        "format_version": FORMAT_VERSION,
        "corpus": {"spec": corpus, **descriptor, "graphs": len(graphs)},
        "methods": list(names),
        "seed": seed,
        "retries": retries,
        "oracle_limit": limit,
        "graphs": graphs,
        "aggregates": _aggregate(graphs, names),
    }


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


CSV_COLUMNS = (
    "index",
    "name",
    "n",
    "e",
    "method",
    "path_count",
    "bound",
    "valid",
    "within_bound",
    "gap_to_minimum",
    "failure.stage",
    "paths",
    "runtime_ms",
)


def report_csv(report: dict) -> str:
    """One row per (graph, method); paths are ``1-2-3;4-5``."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for gr in report["graphs"]:
        for name, rec in gr["methods"].items():
            w.writerow(
                [
                    gr["index"],
                    gr["name"],
                    gr["n"],
                    gr["e"],
                    name,
                    "" if rec["path_count"] is None else rec["path_count"],
                    rec["bound"],
                    rec["valid"],
                    rec["within_bound"],
                    rec.get("gap_to_minimum", ""),
                    rec["failure"]["stage"] if rec["failure"] else "",
                    ";".join("-".join(map(str, p)) for p in rec["paths"]),
                    rec.get("runtime_ms", ""),
                ]
            )
    return buf.getvalue()
