import csv
import io

import pytest

from gallai.experiment import (
    CSV_COLUMNS,
    CorpusError,
    load_corpus,
    parse_methods,
    report_csv,
    report_json,
    run_experiment,
)
from gallai.generators import complete_graph
from gallai.graph import parse_graph, serialize_graph, verify_decomposition


def test_report_is_byte_identical():
    a = report_json(run_experiment("random:7,11,12,5", seed=3))
    b = report_json(run_experiment("random:7,11,12,5", seed=3))
    assert a == b
    assert "runtime_ms" not in a


def test_timing_only_on_request():
    rep = run_experiment("connected:3", "mepp", timing=True)
    assert all("runtime_ms" in gr["methods"]["mepp"] for gr in rep["graphs"])


def test_report_shape():
    rep = run_experiment("connected:4")
    assert rep["corpus"] == {"spec": "connected:4", "kind": "connected", "n": 4, "graphs": 38}
    assert rep["methods"] == ["mepp", "pseudo-tree", "bpd-extend", "ham-table", "incremental", "oracle"]
    for gr in rep["graphs"]:
        for name, rec in gr["methods"].items():
            assert rec["valid"] or rec["failure"]
            if rec["valid"]:
                assert rec["path_count"] == len(rec["paths"])
                if name != "oracle":
                    assert rec["gap_to_minimum"] >= 0
    agg = rep["aggregates"]["methods"]
    assert all(m["invalid_emitted"] == 0 for m in agg.values())
    assert agg["oracle"]["within_bound_rate"] == 1.0


def test_csv_columns_and_rows():
    rep = run_experiment("connected:3", "mepp,oracle")
    rows = list(csv.DictReader(io.StringIO(report_csv(rep))))
    assert tuple(rows[0]) == CSV_COLUMNS
    assert len(rows) == 2 * rep["corpus"]["graphs"]
    assert all(r["paths"] for r in rows if r["valid"] == "True")


def test_fixtures_written_for_violations(tmp_path):
    rep = run_experiment("connected:3", "mepp", fixtures_dir=str(tmp_path))
    bad = rep["aggregates"]["probes"]["avg_length_probe"]["violations"]
    assert bad, "K2-like graphs fall under the average-length threshold"
    files = sorted(p.name for p in tmp_path.iterdir())
    assert len(files) >= len(bad)
    text = (tmp_path / files[0]).read_text()
    assert text.startswith("# ")
    parse_graph(text)


def test_dir_corpus(tmp_path):
    (tmp_path / "b.txt").write_text(serialize_graph(complete_graph(4)))
    (tmp_path / "a.txt").write_text("3 2\n1 2\n2 3\n")
    rep = run_experiment(f"dir:{tmp_path}", "mepp")
    assert [gr["name"] for gr in rep["graphs"]] == ["a.txt", "b.txt"]


def test_dir_corpus_rejects_disconnected(tmp_path):
    (tmp_path / "a.txt").write_text("4 2\n1 2\n3 4\n")
    with pytest.raises(CorpusError):
        run_experiment(f"dir:{tmp_path}", "mepp")


@pytest.mark.parametrize("spec", ["bogus:1", "trees:x", "random:5,2,3", "dir:/no/such/place"])
def test_bad_corpus(spec):
    with pytest.raises(CorpusError):
        load_corpus(spec)


def test_bad_methods():
    with pytest.raises(CorpusError):
        parse_methods("mepp,nope")
    assert parse_methods("oracle, mepp") == ("oracle", "mepp")


def test_oracle_edge_limit_recorded():
    rep = run_experiment("random:9,20,2,1", "oracle", oracle_limit=15)
    for gr in rep["graphs"]:
        assert gr["methods"]["oracle"]["failure"]["stage"] == "edge_limit"


def test_all_trees_of_order_seven_within_bound():
    rep = run_experiment("trees:7", "mepp")
    m = rep["aggregates"]["methods"]["mepp"]
    assert rep["corpus"]["graphs"] == 7 ** 5
    assert m["success_rate"] == 1.0 and m["within_bound_rate"] == 1.0


def test_gallai_holds_on_connected_five():
    rep = run_experiment("connected:5", "oracle")
    assert rep["aggregates"]["methods"]["oracle"]["within_bound_rate"] == 1.0
    assert rep["aggregates"]["methods"]["oracle"]["success_rate"] == 1.0


def test_standard_corpus_size():
    _, items = load_corpus("standard")
    assert len(items) == 200 + sum(n ** (n - 2) if n > 1 else 1 for n in range(1, 8))


def test_emitted_paths_reverify():
    rep = run_experiment("random:8,14,6,2")
    _, items = load_corpus("random:8,14,6,2")
    from gallai.graph import Decomposition

    for gr, item in zip(rep["graphs"], items):
        for rec in gr["methods"].values():
            if rec["valid"]:
                assert verify_decomposition(item.graph, Decomposition(rec["paths"])).valid
