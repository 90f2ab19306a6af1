import json

import pytest

from basispath import generate_corpus
from basispath.bench import (
    MetricsRow,
    RunRecord,
    aggregate,
    render_csv,
    render_text,
    run_experiment,
    save_outputs,
)


@pytest.fixture(scope="module")
def small_corpus(tmp_path_factory):
    out = tmp_path_factory.mktemp("corpus")
    generate_corpus(3, 6, range(4), out)
    return out / "manifest.json"


@pytest.fixture(scope="module")
def records(small_corpus):
    return run_experiment(small_corpus, ["bfs", "incr-novelty"],
                          time_limit=30.0)


class TestRunExperiment:
    def test_one_record_per_graph_and_strategy(self, records):
        assert len(records) == 8
        assert {r.strategy for r in records} == {"bfs", "incr-novelty"}
        assert {r.seed for r in records} == {0, 1, 2, 3}

    def test_records_are_sorted(self, records):
        keys = [(r.cc, r.n_nodes, r.strategy, r.seed) for r in records]
        assert keys == sorted(keys)

    def test_novelty_on_easy_corpus(self, records):
        novelty = [r for r in records if r.strategy == "incr-novelty"]
        assert all(r.success for r in novelty)
        assert all(r.edge_coverage == 1.0 for r in novelty)

    def test_holistic_cap_skips_large_graphs(self, small_corpus):
        out = run_experiment(small_corpus, ["holistic"], holistic_cap=2)
        assert all(r.skipped == "scale" for r in out)
        assert all(not r.success for r in out)

    def test_parallel_matches_serial_aggregates(self, small_corpus, records):
        parallel = run_experiment(small_corpus, ["bfs", "incr-novelty"],
                                  time_limit=30.0, jobs=2)
        strip = lambda rs: [(r.cc, r.n_nodes, r.seed, r.strategy, r.success,
                             r.edge_coverage, r.independent_fraction)
                            for r in rs]
        assert strip(parallel) == strip(records)

    def test_broken_graph_recorded_not_raised(self, tmp_path):
        generate_corpus(2, 5, [0], tmp_path)
        bad = tmp_path / "cfg_cc2_n5_s0.json"
        doc = json.loads(bad.read_text(encoding="utf-8"))
        doc["edges"].append(doc["edges"][0])  # duplicate: invalid graph
        bad.write_text(json.dumps(doc), encoding="utf-8")
        out = run_experiment(tmp_path / "manifest.json", ["bfs"])
        assert len(out) == 1
        assert out[0].skipped.startswith("error:")


def rec(strategy, success, cov=1.0, ind=1.0, t=0.5, skipped=None, seed=0):
    return RunRecord(3, 6, seed, strategy, success, cov, ind, t, skipped)


class TestAggregate:
    def test_rates_and_means(self):
        rows = aggregate([
            rec("bfs", True, seed=0),
            rec("bfs", False, cov=0.5, ind=0.5, t=1.5, seed=1),
        ])
        assert rows == [MetricsRow(3, 6, "bfs", 2, 50.0, 75.0, 75.0, 1.0)]

    def test_skipped_runs_excluded_from_means(self):
        rows = aggregate([
            rec("holistic", True, seed=0),
            rec("holistic", False, skipped="scale", cov=0.0, ind=0.0, seed=1),
        ])
        assert rows[0].runs == 2
        assert rows[0].success_rate == 100.0

    def test_all_skipped_group(self):
        rows = aggregate([rec("holistic", False, skipped="scale")])
        assert rows[0].mean_time is None

    def test_empty(self):
        assert aggregate([]) == []

    def test_pure_function_of_records(self, records):
        assert aggregate(records) == aggregate(list(records))


class TestRendering:
    def test_csv_shape(self):
        text = render_csv(aggregate([rec("bfs", True)]))
        lines = text.strip().split("\n")
        assert lines[0] == "group,method,success %,coverage %,independent %,time s"
        assert lines[1] == '"3, 6",bfs,100.0,100.00,100.00,0.5000'

    def test_text_dashes_for_skipped(self):
        text = render_text(aggregate([rec("holistic", False, skipped="scale")]))
        row = text.strip().split("\n")[-1]
        assert row.split()[-3:] == ["-", "-", "-"]

    def test_text_header_and_alignment(self):
        text = render_text(aggregate([rec("bfs", True)]))
        lines = text.split("\n")
        assert lines[0].startswith("group")
        assert set(lines[1]) <= {"-", " "}


class TestSaveOutputs:
    def test_all_artifacts_written(self, records, tmp_path):
        written = save_outputs(records, tmp_path)
        names = [p.name for p in written]
        assert names == ["records.jsonl", "metrics.csv", "metrics.txt",
                         "success_rates.png"]
        for p in written:
            assert p.exists() and p.stat().st_size > 0
        reloaded = [json.loads(line) for line in
                    (tmp_path / "records.jsonl").read_text().splitlines()]
        assert len(reloaded) == len(records)
        assert reloaded[0]["strategy"] == records[0].strategy
        # png magic bytes: the figure really rendered
        assert (tmp_path / "success_rates.png").read_bytes()[:8] == \
            b"\x89PNG\r\n\x1a\n"
