import csv
import json
import shutil
from pathlib import Path

import pytest

from satqaoa.cli import main

DATA = Path(__file__).parent / "data"
CONFIGS = Path(__file__).parent.parent / "configs"


def run(*argv):
    return main([str(a) for a in argv])


def load(path):
    return json.loads(Path(path).read_text())


def test_generate_is_deterministic(tmp_path):
    for d in ("a", "b"):
        assert run("generate", "--gen-seed", 7, "--n", 6, "--out", tmp_path / d) == 0
    for name in ("instance.json", "graph.json", "summary.json"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
    summary = load(tmp_path / "a" / "summary.json")
    assert set(summary) == {"n", "edges", "density"} and summary["n"] == 6


def test_generate_single_node(tmp_path):
    assert run("generate", "--gen-seed", 1, "--n", 1, "--out", tmp_path) == 0
    assert load(tmp_path / "summary.json")["edges"] == 0


@pytest.mark.parametrize("seed", range(5))
def test_generate_threshold_one_has_no_edges(tmp_path, seed):
    assert run("generate", "--gen-seed", seed, "--n", 8, "--threshold", 1.0, "--out", tmp_path) == 0
    assert load(tmp_path / "graph.json")["edges"] == []


def test_generate_needs_generator(tmp_path):
    assert run("generate", "--instance", DATA / "path3.json", "--out", tmp_path) == 2


def test_generate_unwritable_output(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    assert run("generate", "--gen-seed", 1, "--n", 3, "--out", blocker / "sub") == 2


def test_solve_exact_path(tmp_path):
    assert run("solve", "--instance", DATA / "path3.json", "--method", "exact", "--out", tmp_path) == 0
    rep = load(tmp_path / "report_exact.json")
    assert rep["weight"] == 5 and rep["bits"] == "010"
    assert rep["elapsed_s"] is None
    assert "exact_elapsed_s" in load(tmp_path / "timing.json")


def test_solve_greedy_edgeless(tmp_path):
    assert run("solve", "--instance", DATA / "edgeless4.json", "--method", "greedy", "--out", tmp_path) == 0
    assert load(tmp_path / "report_greedy.json")["bits"] == "1111"


def test_solve_qaoa_edge(tmp_path):
    assert run("solve", "--instance", DATA / "edge2.json", "--method", "qaoa", "--p", 1, "--out", tmp_path) == 0
    rep = load(tmp_path / "report_qaoa.json")
    assert rep["feasible"] and rep["weight"] == 3.0
    with open(tmp_path / "trace.csv") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["iteration", "best_expectation"] and len(rows) > 1
    probs = load(tmp_path / "probabilities.json")
    assert set(probs) == {"00", "10", "01", "11"}
    assert sum(probs.values()) == pytest.approx(1.0, abs=1e-12)


def test_solve_exact_too_large(tmp_path):
    assert run("solve", "--gen-seed", 0, "--n", 25, "--method", "exact", "--out", tmp_path) == 3


def test_bad_config_values(tmp_path):
    assert run("solve", "--instance", DATA / "path3.json", "--rho", 0.5, "--out", tmp_path) == 2
    assert run("solve", "--instance", tmp_path / "missing.json", "--out", tmp_path) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run("solve", "--config", bad) == 2


def test_compare_fixture(tmp_path):
    out = tmp_path / "cmp"
    assert run("compare", "--config", CONFIGS / "compare_6node.json", "--out", out) == 0
    doc = load(out / "compare.json")
    methods = doc["methods"]
    assert methods["exact"]["ratio"] == 1.0
    assert methods["greedy"]["ratio"] <= 1.0
    assert methods["qaoa"]["ratio"] == 1.0
    assert 0 < methods["qaoa"]["feasible_fraction"] <= 1
    assert set(load(out / "timing.json")) == {"exact_elapsed_s", "greedy_elapsed_s", "qaoa_elapsed_s"}


def test_config_file_and_flag_precedence(tmp_path):
    cfg = tmp_path / "cfg.json"
    shutil.copy(DATA / "path3.json", tmp_path / "inst.json")
    cfg.write_text(json.dumps({"instance": {"path": "inst.json"}, "method": "greedy", "output_dir": str(tmp_path / "o")}))
    assert run("solve", "--config", cfg) == 0
    assert (tmp_path / "o" / "report_greedy.json").exists()
    assert run("solve", "--config", cfg, "--method", "exact") == 0
    assert load(tmp_path / "o" / "report_exact.json")["weight"] == 5


def test_sweep_rho_rows(tmp_path):
    assert run("sweep", "--instance", DATA / "path3.json", "--axis", "rho", "--values", "1,2,4", "--p", 1, "--out", tmp_path) == 0
    with open(tmp_path / "sweep_rho.csv") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["rho", "edges", "best_weight", "expectation", "feasible_fraction"]
    assert len(rows) == 4


def test_sweep_depth_rows(tmp_path):
    assert run("sweep", "--instance", DATA / "path3.json", "--axis", "depth", "--values", "1,2,3", "--out", tmp_path) == 0
    with open(tmp_path / "sweep_depth.csv") as fh:
        assert len(list(csv.reader(fh))) == 4


def test_sweep_threshold_edges_non_increasing(tmp_path):
    assert run("sweep", "--gen-seed", 3, "--n", 6, "--axis", "threshold", "--values", "0,0.1,0.3,0.6,1", "--p", 1, "--shots", 256, "--out", tmp_path) == 0
    with open(tmp_path / "sweep_threshold.csv") as fh:
        edges = [int(r["edges"]) for r in csv.DictReader(fh)]
    assert all(b <= a for a, b in zip(edges, edges[1:]))


def test_sweep_config_file(tmp_path):
    assert run("sweep", "--config", CONFIGS / "sweep_rho.json", "--out", tmp_path) == 0
    assert (tmp_path / "sweep_rho.csv").exists()


def test_sweep_needs_values(tmp_path):
    assert run("sweep", "--instance", DATA / "path3.json", "--axis", "rho", "--values", "", "--out", tmp_path) == 2
    assert run("sweep", "--instance", DATA / "path3.json", "--out", tmp_path) == 2


def test_module_entry_point(tmp_path):
    import subprocess
    import sys

    res = subprocess.run(
        [sys.executable, "-m", "satqaoa", "solve", "--instance", DATA / "path3.json", "--method", "exact", "--out", tmp_path],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0
    assert json.loads(res.stdout)["weight"] == 5
