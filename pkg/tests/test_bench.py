import csv
import math
import subprocess
import sys

import pytest

from hornlearn.bench import BenchConfig, run_bench
from hornlearn.cli import main as cli_main
from hornlearn.datasets import gen_kinship, gen_robot


@pytest.fixture(scope="module")
def kinship_dir(tmp_path_factory):
    root = tmp_path_factory.mktemp("data") / "kin2"
    gen_kinship(2, root)
    return root


def _rows(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def test_bench_single_trial_solves_both_tasks(kinship_dir, tmp_path):
    out = tmp_path / "results.csv"
    cfg = BenchConfig(
        dataset=str(kinship_dir), out=str(out), strategies=("id",),
        trials=1, timeout_s=60, sample_interval_s=1000, seed=1,
    )
    results, summary = run_bench(cfg)
    rows = _rows(results)
    assert rows[-1]["solved"] == "2" and rows[-1]["total"] == "2"
    srows = _rows(summary)
    assert srows == [
        {"strategy": "id", "preserve": "0", "min": "2", "max": "2", "stddev": "0", "stderr": "0"}
    ]


def test_bench_tiny_timeout_yields_wellformed_zero_rows(kinship_dir, tmp_path):
    out = tmp_path / "r.csv"
    cfg = BenchConfig(
        dataset=str(kinship_dir), out=str(out), strategies=("id",),
        trials=1, timeout_s=0.001, sample_interval_s=1000, seed=1,
    )
    results, _ = run_bench(cfg)
    rows = _rows(results)
    assert len(rows) == 1
    assert rows[0]["solved"] == "0" and rows[0]["total"] == "2"


def test_summary_recomputable_from_results(kinship_dir, tmp_path):
    out = tmp_path / "r.csv"
    cfg = BenchConfig(
        dataset=str(kinship_dir), out=str(out), strategies=("id", "reset-bfs"),
        trials=3, timeout_s=60, sample_interval_s=1000, seed=2,
    )
    results, summary = run_bench(cfg)
    finals = {}
    for row in _rows(results):
        key = (row["strategy"], row["preserve"], row["trial"])
        finals[key] = int(row["solved"])  # last row per trial wins
    for srow in _rows(summary):
        values = [
            v for (s, p, _), v in finals.items()
            if s == srow["strategy"] and p == srow["preserve"]
        ]
        mean = sum(values) / len(values)
        sd = math.sqrt(sum((v - mean) ** 2 for v in values) / len(values))
        assert int(srow["min"]) == min(values)
        assert int(srow["max"]) == max(values)
        assert abs(float(srow["stddev"]) - sd) < 1e-9
        assert abs(float(srow["stderr"]) - sd / math.sqrt(len(values))) < 1e-9


def test_bench_csv_deterministic_modulo_elapsed(kinship_dir, tmp_path):
    def masked(path):
        rows = []
        for row in _rows(path):
            row = dict(row)
            row["elapsed_s"] = "X"
            rows.append(tuple(sorted(row.items())))
        return rows

    cfgs = [
        BenchConfig(
            dataset=str(kinship_dir), out=str(tmp_path / f"r{i}.csv"),
            strategies=("id", "naive"), trials=2, timeout_s=60,
            sample_interval_s=1000, seed=7,
        )
        for i in (1, 2)
    ]
    paths = [run_bench(cfg)[0] for cfg in cfgs]
    assert masked(paths[0]) == masked(paths[1])


def test_bench_config_validation(tmp_path):
    with pytest.raises(ValueError):
        BenchConfig(dataset="x", out="y", trials=0)
    with pytest.raises(ValueError):
        BenchConfig(dataset="x", out="y", timeout_s=0)


# --- CLI --------------------------------------------------------------------


def test_cli_learn_prints_solutions(kinship_dir, capsys):
    rc = cli_main(["learn", "--strategy", "id", "--dataset", str(kinship_dir)])
    out = capsys.readouterr().out
    assert rc == 0
    assert "isGrandfather(A,B) :- isFather(A,C), isFather(C,B)." in out
    assert "isGrandmother(A,B) :- isGrandfather(C,B), isWife(A,C)." in out


def test_cli_usage_error_exits_2():
    with pytest.raises(SystemExit) as exc:
        cli_main(["learn", "--strategy", "id"])  # missing --dataset
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli_main(["learn", "--strategy", "bogus", "--dataset", "x"])
    assert exc.value.code == 2


def test_cli_runtime_error_exits_1(tmp_path, capsys):
    rc = cli_main(["learn", "--strategy", "id", "--dataset", str(tmp_path / "nope")])
    assert rc == 1
    assert "error:" in capsys.readouterr().err


def test_cli_gen_robot_matches_library_output(tmp_path, capsys):
    rc = cli_main(["gen", "robot", "--distances", "2,4", "--out", str(tmp_path / "cli")])
    assert rc == 0
    gen_robot([2, 4], tmp_path / "lib")
    cli_files = {
        p.relative_to(tmp_path / "cli"): p.read_bytes()
        for p in sorted((tmp_path / "cli").rglob("*")) if p.is_file()
    }
    lib_files = {
        p.relative_to(tmp_path / "lib"): p.read_bytes()
        for p in sorted((tmp_path / "lib").rglob("*")) if p.is_file()
    }
    assert cli_files == lib_files


def test_cli_bench_writes_csvs(kinship_dir, tmp_path, capsys):
    rc = cli_main(
        [
            "bench", "--strategy", "id", "--dataset", str(kinship_dir),
            "--out", str(tmp_path / "b.csv"), "--trials", "1",
            "--timeout-s", "60", "--sample-interval-s", "1000",
        ]
    )
    assert rc == 0
    assert (tmp_path / "b.csv").exists()
    assert (tmp_path / "b_summary.csv").exists()


def test_cli_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "hornlearn.cli", "--help"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert "gen" in proc.stdout and "bench" in proc.stdout
