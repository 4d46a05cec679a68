import json
import subprocess
import sys

import numpy as np
import pytest

from granball import Dataset, synth
from granball.cli import _parse_grid, main
from granball.dataio import write_csv


@pytest.fixture
def blobs_csv(tmp_path):
    p = tmp_path / "blobs.csv"
    write_csv(synth("blobs", n=100, seed=2), p)
    return p


def run(*argv):
    return main([str(a) for a in argv])


def generate(tmp_path, csv, *extra):
    out = tmp_path / "balls.json"
    rc = run("generate", "--input", csv, "--header", "--label-column", "label", "--out", out, *extra)
    return rc, out


def test_generate_writes_partition(tmp_path, blobs_csv, capsys):
    rc, out = generate(tmp_path, blobs_csv, "--method", "pojg", "--gamma", "1", "--delta", "0.3")
    assert rc == 0
    doc = json.loads(out.read_text())
    members = sorted(i for b in doc["balls"] for i in b["members"])
    assert members == list(range(100))
    assert doc["dataset"]["n"] == 100 and doc["method"] == "pojg"
    summary = json.loads(capsys.readouterr().out)
    assert summary["n_balls"] == len(doc["balls"])


def test_cheng_summary_bound(tmp_path, blobs_csv, capsys):
    rc, _ = generate(tmp_path, blobs_csv, "--method", "cheng")
    assert rc == 0 and json.loads(capsys.readouterr().out)["max_ball_size"] <= 10


@pytest.mark.parametrize("flags", [["--delta", "1.5"], ["--gamma", "-1"], ["--delta", "0"]])
def test_bad_params_exit_2(tmp_path, blobs_csv, flags):
    assert generate(tmp_path, blobs_csv, *flags)[0] == 2


def test_missing_input_exit_3(tmp_path):
    assert run("generate", "--input", tmp_path / "nope.csv") == 3


def test_cluster_eval_and_errors(tmp_path, blobs_csv, capsys):
    _, balls = generate(tmp_path, blobs_csv, "--delta", "0.5")
    assign = tmp_path / "a.json"
    base = ["--input", blobs_csv, "--header", "--label-column", "label"]
    assert run("cluster", *base, "--balls", balls, "--algo", "gbsc", "--k", 3, "--out", assign) == 0
    doc = json.loads(assign.read_text())
    assert len(doc["instance_labels"]) == 100 and set(doc["instance_labels"]) <= {0, 1, 2}
    assert doc["run_meta"]["seed"] == 0 and doc["run_meta"]["normalize"] is False
    capsys.readouterr()
    assert run("eval", *base, "--assignment", assign) == 0
    report = json.loads(capsys.readouterr().out)
    assert set(report) == {"acc", "nmi", "n", "k_pred", "k_true"} and report["n"] == 100
    assert run("cluster", *base, "--balls", balls, "--algo", "gbdpc", "--k", 1000) == 4
    assert run("cluster", *base, "--balls", balls, "--algo", "gbdpc", "--k", 2, "--lambda", 2) == 2
    # balls generated without normalization do not match the normalized data
    assert run("cluster", *base, "--normalize", "--balls", balls, "--algo", "gbdpc", "--k", 2) == 2


def test_eval_perfect_and_mismatch(tmp_path, blobs_csv, capsys):
    labels = list(synth("blobs", n=100, seed=2).labels)
    perfect = tmp_path / "p.json"
    perfect.write_text(json.dumps({"instance_labels": [int(v) for v in labels]}))
    base = ["--input", blobs_csv, "--header", "--label-column", "label"]
    assert run("eval", *base, "--assignment", perfect) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["acc"] == 1.0 and rep["nmi"] == 1.0
    short = tmp_path / "s.json"
    short.write_text(json.dumps({"instance_labels": [0, 1]}))
    assert run("eval", *base, "--assignment", short) == 2
    assert run("eval", "--input", blobs_csv, "--header", "--assignment", perfect) == 2


def test_bench_rows_and_grid(blobs_csv, capsys):
    assert run("bench", "--input", blobs_csv, "--header", "--label-column", "label", "--format", "csv") == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 1 + 3
    assert run("bench", "--synth", "blobs:60", "--methods", "pojg", "--gamma", "0:1:10",
               "--delta", "0.1:0.1:1", "--no-timing") == 0
    rows = json.loads(capsys.readouterr().out)["rows"]
    assert len(rows) == 110 and all(r["time_s"] is None for r in rows)
    assert _parse_grid("0.1:0.1:1", "delta")[-1] == 1.0


def test_bench_time_is_median(monkeypatch):
    from granball import cli
    ticks = iter([0, 5, 10, 11, 20, 29, 30, 31, 40, 43])
    monkeypatch.setattr(cli.time, "perf_counter", lambda: next(ticks))
    rows = cli.bench_rows([synth("blobs", n=30)], ["cheng"], [1.0], [0.3], reps=5)
    # durations 5, 1, 9, 1, 3
    assert rows[0]["time_s"] == 3


def test_synth_and_plotdata(tmp_path, blobs_csv, capsys):
    out = tmp_path / "r.csv"
    assert run("synth", "--shape", "rings", "--n", 40, "--out", out) == 0
    assert len(out.read_text().splitlines()) == 41
    _, balls = generate(tmp_path, blobs_csv)
    base = ["--input", blobs_csv, "--header", "--label-column", "label", "--balls", balls]
    capsys.readouterr()
    assert run("plotdata", *base) == 0
    doc = json.loads(capsys.readouterr().out)
    n_balls = len(json.loads(balls.read_text())["balls"])
    assert len(doc["balls"]) == n_balls and len(doc["points"]) == 100
    assert run("plotdata", *base, "--format", "csv") == 0
    assert len(capsys.readouterr().out.strip().splitlines()) == 1 + 100 + n_balls


def test_plotdata_needs_2d(tmp_path, capsys):
    p = tmp_path / "four.csv"
    write_csv(Dataset(np.random.default_rng(0).normal(size=(20, 4))), p)
    _, balls = generate(tmp_path, p)
    assert run("plotdata", "--input", p, "--header", "--balls", balls) == 2


def test_module_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "granball", "synth", "--shape", "moons", "--n", "10"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and len(res.stdout.splitlines()) == 11
    res = subprocess.run([sys.executable, "-m", "granball", "frobnicate"], capture_output=True)
    assert res.returncode == 2
