"""Command-line front end.

Subcommands: generate, cluster, eval, bench, synth, plotdata.
Exit codes: 0 success, 2 usage, 3 input/output, 4 algorithm failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import statistics
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .balls import Dataset, GBSet, make_ball, validate_partition
from .cluster import gbdpc, gbsc
from .dataio import SHAPES, format_csv, load_csv, minmax_normalize, synth
from .exceptions import GranularBallError, IoError, ParseError
from .generation import GENERATORS, generate, total_quality
from .metrics import clustering_accuracy, nmi
from .quality import QualityParams

EXIT_USAGE, EXIT_IO, EXIT_ALGO = 2, 3, 4


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- helpers

def _dump_json(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), allow_nan=False) + "\n"


def _write_text(path, text: str) -> None:
    if path is None or str(path) == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def _read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from exc


def _rows_to_csv(rows, columns) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n", extrasaction="ignore")
    w.writeheader()
    for r in rows:
        w.writerow({k: ("" if r.get(k) is None else r.get(k)) for k in columns})
    return buf.getvalue()


def _label_column(value):
    if value is None:
        return None
    return int(value) if value.lstrip("-").isdigit() else value


def _load_dataset(args, path=None) -> Dataset:
    ds = load_csv(path or args.input, has_header=args.header,
                  label_column=_label_column(args.label_column), delimiter=args.delimiter)
    return minmax_normalize(ds) if args.normalize else ds


def _dataset_block(ds: Dataset, normalized: bool) -> dict:
    return {"name": ds.name, "n": ds.n, "m": ds.m, "checksum": ds.checksum(), "normalized": normalized}


def _parse_grid(text: str, what: str) -> list:
    """``a`` or ``start:step:stop`` (inclusive) into a list of floats."""
    try:
        parts = [float(p) for p in text.split(":")]
    except ValueError:
        raise UsageError(f"--{what}: cannot parse {text!r}") from None
    if len(parts) == 1:
        return parts
    if len(parts) != 3 or parts[1] <= 0 or parts[2] < parts[0]:
        raise UsageError(f"--{what}: expected start:step:stop with step > 0, got {text!r}")
    start, step, stop = parts
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + i * step, 12) for i in range(count)]


def _check_params(gammas, deltas):
    for g in gammas:
        if not (g >= 0 and math.isfinite(g)):
            raise UsageError(f"--gamma must be >= 0, got {g}")
    for d in deltas:
        if not 0 < d <= 1:
            raise UsageError(f"--delta must lie in (0, 1], got {d}")


def balls_document(ds: Dataset, gbset: GBSet, method: str, params: dict, normalized: bool) -> dict:
    return {
        "dataset": _dataset_block(ds, normalized),
        "method": method,
        "params": params,
        "balls": [
            {"members": b.members.tolist(), "center": b.center.tolist(),
             "avg_radius": b.avg_radius, "max_radius": b.max_radius}
            for b in gbset
        ],
    }


def balls_from_document(doc: dict, ds: Dataset) -> GBSet:
    """Rebuild a ball set from its members; the dataset must match the recorded checksum."""
    try:
        recorded = doc["dataset"]["checksum"]
        members = [b["members"] for b in doc["balls"]]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed balls document: missing {exc}") from exc
    if recorded != ds.checksum():
        raise UsageError("dataset does not match the one the balls were generated from "
                         "(check the input file and --normalize)")
    gbset = GBSet([make_ball(ds, m) for m in members], ds.n, {"method": doc.get("method")})
    if not validate_partition(gbset).valid:
        raise ParseError("balls in the document do not partition the dataset")
    return gbset


# ---------------------------------------------------------------- commands

def cmd_generate(args) -> int:
    gamma = _parse_grid(args.gamma, "gamma")
    delta = _parse_grid(args.delta, "delta")
    if len(gamma) != 1 or len(delta) != 1:
        raise UsageError("generate takes a single --gamma and --delta")
    _check_params(gamma, delta)
    gamma, delta = gamma[0], delta[0]
    ds = _load_dataset(args)
    t0 = time.perf_counter()
    gbset = generate(ds, args.method, gamma, delta, args.seed)
    elapsed = time.perf_counter() - t0
    params = {"seed": args.seed}
    if args.method == "pojg":
        params.update(gamma=gamma, delta=delta)
    doc = balls_document(ds, gbset, args.method, params, args.normalize)
    _write_text(args.out, _dump_json(doc))
    summary = {
        "method": args.method,
        "n_balls": len(gbset),
        "max_ball_size": int(gbset.sizes.max()),
        "total_quality": total_quality(gbset, ds, QualityParams(gamma, delta)),
        "elapsed_s": elapsed,
    }
    out = sys.stderr if args.out in (None, "-") else sys.stdout
    if args.format == "csv":
        out.write(_rows_to_csv([summary], list(summary)))
    else:
        out.write(_dump_json(summary))
    return 0


def cmd_cluster(args) -> int:
    if args.k < 1:
        raise UsageError("--k must be >= 1")
    if args.algo == "gbsc" and not args.sigma > 0:
        raise UsageError("gbsc needs --sigma > 0")
    if args.algo == "gbdpc" and not 0 < args.lam <= 1:
        raise UsageError("gbdpc needs --lambda in (0, 1]")
    ds = _load_dataset(args)
    doc = _read_json(args.balls)
    gbset = balls_from_document(doc, ds)
    if args.algo == "gbdpc":
        res = gbdpc(gbset, args.k, args.lam)
    else:
        res = gbsc(gbset, args.k, args.sigma, args.seed, args.eigensolver)
    meta = dict(res.run_meta)
    meta.update({
        "seed": args.seed,
        "normalize": args.normalize,
        "generation": {"method": doc.get("method"), "params": doc.get("params", {})},
        "version": __version__,
    })
    out = {
        "dataset": _dataset_block(ds, args.normalize),
        "run_meta": meta,
        "k": res.k,
        "ball_labels": res.ball_labels.tolist(),
        "instance_labels": res.instance_labels.tolist(),
    }
    _write_text(args.out, _dump_json(out))
    return 0


def cmd_eval(args) -> int:
    ds = _load_dataset(args)
    if ds.labels is None:
        raise UsageError("evaluation needs ground-truth labels (use --label-column)")
    doc = _read_json(args.assignment)
    try:
        pred = np.asarray(doc["instance_labels"], dtype=np.int64)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed assignment document: {exc}") from exc
    if pred.shape[0] != ds.n:
        raise UsageError(f"assignment has {pred.shape[0]} labels, dataset has {ds.n} rows")
    report = {
        "acc": clustering_accuracy(pred, ds.labels),
        "nmi": nmi(pred, ds.labels),
        "n": ds.n,
        "k_pred": int(np.unique(pred).shape[0]),
        "k_true": int(np.unique(ds.labels).shape[0]),
    }
    text = _rows_to_csv([report], list(report)) if args.format == "csv" else _dump_json(report)
    _write_text(args.out, text)
    return 0


BENCH_COLUMNS = ["dataset", "method", "gamma", "delta", "n_balls", "total_quality", "time_s"]


def bench_rows(datasets, methods, gammas, deltas, reps, seed=0, timing=True) -> list:
    """One row per (dataset, method, gamma, delta) cell; time is the median over ``reps`` runs."""
    rows = []
    for ds in datasets:
        for method in methods:
            grid = [(g, d) for g in gammas for d in deltas] if method == "pojg" else [(gammas[0], None)]
            for g, d in grid:
                times, gbset = [], None
                for _ in range(reps):
                    t0 = time.perf_counter()
                    gbset = generate(ds, method, g, d if d is not None else 0.3, seed)
                    times.append(time.perf_counter() - t0)
                rows.append({
                    "dataset": ds.name,
                    "method": method,
                    "gamma": g,
                    "delta": d,
                    "n_balls": len(gbset),
                    "total_quality": total_quality(gbset, ds, QualityParams(g, d if d is not None else 1.0)),
                    "time_s": statistics.median(times) if timing else None,
                })
    return rows


def cmd_bench(args) -> int:
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    bad = [m for m in methods if m not in GENERATORS]
    if bad or not methods:
        raise UsageError(f"--methods must be drawn from {GENERATORS}, got {args.methods!r}")
    if args.reps < 1:
        raise UsageError("--reps must be >= 1")
    gammas = _parse_grid(args.gamma, "gamma")
    deltas = _parse_grid(args.delta, "delta")
    _check_params(gammas, deltas)
    datasets = [_load_dataset(args, p) for p in (args.input or [])]
    for item in args.synth or []:
        datasets.append(_synth_from_arg(item, args))
    if not datasets:
        raise UsageError("bench needs at least one --input or --synth dataset")
    rows = bench_rows(datasets, methods, gammas, deltas, args.reps, args.seed, timing=not args.no_timing)
    if args.format == "csv":
        text = _rows_to_csv(rows, BENCH_COLUMNS)
    else:
        text = _dump_json({"rows": rows, "reps": args.reps, "normalize": args.normalize,
                           "seed": args.seed})
    _write_text(args.out, text)
    return 0


def _synth_from_arg(text: str, args) -> Dataset:
    # shape[:n[:noise[:seed]]]
    parts = text.split(":")
    try:
        shape = parts[0]
        n = int(parts[1]) if len(parts) > 1 else 1000
        noise = float(parts[2]) if len(parts) > 2 else 0.05
        seed = int(parts[3]) if len(parts) > 3 else args.seed
    except ValueError:
        raise UsageError(f"--synth: cannot parse {text!r}") from None
    ds = synth(shape, n, noise, seed)
    return minmax_normalize(ds) if args.normalize else ds


def cmd_synth(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    ds = synth(args.shape, args.n, args.noise, args.seed, classes=args.classes)
    if args.normalize:
        ds = minmax_normalize(ds)
    _write_text(args.out, format_csv(ds))
    return 0


def cmd_plotdata(args) -> int:
    ds = _load_dataset(args)
    if ds.m != 2:
        raise UsageError(f"plot data needs a 2-D dataset, got {ds.m} columns")
    gbset = balls_from_document(_read_json(args.balls), ds)
    owner = gbset.membership()
    clusters = np.full(ds.n, -1, dtype=np.int64)
    if args.assignment:
        lab = np.asarray(_read_json(args.assignment).get("instance_labels", []), dtype=np.int64)
        if lab.shape[0] != ds.n:
            raise UsageError("assignment length does not match the dataset")
        clusters = lab
    balls = [{"kind": "ball", "id": i, "x": float(b.center[0]), "y": float(b.center[1]),
              "avg_radius": b.avg_radius, "member_count": b.size}
             for i, b in enumerate(gbset)]
    points = [{"kind": "point", "id": i, "x": float(ds.features[i, 0]), "y": float(ds.features[i, 1]),
               "ball_id": int(owner[i]), "cluster_id": int(clusters[i])}
              for i in range(ds.n)]
    if args.format == "csv":
        text = _rows_to_csv(balls + points, ["kind", "id", "x", "y", "avg_radius", "member_count",
                                             "ball_id", "cluster_id"])
    else:
        text = _dump_json({
            "balls": [{"center_x": b["x"], "center_y": b["y"], "avg_radius": b["avg_radius"],
                       "member_count": b["member_count"]} for b in balls],
            "points": [{"x": p["x"], "y": p["y"], "ball_id": p["ball_id"],
                        "cluster_id": p["cluster_id"]} for p in points],
        })
    _write_text(args.out, text)
    return 0


# ---------------------------------------------------------------- parser

def _common(defaults: bool) -> argparse.ArgumentParser:
    # shared flags; on subcommands they default to SUPPRESS so either position works
    p = argparse.ArgumentParser(add_help=False)
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    p.add_argument("--seed", type=int, default=d(0), help="64-bit seed (default 0)")
    p.add_argument("--normalize", action="store_true", default=d(False),
                   help="min-max scale every feature column to [0, 1]")
    p.add_argument("--format", choices=("json", "csv"), default=d("json"))
    return p


def _input_flags(p, multiple=False):
    if multiple:
        p.add_argument("--input", action="append", help="CSV dataset (repeatable)")
    else:
        p.add_argument("--input", required=True, help="CSV dataset")
    p.add_argument("--header", action="store_true", help="first row holds column names")
    p.add_argument("--label-column", default=None, help="label column index or header name")
    p.add_argument("--delimiter", default=",")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="granball", description=__doc__.splitlines()[0],
                                     parents=[_common(True)])
    parser.add_argument("--version", action="version", version=f"granball {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common(False)

    p = sub.add_parser("generate", parents=[common], help="generate granular balls")
    _input_flags(p)
    p.add_argument("--method", choices=GENERATORS, default="pojg")
    p.add_argument("--gamma", default="1")
    p.add_argument("--delta", default="0.3")
    p.add_argument("--out", default=None, help="balls JSON (default: stdout)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("cluster", parents=[common], help="cluster balls and label instances")
    _input_flags(p)
    p.add_argument("--balls", required=True)
    p.add_argument("--algo", choices=("gbdpc", "gbsc"), required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--lambda", dest="lam", type=float, default=0.1)
    p.add_argument("--eigensolver", choices=("jacobi", "lapack"), default="jacobi")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("eval", parents=[common], help="accuracy and NMI of an assignment")
    _input_flags(p)
    p.add_argument("--assignment", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("bench", parents=[common], help="ball counts, quality and timing")
    _input_flags(p, multiple=True)
    p.add_argument("--synth", action="append", metavar="SHAPE[:N[:NOISE[:SEED]]]")
    p.add_argument("--methods", default="pojg,cheng,xie")
    p.add_argument("--reps", type=int, default=1)
    p.add_argument("--gamma", default="1", help="value or start:step:stop")
    p.add_argument("--delta", default="0.3", help="value or start:step:stop")
    p.add_argument("--no-timing", action="store_true", help="omit wall times (reproducible output)")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("synth", parents=[common], help="write a synthetic 2-D dataset")
    p.add_argument("--shape", choices=SHAPES, required=True)
    p.add_argument("--n", type=int, default=300)
    p.add_argument("--noise", type=float, default=0.05)
    p.add_argument("--classes", type=int, default=3)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("plotdata", parents=[common], help="export ball circles and points")
    _input_flags(p)
    p.add_argument("--balls", required=True)
    p.add_argument("--assignment", default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_plotdata)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"granball {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (IoError, ParseError) as exc:
        print(f"granball {args.command}: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (GranularBallError, ValueError) as exc:
        print(f"granball {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ALGO


if __name__ == "__main__":
    sys.exit(main())
