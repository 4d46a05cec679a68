"""CSV ingestion, min-max scaling and synthetic 2-D datasets."""
from __future__ import annotations

import csv
import io
import math
from pathlib import Path
from typing import Optional, Union

import numpy as np

from .balls import Dataset
from .exceptions import IoError, ParseError, RaggedRows, UnknownShape

SHAPES = ("blobs", "rings", "moons", "spirals")


def _resolve_label_column(label_column, header, ncols):
    if label_column is None:
        return None
    if isinstance(label_column, str) and not label_column.lstrip("-").isdigit():
        if header is None or label_column not in header:
            raise ParseError(f"label column {label_column!r} not found in header")
        return header.index(label_column)
    idx = int(label_column)
    if idx < 0:
        idx += ncols
    if not 0 <= idx < ncols:
        raise ParseError(f"label column {label_column} out of range for {ncols} columns")
    return idx


def load_csv(path: Union[str, Path], has_header: bool = False,
             label_column: Optional[Union[int, str]] = None, delimiter: str = ",",
             name: Optional[str] = None) -> Dataset:
    """Read a numeric CSV file.

    Labels may be text; they are mapped to ``0, 1, ...`` in order of first
    appearance. Any non-numeric feature cell raises :class:`ParseError`.
    """
    path = Path(path)
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = [r for r in csv.reader(fh, delimiter=delimiter) if r and any(c.strip() for c in r)]
    except (OSError, UnicodeDecodeError) as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    header = None
    if has_header and rows:
        header = [c.strip() for c in rows[0]]
        rows = rows[1:]
    if not rows:
        raise ParseError(f"{path} contains no data rows", row=0)
    ncols = len(header) if header is not None else len(rows[0])
    lab = _resolve_label_column(label_column, header, ncols)

    features, raw_labels = [], []
    offset = 1 if header is not None else 0
    for r, row in enumerate(rows):
        if len(row) != ncols:
            raise RaggedRows(f"row {r + offset} has {len(row)} fields, expected {ncols}", row=r + offset)
        vals = []
        for c, cell in enumerate(row):
            if c == lab:
                raw_labels.append(cell.strip())
                continue
            try:
                v = float(cell)
            except ValueError:
                raise ParseError(f"non-numeric value {cell!r} at row {r + offset}, column {c}",
                                 row=r + offset, col=c) from None
            if not math.isfinite(v):
                raise ParseError(f"non-finite value at row {r + offset}, column {c}", row=r + offset, col=c)
            vals.append(v)
        features.append(vals)
    if not features[0]:
        raise ParseError("no feature columns")

    labels = None
    if lab is not None:
        mapping = {}
        labels = np.array([mapping.setdefault(v, len(mapping)) for v in raw_labels], dtype=np.int64)
    return Dataset(np.array(features, dtype=np.float64), labels, name or path.stem)


def format_csv(dataset: Dataset, header: bool = True, delimiter: str = ",") -> str:
    """Features (and labels as the last column) using the shortest round-trip float repr."""
    buf = io.StringIO()
    w = csv.writer(buf, delimiter=delimiter, lineterminator="\n")
    if header:
        cols = [f"x{j}" for j in range(dataset.m)]
        if dataset.labels is not None:
            cols.append("label")
        w.writerow(cols)
    for i in range(dataset.n):
        row = [repr(float(v)) for v in dataset.features[i]]
        if dataset.labels is not None:
            row.append(str(int(dataset.labels[i])))
        w.writerow(row)
    return buf.getvalue()


def write_csv(dataset: Dataset, path: Union[str, Path], header: bool = True, delimiter: str = ",") -> None:
    try:
        Path(path).write_text(format_csv(dataset, header, delimiter), encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def minmax_normalize(dataset: Dataset) -> Dataset:
    """Rescale each column to [0, 1]; constant columns become 0."""
    X = dataset.features
    lo = X.min(axis=0)
    span = X.max(axis=0) - lo
    out = np.zeros_like(X)
    nz = span > 0
    out[:, nz] = (X[:, nz] - lo[nz]) / span[nz]
    return Dataset(out, dataset.labels, dataset.name)


def _class_sizes(n: int, classes: int) -> list:
    base, extra = divmod(n, classes)
    return [base + (1 if c < extra else 0) for c in range(classes)]


def synth(shape: str, n: int = 300, noise: float = 0.05, seed: int = 0, classes: int = 3) -> Dataset:
    """Labelled 2-D toy data.

    ``blobs`` places ``classes`` Gaussian clusters with centers at least 4
    apart in a 20 x 20 box; ``rings`` draws two concentric circles of radii
    1 and 2; ``moons`` the two interleaved half circles; ``spirals`` two
    interleaved arms. ``noise`` is the Gaussian jitter scale, and for blobs
    it is the cluster spread relative to the box size.
    """
    if shape not in SHAPES:
        raise UnknownShape(f"unknown shape {shape!r}; expected one of {SHAPES}")
    k = classes if shape == "blobs" else 2
    if n < k:
        raise ValueError(f"n={n} is smaller than the {k} classes of {shape!r}")
    rng = np.random.default_rng(seed)
    sizes = _class_sizes(n, k)
    parts, labels = [], []
    if shape == "blobs":
        centers = []
        while len(centers) < k:
            c = rng.uniform(-10.0, 10.0, size=2)
            if all(np.linalg.norm(c - o) >= 4.0 for o in centers):
                centers.append(c)
        spread = max(noise, 0.0) * 20.0
        for c, (ctr, sz) in enumerate(zip(centers, sizes)):
            parts.append(ctr + rng.normal(scale=spread, size=(sz, 2)))
            labels.append(np.full(sz, c))
    elif shape == "rings":
        for c, (radius, sz) in enumerate(zip((1.0, 2.0), sizes)):
            t = rng.uniform(0.0, 2 * np.pi, size=sz)
            pts = radius * np.column_stack([np.cos(t), np.sin(t)])
            parts.append(pts + rng.normal(scale=noise, size=pts.shape) if noise > 0 else pts)
            labels.append(np.full(sz, c))
    elif shape == "moons":
        t = rng.uniform(0.0, np.pi, size=sizes[0])
        upper = np.column_stack([np.cos(t), np.sin(t)])
        t = rng.uniform(0.0, np.pi, size=sizes[1])
        lower = np.column_stack([1.0 - np.cos(t), 0.5 - np.sin(t)])
        for c, pts in enumerate((upper, lower)):
            parts.append(pts + rng.normal(scale=noise, size=pts.shape) if noise > 0 else pts)
            labels.append(np.full(pts.shape[0], c))
    else:
        for c, sz in enumerate(sizes):
            t = np.sqrt(rng.uniform(0.0, 1.0, size=sz)) * 3 * np.pi
            pts = np.column_stack([t * np.cos(t + c * np.pi), t * np.sin(t + c * np.pi)]) / (3 * np.pi)
            parts.append(pts + rng.normal(scale=noise, size=pts.shape) if noise > 0 else pts)
            labels.append(np.full(sz, c))
    X = np.vstack(parts)
    y = np.concatenate(labels).astype(np.int64)
    return Dataset(X, y, f"{shape}-n{n}-s{seed}")
