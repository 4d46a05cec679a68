"""Datasets, granular balls and ball sets.

A ball never copies feature rows. It holds sorted member indices into one
immutable :class:`Dataset` together with statistics computed once at
construction: the mean center, the average member-to-center distance and
the maximum member-to-center distance.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional, Sequence

import numpy as np

from .exceptions import BadIndex, DimMismatch, EmptyBall


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Dataset:
    """An ``n x m`` matrix of finite reals with optional integer labels."""

    features: np.ndarray
    labels: Optional[np.ndarray] = None
    name: str = "dataset"

    def __post_init__(self):
        X = np.array(self.features, dtype=np.float64, copy=True)
        if X.ndim == 1:
            X = X.reshape(-1, 1)
        if X.ndim != 2 or X.shape[0] < 1 or X.shape[1] < 1:
            raise ValueError(f"features must be a non-empty 2-D matrix, got shape {X.shape}")
        if not np.all(np.isfinite(X)):
            raise ValueError("features contain NaN or infinite values")
        object.__setattr__(self, "features", _frozen(X))
        if self.labels is not None:
            y = np.asarray(self.labels)
            if y.ndim != 1 or y.shape[0] != X.shape[0]:
                raise ValueError(f"expected {X.shape[0]} labels, got shape {y.shape}")
            if y.size and (not np.issubdtype(y.dtype, np.integer) and not np.all(y == np.round(y))):
                raise ValueError("labels must be integers")
            y = y.astype(np.int64)
            if y.size and y.min() < 0:
                raise ValueError("labels must be non-negative")
            object.__setattr__(self, "labels", _frozen(y))

    @property
    def n(self) -> int:
        return self.features.shape[0]

    @property
    def m(self) -> int:
        return self.features.shape[1]

    def checksum(self) -> str:
        """SHA-256 over the shape and raw little-endian feature bytes."""
        h = hashlib.sha256()
        h.update(f"{self.n}x{self.m}".encode())
        h.update(self.features.astype("<f8").tobytes())
        return h.hexdigest()


@dataclass(frozen=True, eq=False)
class GranularBall:
    members: np.ndarray
    center: np.ndarray
    avg_radius: float
    max_radius: float

    @property
    def size(self) -> int:
        return int(self.members.shape[0])

    def __len__(self):
        return self.size

    def __repr__(self):
        return (f"GranularBall(size={self.size}, first={int(self.members[0])}, "
                f"avg_radius={self.avg_radius:.6g}, max_radius={self.max_radius:.6g})")


def euclidean(a, b) -> float:
    """2-norm of ``a - b``."""
    a = np.asarray(a, dtype=np.float64).ravel()
    b = np.asarray(b, dtype=np.float64).ravel()
    if a.shape != b.shape:
        raise DimMismatch(f"vectors of length {a.shape[0]} and {b.shape[0]}")
    d = a - b
    return float(np.sqrt(np.dot(d, d)))


def member_distances(X: np.ndarray, members: np.ndarray, point: np.ndarray) -> np.ndarray:
    """Euclidean distances from each member row to ``point``."""
    diff = X[members] - point
    return np.sqrt(np.einsum("ij,ij->i", diff, diff))


def _ball_from_sorted(X: np.ndarray, members: np.ndarray) -> GranularBall:
    # members must already be sorted, unique and in range
    rows = X[members]
    center = rows.mean(axis=0)
    diff = rows - center
    dist = np.sqrt(np.einsum("ij,ij->i", diff, diff))
    if members.shape[0] == 1:
        avg = mx = 0.0
    else:
        avg = float(dist.mean())
        mx = float(dist.max())
    return GranularBall(_frozen(members.astype(np.int64, copy=False)), _frozen(center), avg, mx)


def make_ball(dataset: Dataset, members: Iterable[int]) -> GranularBall:
    """Build the granular ball spanned by ``members`` (any order)."""
    idx = np.asarray(list(members) if not isinstance(members, np.ndarray) else members)
    if idx.size == 0:
        raise EmptyBall("a granular ball needs at least one member")
    if not np.issubdtype(idx.dtype, np.integer):
        raise BadIndex(f"member indices must be integers, got dtype {idx.dtype}")
    idx = np.sort(idx.astype(np.int64).ravel())
    if idx[0] < 0 or idx[-1] >= dataset.n:
        raise BadIndex(f"member index out of range [0, {dataset.n})")
    if np.any(idx[1:] == idx[:-1]):
        raise BadIndex("duplicate member index")
    return _ball_from_sorted(dataset.features, idx)


@dataclass(frozen=True, eq=False)
class GBSet:
    """An ordered collection of balls over a dataset of ``dataset_n`` rows."""

    balls: tuple
    dataset_n: int
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "balls", tuple(self.balls))

    def __len__(self):
        return len(self.balls)

    def __iter__(self):
        return iter(self.balls)

    def __getitem__(self, i):
        return self.balls[i]

    @property
    def centers(self) -> np.ndarray:
        return np.vstack([b.center for b in self.balls])

    @property
    def sizes(self) -> np.ndarray:
        return np.array([b.size for b in self.balls], dtype=np.int64)

    @property
    def avg_radii(self) -> np.ndarray:
        return np.array([b.avg_radius for b in self.balls])

    @property
    def max_radii(self) -> np.ndarray:
        return np.array([b.max_radius for b in self.balls])

    def membership(self) -> np.ndarray:
        """Ball index of every instance; -1 where an instance is uncovered."""
        out = np.full(self.dataset_n, -1, dtype=np.int64)
        for i, b in enumerate(self.balls):
            out[b.members] = i
        return out


def sort_balls(balls: Sequence[GranularBall]) -> list:
    return sorted(balls, key=lambda b: int(b.members[0]))


class PartitionCheck(NamedTuple):
    valid: bool
    duplicated: list
    missing: list
    out_of_range: list

    def __bool__(self):
        return self.valid


def validate_partition(gbset: GBSet) -> PartitionCheck:
    """Check that the balls cover each of ``0..n-1`` exactly once."""
    n = gbset.dataset_n
    counts = np.zeros(n, dtype=np.int64)
    bad = []
    for b in gbset.balls:
        m = np.asarray(b.members, dtype=np.int64)
        inside = (m >= 0) & (m < n)
        bad.extend(int(i) for i in m[~inside])
        np.add.at(counts, m[inside], 1)
    dup = np.flatnonzero(counts > 1).tolist()
    missing = np.flatnonzero(counts == 0).tolist()
    ok = not dup and not missing and not bad
    return PartitionCheck(ok, dup, missing, sorted(set(bad)))
