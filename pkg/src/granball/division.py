"""Two-way splitting of a member set.

Both splitters return a :class:`SplitResult` whose halves are sorted index
arrays into the dataset. Tie-breaks are decided on dataset indices, never on
positions in the input, so the result does not depend on member order.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .balls import Dataset
from .exceptions import BadIndex, TooSmallToSplit

# below this size the full pairwise block is formed directly
_DIRECT_LIMIT = 256
_BLOCK_ROWS = 256
_EPS = np.finfo(np.float64).eps


@dataclass(frozen=True)
class SplitResult:
    alpha: np.ndarray
    beta: np.ndarray
    anchors: Optional[Tuple[int, int]]
    degenerate: bool


def _features(data) -> np.ndarray:
    return data.features if isinstance(data, Dataset) else np.asarray(data, dtype=np.float64)


def _prepare(members, n: int) -> np.ndarray:
    idx = np.unique(np.asarray(members, dtype=np.int64).ravel())
    if idx.shape[0] < 2:
        raise TooSmallToSplit(f"need at least 2 members to split, got {idx.shape[0]}")
    if idx[0] < 0 or idx[-1] >= n:
        raise BadIndex("member index out of range")
    return idx


def _sqdist(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    d = a - b
    return (d * d).sum(axis=-1)


def _first_max_pair(d2: np.ndarray, offset_rows: np.ndarray, cols: np.ndarray):
    best = d2.max()
    r, c = np.nonzero(d2 == best)
    k = np.lexsort((cols[c], offset_rows[r]))[0]
    return best, int(offset_rows[r[k]]), int(cols[c[k]])


def farthest_pair(X: np.ndarray, idx: np.ndarray) -> Tuple[float, int, int]:
    """Exact farthest pair of the sorted index set ``idx``.

    Returns ``(squared distance, i, j)`` with ``i < j`` dataset indices. Among
    several maximizing pairs the lexicographically smallest ``(i, j)`` wins.
    """
    s = idx.shape[0]
    P = X[idx]
    if s <= _DIRECT_LIMIT:
        d2 = _sqdist(P[:, None, :], P[None, :, :])
        d2 = np.triu(d2, 1)
        best, a, b = _first_max_pair(d2, np.arange(s), np.arange(s))
        return float(best), int(idx[a]), int(idx[b])

    # Gram-matrix screen on centered rows, then exact re-check of every pair
    # within the rounding envelope of the screened maximum.
    Q = P - P.mean(axis=0)
    sq = np.einsum("ij,ij->i", Q, Q)
    tol = 32.0 * _EPS * (4.0 * sq.max() + 1e-300) * max(1, Q.shape[1])
    running = -np.inf
    cand_r, cand_c = [], []
    for a in range(0, s - 1, _BLOCK_ROWS):
        b = min(a + _BLOCK_ROWS, s)
        g = Q[a:b] @ Q[a:].T
        g *= -2.0
        g += sq[a:b, None]
        g += sq[None, a:]
        h = b - a
        g[:, :h][np.tril_indices(h)] = -np.inf
        bm = g.max()
        if bm < running - tol:
            continue
        running = max(running, bm)
        r, c = np.nonzero(g >= running - tol)
        if r.size:
            cand_r.append(r + a)
            cand_c.append(c + a)
    r = np.concatenate(cand_r)
    c = np.concatenate(cand_c)
    d2 = _sqdist(P[r], P[c])
    best = d2.max()
    hit = np.flatnonzero(d2 == best)
    k = hit[np.lexsort((c[hit], r[hit]))[0]]
    return float(best), int(idx[r[k]]), int(idx[c[k]])


def _assign_to_anchors(X, idx, ca, cb):
    P = X[idx]
    da = np.sqrt(_sqdist(P, ca))
    db = np.sqrt(_sqdist(P, cb))
    return da <= db


def split_farthest_pair(dataset, members) -> SplitResult:
    """Split around the two mutually farthest members.

    A member goes to the first anchor's side when it is no farther from it
    than from the second anchor.
    """
    X = _features(dataset)
    idx = _prepare(members, X.shape[0])
    d2, i, j = farthest_pair(X, idx)
    if d2 == 0.0:
        return SplitResult(idx, idx[:0], None, True)
    to_alpha = _assign_to_anchors(X, idx, X[i], X[j])
    return SplitResult(idx[to_alpha], idx[~to_alpha], (i, j), False)


def split_two_means(dataset, members, seed: int = 0, max_iter: int = 100) -> SplitResult:
    """Lloyd's 2-means started from the farthest pair.

    ``seed`` is accepted for interface stability; the farthest-pair start is
    deterministic so it is currently unused.
    """
    X = _features(dataset)
    idx = _prepare(members, X.shape[0])
    d2, i, j = farthest_pair(X, idx)
    if d2 == 0.0:
        return SplitResult(idx, idx[:0], None, True)
    P = X[idx]
    ca, cb = X[i].copy(), X[j].copy()
    assign = None
    for _ in range(max_iter):
        new = _assign_to_anchors(X, idx, ca, cb)
        if not new.any() or new.all():
            return SplitResult(idx, idx[:0], (i, j), True)
        if assign is not None and np.array_equal(new, assign):
            break
        assign = new
        ca = P[assign].mean(axis=0)
        cb = P[~assign].mean(axis=0)
    return SplitResult(idx[assign], idx[~assign], (i, j), False)
