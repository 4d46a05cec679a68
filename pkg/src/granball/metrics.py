"""External clustering scores: matched accuracy and normalized mutual information."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .exceptions import LengthMismatch


@dataclass(frozen=True)
class ContingencyTable:
    counts: np.ndarray  # rows: predicted clusters, columns: true classes
    n: int


def _dense(labels) -> np.ndarray:
    _, inv = np.unique(np.asarray(labels), return_inverse=True)
    return inv.ravel()


def contingency(pred, truth) -> ContingencyTable:
    pred = np.asarray(pred).ravel()
    truth = np.asarray(truth).ravel()
    if pred.shape[0] != truth.shape[0]:
        raise LengthMismatch(f"{pred.shape[0]} predictions vs {truth.shape[0]} labels")
    if pred.shape[0] == 0:
        raise LengthMismatch("label sequences are empty")
    p, t = _dense(pred), _dense(truth)
    counts = np.zeros((p.max() + 1, t.max() + 1), dtype=np.int64)
    np.add.at(counts, (p, t), 1)
    return ContingencyTable(counts, int(pred.shape[0]))


def hungarian(cost):
    """Minimum-cost assignment of rows to distinct columns.

    Returns ``(rows, cols, total)``; ``min(r, c)`` pairs are assigned.
    """
    cost = np.asarray(cost, dtype=np.float64)
    rows, cols = linear_sum_assignment(cost)
    return rows, cols, float(cost[rows, cols].sum())


def clustering_accuracy(pred, truth) -> float:
    table = contingency(pred, truth)
    _, _, total = hungarian(-table.counts)
    return -total / table.n


def _entropy(counts: np.ndarray, n: int) -> float:
    p = counts[counts > 0] / n
    return float(-(p * np.log(p)).sum())


def nmi(pred, truth) -> float:
    """Mutual information over the geometric mean of the two entropies (natural log)."""
    table = contingency(pred, truth)
    c, n = table.counts, table.n
    h_pred = _entropy(c.sum(axis=1), n)
    h_true = _entropy(c.sum(axis=0), n)
    if h_pred == 0.0 or h_true == 0.0:
        # at least one side is a single cluster: identical only if both are
        return 1.0 if c.shape[0] == c.shape[1] == 1 else 0.0
    nz = c > 0
    if np.all(nz.sum(axis=0) == 1) and np.all(nz.sum(axis=1) == 1):
        return 1.0
    joint = c[nz] / n
    outer = np.outer(c.sum(axis=1), c.sum(axis=0))[nz] / (n * n)
    mi = float((joint * np.log(joint / outer)).sum())
    return max(0.0, min(1.0, mi / math.sqrt(h_pred * h_true)))
