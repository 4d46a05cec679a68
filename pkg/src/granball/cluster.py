"""Clustering on granular balls.

Both algorithms label balls and then copy each ball's label to its members.
``gbdpc`` runs density peaks over ball centers with member-count weighted
densities; ``gbsc`` runs normalized spectral clustering over ball centers.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .balls import GBSet
from .exceptions import DegenerateGeometry, TooFewBalls, TooFewPoints
from .linalg import sym_eig

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """SplitMix64 generator; every random draw in the package comes from one of these."""

    def __init__(self, seed: int = 0):
        self.state = int(seed) & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))


@dataclass
class ClusterAssignment:
    ball_labels: np.ndarray
    instance_labels: np.ndarray
    k: int
    run_meta: dict = field(default_factory=dict)


def cross_distances(A: np.ndarray, B: np.ndarray, chunk: int = 256) -> np.ndarray:
    """Exact Euclidean distances between the rows of ``A`` and of ``B``."""
    out = np.empty((A.shape[0], B.shape[0]))
    for a in range(0, A.shape[0], chunk):
        d = A[a:a + chunk, None, :] - B[None, :, :]
        out[a:a + chunk] = np.sqrt((d * d).sum(axis=-1))
    return out


def pairwise_distances(P: np.ndarray) -> np.ndarray:
    return cross_distances(P, P)


def _propagate(gbset: GBSet, ball_labels: np.ndarray) -> np.ndarray:
    owner = gbset.membership()
    if np.any(owner < 0):
        raise ValueError("ball set does not cover every instance")
    return ball_labels[owner]


def _ball_keys(gbset: GBSet) -> np.ndarray:
    # smallest member index identifies a ball independently of list order
    return np.array([int(b.members[0]) for b in gbset.balls], dtype=np.int64)


def gbdpc(gbset: GBSet, k: int, lam: float = 0.1) -> ClusterAssignment:
    """Density-peaks clustering over balls.

    The truncation distance is ``lam`` times the largest center-to-center
    distance. Density of a ball is the sum over the other balls of
    ``size * exp(-(d / d_c)**2)``.
    """
    s = len(gbset)
    if not (0 < lam <= 1):
        raise ValueError(f"lambda must lie in (0, 1], got {lam}")
    if k < 1 or s < k:
        raise TooFewBalls(f"{s} balls cannot form {k} clusters")
    meta = {"method": "gbdpc", "k": int(k), "lambda": float(lam), "n_balls": s}
    if s == 1:
        ball_labels = np.zeros(1, dtype=np.int64)
        return ClusterAssignment(ball_labels, _propagate(gbset, ball_labels), k, meta)

    # work in key order so that floating-point sums do not depend on list order
    keys = _ball_keys(gbset)
    perm = np.argsort(keys, kind="stable")
    keys = keys[perm]
    D = pairwise_distances(gbset.centers[perm])
    md = D.max()
    dc = lam * md
    if not dc > 0:
        raise DegenerateGeometry("all ball centers coincide; truncation distance is zero")
    sizes = gbset.sizes[perm].astype(np.float64)
    K = np.exp(-(D / dc) ** 2)
    np.fill_diagonal(K, 0.0)
    rho = K @ sizes

    # decreasing density; equal densities rank the smaller key higher
    order = np.lexsort((keys, -rho))
    delta = np.empty(s)
    parent = np.full(s, -1, dtype=np.int64)
    top = order[0]
    delta[top] = D[top].max()
    for r in range(1, s):
        i = order[r]
        higher = order[:r]
        d = D[i, higher]
        best = d.min()
        cand = higher[d == best]
        parent[i] = cand[np.argmin(keys[cand])]
        delta[i] = best

    score = rho * delta
    centers = list(np.lexsort((keys, -score))[:k])
    if top not in centers:
        # the densest ball has no denser neighbour to inherit from
        centers[-1] = top
    sorted_labels = np.full(s, -1, dtype=np.int64)
    for lab, c in enumerate(centers):
        sorted_labels[c] = lab
    for i in order:
        if sorted_labels[i] < 0:
            sorted_labels[i] = sorted_labels[parent[i]]
    ball_labels = np.empty(s, dtype=np.int64)
    ball_labels[perm] = sorted_labels
    meta.update({"cutoff_distance": float(dc), "centers": [int(keys[c]) for c in centers]})
    return ClusterAssignment(ball_labels, _propagate(gbset, ball_labels), k, meta)


def _kmeanspp_seed(P: np.ndarray, k: int, rng: SplitMix64) -> np.ndarray:
    s = P.shape[0]
    chosen = [min(int(rng.random() * s), s - 1)]
    d2 = ((P - P[chosen[0]]) ** 2).sum(axis=1)
    for _ in range(1, k):
        total = d2.sum()
        if total > 0:
            cdf = np.cumsum(d2)
            j = int(np.searchsorted(cdf, rng.random() * total, side="right"))
            j = min(j, s - 1)
            while d2[j] == 0:
                j -= 1
        else:
            free = np.setdiff1d(np.arange(s), chosen)
            j = int(free[0])
        chosen.append(j)
        d2 = np.minimum(d2, ((P - P[j]) ** 2).sum(axis=1))
    return P[chosen].copy()


def _lloyd(P, centers, max_iter):
    k = centers.shape[0]
    labels = None
    for _ in range(max_iter):
        d2 = ((P[:, None, :] - centers[None, :, :]) ** 2).sum(axis=-1)
        new = np.argmin(d2, axis=1)
        counts = np.bincount(new, minlength=k)
        while np.any(counts == 0):
            empty = int(np.flatnonzero(counts == 0)[0])
            own = d2[np.arange(P.shape[0]), new]
            own = np.where(counts[new] > 1, own, -np.inf)
            steal = int(np.argmax(own))
            counts[new[steal]] -= 1
            new[steal] = empty
            counts[empty] += 1
        if labels is not None and np.array_equal(new, labels):
            break
        labels = new
        centers = np.vstack([P[labels == c].mean(axis=0) for c in range(k)])
    inertia = float(((P - centers[labels]) ** 2).sum())
    return labels, inertia


def _relabel(labels: np.ndarray) -> np.ndarray:
    _, first = np.unique(labels, return_index=True)
    rank = np.argsort(np.argsort(first)).astype(np.int64)
    return rank[np.searchsorted(np.unique(labels), labels)]


def kmeans_embed(points, k: int, seed: int = 0, n_init: int = 10, max_iter: int = 300) -> np.ndarray:
    """k-means with k-means++ seeding and restarts; the lowest inertia wins, earlier on ties.

    Every returned cluster is non-empty. Labels are numbered by first appearance.
    """
    P = np.asarray(points, dtype=np.float64)
    if P.ndim == 1:
        P = P[:, None]
    s = P.shape[0]
    if k < 1 or s < k:
        raise TooFewPoints(f"{s} points cannot form {k} clusters")
    if k == 1:
        return np.zeros(s, dtype=np.int64)
    rng = SplitMix64(seed)
    best, best_inertia = None, np.inf
    for _ in range(n_init):
        labels, inertia = _lloyd(P, _kmeanspp_seed(P, k, rng), max_iter)
        if inertia < best_inertia:
            best, best_inertia = labels, inertia
    return _relabel(best)


def gbsc(gbset: GBSet, k: int, sigma: float = 1.0, seed: int = 0,
         eigensolver: str = "jacobi") -> ClusterAssignment:
    """Normalized spectral clustering over ball centers with a Gaussian affinity of width ``sigma``."""
    s = len(gbset)
    if not sigma > 0:
        raise ValueError(f"sigma must be > 0, got {sigma}")
    if k < 1 or s < k:
        raise TooFewBalls(f"{s} balls cannot form {k} clusters")
    D = pairwise_distances(gbset.centers)
    W = np.exp(-(D * D) / (2.0 * sigma * sigma))
    np.fill_diagonal(W, 0.0)
    deg = W.sum(axis=1)
    dinv = np.zeros(s)
    np.divide(1.0, np.sqrt(deg), out=dinv, where=deg > 0)
    L = np.eye(s) - dinv[:, None] * W * dinv[None, :]
    L = 0.5 * (L + L.T)
    if eigensolver == "jacobi":
        _, V = sym_eig(L)
    elif eigensolver == "lapack":
        _, V = np.linalg.eigh(L)
    else:
        raise ValueError(f"unknown eigensolver {eigensolver!r}")
    U = V[:, :k]
    norms = np.linalg.norm(U, axis=1)
    U = np.divide(U, norms[:, None], out=np.zeros_like(U), where=norms[:, None] > 0)
    ball_labels = kmeans_embed(U, k, seed=seed)
    meta = {"method": "gbsc", "k": int(k), "sigma": float(sigma), "seed": int(seed),
            "eigensolver": eigensolver, "n_balls": s}
    return ClusterAssignment(ball_labels, _propagate(gbset, ball_labels), k, meta)
