"""Independent reference computations used only by the tests.

Everything here is written with plain Python loops or exhaustive search so
that it shares no code path with the package under test.
"""
import itertools
import math
from collections import Counter

import numpy as np


def dist(a, b):
    return math.sqrt(sum((float(x) - float(y)) ** 2 for x, y in zip(a, b)))


def ball_stats(rows):
    rows = [list(map(float, r)) for r in rows]
    n, m = len(rows), len(rows[0])
    center = [sum(r[j] for r in rows) / n for j in range(m)]
    d = [dist(r, center) for r in rows]
    return center, sum(d) / n, max(d)


def total_within_distance(rows):
    center, avg, _ = ball_stats(rows)
    return sum(dist(r, center) for r in rows)


def farthest_pair(X, members):
    """Exhaustive scan; lexicographically smallest maximizing (i, j), i < j."""
    best, pair = -1.0, None
    ms = sorted(members)
    for a in range(len(ms)):
        for b in range(a + 1, len(ms)):
            i, j = ms[a], ms[b]
            d2 = float(((X[i] - X[j]) ** 2).sum())
            if d2 > best:
                best, pair = d2, (i, j)
    return best, pair


def coverage(rows):
    center, avg, _ = ball_stats(rows)
    return sum(1 for r in rows if dist(r, center) <= avg + 1e-12)


def frontier_values(node):
    """Tree-structured total quality of every frontier below ``node``."""
    if not node.children:
        return np.array([node.quality])
    a, b = node.children
    below = np.add.outer(frontier_values(a), frontier_values(b)).ravel()
    return np.concatenate([[node.quality], below])


def frontier_count(node):
    if not node.children:
        return 1
    a, b = node.children
    return 1 + frontier_count(a) * frontier_count(b)


def permutation_accuracy(pred, truth):
    """Best matched fraction over every injective relabeling (exhaustive)."""
    p_ids = sorted(set(pred))
    t_ids = sorted(set(truth))
    size = max(len(p_ids), len(t_ids))
    counts = [[0] * size for _ in range(size)]
    pi = {v: i for i, v in enumerate(p_ids)}
    ti = {v: i for i, v in enumerate(t_ids)}
    for a, b in zip(pred, truth):
        counts[pi[a]][ti[b]] += 1
    best = 0
    for perm in itertools.permutations(range(size)):
        best = max(best, sum(counts[i][perm[i]] for i in range(size)))
    return best / len(pred)


def nmi_reference(pred, truth):
    n = len(pred)
    cp, ct, joint = Counter(pred), Counter(truth), Counter(zip(pred, truth))
    hp = -sum(c / n * math.log(c / n) for c in cp.values())
    ht = -sum(c / n * math.log(c / n) for c in ct.values())
    mi = sum(c / n * math.log((c / n) / ((cp[a] / n) * (ct[b] / n))) for (a, b), c in joint.items())
    if hp == 0 or ht == 0:
        return None
    return mi / math.sqrt(hp * ht)


def cubic_sym_eigvals(A):
    """Closed-form eigenvalues of a symmetric 3x3 matrix (trigonometric cubic roots)."""
    a = [[float(A[i][j]) for j in range(3)] for i in range(3)]
    p1 = a[0][1] ** 2 + a[0][2] ** 2 + a[1][2] ** 2
    q = (a[0][0] + a[1][1] + a[2][2]) / 3
    if p1 == 0:
        return sorted([a[0][0], a[1][1], a[2][2]])
    p2 = sum((a[i][i] - q) ** 2 for i in range(3)) + 2 * p1
    p = math.sqrt(p2 / 6)
    B = [[(a[i][j] - (q if i == j else 0)) / p for j in range(3)] for i in range(3)]
    detB = (B[0][0] * (B[1][1] * B[2][2] - B[1][2] * B[2][1])
            - B[0][1] * (B[1][0] * B[2][2] - B[1][2] * B[2][0])
            + B[0][2] * (B[1][0] * B[2][1] - B[1][1] * B[2][0]))
    r = max(-1.0, min(1.0, detB / 2))
    phi = math.acos(r) / 3
    e1 = q + 2 * p * math.cos(phi)
    e3 = q + 2 * p * math.cos(phi + 2 * math.pi / 3)
    e2 = 3 * q - e1 - e3
    return sorted([e1, e2, e3])


def random_dataset(rng, n_max=2000, m_max=10, n=None):
    """A random dataset drawn from one of several structural families.

    Without an explicit ``n`` the size is log-uniform on ``[1, n_max]``.
    """
    if n is None:
        n = int(np.exp(rng.uniform(0, np.log(n_max)))) if n_max > 1 else 1
        n = max(1, min(n, n_max))
    m = int(rng.integers(1, m_max + 1))
    family = int(rng.integers(0, 5))
    if family == 0:
        X = rng.normal(size=(n, m)) * rng.uniform(0.01, 100)
    elif family == 1:
        k = int(rng.integers(1, 8))
        centers = rng.uniform(-50, 50, size=(k, m))
        X = centers[rng.integers(0, k, size=n)] + rng.normal(scale=rng.uniform(0.1, 5), size=(n, m))
    elif family == 2:
        # integer grid with many exact duplicates and distance ties
        X = rng.integers(0, 4, size=(n, m)).astype(float)
    elif family == 3:
        X = rng.uniform(0, 1, size=(n, m)) ** 3
    else:
        X = np.repeat(rng.normal(size=(max(1, n // 7), m)), 7, axis=0)[:n]
        if X.shape[0] < n:
            X = np.vstack([X, np.zeros((n - X.shape[0], m))])
    return X
