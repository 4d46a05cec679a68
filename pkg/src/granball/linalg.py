"""Dense symmetric eigensolver (cyclic Jacobi, round-robin ordering)."""
from __future__ import annotations

import numpy as np

from .exceptions import EigFailed, NotSymmetric

_EPS = np.finfo(np.float64).eps


def _round_robin(s: int) -> list:
    """Rounds of disjoint ``(p, q)`` pairs, ``p < q``; each pair occurs once per sweep."""
    size = s + (s % 2)
    players = list(range(size))
    rounds = []
    for _ in range(size - 1):
        half = size // 2
        p = np.array(players[:half])
        q = np.array(players[half:][::-1])
        keep = (p < s) & (q < s)
        rounds.append((np.minimum(p, q)[keep], np.maximum(p, q)[keep]))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def _off_norm(A: np.ndarray) -> float:
    off = A.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.linalg.norm(off))


def _rotation(app, aqq, apq):
    """Cosine and sine of the rotation that zeroes ``apq``."""
    nz = apq != 0.0
    with np.errstate(over="ignore"):
        theta = np.where(nz, (aqq - app) / np.where(nz, 2.0 * apq, 1.0), 0.0)
    # beyond 1e150 theta*theta overflows; the angle is ~1/(2 theta) there
    big = np.abs(theta) > 1e150
    th = np.where(big, 1.0, theta)
    t = np.where(th >= 0.0, 1.0, -1.0) / (np.abs(th) + np.sqrt(th * th + 1.0))
    t = np.where(big, 0.5 / np.where(big, theta, 1.0), t)
    t = np.where(nz, t, 0.0)
    c = 1.0 / np.sqrt(t * t + 1.0)
    return c, t * c


def sym_eig(matrix, tol: float = 1e-11, max_sweeps: int = 100):
    """Eigen-decomposition of a real symmetric matrix.

    Returns ``(w, V)`` with eigenvalues ``w`` ascending and orthonormal
    eigenvectors in the columns of ``V``. Each sweep applies every Jacobi
    rotation once; rotations on disjoint index pairs are applied together.

    Raises :class:`NotSymmetric` when ``matrix`` is not symmetric within
    1e-9 and :class:`EigFailed` when ``max_sweeps`` is exhausted.
    """
    A = np.array(matrix, dtype=np.float64, copy=True)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise NotSymmetric(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise NotSymmetric("matrix has non-finite entries")
    scale = float(np.abs(A).max()) if A.size else 0.0
    if A.size and np.abs(A - A.T).max() > 1e-9 * max(1.0, scale):
        raise NotSymmetric("matrix is not symmetric within 1e-9")
    s = A.shape[0]
    A = 0.5 * (A + A.T)
    V = np.eye(s)
    if s <= 1:
        return np.diag(A).copy(), V

    # an absolute 1e-11 is below round-off for large-norm inputs
    stop = max(tol, 8.0 * _EPS * np.linalg.norm(A))
    rounds = _round_robin(s)
    for _ in range(max_sweeps):
        if _off_norm(A) < stop:
            break
        for p, q in rounds:
            apq = A[p, q]
            if not np.any(apq):
                continue
            c, sn = _rotation(A[p, p], A[q, q], apq)
            Ap, Aq = A[p, :], A[q, :]
            A[p, :] = c[:, None] * Ap - sn[:, None] * Aq
            A[q, :] = sn[:, None] * Ap + c[:, None] * Aq
            Ap, Aq = A[:, p], A[:, q]
            A[:, p] = Ap * c - Aq * sn
            A[:, q] = Ap * sn + Aq * c
            A[p, q] = 0.0
            A[q, p] = 0.0
            Vp, Vq = V[:, p], V[:, q]
            V[:, p] = Vp * c - Vq * sn
            V[:, q] = Vp * sn + Vq * c
    else:
        if _off_norm(A) >= stop:
            raise EigFailed(f"Jacobi did not converge in {max_sweeps} sweeps")

    w = np.diag(A).copy()
    order = np.argsort(w, kind="stable")
    return w[order], V[:, order]
