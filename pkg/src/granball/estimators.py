"""scikit-learn compatible wrappers around the generators and ball-level clusterers."""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .balls import Dataset
from .cluster import cross_distances, gbdpc, gbsc
from .generation import GENERATORS, generate


def _check_method(method):
    if method not in GENERATORS:
        raise ValueError(f"method must be one of {GENERATORS}, got {method!r}")


class GranularBallGenerator(TransformerMixin, BaseEstimator):
    """Cover the training data with granular balls.

    Parameters
    ----------
    method : {"pojg", "cheng", "xie"}
        Generation rule. ``gamma`` and ``delta`` only affect ``"pojg"``.
    gamma : float
        Specificity weight, ``>= 0``.
    delta : float
        Leaf-size threshold scale in ``(0, 1]``; leaves hold at most
        ``delta * sqrt(n)`` instances.
    random_state : int
        Passed to the 2-means splitter of ``"cheng"``.

    Attributes
    ----------
    balls_ : GBSet
    centers_ : ndarray of shape (n_balls, n_features)
    labels_ : ndarray of shape (n_samples,)
        Ball index of every training instance.
    """

    def __init__(self, method="pojg", gamma=1.0, delta=0.3, random_state=0):
        self.method = method
        self.gamma = gamma
        self.delta = delta
        self.random_state = random_state

    def fit(self, X, y=None):
        _check_method(self.method)
        X = check_array(X, dtype=np.float64)
        self.n_features_in_ = X.shape[1]
        self.balls_ = generate(Dataset(X), self.method, self.gamma, self.delta, self.random_state or 0)
        self.centers_ = self.balls_.centers
        self.avg_radii_ = self.balls_.avg_radii
        self.max_radii_ = self.balls_.max_radii
        self.sizes_ = self.balls_.sizes
        self.labels_ = self.balls_.membership()
        self.n_balls_ = len(self.balls_)
        return self

    def transform(self, X):
        """Distance from each row of ``X`` to every ball center."""
        check_is_fitted(self, "centers_")
        X = check_array(X, dtype=np.float64)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"X has {X.shape[1]} features, expected {self.n_features_in_}")
        return cross_distances(X, self.centers_)

    def predict(self, X):
        """Index of the nearest ball center."""
        return np.argmin(self.transform(X), axis=1)


class _BallClusterer(ClusterMixin, BaseEstimator):
    def _balls(self, X):
        _check_method(self.method)
        X = check_array(X, dtype=np.float64)
        self.n_features_in_ = X.shape[1]
        self.balls_ = generate(Dataset(X), self.method, self.gamma, self.delta,
                               getattr(self, "random_state", 0) or 0)
        return self.balls_

    def _store(self, assignment):
        self.assignment_ = assignment
        self.labels_ = assignment.instance_labels
        self.ball_labels_ = assignment.ball_labels
        return self


class GBDPC(_BallClusterer):
    """Density-peaks clustering of granular balls.

    ``cutoff_ratio`` sets the truncation distance as a fraction of the
    largest distance between ball centers.
    """

    def __init__(self, n_clusters=2, cutoff_ratio=0.1, method="pojg", gamma=1.0, delta=0.5):
        self.n_clusters = n_clusters
        self.cutoff_ratio = cutoff_ratio
        self.method = method
        self.gamma = gamma
        self.delta = delta

    def fit(self, X, y=None):
        balls = self._balls(X)
        return self._store(gbdpc(balls, self.n_clusters, self.cutoff_ratio))


class GBSC(_BallClusterer):
    """Normalized spectral clustering of granular balls with a Gaussian affinity of width ``sigma``."""

    def __init__(self, n_clusters=2, sigma=1.0, method="pojg", gamma=1.0, delta=0.3,
                 random_state=0, eigensolver="jacobi"):
        self.n_clusters = n_clusters
        self.sigma = sigma
        self.method = method
        self.gamma = gamma
        self.delta = delta
        self.random_state = random_state
        self.eigensolver = eigensolver

    def fit(self, X, y=None):
        balls = self._balls(X)
        return self._store(gbsc(balls, self.n_clusters, self.sigma, self.random_state or 0,
                                self.eigensolver))
