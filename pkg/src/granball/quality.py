"""Ball quality: coverage times specificity, and the weighted distribution measure."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .balls import GranularBall, _ball_from_sorted, member_distances
from .division import SplitResult, _features
from .exceptions import DegenerateSplit

# absorbs rounding for members lying exactly on the average-radius sphere
COVERAGE_SLACK = 1e-12


@dataclass(frozen=True)
class QualityParams:
    """``gamma`` weighs specificity; ``delta`` scales the leaf-size threshold ``delta * sqrt(n)``."""

    gamma: float = 1.0
    delta: float = 0.3

    def __post_init__(self):
        if not (self.gamma >= 0 and math.isfinite(self.gamma)):
            raise ValueError(f"gamma must be a finite real >= 0, got {self.gamma}")
        if not (0 < self.delta <= 1):
            raise ValueError(f"delta must lie in (0, 1], got {self.delta}")


def coverage(ball: GranularBall, dataset) -> float:
    """Number of members within the average radius of the center."""
    X = _features(dataset)
    d = member_distances(X, ball.members, ball.center)
    return float(np.count_nonzero(d <= ball.avg_radius + COVERAGE_SLACK))


def specificity(ball: GranularBall, params: QualityParams) -> float:
    return math.exp(-params.gamma * ball.avg_radius)


def ball_quality(ball: GranularBall, dataset, params: QualityParams) -> float:
    return coverage(ball, dataset) * specificity(ball, params)


def weighted_distribution_measure(dataset, split: SplitResult) -> float:
    """Size-weighted mean of the two halves' average radii."""
    if split.degenerate or split.beta.size == 0 or split.alpha.size == 0:
        raise DegenerateSplit("weighted distribution measure needs two non-empty halves")
    X = _features(dataset)
    a = _ball_from_sorted(X, np.sort(split.alpha))
    b = _ball_from_sorted(X, np.sort(split.beta))
    total = a.size + b.size
    return (a.size * a.avg_radius + b.size * b.avg_radius) / total
