"""Granular-ball generators.

``generate_pojg`` grows a farthest-pair division tree down to the size
threshold ``delta * sqrt(n)``, keeps the frontier of the tree with the
largest total quality, and then splits balls that are both unusually wide
and unusually sparse. ``generate_cheng`` and ``generate_xie`` are the two
baseline generators it is compared against.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from .balls import Dataset, GBSet, GranularBall, _ball_from_sorted, sort_balls
from .division import split_farthest_pair, split_two_means
from .quality import QualityParams, ball_quality


@dataclass(eq=False)
class GBTreeNode:
    ball: GranularBall
    children: tuple = ()
    quality: Optional[float] = None
    best_quality: Optional[float] = None
    best_combination: list = field(default_factory=list)
    degenerate: bool = False

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def iter_nodes(self):
        """Pre-order traversal."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def leaves(self) -> list:
        return [n for n in self.iter_nodes() if n.is_leaf]


@dataclass(frozen=True)
class AnomalyStats:
    r_avg: float
    n_avg: float
    r_max_avg: float
    r_max_med: float

    @classmethod
    def from_balls(cls, balls) -> "AnomalyStats":
        balls = list(balls)
        avg_r = np.array([b.avg_radius for b in balls])
        max_r = np.array([b.max_radius for b in balls])
        sizes = np.array([b.size for b in balls], dtype=np.float64)
        return cls(float(avg_r.mean()), float(sizes.mean()),
                   float(max_r.mean()), float(np.median(max_r)))


def _root_ball(X: np.ndarray) -> GranularBall:
    return _ball_from_sorted(X, np.arange(X.shape[0], dtype=np.int64))


def _children(X, split) -> tuple:
    return _ball_from_sorted(X, split.alpha), _ball_from_sorted(X, split.beta)


def build_division_tree(dataset: Dataset, params: QualityParams) -> GBTreeNode:
    """Split every node larger than ``delta * sqrt(n)`` with the farthest-pair rule.

    Singletons are always leaves, which matters once ``delta * sqrt(n) < 1``.
    """
    X = dataset.features
    threshold = params.delta * math.sqrt(dataset.n)
    root = GBTreeNode(_root_ball(X))
    queue = deque([root])
    while queue:
        node = queue.popleft()
        if node.ball.size <= threshold or node.ball.size < 2:
            continue
        split = split_farthest_pair(X, node.ball.members)
        if split.degenerate:
            node.degenerate = True
            continue
        a, b = _children(X, split)
        node.children = (GBTreeNode(a), GBTreeNode(b))
        queue.extend(node.children)
    return root


def _postorder(root: GBTreeNode) -> list:
    order, stack = [], [root]
    while stack:
        node = stack.pop()
        order.append(node)
        stack.extend(node.children)
    order.reverse()
    return order


def prune_best_combination(tree: GBTreeNode, dataset, params: QualityParams) -> list:
    """Fill in best quality / best combination bottom-up and return the root's combination.

    Node qualities already set on the tree are used as-is; missing ones are
    computed. When splitting ties with keeping the node, the split is kept.
    """
    for node in _postorder(tree):
        if node.quality is None:
            node.quality = ball_quality(node.ball, dataset, params)
        if node.is_leaf:
            node.best_quality = node.quality
            node.best_combination = [node]
            continue
        a, b = node.children
        below = a.best_quality + b.best_quality
        if below >= node.quality:
            node.best_quality = below
            node.best_combination = a.best_combination + b.best_combination
        else:
            node.best_quality = node.quality
            node.best_combination = [node]
    return [n.ball for n in tree.best_combination]


def detect_abnormal_pojg(ball: GranularBall, stats: AnomalyStats) -> bool:
    """Wide and sparse: average radius above twice the mean and size below half the mean."""
    return ball.avg_radius > 2.0 * stats.r_avg and ball.size < 0.5 * stats.n_avg


def detect_abnormal_xie(ball: GranularBall, stats: AnomalyStats) -> bool:
    return ball.max_radius > 2.0 * max(stats.r_max_avg, stats.r_max_med)


def generate_pojg(dataset: Dataset, params: QualityParams = QualityParams()) -> GBSet:
    X = dataset.features
    tree = build_division_tree(dataset, params)
    selected = prune_best_combination(tree, dataset, params)
    # statistics are frozen before the anomaly pass, children are judged against them
    stats = AnomalyStats.from_balls(selected)
    queue = deque(selected)
    out: List[GranularBall] = []
    while queue:
        ball = queue.popleft()
        if ball.size >= 2 and detect_abnormal_pojg(ball, stats):
            split = split_farthest_pair(X, ball.members)
            if not split.degenerate:
                queue.extend(_children(X, split))
                continue
        out.append(ball)
    meta = {
        "method": "pojg",
        "gamma": params.gamma,
        "delta": params.delta,
        "best_quality": tree.best_quality,
        "pre_anomaly": tuple(selected),
        "anomaly_stats": stats,
        "tree": tree,
    }
    return GBSet(sort_balls(out), dataset.n, meta)


def generate_cheng(dataset: Dataset, seed: int = 0) -> GBSet:
    """Repeated 2-means halving until no ball exceeds ``sqrt(n)`` members."""
    X = dataset.features
    threshold = math.sqrt(dataset.n)
    queue = deque([_root_ball(X)])
    out = []
    while queue:
        ball = queue.popleft()
        if ball.size > threshold:
            split = split_two_means(X, ball.members, seed=seed)
            if not split.degenerate:
                queue.extend(_children(X, split))
                continue
        out.append(ball)
    return GBSet(sort_balls(out), dataset.n, {"method": "cheng", "seed": seed})


@dataclass(frozen=True)
class SplitEvent:
    phase: str  # "greedy" or "anomaly"
    parent: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray


def generate_xie(dataset: Dataset, trace: Optional[list] = None) -> GBSet:
    """Greedy splitting on the weighted distribution measure, then max-radius anomaly rounds.

    If ``trace`` is a list, a :class:`SplitEvent` is appended for every split.
    """
    X = dataset.features
    queue = deque([_root_ball(X)])
    phi = []
    while queue:
        ball = queue.popleft()
        if ball.size >= 2:
            split = split_farthest_pair(X, ball.members)
            if not split.degenerate:
                a, b = _children(X, split)
                weighted = (a.size * a.avg_radius + b.size * b.avg_radius) / ball.size
                if weighted < ball.avg_radius:
                    if trace is not None:
                        trace.append(SplitEvent("greedy", ball.members, a.members, b.members))
                    queue.extend((a, b))
                    continue
        phi.append(ball)

    rounds = 0
    while True:
        stats = AnomalyStats.from_balls(phi)
        nxt, changed = [], False
        for ball in phi:
            if ball.size >= 2 and detect_abnormal_xie(ball, stats):
                split = split_farthest_pair(X, ball.members)
                if not split.degenerate:
                    a, b = _children(X, split)
                    if trace is not None:
                        trace.append(SplitEvent("anomaly", ball.members, a.members, b.members))
                    nxt.extend((a, b))
                    changed = True
                    continue
            nxt.append(ball)
        phi = nxt
        if not changed:
            break
        rounds += 1
    return GBSet(sort_balls(phi), dataset.n, {"method": "xie", "anomaly_rounds": rounds})


GENERATORS = ("pojg", "cheng", "xie")


def generate(dataset: Dataset, method: str = "pojg", gamma: float = 1.0,
             delta: float = 0.3, seed: int = 0) -> GBSet:
    if method == "pojg":
        return generate_pojg(dataset, QualityParams(gamma, delta))
    if method == "cheng":
        return generate_cheng(dataset, seed=seed)
    if method == "xie":
        return generate_xie(dataset)
    raise ValueError(f"unknown generation method {method!r}; expected one of {GENERATORS}")


def total_quality(gbset, dataset, params: QualityParams) -> float:
    return math.fsum(ball_quality(b, dataset, params) for b in gbset)
