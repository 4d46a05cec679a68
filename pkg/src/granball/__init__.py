"""Granular-ball generation and ball-level clustering."""

__version__ = "0.1.0"

from .balls import Dataset, GBSet, GranularBall, euclidean, make_ball, validate_partition
from .cluster import ClusterAssignment, gbdpc, gbsc, kmeans_embed
from .dataio import load_csv, minmax_normalize, synth
from .division import SplitResult, split_farthest_pair, split_two_means
from .estimators import GBDPC, GBSC, GranularBallGenerator
from .generation import (
    AnomalyStats,
    GBTreeNode,
    build_division_tree,
    detect_abnormal_pojg,
    generate,
    generate_cheng,
    generate_pojg,
    generate_xie,
    prune_best_combination,
)
from .linalg import sym_eig
from .metrics import clustering_accuracy, hungarian, nmi
from .quality import QualityParams, ball_quality, coverage, specificity, weighted_distribution_measure

__all__ = [
    "AnomalyStats", "ClusterAssignment", "Dataset", "GBDPC", "GBSC", "GBSet", "GBTreeNode",
    "GranularBall", "GranularBallGenerator", "QualityParams", "SplitResult", "ball_quality",
    "build_division_tree", "clustering_accuracy", "coverage", "detect_abnormal_pojg", "euclidean",
    "gbdpc", "gbsc", "generate", "generate_cheng", "generate_pojg", "generate_xie", "hungarian",
    "kmeans_embed", "load_csv", "make_ball", "minmax_normalize", "nmi", "prune_best_combination",
    "specificity", "split_farthest_pair", "split_two_means", "sym_eig", "synth",
    "validate_partition", "weighted_distribution_measure",
]
