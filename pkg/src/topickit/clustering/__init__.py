"""Clustering algorithms over embedding rows: k-means, k-medoids, HDBSCAN."""

from .assignment import ClusterAssignment
from .kmeans import KMeansConfig, KMeansResult, kmeans
from .kmedoids import KMedoidsConfig, KMedoidsResult, kmedoids
from .hdbscan import HdbscanConfig, hdbscan

__all__ = [
    "ClusterAssignment",
    "KMeansConfig",
    "KMeansResult",
    "kmeans",
    "KMedoidsConfig",
    "KMedoidsResult",
    "kmedoids",
    "HdbscanConfig",
    "hdbscan",
]
