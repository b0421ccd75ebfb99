"""Lloyd's k-means with k-means++ seeding.

Deterministic for a fixed seed: single restart by default, ties resolved by
lowest index, final labels renumbered by each cluster's first member.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from ..errors import ValidationError
from .assignment import ClusterAssignment, renumber_by_first_member


@dataclass(frozen=True)
class KMeansConfig:
    k: int
    max_iter: int = 300
    tol: float = 1e-4  # convergence threshold on max centroid shift
    seed: int = 0
    n_init: int = 1  # restarts; best inertia wins, first restart wins ties

    def __post_init__(self):
        if self.k < 1:
            raise ValidationError("k must be >= 1")
        if self.max_iter < 1:
            raise ValidationError("max_iter must be >= 1")
        if self.tol < 0:
            raise ValidationError("tol must be >= 0")
        if self.n_init < 1:
            raise ValidationError("n_init must be >= 1")


@dataclass(frozen=True)
class KMeansResult:
    assignment: ClusterAssignment
    centroids: np.ndarray
    inertia: float
    inertia_history: tuple[float, ...]  # per-assignment-step objective, non-increasing
    n_iter: int


def _plus_plus_init(X: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """k-means++ seeding: each new centroid sampled with probability
    proportional to squared distance from the chosen set."""
    n = X.shape[0]
    centroids = np.empty((k, X.shape[1]), dtype=np.float64)
    first = int(rng.integers(n))
    centroids[0] = X[first]
    d2 = np.sum((X - centroids[0]) ** 2, axis=1)
    for i in range(1, k):
        total = d2.sum()
        if total <= 0:
            # all remaining points coincide with chosen centroids
            candidates = np.flatnonzero(d2 == 0)
            choice = int(candidates[rng.integers(candidates.size)])
        else:
            choice = int(rng.choice(n, p=d2 / total))
        centroids[i] = X[choice]
        d2 = np.minimum(d2, np.sum((X - centroids[i]) ** 2, axis=1))
    return centroids


def _repair_empty(
    X: np.ndarray, labels: np.ndarray, centroids: np.ndarray, d2_assigned: np.ndarray
) -> None:
    """Give every empty cluster the point currently farthest from its
    centroid; mutates labels, centroids and the assigned-distance vector."""
    k = centroids.shape[0]
    counts = np.bincount(labels, minlength=k)
    for cluster in np.flatnonzero(counts == 0):
        donor = int(np.argmax(d2_assigned))
        labels[donor] = cluster
        centroids[cluster] = X[donor]
        d2_assigned[donor] = 0.0
        counts[cluster] = 1


def _lloyd(X: np.ndarray, k: int, max_iter: int, tol: float, rng: np.random.Generator):
    centroids = _plus_plus_init(X, k, rng)
    history = []
    n_iter = 0
    for n_iter in range(1, max_iter + 1):
        d2 = cdist(X, centroids, metric="sqeuclidean")
        labels = np.argmin(d2, axis=1)
        d2_assigned = d2[np.arange(X.shape[0]), labels]
        _repair_empty(X, labels, centroids, d2_assigned)
        history.append(float(d2_assigned.sum()))

        new_centroids = np.empty_like(centroids)
        for c in range(k):
            members = labels == c
            new_centroids[c] = X[members].mean(axis=0)
        shift = float(np.max(np.linalg.norm(new_centroids - centroids, axis=1)))
        centroids = new_centroids
        if shift <= tol:
            break

    # Final assignment against the converged centroids.
    d2 = cdist(X, centroids, metric="sqeuclidean")
    labels = np.argmin(d2, axis=1)
    d2_assigned = d2[np.arange(X.shape[0]), labels]
    _repair_empty(X, labels, centroids, d2_assigned)
    history.append(float(d2_assigned.sum()))
    return labels, centroids, history, n_iter


def kmeans(X, config: KMeansConfig) -> KMeansResult:
    X = np.asarray(getattr(X, "values", X), dtype=np.float64)
    n = X.shape[0]
    if config.k > n:
        raise ValidationError(f"k={config.k} exceeds number of rows {n}")

    rng = np.random.default_rng(config.seed)
    best = None
    for _ in range(config.n_init):
        labels, centroids, history, n_iter = _lloyd(
            X, config.k, config.max_iter, config.tol, rng
        )
        inertia = history[-1]
        if best is None or inertia < best[0]:
            best = (inertia, labels, centroids, history, n_iter)

    inertia, labels, centroids, history, n_iter = best
    relabeled = renumber_by_first_member(labels)
    # Reorder centroids to match the canonical numbering.
    order = np.empty(config.k, dtype=np.int64)
    for old in range(config.k):
        members = np.flatnonzero(labels == old)
        order[relabeled[members[0]]] = old
    return KMeansResult(
        assignment=ClusterAssignment(labels=relabeled, allows_noise=False),
        centroids=centroids[order],
        inertia=inertia,
        inertia_history=tuple(history),
        n_iter=n_iter,
    )
