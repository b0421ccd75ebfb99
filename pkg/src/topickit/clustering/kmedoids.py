"""Alternating k-medoids (Voronoi iteration) with distance-squared seeding.

Assign every point to its nearest medoid (Euclidean), then move each medoid
to the member minimizing total within-cluster distance; stop when the medoid
set is stable.  All ties break toward the lowest index.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from ..errors import ValidationError
from .assignment import ClusterAssignment, renumber_by_first_member


@dataclass(frozen=True)
class KMedoidsConfig:
    k: int
    seed: int = 0
    max_iter: int = 300

    def __post_init__(self):
        if self.k < 1:
            raise ValidationError("k must be >= 1")
        if self.max_iter < 1:
            raise ValidationError("max_iter must be >= 1")


@dataclass(frozen=True)
class KMedoidsResult:
    assignment: ClusterAssignment
    medoid_indices: tuple[int, ...]


def _seed_medoids(D: np.ndarray, k: int, rng: np.random.Generator) -> list[int]:
    """Greedy distance-squared seeding over point indices, mirroring
    k-means++; keeps the starting medoids spread out."""
    n = D.shape[0]
    medoids = [int(rng.integers(n))]
    d2 = D[medoids[0]] ** 2
    for _ in range(1, k):
        total = d2.sum()
        if total <= 0:
            candidates = np.flatnonzero(d2 == 0)
            nxt = int(candidates[rng.integers(candidates.size)])
        else:
            nxt = int(rng.choice(n, p=d2 / total))
        medoids.append(nxt)
        d2 = np.minimum(d2, D[nxt] ** 2)
    return medoids


def kmedoids(X, config: KMedoidsConfig) -> KMedoidsResult:
    X = np.asarray(getattr(X, "values", X), dtype=np.float64)
    n = X.shape[0]
    if config.k > n:
        raise ValidationError(f"k={config.k} exceeds number of rows {n}")

    D = cdist(X, X)
    rng = np.random.default_rng(config.seed)
    medoids = sorted(set(_seed_medoids(D, config.k, rng)))
    while len(medoids) < config.k:  # dedupe fallback for degenerate data
        extra = int(np.setdiff1d(np.arange(n), medoids)[0])
        medoids.append(extra)
        medoids.sort()

    for _ in range(config.max_iter):
        labels = np.argmin(D[:, medoids], axis=1)
        labels[np.asarray(medoids)] = np.arange(config.k)  # a medoid anchors its own cluster
        new_medoids = []
        for c in range(config.k):
            members = np.flatnonzero(labels == c)
            if members.size == 0:
                new_medoids.append(medoids[c])
                continue
            within = D[np.ix_(members, members)].sum(axis=1)
            new_medoids.append(int(members[np.argmin(within)]))  # argmin: lowest index wins ties
        new_medoids = sorted(set(new_medoids))
        while len(new_medoids) < config.k:
            extra = int(np.setdiff1d(np.arange(n), new_medoids)[0])
            new_medoids.append(extra)
            new_medoids.sort()
        if new_medoids == medoids:
            break
        medoids = new_medoids

    labels = np.argmin(D[:, medoids], axis=1)
    labels[np.asarray(medoids)] = np.arange(config.k)
    relabeled = renumber_by_first_member(labels)
    order = np.empty(config.k, dtype=np.int64)
    for old in range(config.k):
        members = np.flatnonzero(labels == old)
        order[relabeled[members[0]]] = old
    medoid_arr = np.asarray(medoids, dtype=np.int64)[order]
    return KMedoidsResult(
        assignment=ClusterAssignment(labels=relabeled, allows_noise=False),
        medoid_indices=tuple(int(m) for m in medoid_arr),
    )
