"""Density-based hierarchical clustering with noise (HDBSCAN).

The classic construction, end to end:

1. core distance of each point = distance to its min_samples-th nearest
   neighbour (the point itself counts as the 0th),
2. mutual-reachability distance mr(a,b) = max(core_a, core_b, d(a,b)),
3. minimum spanning tree of the mutual-reachability graph (Prim),
4. single-linkage hierarchy from the sorted MST edges,
5. condensation: walking the hierarchy top-down, a child that drops below
   min_cluster_size "falls out" point by point at lambda = 1/distance, while
   splits into two large-enough children create new clusters,
6. cluster selection by excess of mass over the condensed tree; the root
   competes like any other cluster, so a dataset that is one coherent blob
   comes back as a single cluster instead of all-noise,
7. points under no selected cluster get the noise label -1.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from ..errors import ValidationError
from .assignment import ClusterAssignment, renumber_by_first_member


@dataclass(frozen=True)
class HdbscanConfig:
    min_cluster_size: int
    min_samples: int | None = None  # None: same as min_cluster_size
    metric: str = "euclidean"

    def __post_init__(self):
        if self.min_cluster_size < 2:
            raise ValidationError("min_cluster_size must be >= 2")
        if self.min_samples is not None and self.min_samples < 1:
            raise ValidationError("min_samples must be >= 1")
        if self.metric != "euclidean":
            raise ValidationError(f"unsupported metric: {self.metric!r}")

    @property
    def effective_min_samples(self) -> int:
        return self.min_samples if self.min_samples is not None else self.min_cluster_size


def _mutual_reachability(X: np.ndarray, min_samples: int) -> np.ndarray:
    D = cdist(X, X)
    k = min(min_samples, X.shape[0] - 1)
    # Row sorted ascending starts with the self distance 0.
    core = np.sort(D, axis=1)[:, k]
    return np.maximum(D, np.maximum(core[:, np.newaxis], core[np.newaxis, :]))


def _prim_mst(weights: np.ndarray) -> np.ndarray:
    """Edges (a, b, w) of a minimum spanning tree of a dense symmetric graph.

    Hand-rolled Prim so that legitimate zero-weight edges (duplicate points)
    survive; sparse-graph MST routines treat zeros as missing edges.
    """
    n = weights.shape[0]
    in_tree = np.zeros(n, dtype=bool)
    best_w = np.full(n, np.inf)
    best_src = np.zeros(n, dtype=np.int64)
    edges = np.empty((n - 1, 3), dtype=np.float64)

    current = 0
    in_tree[0] = True
    for i in range(n - 1):
        improved = weights[current] < best_w
        improved &= ~in_tree
        best_w[improved] = weights[current][improved]
        best_src[improved] = current
        frontier = np.where(in_tree, np.inf, best_w)
        nxt = int(np.argmin(frontier))
        edges[i] = (best_src[nxt], nxt, best_w[nxt])
        in_tree[nxt] = True
        current = nxt
    return edges


def _single_linkage(edges: np.ndarray, n: int) -> np.ndarray:
    """Merge MST edges in ascending weight order into a linkage matrix
    (left, right, distance, size); new nodes get ids n, n+1, ..."""
    order = np.argsort(edges[:, 2], kind="stable")
    parent = np.arange(2 * n - 1, dtype=np.int64)
    size = np.ones(2 * n - 1, dtype=np.int64)
    linkage = np.zeros((n - 1, 4), dtype=np.float64)

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:  # path compression
            parent[x], x = root, parent[x]
        return root

    next_node = n
    for row, idx in enumerate(order):
        a, b, w = edges[idx]
        ra, rb = find(int(a)), find(int(b))
        linkage[row] = (ra, rb, w, size[ra] + size[rb])
        parent[ra] = parent[rb] = next_node
        size[next_node] = size[ra] + size[rb]
        next_node += 1
    return linkage


def _subtree_points(linkage: np.ndarray, n: int, node: int) -> list[int]:
    points = []
    stack = [node]
    while stack:
        cur = stack.pop()
        if cur < n:
            points.append(cur)
        else:
            stack.append(int(linkage[cur - n, 0]))
            stack.append(int(linkage[cur - n, 1]))
    return points


def _condense(linkage: np.ndarray, n: int, min_cluster_size: int):
    """Condensed tree records (parent, child, lambda, size); cluster ids
    start at n (the root); point children carry size 1."""
    root = 2 * n - 2
    relabel = {root: n}
    next_label = n + 1
    records: list[tuple[int, int, float, int]] = []

    queue = deque([root])
    while queue:
        node = queue.popleft()
        left, right, dist = (
            int(linkage[node - n, 0]),
            int(linkage[node - n, 1]),
            float(linkage[node - n, 2]),
        )
        lam = 1.0 / dist if dist > 0.0 else np.inf
        left_count = 1 if left < n else int(linkage[left - n, 3])
        right_count = 1 if right < n else int(linkage[right - n, 3])
        cluster = relabel[node]

        if left_count >= min_cluster_size and right_count >= min_cluster_size:
            # min_cluster_size >= 2 means both children are internal nodes
            for child, count in ((left, left_count), (right, right_count)):
                relabel[child] = next_label
                records.append((cluster, next_label, lam, count))
                next_label += 1
                queue.append(child)
        else:
            for child, count in ((left, left_count), (right, right_count)):
                if count >= min_cluster_size:
                    relabel[child] = cluster  # big side continues as the same cluster
                    queue.append(child)
                else:
                    for point in _subtree_points(linkage, n, child):
                        records.append((cluster, point, lam, 1))
    return records


def _stabilities(records, n: int) -> dict[int, float]:
    birth: dict[int, float] = {n: 0.0}
    for parent, child, lam, _ in records:
        if child >= n:
            birth[child] = lam
    stability = {c: 0.0 for c in birth}
    for parent, child, lam, size in records:
        if np.isinf(birth[parent]):  # cluster of exact duplicates: no mass above it
            continue
        stability[parent] += (lam - birth[parent]) * size
    return stability


def _select_excess_of_mass(records, stability: dict[int, float], n: int) -> set[int]:
    """Bottom-up: a cluster survives when it is at least as stable as its
    cluster children combined; selecting a cluster deselects its subtree.
    The root participates, so a single coherent cluster can be the answer."""
    children: dict[int, list[int]] = {c: [] for c in stability}
    for parent, child, _, _ in records:
        if child >= n:
            children[parent].append(child)

    selected = {c: True for c in stability}
    adjusted = dict(stability)
    for node in sorted(stability, reverse=True):
        subtree = sum(adjusted[ch] for ch in children[node])
        if children[node] and subtree > adjusted[node]:
            selected[node] = False
            adjusted[node] = subtree
        else:
            stack = list(children[node])
            while stack:
                desc = stack.pop()
                selected[desc] = False
                stack.extend(children[desc])
    return {c for c, keep in selected.items() if keep}


def hdbscan(X, config: HdbscanConfig) -> ClusterAssignment:
    X = np.asarray(getattr(X, "values", X), dtype=np.float64)
    n = X.shape[0]
    if n < config.min_cluster_size:
        raise ValidationError(
            f"n_rows={n} is below min_cluster_size={config.min_cluster_size}"
        )

    mr = _mutual_reachability(X, config.effective_min_samples)
    mst = _prim_mst(mr)
    linkage = _single_linkage(mst, n)
    records = _condense(linkage, n, config.min_cluster_size)
    stability = _stabilities(records, n)
    selected = _select_excess_of_mass(records, stability, n)

    cluster_parent: dict[int, int] = {}
    point_home: dict[int, int] = {}
    for parent, child, _, _ in records:
        if child >= n:
            cluster_parent[child] = parent
        else:
            point_home[child] = parent

    labels = np.full(n, -1, dtype=np.int64)
    for point in range(n):
        cur: int | None = point_home[point]
        while cur is not None and cur not in selected:
            cur = cluster_parent.get(cur)
        if cur is not None:
            labels[point] = cur

    labels = renumber_by_first_member(labels)
    return ClusterAssignment(labels=labels, allows_noise=True)
