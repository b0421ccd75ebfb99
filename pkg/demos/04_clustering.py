# The three clustering algorithms on the same data.
#
# k-means and k-medoids need k and label everything; HDBSCAN discovers the
# cluster count itself and is allowed to call points noise (-1).

import numpy as np

from topickit.clustering import (
    HdbscanConfig,
    KMeansConfig,
    KMedoidsConfig,
    hdbscan,
    kmeans,
    kmedoids,
)

rng = np.random.default_rng(7)
blob_a = rng.normal(0, 0.4, (60, 2))
blob_b = rng.normal(0, 0.4, (60, 2)) + [8.0, 0.0]
blob_c = rng.normal(0, 0.4, (60, 2)) + [4.0, 7.0]
stragglers = rng.uniform(-20, 20, (6, 2))
X = np.vstack([blob_a, blob_b, blob_c, stragglers])
print(f"data: three blobs of 60 plus {len(stragglers)} stragglers\n")

km = kmeans(X, KMeansConfig(k=3, seed=0))
sizes = np.bincount(km.assignment.labels)
print(f"k-means (k=3):   sizes={sizes.tolist()}, inertia={km.inertia:.1f}, "
      f"iterations={km.n_iter}")
print(f"  inertia per Lloyd step (never increases): "
      f"{[round(v, 1) for v in km.inertia_history]}")

kmed = kmedoids(X, KMedoidsConfig(k=3, seed=0))
print(f"k-medoids (k=3): sizes={np.bincount(kmed.assignment.labels).tolist()}, "
      f"medoid rows={kmed.medoid_indices}")

hd = hdbscan(X, HdbscanConfig(min_cluster_size=20))
print(f"hdbscan (mcs=20): found k={hd.k} clusters, {hd.n_noise} noise points")
print(f"  straggler labels: {hd.labels[-6:].tolist()}  (k-means had to adopt them;"
      " hdbscan does not)")
