# PCA for reduction (5 dims before density clustering) and for the 2-d
# visualization export.

import os
import tempfile

import numpy as np

from topickit.clustering import KMeansConfig, kmeans
from topickit.embedding import export_projection, pca_fit_transform

rng = np.random.default_rng(3)
centers = rng.normal(0, 6, (4, 64))
gold = np.repeat(np.arange(4), 40)
X = centers[gold] + rng.normal(0, 1, (160, 64))

reduced5, ratios5 = pca_fit_transform(X, 5)
print(f"64 dims -> 5: explained variance ratios {np.round(ratios5, 3)}")
print(f"  (sum {ratios5.sum():.3f}; the 4 blob directions carry almost everything)")

coords, ratios2 = pca_fit_transform(X, 2)
labels = kmeans(X, KMeansConfig(k=4, seed=0)).assignment.labels

path = os.path.join(tempfile.mkdtemp(), "projection.csv")
export_projection([f"doc{i:03d}" for i in range(len(X))], coords, labels, path)
print(f"\n2-d projection written to {path}:")
with open(path) as fh:
    for line in list(fh)[:5]:
        print("  " + line.rstrip())
print("  ...")
