# Partition metrics against gold labels, and topic coherence against
# word vectors.

import numpy as np

from topickit.embedding import WordVectorStore
from topickit.evaluation import (
    adjusted_rand,
    ami,
    contingency,
    nmi,
    purity,
    rand_index,
    tc_centroid,
    tc_pairwise,
)
from topickit.scoring import TopicDescription

gold = ["news"] * 5 + ["sport"] * 5 + ["tech"] * 5
good_pred = np.array([0] * 5 + [1] * 5 + [2] * 5)
noisy_pred = np.array([0, 0, 0, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 0, -1])

for name, pred in [("perfect", good_pred), ("noisy+outlier", noisy_pred)]:
    table = contingency(pred, gold)  # noise excluded by default
    print(f"{name}:")
    print(f"  purity {purity(table):.3f}  rand {rand_index(table):.3f}  "
          f"ari {adjusted_rand(table):.3f}  nmi {nmi(table):.3f}  ami {ami(table):.3f}")

# coherence: one tight topic, one scattered topic
vectors = {
    "goal": np.array([1.0, 0.05, 0.0]),
    "match": np.array([0.95, 0.1, 0.0]),
    "team": np.array([0.9, 0.0, 0.1]),
    "quantum": np.array([0.0, 1.0, 0.0]),
    "recipe": np.array([0.0, 0.0, 1.0]),
    "umbrella": np.array([0.5, 0.5, 0.7]),
}
wv = WordVectorStore(vectors, 3)
tight = TopicDescription(0, (("goal", 3.0), ("match", 2.0), ("team", 1.0)))
scattered = TopicDescription(1, (("quantum", 3.0), ("recipe", 2.0), ("umbrella", 1.0)))

for name, topics in [("tight topic", [tight]), ("scattered topic", [scattered])]:
    pair = tc_pairwise(topics, wv)
    cent = tc_centroid(topics, wv)
    print(f"{name}: tc_pairwise {pair.score:+.3f}  tc_centroid {cent.score:+.3f}  "
          f"coverage {pair.coverage:.0%}")
