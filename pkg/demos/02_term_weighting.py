# The three weighting schemes on a cluster-level matrix, and why TF-RDF
# filters stop words without a stop-word list.
#
# Three clusters, three kinds of terms:
#   * topical terms: frequent in one cluster, absent elsewhere
#   * a stop word:   frequent everywhere (total 24000 occurrences)
#   * a shared term: moderately frequent in two clusters
#
# TF-RDF scores a term against its occurrence count OUTSIDE the row being
# scored: past theta-1 outside occurrences the score turns negative, which
# is exactly where stop words live.

import numpy as np
from scipy import sparse

from topickit.corpus import PER_CLUSTER, TermCountMatrix, Vocabulary
from topickit.scoring import ScoringParams, c_tf_idf, describe_clusters, tf_idf, tf_rdf

terms = ["alpha", "beta", "gamma", "stopword", "shared"]
dense = np.array(
    [
        # alpha  beta  gamma  stopword  shared
        [300,    0,    0,     8000,     400],
        [0,      300,  0,     8000,     400],
        [0,      0,    300,   8000,     0],
    ]
)
vocab = Vocabulary.from_terms(terms)
order = [vocab.index[t] for t in terms]
cols = np.zeros_like(dense)
cols[:, order] = dense
counts = TermCountMatrix(
    counts=sparse.csr_matrix(cols),
    vocabulary=vocab,
    row_kind=PER_CLUSTER,
    unit_ids=("0", "1", "2"),
)

for name, scores in [
    ("tf-idf  ", tf_idf(counts)),
    ("c-tf-idf", c_tf_idf(counts)),
    ("tf-rdf  ", tf_rdf(counts, ScoringParams(theta=5000))),
]:
    topics = describe_clusters(scores, 3)
    print(f"{name} top terms per cluster:")
    for topic in topics:
        ranked = ", ".join(f"{t}={s:.1f}" for t, s in topic.keywords)
        print(f"   cluster {topic.cluster_id}: {ranked}")

print("""
Note the stop word: c-tf-idf still ranks it first (TF dominates once the
average cluster size A is large), while tf-rdf drives it negative because
16000 occurrences outside each cluster is far past theta = 5000.
""")
