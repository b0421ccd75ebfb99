"""Clustering-quality metrics and topic-coherence scoring.

Partition metrics (purity, Rand, ARI, NMI, AMI) all run off a contingency
table between predicted clusters and gold classes.  Topic coherence scores
keyword lists against a word-vector store, either over all keyword pairs or
against the keyword centroid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .embedding import WordVectorStore, cosine_similarity
from .errors import DiagnosticError, ValidationError
from .scoring import TopicDescription

NOISE_EXCLUDE = "exclude"
NOISE_OWN_CLUSTER = "own_cluster"


@dataclass(frozen=True)
class ContingencyTable:
    """matrix[i, j] = |cluster i  ∩  gold class j| over the evaluated points."""

    matrix: np.ndarray
    cluster_ids: tuple[int, ...]
    class_names: tuple[str, ...]

    @property
    def n(self) -> int:
        return int(self.matrix.sum())

    @property
    def row_marginals(self) -> np.ndarray:
        return self.matrix.sum(axis=1)

    @property
    def col_marginals(self) -> np.ndarray:
        return self.matrix.sum(axis=0)

    def is_identical_partition(self) -> bool:
        """True when the two partitions agree up to relabeling."""
        return bool(
            ((self.matrix > 0).sum(axis=1) == 1).all()
            and ((self.matrix > 0).sum(axis=0) == 1).all()
        )


def contingency(pred, gold, noise_policy: str = NOISE_EXCLUDE) -> ContingencyTable:
    """Cross-tabulate predicted labels against gold labels.

    Noise points (pred -1) are excluded by default; ``own_cluster`` instead
    groups them as one extra cluster.
    """
    pred = np.asarray(getattr(pred, "labels", pred), dtype=np.int64)
    gold = list(gold)
    if pred.shape[0] != len(gold):
        raise ValidationError(
            f"prediction length {pred.shape[0]} != gold length {len(gold)}"
        )
    if any(g is None for g in gold):
        raise ValidationError("gold labels must be present for every document")
    if noise_policy not in (NOISE_EXCLUDE, NOISE_OWN_CLUSTER):
        raise ValidationError(f"unknown noise policy: {noise_policy!r}")

    if noise_policy == NOISE_EXCLUDE:
        keep = pred >= 0
    else:
        keep = np.ones_like(pred, dtype=bool)
    if not keep.any():
        raise DiagnosticError("no documents left to evaluate after noise exclusion")

    kept_pred = pred[keep]
    kept_gold = [g for g, k in zip(gold, keep) if k]
    cluster_ids = sorted(set(int(c) for c in kept_pred))
    class_names = sorted(set(kept_gold))
    row_of = {c: i for i, c in enumerate(cluster_ids)}
    col_of = {g: j for j, g in enumerate(class_names)}
    matrix = np.zeros((len(cluster_ids), len(class_names)), dtype=np.int64)
    for c, g in zip(kept_pred, kept_gold):
        matrix[row_of[int(c)], col_of[g]] += 1
    return ContingencyTable(
        matrix=matrix,
        cluster_ids=tuple(cluster_ids),
        class_names=tuple(str(g) for g in class_names),
    )


def purity(table: ContingencyTable) -> float:
    """Fraction of points whose cluster's majority class matches their own."""
    if table.n < 1:
        raise ValidationError("purity needs at least one point")
    return float(table.matrix.max(axis=1).sum() / table.n)


def _comb2(x: np.ndarray) -> np.ndarray:
    return x * (x - 1) / 2.0


def rand_index(table: ContingencyTable) -> float:
    """Pair-agreement rate: pairs co-assigned in both partitions or separated
    in both, over all pairs."""
    n = table.n
    if n < 2:
        raise ValidationError("rand index needs at least two points")
    same_both = _comb2(table.matrix.astype(np.float64)).sum()
    same_pred = _comb2(table.row_marginals.astype(np.float64)).sum()
    same_gold = _comb2(table.col_marginals.astype(np.float64)).sum()
    total = n * (n - 1) / 2.0
    agreements = total + 2.0 * same_both - same_pred - same_gold
    return float(agreements / total)


def adjusted_rand(table: ContingencyTable) -> float:
    """Chance-adjusted Rand under the permutation model."""
    n = table.n
    if n < 2:
        raise ValidationError("adjusted rand needs at least two points")
    index = _comb2(table.matrix.astype(np.float64)).sum()
    sum_rows = _comb2(table.row_marginals.astype(np.float64)).sum()
    sum_cols = _comb2(table.col_marginals.astype(np.float64)).sum()
    total = n * (n - 1) / 2.0
    expected = sum_rows * sum_cols / total
    maximum = 0.5 * (sum_rows + sum_cols)
    denom = maximum - expected
    if denom == 0.0:
        return 1.0 if table.is_identical_partition() else 0.0
    return float((index - expected) / denom)


def _entropy(marginals: np.ndarray, n: int) -> float:
    p = marginals[marginals > 0] / n
    return float(-(p * np.log(p)).sum())


def mutual_information(table: ContingencyTable) -> float:
    n = table.n
    a = table.row_marginals
    b = table.col_marginals
    mi = 0.0
    rows, cols = np.nonzero(table.matrix)
    for i, j in zip(rows, cols):
        nij = table.matrix[i, j]
        mi += (nij / n) * math.log(n * nij / (a[i] * b[j]))
    return mi


def nmi(table: ContingencyTable, normalization: str = "sqrt") -> float:
    """I(U;V) normalized by sqrt(H(U) H(V)) (or their arithmetic mean)."""
    if normalization not in ("sqrt", "arithmetic"):
        raise ValidationError(f"unknown normalization: {normalization!r}")
    n = table.n
    if n < 1:
        raise ValidationError("nmi needs at least one point")
    h_u = _entropy(table.row_marginals, n)
    h_v = _entropy(table.col_marginals, n)
    if h_u == 0.0 and h_v == 0.0:
        return 1.0  # both partitions trivial, hence identical
    if h_u == 0.0 or h_v == 0.0:
        return 0.0
    mi = mutual_information(table)
    if normalization == "sqrt":
        denom = math.sqrt(h_u * h_v)
    else:
        denom = 0.5 * (h_u + h_v)
    value = mi / denom
    return float(min(1.0, max(0.0, value)))  # clip float fuzz at the ends


def expected_mutual_information(table: ContingencyTable) -> float:
    """E[I] under the permutation model, by the exact hypergeometric sum."""
    n = table.n
    a = table.row_marginals
    b = table.col_marginals
    log_fact_n = math.lgamma(n + 1)
    emi = 0.0
    for ai in a:
        ai = int(ai)
        for bj in b:
            bj = int(bj)
            lo = max(1, ai + bj - n)
            hi = min(ai, bj)
            for nij in range(lo, hi + 1):
                term = (nij / n) * math.log(n * nij / (ai * bj))
                log_prob = (
                    math.lgamma(ai + 1)
                    + math.lgamma(bj + 1)
                    + math.lgamma(n - ai + 1)
                    + math.lgamma(n - bj + 1)
                    - log_fact_n
                    - math.lgamma(nij + 1)
                    - math.lgamma(ai - nij + 1)
                    - math.lgamma(bj - nij + 1)
                    - math.lgamma(n - ai - bj + nij + 1)
                )
                emi += term * math.exp(log_prob)
    return emi


def ami(table: ContingencyTable) -> float:
    """Chance-adjusted mutual information: (I - E[I]) / (mean(H) - E[I])."""
    n = table.n
    if n < 1:
        raise ValidationError("ami needs at least one point")
    h_u = _entropy(table.row_marginals, n)
    h_v = _entropy(table.col_marginals, n)
    mi = mutual_information(table)
    emi = expected_mutual_information(table)
    denom = 0.5 * (h_u + h_v) - emi
    if abs(denom) < 1e-15:
        return 1.0 if table.is_identical_partition() else 0.0
    return float((mi - emi) / denom)


@dataclass(frozen=True)
class CoherenceResult:
    score: float
    coverage: float  # fraction of topic keywords found in the word-vector store
    n_topics_scored: int


def _topic_vectors(topics, wv: WordVectorStore):
    """(in-vocab vectors per topic, total keywords, in-vocab keywords)."""
    per_topic = []
    total = 0
    found = 0
    for topic in topics:
        vectors = []
        for term in topic.terms:
            total += 1
            vec = wv.get(term)
            if vec is not None:
                vectors.append(vec)
                found += 1
        per_topic.append(vectors)
    if total == 0:
        raise DiagnosticError("no topic keywords to score")
    return per_topic, total, found


def tc_pairwise(topics: list[TopicDescription], wv: WordVectorStore) -> CoherenceResult:
    """Mean cosine over all unordered keyword pairs, averaged over topics.

    Topics with fewer than two in-vocabulary keywords are skipped; if every
    topic is skipped the input cannot be scored at all.
    """
    per_topic, total, found = _topic_vectors(topics, wv)
    topic_scores = []
    for vectors in per_topic:
        if len(vectors) < 2:
            continue
        sims = [cosine_similarity(u, v) for u, v in combinations(vectors, 2)]
        topic_scores.append(sum(sims) / len(sims))
    if not topic_scores:
        raise DiagnosticError(
            "no topic has >= 2 keywords with word vectors; check the store"
        )
    return CoherenceResult(
        score=float(sum(topic_scores) / len(topic_scores)),
        coverage=found / total,
        n_topics_scored=len(topic_scores),
    )


def tc_centroid(topics: list[TopicDescription], wv: WordVectorStore) -> CoherenceResult:
    """Mean cosine between each keyword and its topic centroid, averaged over
    topics; an all-zero centroid contributes 0 per the zero-vector rule."""
    per_topic, total, found = _topic_vectors(topics, wv)
    topic_scores = []
    for vectors in per_topic:
        if len(vectors) < 2:
            continue
        centroid = np.mean(np.stack(vectors), axis=0)
        sims = [cosine_similarity(v, centroid) for v in vectors]
        topic_scores.append(sum(sims) / len(sims))
    if not topic_scores:
        raise DiagnosticError(
            "no topic has >= 2 keywords with word vectors; check the store"
        )
    return CoherenceResult(
        score=float(sum(topic_scores) / len(topic_scores)),
        coverage=found / total,
        n_topics_scored=len(topic_scores),
    )


@dataclass(frozen=True)
class EvaluationReport:
    purity: float | None = None
    rand: float | None = None
    ari: float | None = None
    nmi: float | None = None
    ami: float | None = None
    tc_pairwise: float | None = None
    tc_centroid: float | None = None
    coverage: float | None = None

    def as_dict(self) -> dict:
        return {
            "purity": self.purity,
            "rand": self.rand,
            "ari": self.ari,
            "nmi": self.nmi,
            "ami": self.ami,
            "tc_pairwise": self.tc_pairwise,
            "tc_centroid": self.tc_centroid,
            "coverage": self.coverage,
        }


def evaluate(
    pred=None,
    gold=None,
    topics=None,
    word_vectors: WordVectorStore | None = None,
    noise_policy: str = NOISE_EXCLUDE,
) -> EvaluationReport:
    """Compute whichever metrics the inputs allow: partition metrics when
    gold labels are given, coherence when topics plus word vectors are."""
    fields: dict = {}
    if pred is not None and gold is not None:
        table = contingency(pred, gold, noise_policy=noise_policy)
        fields["purity"] = purity(table)
        if table.n >= 2:
            fields["rand"] = rand_index(table)
            fields["ari"] = adjusted_rand(table)
        fields["nmi"] = nmi(table)
        fields["ami"] = ami(table)
    if topics is not None and word_vectors is not None:
        pair = tc_pairwise(topics, word_vectors)
        cent = tc_centroid(topics, word_vectors)
        fields["tc_pairwise"] = pair.score
        fields["tc_centroid"] = cent.score
        fields["coverage"] = pair.coverage
    return EvaluationReport(**fields)
