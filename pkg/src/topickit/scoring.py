"""Term-weighting schemes and topic-keyword extraction.

Three scorers over a term-count matrix, all with natural logs:

* ``tf_idf``    score(t,d) = TF(t,d) * ln(|D| / (1 + df_t))
* ``c_tf_idf``  score(t,c) = TF(t,c) * ln(1 + A / f_t), A = mean tokens per cluster
* ``tf_rdf``    score(t,d) = TF(t,d) * ln(theta / (1 + n_td)), n_td = occurrences
                of t in every row other than d

``tf_rdf`` is the scheme that suppresses stop words on its own: once a term
occurs more than theta-1 times outside the row being scored, its score goes
negative, no stop-word list required.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .corpus import PER_CLUSTER, TermCountMatrix, Vocabulary
from .errors import DiagnosticError, ValidationError

SCHEMES = ("tf_idf", "c_tf_idf", "tf_rdf")

DEFAULT_THETA = 5000.0
DEFAULT_TOP_K = 10
# Grid spanning the recommended 5000..20000 band plus one smaller probe.
DEFAULT_THETA_GRID = (2000.0, 5000.0, 10000.0, 20000.0)


@dataclass(frozen=True)
class ScoringParams:
    scheme: str = "tf_rdf"
    theta: float = DEFAULT_THETA
    top_k: int = DEFAULT_TOP_K

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValidationError(f"unknown scheme: {self.scheme!r}")
        if self.theta <= 0:
            raise ValidationError("theta must be > 0")
        if self.top_k < 1:
            raise ValidationError("top_k must be >= 1")


@dataclass(frozen=True)
class ScoreMatrix:
    """Dense scores, one row per unit; columns follow the vocabulary."""

    scores: np.ndarray
    vocabulary: Vocabulary
    unit_ids: tuple[str, ...]

    def __post_init__(self):
        if not np.isfinite(self.scores).all():
            raise ValidationError("score matrix contains non-finite values")

    @property
    def n_rows(self) -> int:
        return self.scores.shape[0]


@dataclass(frozen=True)
class TopicDescription:
    """Ranked keywords for one cluster: scores non-increasing, ties broken
    lexicographically by term."""

    cluster_id: int
    keywords: tuple[tuple[str, float], ...]

    @property
    def terms(self) -> list[str]:
        return [t for t, _ in self.keywords]


def tf(counts: TermCountMatrix, unit: int, term: int) -> int:
    """Raw occurrence count of one term in one unit."""
    if not (0 <= unit < counts.n_rows):
        raise ValidationError(f"unit index {unit} out of range")
    if not (0 <= term < counts.n_terms):
        raise ValidationError(f"term index {term} out of range")
    return int(counts.counts[unit, term])


def document_frequencies(counts: TermCountMatrix) -> np.ndarray:
    """Number of rows in which each term occurs at least once."""
    return np.asarray((counts.counts > 0).sum(axis=0)).ravel()


def idf(counts: TermCountMatrix, term: int) -> float:
    """ln(|D| / (1 + df_t)).

    The +1 smoothing makes the ratio < 1 when a term occurs in every document,
    so the result is negative there; that is kept as defined, not patched.
    """
    if not (0 <= term < counts.n_terms):
        raise ValidationError(f"term index {term} out of range")
    n_docs = counts.n_rows
    df = int((counts.counts[:, term] > 0).sum())
    return math.log(n_docs / (1 + df))


def tf_idf(counts: TermCountMatrix) -> ScoreMatrix:
    """Elementwise TF * IDF; rows define the document universe for IDF
    (cluster-as-document rows are admissible)."""
    dense = counts.dense().astype(np.float64)
    df = document_frequencies(counts).astype(np.float64)
    idf_vec = np.log(counts.n_rows / (1.0 + df))
    return ScoreMatrix(
        scores=dense * idf_vec[np.newaxis, :],
        vocabulary=counts.vocabulary,
        unit_ids=counts.unit_ids,
    )


def c_tf_idf(counts: TermCountMatrix) -> ScoreMatrix:
    """Class-based TF-IDF over a per-cluster matrix.

    A is the average token count per cluster and f_t the term's total count
    across clusters; f_t >= 1 for every vocabulary term, so the log argument
    stays > 1 and all scores with TF > 0 are strictly positive.
    """
    if counts.row_kind != PER_CLUSTER:
        raise ValidationError("c_tf_idf requires a per-cluster matrix")
    if counts.n_rows < 1:
        raise ValidationError("c_tf_idf requires at least one cluster")
    dense = counts.dense().astype(np.float64)
    f_t = counts.term_totals().astype(np.float64)
    avg_words = f_t.sum() / counts.n_rows
    with np.errstate(divide="ignore"):
        cidf = np.log1p(avg_words / f_t)
    cidf[f_t == 0] = 0.0  # columns absent everywhere score 0 regardless
    return ScoreMatrix(
        scores=dense * cidf[np.newaxis, :],
        vocabulary=counts.vocabulary,
        unit_ids=counts.unit_ids,
    )


def rdf(theta: float, n_td: int) -> float:
    """ln(theta / (1 + n_td)): positive while the term is rare outside the
    unit, zero at n_td = theta - 1, negative past it."""
    if theta <= 0:
        raise ValidationError("theta must be > 0")
    if n_td < 0:
        raise ValidationError("n_td must be >= 0")
    return math.log(theta / (1 + n_td))


def tf_rdf(counts: TermCountMatrix, params: ScoringParams) -> ScoreMatrix:
    """TF(t,d) * ln(theta / (1 + n_td)) with n_td = term total minus TF(t,d).

    n_td counts token occurrences, not documents; that relative measure is
    what distinguishes this scheme from IDF.  Rows may be documents or
    clusters; the pipeline scores clusters-as-documents.
    """
    if params.theta <= 0:
        raise ValidationError("theta must be > 0")
    dense = counts.dense().astype(np.float64)
    totals = counts.term_totals().astype(np.float64)
    n_td = totals[np.newaxis, :] - dense
    scores = dense * np.log(params.theta / (1.0 + n_td))
    # TF == 0 must give exactly 0, not 0 * log(...) noise.
    scores[dense == 0] = 0.0
    return ScoreMatrix(
        scores=scores,
        vocabulary=counts.vocabulary,
        unit_ids=counts.unit_ids,
    )


def raw_tf_scores(counts: TermCountMatrix) -> ScoreMatrix:
    """Raw term frequencies as scores; the no-weighting baseline."""
    return ScoreMatrix(
        scores=counts.dense().astype(np.float64),
        vocabulary=counts.vocabulary,
        unit_ids=counts.unit_ids,
    )


def score(counts: TermCountMatrix, params: ScoringParams) -> ScoreMatrix:
    """Dispatch on ``params.scheme``."""
    if params.scheme == "tf_idf":
        return tf_idf(counts)
    if params.scheme == "c_tf_idf":
        return c_tf_idf(counts)
    return tf_rdf(counts, params)


def top_k_terms(scores: ScoreMatrix, unit: int, k: int) -> TopicDescription:
    """The k highest-scoring terms of one row, non-increasing, ties broken
    lexicographically; shorter than k only when the vocabulary is."""
    if not (0 <= unit < scores.n_rows):
        raise ValidationError(f"unit index {unit} out of range")
    if k < 1:
        raise ValidationError("k must be >= 1")
    row = scores.scores[unit]
    order = sorted(range(row.shape[0]), key=lambda i: (-row[i], scores.vocabulary.terms[i]))
    chosen = order[: min(k, row.shape[0])]
    return TopicDescription(
        cluster_id=unit,
        keywords=tuple((scores.vocabulary.terms[i], float(row[i])) for i in chosen),
    )


def describe_clusters(scores: ScoreMatrix, k: int) -> list[TopicDescription]:
    """Top-k keywords for every row of a score matrix."""
    return [top_k_terms(scores, unit, k) for unit in range(scores.n_rows)]


def write_scores_csv(scores: ScoreMatrix, top_k: int, path) -> None:
    """Export the top_k terms of every unit as (unit_id, term, score) rows."""
    import csv

    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["unit_id", "term", "score"])
        for unit in range(scores.n_rows):
            topic = top_k_terms(scores, unit, top_k)
            for term, value in topic.keywords:
                writer.writerow([scores.unit_ids[unit], term, float(value)])


def term_frequency_histogram(
    counts: TermCountMatrix, bin_edges
) -> list[tuple[float, float, int]]:
    """Distribution of total corpus frequency over distinct terms.

    Returns (bin_low, bin_high, n_terms) rows covering [0, e0), [e0, e1), ...
    plus a final overflow bin [e_last, inf).  The histogram is the eyeball
    tool for choosing theta: stop words sit in the far tail.
    """
    edges = [float(e) for e in bin_edges]
    if not edges:
        raise ValidationError("at least one bin edge required")
    if any(e <= 0 for e in edges):
        raise ValidationError("bin edges must be positive")
    if any(b <= a for a, b in zip(edges, edges[1:])):
        raise ValidationError("bin edges must be strictly ascending")

    totals = counts.term_totals()
    bounds = [0.0] + edges + [math.inf]
    out = []
    for low, high in zip(bounds, bounds[1:]):
        n = int(((totals >= low) & (totals < high)).sum())
        out.append((low, high, n))
    return out


def theta_grid_search(
    counts: TermCountMatrix,
    candidate_thetas,
    word_vectors,
    k: int = DEFAULT_TOP_K,
):
    """Pick the theta whose TF-RDF topics have the highest mean pairwise
    coherence; ties go to the smallest theta.

    Returns (best_theta, table) where table rows are (theta, coherence).
    """
    from .evaluation import tc_pairwise  # local import: evaluation depends on scoring

    candidates = sorted(float(t) for t in candidate_thetas)
    if not candidates:
        raise ValidationError("at least one candidate theta required")
    if any(t <= 0 for t in candidates):
        raise ValidationError("candidate thetas must be > 0")

    table = []
    best_theta = None
    best_coherence = -math.inf
    for theta in candidates:
        params = ScoringParams(scheme="tf_rdf", theta=theta, top_k=k)
        topics = describe_clusters(tf_rdf(counts, params), k)
        try:
            coherence = tc_pairwise(topics, word_vectors).score
        except DiagnosticError as exc:
            raise DiagnosticError(
                f"theta={theta:g}: cannot score topics against word vectors: {exc}"
            ) from exc
        table.append((theta, coherence))
        if coherence > best_coherence:
            best_coherence = coherence
            best_theta = theta
    return best_theta, table
