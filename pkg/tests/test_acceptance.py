"""Acceptance gate: one test per release criterion, each printing a PASS
line with the measured numbers (run with ``pytest -s tests/test_acceptance.py``
to see them).

The corpus-level criteria run on a planted corpus whose structure makes the
expected behaviour checkable without any external dataset or model: cluster
recovery is exact by construction, injected stop words dominate raw term
frequency, and the constructed word vectors give within-topic cosine 0.9 and
cross-topic cosine 0.
"""

import json
import math
import time

import numpy as np
import pytest

from test_evaluation import (
    mc_expected_mi,
    oracle_ari,
    oracle_nmi,
    oracle_rand,
    random_label_pair,
)
from topickit.clustering import HdbscanConfig, KMeansConfig, hdbscan, kmeans
from topickit.corpus import aggregate_by_cluster, build_counts
from topickit.embedding import pca_fit, pca_fit_transform
from topickit.evaluation import (
    adjusted_rand,
    contingency,
    expected_mutual_information,
    nmi,
    purity,
    rand_index,
)
from topickit.pipeline import RunConfig, compare_schemes, run
from topickit.scoring import (
    ScoringParams,
    describe_clusters,
    raw_tf_scores,
    rdf,
    tf_rdf,
    top_k_terms,
)

THETA = 5000.0

# Inertia traces from every k-means run this module performs (criterion:
# non-increasing on every iteration of every acceptance run).
KMEANS_HISTORIES: list[tuple[str, tuple[float, ...]]] = []


def run_kmeans(tag, X, config):
    result = kmeans(X, config)
    KMEANS_HISTORIES.append((tag, result.inertia_history))
    return result


def test_stop_word_suppression(planted):
    start = time.perf_counter()

    _, doc_counts = build_counts(planted.corpus)
    # fixture sanity: every injected stop word occurs in every document and
    # more than 2 * theta times in total
    totals = doc_counts.term_totals()
    for term in planted.stop_terms:
        col = doc_counts.vocabulary.index[term]
        assert totals[col] > 2 * THETA
        assert (doc_counts.counts[:, col] > 0).sum() == doc_counts.n_rows

    result = run_kmeans(
        "stop_word_suppression", planted.embeddings, KMeansConfig(k=4, seed=3)
    )
    cluster_counts = aggregate_by_cluster(doc_counts, result.assignment.labels)

    rdf_topics = describe_clusters(
        tf_rdf(cluster_counts, ScoringParams(theta=THETA)), 10
    )
    tf_topics = [
        top_k_terms(raw_tf_scores(cluster_counts), c, 10)
        for c in range(cluster_counts.n_rows)
    ]

    stop_set = set(planted.stop_terms)
    rdf_hits = [len(stop_set & set(t.terms)) for t in rdf_topics]
    tf_hits = [len(stop_set & set(t.terms)) for t in tf_topics]
    assert all(h == 0 for h in rdf_hits), rdf_hits
    assert all(h >= 5 for h in tf_hits), tf_hits

    elapsed = time.perf_counter() - start
    assert elapsed < 10.0
    print(
        f"\nPASS stop-word suppression: tf-rdf top-10 stop words per cluster "
        f"{rdf_hits}, raw-tf {tf_hits} ({elapsed:.1f}s < 10s)"
    )


def test_scheme_ordering_on_planted_corpus(planted_files, tmp_path):
    start = time.perf_counter()
    config = RunConfig(
        corpus=str(planted_files["corpus"]),
        embeddings=str(planted_files["embeddings"]),
        word_vectors=str(planted_files["vectors"]),
        out=str(tmp_path / "compare"),
        algo="kmeans",
        k=4,
        theta=THETA,
        top_k=10,
        seed=3,
    )
    rows = {r["scheme"]: r for r in compare_schemes(config)}
    tf_rdf_tc = rows["tf_rdf"]["tc_pairwise"]
    c_tf_idf_tc = rows["c_tf_idf"]["tc_pairwise"]
    tf_idf_tc = rows["tf_idf"]["tc_pairwise"]
    assert tf_rdf_tc > c_tf_idf_tc
    assert tf_rdf_tc > tf_idf_tc

    elapsed = time.perf_counter() - start
    assert elapsed < 30.0
    print(
        f"\nPASS scheme ordering: TC(pairwise) tf_rdf={tf_rdf_tc:.4f} > "
        f"c_tf_idf={c_tf_idf_tc:.4f}, tf_idf={tf_idf_tc:.4f} ({elapsed:.1f}s < 30s)"
    )


def make_blob_dataset(seed):
    rng = np.random.default_rng(1000 + seed)
    centers = rng.normal(0.0, 1.0, (20, 768)) * 6.0
    gold = np.repeat(np.arange(20), 50)
    X = centers[gold] + rng.normal(0.0, 0.7, (1000, 768))
    return X, gold.tolist()


def test_known_k_kmeans_beats_hdbscan():
    start = time.perf_counter()
    kmeans_purities = []
    hdbscan_purities = []
    for seed in range(10):
        X, gold = make_blob_dataset(seed)
        km = run_kmeans(
            f"blobs_seed{seed}", X, KMeansConfig(k=20, seed=seed, n_init=5)
        )
        kmeans_purities.append(purity(contingency(km.assignment.labels, gold)))

        reduced, _ = pca_fit_transform(X, 5)
        labels = hdbscan(reduced, HdbscanConfig(min_cluster_size=25)).labels
        hdbscan_purities.append(purity(contingency(labels, gold)))

    km_median = float(np.median(kmeans_purities))
    hd_median = float(np.median(hdbscan_purities))
    assert km_median >= 0.95
    assert km_median >= hd_median

    elapsed = time.perf_counter() - start
    assert elapsed < 120.0
    print(
        f"\nPASS known-k ordering: median purity kmeans={km_median:.3f} >= 0.95 "
        f"and >= hdbscan={hd_median:.3f} ({elapsed:.1f}s < 2min)"
    )


def test_metric_oracle_equivalence():
    start = time.perf_counter()
    rng = np.random.default_rng(2024)
    worst_exact = 0.0
    worst_mc = 0.0
    for i in range(200):
        pred, gold = random_label_pair(rng, max_n=12)
        table = contingency(np.array(pred), gold)
        worst_exact = max(
            worst_exact,
            abs(rand_index(table) - oracle_rand(pred, gold)),
            abs(adjusted_rand(table) - oracle_ari(pred, gold)),
            abs(nmi(table) - oracle_nmi(pred, gold)),
        )
        mc = mc_expected_mi(pred, gold, shuffles=100_000, seed=i)
        worst_mc = max(worst_mc, abs(expected_mutual_information(table) - mc))
    assert worst_exact < 1e-9
    assert worst_mc < 0.01

    elapsed = time.perf_counter() - start
    assert elapsed < 60.0
    print(
        f"\nPASS metric oracles: 200 pairs, max |rand/ari/nmi - oracle| = "
        f"{worst_exact:.2e} < 1e-9, max |E[I] - MC| = {worst_mc:.4f} < 0.01 "
        f"({elapsed:.1f}s < 1min)"
    )


def test_tf_rdf_sign_law_and_tf_limit():
    start = time.perf_counter()
    rng = np.random.default_rng(555)
    for _ in range(1000):
        tf_val = int(rng.integers(0, 100))
        n_out = int(rng.integers(0, 30000))
        theta = float(rng.integers(1, 30000))
        value = tf_val * rdf(theta, n_out)
        if tf_val == 0 or n_out == theta - 1:
            assert value == 0.0
        elif n_out > theta - 1:
            assert value < 0.0
        else:
            assert value > 0.0
        if tf_val > 0 and n_out + 1 < 30000:
            # strictly decreasing in outside count, increasing in theta
            assert tf_val * rdf(theta, n_out + 1) < value
            assert tf_val * rdf(theta * 2, n_out) > value

    import test_scoring

    counts = test_scoring.make_tcm(rng.integers(0, 50, size=(1, 80)))
    theta = 10.0 * float(counts.term_totals().max())
    assert (
        top_k_terms(tf_rdf(counts, ScoringParams(theta=theta)), 0, 10).terms
        == top_k_terms(raw_tf_scores(counts), 0, 10).terms
    )

    elapsed = time.perf_counter() - start
    assert elapsed < 5.0
    print(
        f"\nPASS tf-rdf invariants: sign law + monotonicity on 1000 triples, "
        f"large-theta top-k equals raw-tf top-k ({elapsed:.1f}s < 5s)"
    )


def test_pca_exactness_and_kmeans_monotonicity():
    X = np.array([[0.0, 0.0], [1.0, 2.0], [2.0, 4.0]])
    _, ratios = pca_fit_transform(X, 1)
    assert ratios.tolist() == [1.0]

    rng = np.random.default_rng(31)
    Y = rng.normal(size=(40, 8))
    components, mean, _ = pca_fit(Y, 8)
    projected = (Y - mean) @ components.T
    reconstruction = projected @ components + mean
    max_err = float(np.abs(reconstruction - Y).max())
    assert max_err < 1e-6

    if not KMEANS_HISTORIES:  # selected-test runs still check one trace
        run_kmeans("standalone", rng.normal(size=(100, 4)), KMeansConfig(k=5, seed=0))
    for tag, history in KMEANS_HISTORIES:
        assert all(
            a >= b - 1e-9 for a, b in zip(history, history[1:])
        ), f"inertia increased in {tag}"

    print(
        f"\nPASS pca + inertia: rank-1 ratios exactly [1.0], reconstruction "
        f"max err {max_err:.2e} < 1e-6, inertia non-increasing in "
        f"{len(KMEANS_HISTORIES)} k-means runs"
    )


def test_pipeline_determinism(planted_files, tmp_path):
    def config(out):
        return RunConfig(
            corpus=str(planted_files["corpus"]),
            embeddings=str(planted_files["embeddings"]),
            out=str(out),
            algo="kmeans",
            k=4,
            scheme="tf_rdf",
            theta=THETA,
            top_k=10,
            seed=11,
        )

    run(config(tmp_path / "first"))
    run(config(tmp_path / "second"))
    for name in ("topics.json", "assignments.csv"):
        first = (tmp_path / "first" / name).read_bytes()
        second = (tmp_path / "second" / name).read_bytes()
        assert first == second, name

    topics = json.loads((tmp_path / "first" / "topics.json").read_text())
    assert len(topics["topics"]) == 4
    print(
        "\nPASS determinism: byte-identical topics.json and assignments.csv "
        "across two identically configured runs"
    )
