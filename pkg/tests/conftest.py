"""Shared fixtures: synthetic corpora with known structure.

The planted corpus is engineered so each weighting scheme shows its
signature behaviour:

* topical terms: ~30 tokens per doc drawn from 20 cluster-exclusive terms,
  so roughly 300 occurrences per (term, home cluster) and none elsewhere;
* stop words: 10 terms in every document, 13 occurrences each, for a corpus
  total of 10400 per term (past the 2 * theta mark at theta = 5000);
* shared noise terms: 20 terms each living in exactly two clusters at about
  900 occurrences per host cluster, tuned so plain TF-IDF over
  clusters-as-documents ranks them above the exclusive topical terms.

Word vectors for these terms are built on disjoint basis axes: topical terms
of one cluster share an axis with weight sqrt(0.9) plus a private noise axis
with weight sqrt(0.1), so within-topic cosine is exactly 0.9 and everything
else is exactly 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import pytest

from topickit.corpus import Corpus, Document
from topickit.embedding import WordVectorStore

N_CLUSTERS = 4
DOCS_PER_CLUSTER = 200
TOPICAL_PER_CLUSTER = 20
TOPICAL_TOKENS_PER_DOC = 30
N_STOP = 10
STOP_PER_DOC = 13
N_SHARED = 20
SHARED_PER_DOC_LOW, SHARED_PER_DOC_HIGH = 4, 6  # rng.integers bounds


def topical_term(cluster: int, j: int) -> str:
    return f"topic{cluster}term{j:02d}"


def stop_term(j: int) -> str:
    return f"stopword{j:02d}"


def shared_term(j: int) -> str:
    return f"shared{j:02d}"


def shared_hosts(j: int) -> tuple[int, int]:
    """Each shared term lives in two clusters; each cluster hosts 10 of 20."""
    return (j % N_CLUSTERS, (j + 1) % N_CLUSTERS)


@dataclass(frozen=True)
class PlantedCorpus:
    corpus: Corpus
    gold: list[str]
    embeddings: np.ndarray
    word_vectors: WordVectorStore
    stop_terms: tuple[str, ...]
    shared_terms: tuple[str, ...]

    def topical_terms(self, cluster: int) -> set[str]:
        return {topical_term(cluster, j) for j in range(TOPICAL_PER_CLUSTER)}


def build_planted_corpus(seed: int = 20240) -> PlantedCorpus:
    rng = np.random.default_rng(seed)
    docs = []
    gold = []
    for cluster in range(N_CLUSTERS):
        cluster_topicals = [topical_term(cluster, j) for j in range(TOPICAL_PER_CLUSTER)]
        cluster_shared = [shared_term(j) for j in range(N_SHARED) if cluster in shared_hosts(j)]
        for d in range(DOCS_PER_CLUSTER):
            tokens = list(rng.choice(cluster_topicals, size=TOPICAL_TOKENS_PER_DOC))
            for s in range(N_STOP):
                tokens.extend([stop_term(s)] * STOP_PER_DOC)
            for term in cluster_shared:
                reps = int(rng.integers(SHARED_PER_DOC_LOW, SHARED_PER_DOC_HIGH))
                tokens.extend([term] * reps)
            rng.shuffle(tokens)
            docs.append(
                Document(
                    id=f"c{cluster}d{d:03d}",
                    text=" ".join(tokens),
                    gold_label=f"class{cluster}",
                )
            )
            gold.append(f"class{cluster}")

    # Well-separated embedding blobs so k-means recovers the planted clusters.
    dim = 16
    centers = rng.normal(0.0, 1.0, (N_CLUSTERS, dim)) * 10.0
    emb = np.vstack(
        [
            centers[c] + rng.normal(0.0, 0.1, (DOCS_PER_CLUSTER, dim))
            for c in range(N_CLUSTERS)
        ]
    )
    return PlantedCorpus(
        corpus=Corpus(documents=tuple(docs)),
        gold=gold,
        embeddings=emb,
        word_vectors=build_planted_word_vectors(),
        stop_terms=tuple(stop_term(j) for j in range(N_STOP)),
        shared_terms=tuple(shared_term(j) for j in range(N_SHARED)),
    )


def build_planted_word_vectors() -> WordVectorStore:
    """Deterministic orthogonal construction: within-topic cosine 0.9,
    everything else 0."""
    dim = N_CLUSTERS + N_STOP + N_SHARED + N_CLUSTERS * TOPICAL_PER_CLUSTER
    vectors: dict[str, np.ndarray] = {}
    noise_base = N_CLUSTERS + N_STOP + N_SHARED
    for cluster in range(N_CLUSTERS):
        for j in range(TOPICAL_PER_CLUSTER):
            v = np.zeros(dim)
            v[cluster] = math.sqrt(0.9)
            v[noise_base + cluster * TOPICAL_PER_CLUSTER + j] = math.sqrt(0.1)
            vectors[topical_term(cluster, j)] = v
    for j in range(N_STOP):
        v = np.zeros(dim)
        v[N_CLUSTERS + j] = 1.0
        vectors[stop_term(j)] = v
    for j in range(N_SHARED):
        v = np.zeros(dim)
        v[N_CLUSTERS + N_STOP + j] = 1.0
        vectors[shared_term(j)] = v
    return WordVectorStore(vectors, dim)


@pytest.fixture(scope="session")
def planted() -> PlantedCorpus:
    return build_planted_corpus()


@pytest.fixture(scope="session")
def planted_files(planted, tmp_path_factory):
    """The planted corpus written out as pipeline inputs: corpus.jsonl,
    embeddings.emb and vectors.txt in one directory."""
    import json

    from topickit.embedding import write_embeddings

    root = tmp_path_factory.mktemp("planted")
    corpus_path = root / "corpus.jsonl"
    with open(corpus_path, "w", encoding="utf-8") as fh:
        for doc in planted.corpus.documents:
            fh.write(
                json.dumps({"id": doc.id, "text": doc.text, "label": doc.gold_label})
                + "\n"
            )
    emb_path = root / "embeddings.emb"
    write_embeddings(emb_path, planted.corpus.ids, planted.embeddings)

    wv = planted.word_vectors
    vectors_path = root / "vectors.txt"
    with open(vectors_path, "w", encoding="utf-8") as fh:
        for term in sorted(wv._vectors):
            vec = wv.get(term)
            fh.write(term + " " + " ".join(repr(float(x)) for x in vec) + "\n")
    return {
        "root": root,
        "corpus": corpus_path,
        "embeddings": emb_path,
        "vectors": vectors_path,
    }


@pytest.fixture(scope="session")
def fixtures_dir(tmp_path_factory):
    """Directory with the checked-in binary fixtures (tests/fixtures)."""
    from pathlib import Path

    return Path(__file__).parent / "fixtures"
