"""End-to-end batch pipeline: documents in, topics and metrics out.

Every run is driven by one declarative ``RunConfig`` and emits a manifest
with the resolved configuration and input digests, so that a run can be
reproduced bit for bit from the manifest plus the input files.
"""

from __future__ import annotations

import csv
import hashlib
import json
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import clustering
from .corpus import TokenizerConfig, aggregate_by_cluster, build_counts, ingest_corpus
from .embedding import (
    ProjectionConfig,
    export_projection,
    load_embeddings,
    load_word_vectors,
    pca_fit_transform,
)
from .errors import TopickitError, ValidationError
from .evaluation import evaluate
from .scoring import (
    DEFAULT_THETA,
    DEFAULT_THETA_GRID,
    DEFAULT_TOP_K,
    SCHEMES,
    ScoringParams,
    describe_clusters,
    score,
    term_frequency_histogram,
    theta_grid_search,
)

SCHEMA_VERSION = 1
DEFAULT_HISTOGRAM_EDGES = (10, 60, 100, 500, 1000, 5000, 10000, 20000, 50000)
REDUCED_DIM_FOR_DENSITY = 5  # density clustering runs on reduced vectors


class StageError(TopickitError):
    """Failure inside one pipeline stage; carries the stage name."""

    def __init__(self, stage: str, cause: BaseException):
        super().__init__(f"[{stage}] {cause}")
        self.stage = stage
        self.cause = cause


@dataclass(frozen=True)
class RunConfig:
    corpus: str
    embeddings: str
    out: str
    corpus_format: str = "jsonl"
    reduced: str | None = None
    algo: str = "kmeans"
    k: int | None = None
    min_cluster_size: int | None = None
    min_samples: int | None = None
    scheme: str = "tf_rdf"
    theta: float = DEFAULT_THETA
    top_k: int = DEFAULT_TOP_K
    word_vectors: str | None = None
    seed: int = 0
    tokenizer: TokenizerConfig = field(default_factory=TokenizerConfig)
    noise_policy: str = "exclude"
    histogram_edges: tuple = DEFAULT_HISTOGRAM_EDGES
    write_projection: bool = True

    def __post_init__(self):
        if self.algo not in ("kmeans", "kmedoids", "hdbscan"):
            raise ValidationError(f"unknown clustering algorithm: {self.algo!r}")
        if self.algo in ("kmeans", "kmedoids") and self.k is None:
            raise ValidationError(f"{self.algo} requires k")
        if self.algo == "hdbscan" and self.min_cluster_size is None:
            raise ValidationError("hdbscan requires min_cluster_size")
        if self.scheme not in SCHEMES:
            raise ValidationError(f"unknown scheme: {self.scheme!r}")

    def resolved(self) -> dict:
        return {
            "corpus": self.corpus,
            "corpus_format": self.corpus_format,
            "embeddings": self.embeddings,
            "reduced": self.reduced,
            "algo": self.algo,
            "k": self.k,
            "min_cluster_size": self.min_cluster_size,
            "min_samples": self.min_samples,
            "scheme": self.scheme,
            "theta": self.theta,
            "top_k": self.top_k,
            "word_vectors": self.word_vectors,
            "seed": self.seed,
            "tokenizer": self.tokenizer.as_dict(),
            "noise_policy": self.noise_policy,
            "histogram_edges": list(self.histogram_edges),
            "write_projection": self.write_projection,
            "out": self.out,
        }


@dataclass(frozen=True)
class RunManifest:
    config: dict
    input_digests: dict
    timings: dict
    outputs: list
    version: str
    schema_version: int = SCHEMA_VERSION

    def as_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "artifact_version": self.version,
            "config": self.config,
            "input_digests": self.input_digests,
            "timings_seconds": self.timings,
            "outputs": self.outputs,
        }


def _sha256(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def _dump_json(payload: dict, path: Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


class _StageTracker:
    """Times stages and cleans up partial outputs when a stage fails."""

    def __init__(self):
        self.timings: dict[str, float] = {}
        self.outputs: list[Path] = []
        self._stage = None
        self._start = 0.0

    def start(self, stage: str):
        self._stage = stage
        self._start = time.perf_counter()

    def done(self):
        self.timings[self._stage] = round(time.perf_counter() - self._start, 6)

    def fail(self, exc: BaseException) -> StageError:
        for path in self.outputs:
            try:
                path.unlink(missing_ok=True)
            except OSError:
                pass
        return StageError(self._stage or "setup", exc)


def _cluster(config: RunConfig, X: np.ndarray, reduced: np.ndarray | None):
    if config.algo == "kmeans":
        result = clustering.kmeans(
            X, clustering.KMeansConfig(k=config.k, seed=config.seed)
        )
        return result.assignment
    if config.algo == "kmedoids":
        result = clustering.kmedoids(X, clustering.KMedoidsConfig(k=config.k, seed=config.seed))
        return result.assignment
    return clustering.hdbscan(
        reduced,
        clustering.HdbscanConfig(
            min_cluster_size=config.min_cluster_size, min_samples=config.min_samples
        ),
    )


def _prepare(config: RunConfig, tracker: _StageTracker):
    """Shared front half: corpus, embeddings, reduction, clustering, counts."""
    tracker.start("corpus")
    corpus = ingest_corpus(config.corpus, format=config.corpus_format)
    tracker.done()

    tracker.start("embeddings")
    emb = load_embeddings(config.embeddings, expected_rows=len(corpus), expected_ids=corpus.ids)
    tracker.done()

    reduced = None
    if config.algo == "hdbscan":
        tracker.start("reduction")
        projection = ProjectionConfig(
            method="external_file" if config.reduced else "pca",
            out_dim=min(REDUCED_DIM_FOR_DENSITY, emb.n_rows, emb.dim),
        )
        if projection.method == "external_file":
            reduced = load_embeddings(
                config.reduced, expected_rows=len(corpus), expected_ids=corpus.ids
            ).values
        else:
            reduced, _ = pca_fit_transform(emb.values, projection.out_dim)
        tracker.done()

    tracker.start("clustering")
    assignment = _cluster(config, emb.values, reduced)
    tracker.done()

    tracker.start("counts")
    _, doc_counts = build_counts(corpus, config.tokenizer)
    cluster_counts = aggregate_by_cluster(doc_counts, assignment.labels)
    tracker.done()

    return corpus, emb, assignment, doc_counts, cluster_counts


def _topics_payload(config: RunConfig, topics) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "scheme": config.scheme,
        "theta": config.theta if config.scheme == "tf_rdf" else None,
        "top_k": config.top_k,
        "topics": [
            {
                "cluster_id": t.cluster_id,
                "keywords": [{"term": term, "score": s} for term, s in t.keywords],
            }
            for t in topics
        ],
    }


def _write_assignments(path: Path, ids, labels) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["doc_id", "label"])
        for doc_id, label in zip(ids, labels):
            writer.writerow([doc_id, int(label)])


def run(config: RunConfig) -> RunManifest:
    """Execute the full pipeline and write all artifacts into ``config.out``.

    Any stage failure aborts the run with a stage-tagged error and removes
    partially written outputs.
    """
    out_dir = Path(config.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    tracker = _StageTracker()
    try:
        corpus, emb, assignment, doc_counts, cluster_counts = _prepare(config, tracker)

        tracker.start("scoring")
        params = ScoringParams(scheme=config.scheme, theta=config.theta, top_k=config.top_k)
        topics = describe_clusters(score(cluster_counts, params), config.top_k)
        tracker.done()

        tracker.start("outputs")
        topics_path = out_dir / "topics.json"
        tracker.outputs.append(topics_path)
        _dump_json(_topics_payload(config, topics), topics_path)

        assignments_path = out_dir / "assignments.csv"
        tracker.outputs.append(assignments_path)
        _write_assignments(assignments_path, corpus.ids, assignment.labels)

        histogram_path = out_dir / "histogram.csv"
        tracker.outputs.append(histogram_path)
        hist = term_frequency_histogram(doc_counts, config.histogram_edges)
        with open(histogram_path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["bin_low", "bin_high", "term_count"])
            for low, high, count in hist:
                writer.writerow([int(low), "inf" if high == float("inf") else int(high), count])
        tracker.done()

        if config.write_projection and emb.dim >= 2 and emb.n_rows >= 2:
            tracker.start("projection")
            coords, _ = pca_fit_transform(emb.values, 2)
            projection_path = out_dir / "projection.csv"
            tracker.outputs.append(projection_path)
            export_projection(corpus.ids, coords, assignment.labels, projection_path)
            tracker.done()

        gold = corpus.gold_labels
        wv = None
        if config.word_vectors:
            tracker.start("word_vectors")
            wv = load_word_vectors(config.word_vectors)
            tracker.done()
        if gold is not None or wv is not None:
            tracker.start("evaluation")
            report = evaluate(
                pred=assignment if gold is not None else None,
                gold=gold,
                topics=topics if wv is not None else None,
                word_vectors=wv,
                noise_policy=config.noise_policy,
            )
            metrics_path = out_dir / "metrics.json"
            tracker.outputs.append(metrics_path)
            _dump_json(
                {
                    "schema_version": SCHEMA_VERSION,
                    "metrics": report.as_dict(),
                    "noise_policy": config.noise_policy,
                    "n_clusters": assignment.k,
                    "n_noise": assignment.n_noise,
                    "config": config.resolved(),
                },
                metrics_path,
            )
            tracker.done()

        tracker.start("manifest")
        digests = {"corpus": _sha256(config.corpus), "embeddings": _sha256(config.embeddings)}
        if config.reduced:
            digests["reduced"] = _sha256(config.reduced)
        if config.word_vectors:
            digests["word_vectors"] = _sha256(config.word_vectors)
        manifest = RunManifest(
            config=config.resolved(),
            input_digests=digests,
            timings=tracker.timings,
            outputs=sorted(p.name for p in tracker.outputs),
            version=_artifact_version(),
        )
        manifest_path = out_dir / "manifest.json"
        tracker.outputs.append(manifest_path)
        _dump_json(manifest.as_dict(), manifest_path)
        tracker.done()
        return manifest
    except StageError:
        raise
    except Exception as exc:
        raise tracker.fail(exc) from exc


def compare_schemes(config: RunConfig, schemes=SCHEMES) -> list[dict]:
    """One clustering run, then topics plus both coherence scores per scheme.

    Writes ``comparison.json`` shaped like a method-comparison table with
    TC(pairwise) and TC(centroid) columns.
    """
    if not config.word_vectors:
        raise ValidationError("compare_schemes requires word vectors")
    schemes = list(schemes)
    if not schemes:
        raise ValidationError("at least one scheme required")
    for s in schemes:
        if s not in SCHEMES:
            raise ValidationError(f"unknown scheme: {s!r}")

    out_dir = Path(config.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    tracker = _StageTracker()
    try:
        _, _, assignment, _, cluster_counts = _prepare(config, tracker)

        tracker.start("word_vectors")
        wv = load_word_vectors(config.word_vectors)
        tracker.done()

        tracker.start("scoring")
        rows = []
        for scheme in schemes:
            params = ScoringParams(scheme=scheme, theta=config.theta, top_k=config.top_k)
            topics = describe_clusters(score(cluster_counts, params), config.top_k)
            report = evaluate(topics=topics, word_vectors=wv)
            rows.append(
                {
                    "scheme": scheme,
                    "tc_pairwise": report.tc_pairwise,
                    "tc_centroid": report.tc_centroid,
                    "coverage": report.coverage,
                }
            )
        tracker.done()

        tracker.start("outputs")
        path = out_dir / "comparison.json"
        tracker.outputs.append(path)
        _dump_json({"schema_version": SCHEMA_VERSION, "rows": rows}, path)
        tracker.done()
        return rows
    except StageError:
        raise
    except Exception as exc:
        raise tracker.fail(exc) from exc


def grid_search(config: RunConfig, thetas=DEFAULT_THETA_GRID):
    """Cluster once, then grid-search theta by pairwise coherence; writes
    ``theta_search.json`` and returns (best_theta, table)."""
    if not config.word_vectors:
        raise ValidationError("theta grid search requires word vectors")
    out_dir = Path(config.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    tracker = _StageTracker()
    try:
        _, _, _, _, cluster_counts = _prepare(config, tracker)
        tracker.start("word_vectors")
        wv = load_word_vectors(config.word_vectors)
        tracker.done()

        tracker.start("grid_search")
        best, table = theta_grid_search(cluster_counts, thetas, wv, k=config.top_k)
        tracker.done()

        tracker.start("outputs")
        path = out_dir / "theta_search.json"
        tracker.outputs.append(path)
        _dump_json(
            {
                "schema_version": SCHEMA_VERSION,
                "best_theta": best,
                "table": [{"theta": t, "tc_pairwise": c} for t, c in table],
            },
            path,
        )
        tracker.done()
        return best, table
    except StageError:
        raise
    except Exception as exc:
        raise tracker.fail(exc) from exc


def _artifact_version() -> str:
    from . import __version__

    return __version__
