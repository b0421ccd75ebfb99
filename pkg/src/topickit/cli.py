"""Batch CLI: ``topickit {run,compare,histogram,grid-search-theta,eval} ...``

Options come from an optional JSON config file plus flags; flags win.
Exits 0 on success, 2 with a stage-tagged message on stderr otherwise.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from .corpus import TokenizerConfig, build_counts, ingest_corpus
from .embedding import load_word_vectors
from .errors import TopickitError, ValidationError
from .evaluation import evaluate
from .pipeline import (
    DEFAULT_HISTOGRAM_EDGES,
    RunConfig,
    compare_schemes,
    grid_search,
    run,
)
from .scoring import DEFAULT_THETA_GRID, term_frequency_histogram

_CLI_SCHEMES = {"tf-idf": "tf_idf", "c-tf-idf": "c_tf_idf", "tf-rdf": "tf_rdf"}


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON config file; flags override its keys")
    parser.add_argument("--corpus", help="corpus path (jsonl or directory)")
    parser.add_argument("--format", dest="corpus_format", choices=["jsonl", "plain_dir"])
    parser.add_argument("--embeddings", help="document embedding interchange file")
    parser.add_argument("--reduced", help="pre-reduced embedding interchange file")
    parser.add_argument("--algo", choices=["kmeans", "kmedoids", "hdbscan"])
    parser.add_argument("--k", type=int, help="cluster count for kmeans/kmedoids")
    parser.add_argument("--min-cluster-size", type=int, dest="min_cluster_size")
    parser.add_argument("--min-samples", type=int, dest="min_samples")
    parser.add_argument("--scheme", choices=sorted(_CLI_SCHEMES))
    parser.add_argument("--theta", type=float)
    parser.add_argument("--top-k", type=int, dest="top_k")
    parser.add_argument("--word-vectors", dest="word_vectors")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--out", help="output directory")
    parser.add_argument("--noise-policy", dest="noise_policy", choices=["exclude", "own_cluster"])


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="topickit",
        description="Cluster documents and describe each cluster with topic keywords.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="full pipeline: cluster, score, export")
    _add_common(p_run)

    p_cmp = sub.add_parser("compare", help="score one clustering under several schemes")
    _add_common(p_cmp)
    p_cmp.add_argument(
        "--schemes",
        default="tf-rdf,c-tf-idf,tf-idf",
        help="comma-separated scheme list",
    )

    p_hist = sub.add_parser("histogram", help="term-frequency histogram for theta choice")
    _add_common(p_hist)
    p_hist.add_argument("--edges", help="comma-separated ascending bin edges")

    p_grid = sub.add_parser("grid-search-theta", help="pick theta by topic coherence")
    _add_common(p_grid)
    p_grid.add_argument("--thetas", help="comma-separated candidate thetas")

    p_eval = sub.add_parser("eval", help="score an existing assignment against gold labels")
    _add_common(p_eval)
    p_eval.add_argument("--assignments", help="assignments.csv from a previous run")
    p_eval.add_argument("--topics", help="topics.json from a previous run (for coherence)")

    return parser


def _merge_config(args: argparse.Namespace) -> dict:
    merged: dict = {}
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            merged.update(json.load(fh))
    for key in (
        "corpus",
        "corpus_format",
        "embeddings",
        "reduced",
        "algo",
        "k",
        "min_cluster_size",
        "min_samples",
        "theta",
        "top_k",
        "word_vectors",
        "seed",
        "out",
        "noise_policy",
    ):
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    if getattr(args, "scheme", None):
        merged["scheme"] = _CLI_SCHEMES[args.scheme]
    return merged


def _run_config(merged: dict) -> RunConfig:
    for required in ("corpus", "embeddings", "out"):
        if not merged.get(required):
            raise ValidationError(f"missing required option: --{required}")
    tokenizer = TokenizerConfig(**merged.get("tokenizer", {}))
    known = {
        k: v
        for k, v in merged.items()
        if k in RunConfig.__dataclass_fields__ and k != "tokenizer"
    }
    return RunConfig(tokenizer=tokenizer, **known)


def _parse_floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise ValidationError(f"bad numeric list {text!r}: {exc}") from exc


def _cmd_run(args) -> int:
    manifest = run(_run_config(_merge_config(args)))
    print(f"run complete: {len(manifest.outputs)} artifacts in {manifest.config['out']}")
    return 0


def _cmd_compare(args) -> int:
    schemes = []
    for name in args.schemes.split(","):
        name = name.strip()
        if name not in _CLI_SCHEMES:
            raise ValidationError(f"unknown scheme {name!r} (choose from {sorted(_CLI_SCHEMES)})")
        schemes.append(_CLI_SCHEMES[name])
    rows = compare_schemes(_run_config(_merge_config(args)), schemes)
    width = max(len(r["scheme"]) for r in rows)
    print(f"{'scheme'.ljust(width)}  tc_pairwise  tc_centroid")
    for row in rows:
        print(
            f"{row['scheme'].ljust(width)}  {row['tc_pairwise']:11.4f}  {row['tc_centroid']:11.4f}"
        )
    return 0


def _cmd_histogram(args) -> int:
    merged = _merge_config(args)
    if not merged.get("corpus"):
        raise ValidationError("missing required option: --corpus")
    if not merged.get("out"):
        raise ValidationError("missing required option: --out")
    edges = (
        [int(e) for e in _parse_floats(args.edges)]
        if args.edges
        else list(merged.get("histogram_edges", DEFAULT_HISTOGRAM_EDGES))
    )
    corpus = ingest_corpus(merged["corpus"], format=merged.get("corpus_format", "jsonl"))
    _, counts = build_counts(corpus, TokenizerConfig(**merged.get("tokenizer", {})))
    hist = term_frequency_histogram(counts, edges)

    out_dir = Path(merged["out"])
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "histogram.csv"
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["bin_low", "bin_high", "term_count"])
        for low, high, count in hist:
            writer.writerow([int(low), "inf" if high == float("inf") else int(high), count])
    for low, high, count in hist:
        high_text = "inf" if high == float("inf") else f"{int(high)}"
        print(f"[{int(low):>6}, {high_text:>6}): {count} terms")
    print(f"wrote {path}")
    return 0


def _cmd_grid(args) -> int:
    thetas = _parse_floats(args.thetas) if args.thetas else list(DEFAULT_THETA_GRID)
    best, table = grid_search(_run_config(_merge_config(args)), thetas)
    for theta, coherence in table:
        marker = " <- best" if theta == best else ""
        print(f"theta={theta:>10.0f}  tc_pairwise={coherence:.4f}{marker}")
    return 0


def _cmd_eval(args) -> int:
    merged = _merge_config(args)
    if not merged.get("corpus"):
        raise ValidationError("missing required option: --corpus")
    if not args.assignments:
        raise ValidationError("missing required option: --assignments")
    if not merged.get("out"):
        raise ValidationError("missing required option: --out")

    corpus = ingest_corpus(merged["corpus"], format=merged.get("corpus_format", "jsonl"))
    label_of: dict[str, int] = {}
    with open(args.assignments, "r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        for row in reader:
            label_of[row["doc_id"]] = int(row["label"])
    missing = [i for i in corpus.ids if i not in label_of]
    if missing:
        raise ValidationError(f"assignments missing {len(missing)} corpus ids (e.g. {missing[0]!r})")
    pred = np.array([label_of[i] for i in corpus.ids], dtype=np.int64)

    gold = corpus.gold_labels
    if gold is None:
        raise ValidationError("corpus has no gold labels; nothing to evaluate")

    topics = None
    wv = None
    if args.topics and merged.get("word_vectors"):
        from .scoring import TopicDescription

        with open(args.topics, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
        topics = [
            TopicDescription(
                cluster_id=t["cluster_id"],
                keywords=tuple((k["term"], k["score"]) for k in t["keywords"]),
            )
            for t in payload["topics"]
        ]
        wv = load_word_vectors(merged["word_vectors"])

    report = evaluate(
        pred=pred,
        gold=gold,
        topics=topics,
        word_vectors=wv,
        noise_policy=merged.get("noise_policy", "exclude"),
    )
    out_dir = Path(merged["out"])
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "metrics.json"
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(
            {"schema_version": 1, "metrics": report.as_dict()}, fh, indent=2, sort_keys=True
        )
        fh.write("\n")
    for name, value in report.as_dict().items():
        if value is not None:
            print(f"{name:12s} {value:.4f}")
    print(f"wrote {path}")
    return 0


_COMMANDS = {
    "run": _cmd_run,
    "compare": _cmd_compare,
    "histogram": _cmd_histogram,
    "grid-search-theta": _cmd_grid,
    "eval": _cmd_eval,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except TopickitError as exc:
        tag = "" if str(exc).startswith("[") else "[config] "
        print(f"error: {tag}{exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: [io] {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
