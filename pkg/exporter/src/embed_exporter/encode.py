"""Encode a corpus with a pretrained sentence encoder and write the
interchange file plus a small manifest with pinned versions."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .corpus import read_corpus
from .errors import ExportError
from .interchange import write_interchange

DEFAULT_MODEL = "sentence-transformers/all-mpnet-base-v2"  # 768-dim output


@dataclass(frozen=True)
class ExportConfig:
    corpus: str
    out: str
    model: str = DEFAULT_MODEL
    batch_size: int = 32


def _load_encoder(model_id: str):
    from sentence_transformers import SentenceTransformer

    try:
        return SentenceTransformer(model_id)
    except Exception as exc:
        raise ExportError(f"cannot load sentence encoder {model_id!r}: {exc}") from exc


def export_embeddings(config: ExportConfig) -> dict:
    """Encode every document (corpus order preserved) and write the file.

    Returns the manifest dict, which is also written next to the output as
    ``<out>.manifest.json``.
    """
    ids, texts = read_corpus(config.corpus)
    encoder = _load_encoder(config.model)
    vectors = encoder.encode(
        texts,
        batch_size=config.batch_size,
        convert_to_numpy=True,
        show_progress_bar=False,
    )
    vectors = np.asarray(vectors, dtype=np.float32)
    if vectors.ndim != 2 or vectors.shape[0] != len(ids):
        raise ExportError(
            f"encoder returned shape {vectors.shape} for {len(ids)} documents"
        )
    write_interchange(config.out, ids, vectors)
    manifest = _manifest(
        kind="embeddings",
        config={"corpus": str(config.corpus), "model": config.model,
                "batch_size": config.batch_size},
        n_rows=len(ids),
        dim=int(vectors.shape[1]),
    )
    _write_manifest(config.out, manifest)
    return manifest


def _manifest(kind: str, config: dict, n_rows: int, dim: int) -> dict:
    import sentence_transformers
    import torch

    from . import __version__

    return {
        "kind": kind,
        "config": config,
        "n_rows": n_rows,
        "dim": dim,
        "versions": {
            "embed_exporter": __version__,
            "numpy": np.__version__,
            "sentence_transformers": sentence_transformers.__version__,
            "torch": torch.__version__,
        },
    }


def _write_manifest(out_path, manifest: dict) -> None:
    path = Path(str(out_path) + ".manifest.json")
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
