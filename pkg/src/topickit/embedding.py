"""Embedding I/O, word vectors, cosine similarity and PCA.

The document-embedding interchange format is binary:

    magic "EMB1"
    u32 n_rows, u32 dim          (little-endian)
    n_rows id records            (u16 byte length + UTF-8 id)
    n_rows * dim float32         (little-endian, row-major)

Word vectors use the common text format: an optional "count dim" header line,
then one term per line followed by whitespace-separated floats.
"""

from __future__ import annotations

import csv
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import AlignmentError, ParseError, ValidationError

_MAGIC = b"EMB1"


@dataclass(frozen=True)
class EmbeddingMatrix:
    """Dense row-per-document vectors; row order matches corpus order."""

    ids: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self):
        if self.values.ndim != 2:
            raise ValidationError("embedding values must be a 2-d array")
        if len(self.ids) != self.values.shape[0]:
            raise ValidationError("id count must match row count")

    @property
    def n_rows(self) -> int:
        return self.values.shape[0]

    @property
    def dim(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True)
class ProjectionConfig:
    """How reduced vectors are obtained: computed natively with PCA, or read
    from an externally produced interchange file.  out_dim is 5 for
    clustering preparation and 2 for visualization."""

    method: str = "pca"  # "pca" | "external_file"
    out_dim: int = 5

    def __post_init__(self):
        if self.method not in ("pca", "external_file"):
            raise ValidationError(f"unknown projection method: {self.method!r}")
        if self.out_dim < 1:
            raise ValidationError("out_dim must be >= 1")


class WordVectorStore:
    """term -> vector map of uniform dimensionality; unknown terms are a
    detectable miss (``get`` returns None), never an error."""

    def __init__(self, vectors: dict[str, np.ndarray], dim: int):
        self._vectors = vectors
        self.dim = dim

    def __len__(self) -> int:
        return len(self._vectors)

    def __contains__(self, term: str) -> bool:
        return term in self._vectors

    def get(self, term: str):
        return self._vectors.get(term)


def write_embeddings(path, ids, values) -> None:
    """Write the binary interchange file (inverse of ``load_embeddings``)."""
    values = np.asarray(values, dtype=np.float32)
    if values.ndim != 2:
        raise ValidationError("embedding values must be a 2-d array")
    ids = list(ids)
    if len(ids) != values.shape[0]:
        raise ValidationError("id count must match row count")
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(struct.pack("<II", values.shape[0], values.shape[1]))
        for doc_id in ids:
            raw = doc_id.encode("utf-8")
            if len(raw) > 0xFFFF:
                raise ValidationError(f"id too long: {doc_id[:32]!r}...")
            fh.write(struct.pack("<H", len(raw)))
            fh.write(raw)
        fh.write(values.astype("<f4").tobytes(order="C"))


def load_embeddings(path, expected_rows: int | None = None, expected_ids=None) -> EmbeddingMatrix:
    """Load and validate an interchange file.

    Row count / id mismatches raise AlignmentError; non-finite values raise
    ValidationError naming the offending row.
    """
    path = Path(path)
    data = path.read_bytes()
    if len(data) < 12 or data[:4] != _MAGIC:
        raise ParseError(f"{path}: not an embedding interchange file (bad magic)")
    n_rows, dim = struct.unpack_from("<II", data, 4)
    offset = 12
    ids = []
    for i in range(n_rows):
        if offset + 2 > len(data):
            raise ParseError(f"{path}: truncated id record {i}")
        (id_len,) = struct.unpack_from("<H", data, offset)
        offset += 2
        if offset + id_len > len(data):
            raise ParseError(f"{path}: truncated id record {i}")
        ids.append(data[offset : offset + id_len].decode("utf-8"))
        offset += id_len
    expected_bytes = n_rows * dim * 4
    if len(data) - offset != expected_bytes:
        raise ParseError(
            f"{path}: expected {expected_bytes} bytes of vector data, "
            f"found {len(data) - offset}"
        )
    values = np.frombuffer(data, dtype="<f4", count=n_rows * dim, offset=offset)
    values = values.reshape(n_rows, dim).astype(np.float64)

    if expected_rows is not None and n_rows != expected_rows:
        raise AlignmentError(f"{path}: has {n_rows} rows, corpus expects {expected_rows}")
    if expected_ids is not None:
        expected_ids = list(expected_ids)
        if len(expected_ids) != n_rows:
            raise AlignmentError(
                f"{path}: has {n_rows} rows, corpus expects {len(expected_ids)}"
            )
        for row, (got, want) in enumerate(zip(ids, expected_ids)):
            if got != want:
                raise AlignmentError(
                    f"{path}: id mismatch at row {row}: file has {got!r}, corpus has {want!r}"
                )
    bad = ~np.isfinite(values)
    if bad.any():
        row = int(np.flatnonzero(bad.any(axis=1))[0])
        raise ValidationError(f"{path}: non-finite value in row {row} (id {ids[row]!r})")
    return EmbeddingMatrix(ids=tuple(ids), values=values)


def load_word_vectors(path) -> WordVectorStore:
    """Parse the text word-vector format; dims must be uniform."""
    path = Path(path)
    vectors: dict[str, np.ndarray] = {}
    dim = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            parts = line.split()
            if not parts:
                continue
            # Optional "count dim" header: exactly two integer fields.
            if lineno == 1 and len(parts) == 2:
                try:
                    int(parts[0]), int(parts[1])
                    continue
                except ValueError:
                    pass
            term, rest = parts[0], parts[1:]
            if not rest:
                raise ParseError(f"{path}:{lineno}: no vector components")
            try:
                vec = np.array([float(x) for x in rest], dtype=np.float64)
            except ValueError as exc:
                raise ParseError(f"{path}:{lineno}: bad float: {exc}") from exc
            if dim is None:
                dim = vec.shape[0]
            elif vec.shape[0] != dim:
                raise ValidationError(
                    f"{path}:{lineno}: vector has {vec.shape[0]} components, "
                    f"store dimensionality is {dim}"
                )
            vectors[term] = vec
    if dim is None:
        raise ValidationError(f"{path}: no word vectors found")
    return WordVectorStore(vectors, dim)


def cosine_similarity(a, b) -> float:
    """a.b / (|a||b|), in [-1, 1]; all-zero vectors yield 0 so that
    out-of-vocabulary fallbacks degrade gracefully."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValidationError(f"dimension mismatch: {a.shape} vs {b.shape}")
    na = np.linalg.norm(a)
    nb = np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        return 0.0
    sim = float(np.dot(a, b) / (na * nb))
    return max(-1.0, min(1.0, sim))


def pca_fit(X, out_dim: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Fit the principal-component basis: (components, mean, ratios).

    ``components`` has one unit row per retained component; reconstruction is
    ``projected @ components + mean``.  Component signs are fixed by making
    each component's largest-magnitude coordinate positive, so repeated runs
    are bit-identical.
    """
    values = X.values if isinstance(X, EmbeddingMatrix) else np.asarray(X, dtype=np.float64)
    n, dim = values.shape
    if n < 2:
        raise ValidationError("PCA needs at least 2 rows")
    if not (1 <= out_dim <= min(n, dim)):
        raise ValidationError(
            f"out_dim {out_dim} must be in 1..min(n_rows={n}, dim={dim})"
        )
    mean = values.mean(axis=0, keepdims=True)
    _, s, vt = np.linalg.svd(values - mean, full_matrices=False)

    components = vt[:out_dim]
    flip = np.sign(components[np.arange(out_dim), np.argmax(np.abs(components), axis=1)])
    flip[flip == 0] = 1.0
    components = components * flip[:, np.newaxis]

    variances = s**2
    total = variances.sum()
    ratios = variances[:out_dim] / total if total > 0 else np.zeros(out_dim)
    return components, mean, ratios


def pca_fit_transform(X, out_dim: int) -> tuple[np.ndarray, np.ndarray]:
    """Mean-centered projection onto the top principal components; returns
    (projected, explained_variance_ratios)."""
    values = X.values if isinstance(X, EmbeddingMatrix) else np.asarray(X, dtype=np.float64)
    components, mean, ratios = pca_fit(values, out_dim)
    return (values - mean) @ components.T, ratios


def export_projection(ids, coords, labels, path) -> None:
    """Write (doc_id, x, y, cluster_label) CSV rows for external plotting."""
    coords = np.asarray(coords, dtype=np.float64)
    if coords.ndim != 2 or coords.shape[1] != 2:
        raise ValidationError("projection export requires 2-d coordinates")
    ids = list(ids)
    labels = list(labels)
    if len(ids) != coords.shape[0] or len(labels) != coords.shape[0]:
        raise ValidationError("ids, coords and labels must have equal length")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["doc_id", "x", "y", "cluster_label"])
        for doc_id, (x, y), label in zip(ids, coords, labels):
            writer.writerow([doc_id, float(x), float(y), int(label)])
