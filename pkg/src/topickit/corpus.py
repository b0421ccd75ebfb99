"""Corpus ingestion, tokenization and term-count matrices.

Documents come in as JSONL or a directory of plain-text files, are tokenized
deterministically, and end up as a sparse term-by-unit count matrix where a
unit is either a single document or a whole cluster treated as one document.
"""

from __future__ import annotations

import json
import re
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy import sparse

from .errors import ParseError, ValidationError

# Unicode-aware "alphanumeric run" (underscore excluded).
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)

PER_DOCUMENT = "per_document"
PER_CLUSTER = "per_cluster"


@dataclass(frozen=True)
class Document:
    id: str
    text: str
    gold_label: str | None = None

    def __post_init__(self):
        if not self.id:
            raise ValidationError("document id must be non-empty")


@dataclass(frozen=True)
class Corpus:
    """Ordered document collection; document order fixes row order downstream."""

    documents: tuple[Document, ...]

    def __post_init__(self):
        if len(self.documents) == 0:
            raise ValidationError("corpus must contain at least one document")
        seen = set()
        for doc in self.documents:
            if doc.id in seen:
                raise ValidationError(f"duplicate document id: {doc.id!r}")
            seen.add(doc.id)

    def __len__(self) -> int:
        return len(self.documents)

    @property
    def ids(self) -> list[str]:
        return [d.id for d in self.documents]

    @property
    def gold_labels(self) -> list[str] | None:
        """Gold labels in document order, or None unless every document has one."""
        labels = [d.gold_label for d in self.documents]
        if any(l is None for l in labels):
            return None
        return labels


@dataclass(frozen=True)
class TokenizerConfig:
    """Pinned default: lowercase, split on non-alphanumeric runs, drop tokens
    shorter than 2 chars.  No stop-word list on purpose; stop-word suppression
    is the scorer's job."""

    lowercase: bool = True
    min_token_len: int = 2
    min_count: int = 1  # vocabulary frequency floor; 1 keeps everything

    def as_dict(self) -> dict:
        return {
            "lowercase": self.lowercase,
            "min_token_len": self.min_token_len,
            "min_count": self.min_count,
        }


@dataclass(frozen=True)
class Vocabulary:
    """Lexicographically sorted terms with a bijective term -> column map."""

    terms: tuple[str, ...]
    index: dict[str, int] = field(repr=False, default_factory=dict)

    @classmethod
    def from_terms(cls, terms) -> "Vocabulary":
        ordered = tuple(sorted(set(terms)))
        return cls(terms=ordered, index={t: i for i, t in enumerate(ordered)})

    def __len__(self) -> int:
        return len(self.terms)

    def __contains__(self, term: str) -> bool:
        return term in self.index


@dataclass(frozen=True)
class TermCountMatrix:
    """Sparse non-negative term counts, one row per unit.

    ``row_kind`` distinguishes document rows from cluster-as-document rows;
    ``unit_ids`` names each row (document ids, or cluster labels as strings).
    """

    counts: sparse.csr_matrix
    vocabulary: Vocabulary
    row_kind: str
    unit_ids: tuple[str, ...]

    def __post_init__(self):
        if self.row_kind not in (PER_DOCUMENT, PER_CLUSTER):
            raise ValidationError(f"unknown row_kind: {self.row_kind!r}")
        if self.counts.shape[0] != len(self.unit_ids):
            raise ValidationError("unit_ids length must match row count")
        if self.counts.shape[1] != len(self.vocabulary):
            raise ValidationError("vocabulary size must match column count")
        if self.counts.nnz and self.counts.data.min() < 0:
            raise ValidationError("counts must be non-negative")

    @property
    def n_rows(self) -> int:
        return self.counts.shape[0]

    @property
    def n_terms(self) -> int:
        return self.counts.shape[1]

    def term_totals(self) -> np.ndarray:
        """Total occurrences of each term summed over all rows."""
        return np.asarray(self.counts.sum(axis=0)).ravel()

    def row_totals(self) -> np.ndarray:
        return np.asarray(self.counts.sum(axis=1)).ravel()

    def dense(self) -> np.ndarray:
        return self.counts.toarray()


def tokenize(text: str, config: TokenizerConfig = TokenizerConfig()) -> list[str]:
    """Deterministic tokenization: NFC-normalize, optionally lowercase, take
    alphanumeric runs, drop short tokens."""
    if not text:
        return []
    text = unicodedata.normalize("NFC", text)
    if config.lowercase:
        text = text.lower()
    return [t for t in _TOKEN_RE.findall(text) if len(t) >= config.min_token_len]


def ingest_corpus(path, format: str = "jsonl") -> Corpus:
    """Load a corpus from ``jsonl`` (one object per line with ``id``, ``text``,
    optional ``label``) or ``plain_dir`` (one file per document, filename = id)."""
    path = Path(path)
    if format == "jsonl":
        return _ingest_jsonl(path)
    if format == "plain_dir":
        return _ingest_plain_dir(path)
    raise ValidationError(f"unknown corpus format: {format!r}")


def _ingest_jsonl(path: Path) -> Corpus:
    docs = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(f"{path}:{lineno}: malformed JSON record: {exc}") from exc
            if not isinstance(record, dict):
                raise ParseError(f"{path}:{lineno}: record must be a JSON object")
            if "id" not in record or "text" not in record:
                raise ParseError(f"{path}:{lineno}: record needs 'id' and 'text' fields")
            if not isinstance(record["id"], str) or not isinstance(record["text"], str):
                raise ParseError(f"{path}:{lineno}: 'id' and 'text' must be strings")
            docs.append(
                Document(
                    id=record["id"],
                    text=record["text"],
                    gold_label=record.get("label"),
                )
            )
    return Corpus(documents=tuple(docs))


def _ingest_plain_dir(path: Path) -> Corpus:
    if not path.is_dir():
        raise ParseError(f"{path}: not a directory")
    docs = []
    for file in sorted(p for p in path.iterdir() if p.is_file()):
        docs.append(Document(id=file.name, text=file.read_text(encoding="utf-8")))
    return Corpus(documents=tuple(docs))


def build_counts(
    corpus: Corpus, config: TokenizerConfig = TokenizerConfig()
) -> tuple[Vocabulary, TermCountMatrix]:
    """Tokenize every document and build the per-document count matrix.

    The vocabulary covers exactly the tokens occurring at least ``min_count``
    times in the whole corpus (default 1: every observed token).
    """
    token_lists = [tokenize(doc.text, config) for doc in corpus.documents]

    totals: dict[str, int] = {}
    for tokens in token_lists:
        for tok in tokens:
            totals[tok] = totals.get(tok, 0) + 1
    if config.min_count > 1:
        kept = [t for t, n in totals.items() if n >= config.min_count]
    else:
        kept = list(totals)
    vocab = Vocabulary.from_terms(kept)

    rows, cols, data = [], [], []
    for row, tokens in enumerate(token_lists):
        counts: dict[int, int] = {}
        for tok in tokens:
            col = vocab.index.get(tok)
            if col is not None:
                counts[col] = counts.get(col, 0) + 1
        for col, n in counts.items():
            rows.append(row)
            cols.append(col)
            data.append(n)

    matrix = sparse.csr_matrix(
        (data, (rows, cols)), shape=(len(corpus), len(vocab)), dtype=np.int64
    )
    tcm = TermCountMatrix(
        counts=matrix,
        vocabulary=vocab,
        row_kind=PER_DOCUMENT,
        unit_ids=tuple(corpus.ids),
    )
    return vocab, tcm


def aggregate_by_cluster(counts: TermCountMatrix, labels) -> TermCountMatrix:
    """Sum document rows into one row per cluster label 0..K-1.

    Noise documents (label -1) are excluded from every cluster row.
    """
    labels = np.asarray(labels, dtype=np.int64)
    if labels.shape[0] != counts.n_rows:
        raise ValidationError(
            f"assignment length {labels.shape[0]} != document count {counts.n_rows}"
        )
    if labels.size and labels.min() < -1:
        raise ValidationError("cluster labels must be >= -1")

    non_noise = labels[labels >= 0]
    if non_noise.size == 0:
        raise ValidationError("no non-noise documents to aggregate")
    n_clusters = int(non_noise.max()) + 1

    # Indicator matrix (clusters x docs); noise columns stay all-zero.
    doc_idx = np.flatnonzero(labels >= 0)
    indicator = sparse.csr_matrix(
        (np.ones(doc_idx.size, dtype=np.int64), (labels[doc_idx], doc_idx)),
        shape=(n_clusters, counts.n_rows),
    )
    aggregated = (indicator @ counts.counts).tocsr()
    return TermCountMatrix(
        counts=aggregated,
        vocabulary=counts.vocabulary,
        row_kind=PER_CLUSTER,
        unit_ids=tuple(str(c) for c in range(n_clusters)),
    )
