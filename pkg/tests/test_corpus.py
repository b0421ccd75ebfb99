import json

import numpy as np
import pytest

from topickit.corpus import (
    Corpus,
    Document,
    TokenizerConfig,
    aggregate_by_cluster,
    build_counts,
    ingest_corpus,
    tokenize,
)
from topickit.errors import ParseError, ValidationError


def write_jsonl(path, records):
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec) + "\n")


class TestIngest:
    def test_jsonl_preserves_order(self, tmp_path):
        path = tmp_path / "c.jsonl"
        write_jsonl(
            path,
            [
                {"id": "a", "text": "one"},
                {"id": "b", "text": "two", "label": "x"},
                {"id": "c", "text": "three"},
            ],
        )
        corpus = ingest_corpus(path, format="jsonl")
        assert len(corpus) == 3
        assert corpus.ids == ["a", "b", "c"]
        assert corpus.documents[1].gold_label == "x"

    def test_duplicate_id_rejected(self, tmp_path):
        path = tmp_path / "c.jsonl"
        write_jsonl(path, [{"id": "a", "text": "x"}, {"id": "a", "text": "y"}])
        with pytest.raises(ValidationError, match="duplicate"):
            ingest_corpus(path)

    def test_empty_file_rejected(self, tmp_path):
        path = tmp_path / "c.jsonl"
        path.write_text("")
        with pytest.raises(ValidationError):
            ingest_corpus(path)

    def test_malformed_record_names_line(self, tmp_path):
        path = tmp_path / "c.jsonl"
        path.write_text('{"id": "a", "text": "ok"}\n{bad json}\n')
        with pytest.raises(ParseError, match=":2:"):
            ingest_corpus(path)

    def test_missing_field_names_line(self, tmp_path):
        path = tmp_path / "c.jsonl"
        path.write_text('{"id": "a"}\n')
        with pytest.raises(ParseError, match=":1:"):
            ingest_corpus(path)

    def test_plain_dir(self, tmp_path):
        (tmp_path / "b.txt").write_text("beta")
        (tmp_path / "a.txt").write_text("alpha")
        corpus = ingest_corpus(tmp_path, format="plain_dir")
        # filenames are ids; order is sorted for determinism
        assert corpus.ids == ["a.txt", "b.txt"]
        assert corpus.gold_labels is None

    def test_partial_gold_labels_are_none(self):
        corpus = Corpus(
            documents=(Document("a", "x", "lab"), Document("b", "y", None))
        )
        assert corpus.gold_labels is None


class TestTokenize:
    def test_basic_rules(self):
        assert tokenize("The cat, the hat!") == ["the", "cat", "the", "hat"]

    def test_empty(self):
        assert tokenize("") == []

    def test_alnum_runs_kept_whole(self):
        assert tokenize("C3PO & R2D2") == ["c3po", "r2d2"]

    def test_min_length_drops_short(self):
        assert tokenize("a bb c dd") == ["bb", "dd"]

    def test_underscore_splits(self):
        assert tokenize("snake_case") == ["snake", "case"]

    def test_config_variants(self):
        cfg = TokenizerConfig(lowercase=False, min_token_len=1)
        assert tokenize("A Cat", cfg) == ["A", "Cat"]

    def test_purity(self):
        text = "Same text, same tokens! 42 times."
        assert tokenize(text) == tokenize(text)


class TestBuildCounts:
    def test_hand_counted(self):
        corpus = Corpus(documents=(Document("d1", "aa bb aa"), Document("d2", "bb cc")))
        vocab, counts = build_counts(corpus)
        assert vocab.terms == ("aa", "bb", "cc")
        assert counts.dense().tolist() == [[2, 1, 0], [0, 1, 1]]
        assert counts.row_kind == "per_document"
        assert counts.unit_ids == ("d1", "d2")

    def test_empty_doc_zero_row(self):
        corpus = Corpus(documents=(Document("d1", ""), Document("d2", "xx")))
        vocab, counts = build_counts(corpus)
        assert vocab.terms == ("xx",)
        assert counts.dense().tolist() == [[0], [1]]

    def test_identical_docs_identical_rows(self):
        corpus = Corpus(documents=(Document("d1", "cat dog"), Document("d2", "cat dog")))
        _, counts = build_counts(corpus)
        assert (counts.dense()[0] == counts.dense()[1]).all()

    def test_total_token_conservation(self):
        corpus = Corpus(
            documents=tuple(
                Document(f"d{i}", " ".join(["tok"] * i + ["other"] * 2)) for i in range(1, 5)
            )
        )
        _, counts = build_counts(corpus)
        total_tokens = sum(len(tokenize(d.text)) for d in corpus.documents)
        assert counts.counts.sum() == total_tokens

    def test_min_count_floor(self):
        corpus = Corpus(documents=(Document("d1", "rare common common"),))
        vocab, _ = build_counts(corpus, TokenizerConfig(min_count=2))
        assert vocab.terms == ("common",)

    def test_vocabulary_sorted_and_bijective(self):
        corpus = Corpus(documents=(Document("d", "zebra apple mango apple"),))
        vocab, _ = build_counts(corpus)
        assert list(vocab.terms) == sorted(vocab.terms)
        assert all(vocab.terms[i] == t for t, i in vocab.index.items())


class TestAggregate:
    def test_two_docs_one_cluster(self):
        corpus = Corpus(documents=(Document("a", "xx xx yy"), Document("b", "yy yy yy")))
        _, counts = build_counts(corpus)
        agg = aggregate_by_cluster(counts, [0, 0])
        assert agg.dense().tolist() == [[2, 4]]
        assert agg.row_kind == "per_cluster"

    def test_noise_excluded(self):
        corpus = Corpus(documents=(Document("a", "xx xx yy"), Document("b", "yy yy yy")))
        _, counts = build_counts(corpus)
        agg = aggregate_by_cluster(counts, [0, -1])
        assert agg.dense().tolist() == [[2, 1]]

    def test_identity_case(self):
        corpus = Corpus(documents=(Document("a", "xx"), Document("b", "yy")))
        _, counts = build_counts(corpus)
        agg = aggregate_by_cluster(counts, [0, 1])
        assert (agg.dense() == counts.dense()).all()

    def test_length_mismatch_rejected(self):
        corpus = Corpus(documents=(Document("a", "x"),))
        _, counts = build_counts(corpus)
        with pytest.raises(ValidationError, match="length"):
            aggregate_by_cluster(counts, [0, 1])

    def test_conservation_under_aggregation(self):
        rng = np.random.default_rng(5)
        corpus = Corpus(
            documents=tuple(
                Document(f"d{i}", " ".join(rng.choice(["aa", "bb", "cc", "dd"], size=8)))
                for i in range(10)
            )
        )
        _, counts = build_counts(corpus)
        labels = np.array([0, 1, 2, 0, 1, 2, 0, -1, 1, 2])
        agg = aggregate_by_cluster(counts, labels)
        non_noise_sum = counts.dense()[labels >= 0].sum()
        assert agg.dense().sum() == non_noise_sum
