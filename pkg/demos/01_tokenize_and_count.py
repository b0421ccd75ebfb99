# Tokenization and term-count matrices.
#
# Documents become rows of a sparse count matrix; a cluster assignment turns
# that into one row per cluster ("clusters as documents"), which is the unit
# the weighting schemes score.

from topickit.corpus import (
    Corpus,
    Document,
    TokenizerConfig,
    aggregate_by_cluster,
    build_counts,
    tokenize,
)

print("tokenizer defaults: lowercase, split non-alphanumeric, drop 1-char tokens")
for text in ["The cat, the hat!", "C3PO & R2D2", "snake_case_identifier"]:
    print(f"  {text!r:32} -> {tokenize(text)}")

corpus = Corpus(
    documents=(
        Document("d0", "the engine roared and the engine smoked"),
        Document("d1", "fresh fruit and sweet fruit juice"),
        Document("d2", "engine oil and brake pads"),
        Document("d3", "fruit salad with apple and banana"),
    )
)
vocab, counts = build_counts(corpus)
print(f"\nvocabulary ({len(vocab)} terms, sorted): {vocab.terms}")
print("per-document counts:")
print(counts.dense())

labels = [0, 1, 0, 1]  # pretend clustering: engines vs fruit
clusters = aggregate_by_cluster(counts, labels)
print(f"\nper-cluster counts for labels {labels}:")
print(clusters.dense())
print("row sums are conserved:", counts.dense().sum(), "==", clusters.dense().sum())

strict = TokenizerConfig(min_token_len=4, min_count=2)
vocab2, _ = build_counts(corpus, strict)
print(f"\nstricter config (len>=4, count>=2) keeps: {vocab2.terms}")
