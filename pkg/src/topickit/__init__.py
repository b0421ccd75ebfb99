"""Document clustering and topic-keyword extraction toolkit.

Pipeline: corpus -> embeddings -> (optional reduction) -> clustering ->
cluster description by TF-IDF / C-TF-IDF / TF-RDF -> evaluation.
"""

from .corpus import (
    Corpus,
    Document,
    TermCountMatrix,
    TokenizerConfig,
    Vocabulary,
    aggregate_by_cluster,
    build_counts,
    ingest_corpus,
    tokenize,
)
from .scoring import (
    ScoreMatrix,
    ScoringParams,
    TopicDescription,
    c_tf_idf,
    describe_clusters,
    idf,
    raw_tf_scores,
    rdf,
    term_frequency_histogram,
    tf,
    write_scores_csv,
    tf_idf,
    tf_rdf,
    theta_grid_search,
    top_k_terms,
)
from .embedding import (
    EmbeddingMatrix,
    ProjectionConfig,
    WordVectorStore,
    cosine_similarity,
    export_projection,
    load_embeddings,
    load_word_vectors,
    pca_fit,
    pca_fit_transform,
    write_embeddings,
)
from .clustering import (
    ClusterAssignment,
    HdbscanConfig,
    KMeansConfig,
    KMedoidsConfig,
    hdbscan,
    kmeans,
    kmedoids,
)
from .evaluation import (
    ContingencyTable,
    EvaluationReport,
    adjusted_rand,
    ami,
    contingency,
    evaluate,
    expected_mutual_information,
    mutual_information,
    nmi,
    purity,
    rand_index,
    tc_centroid,
    tc_pairwise,
)
from .pipeline import RunConfig, RunManifest, compare_schemes, run

__version__ = "0.1.0"
