"""Embedding exporter: encode a JSONL corpus with a pretrained sentence
encoder and write the binary interchange format, optionally with reduced
2-d / 5-d projections."""

from .corpus import read_corpus
from .encode import ExportConfig, export_embeddings
from .errors import ConfigurationError, ExportError
from .interchange import read_interchange, write_interchange
from .project import ProjectionConfig, export_projection

__version__ = "0.1.0"
