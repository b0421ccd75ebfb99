"""Nonlinear / linear reduction of an exported embedding file to 2 or 5 dims.

UMAP (n_neighbors=15, metric=cosine, fixed seed) is the preferred method and
is used whenever ``umap-learn`` is importable.  Environments without it fall
back to a deterministic metric-aware PCA: rows are L2-normalized first when
the metric is cosine, then projected onto the top principal components with
a fixed sign convention.  The manifest records which method ran, so files
are never ambiguous about their provenance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .encode import _write_manifest
from .errors import ConfigurationError, ExportError
from .interchange import read_interchange, write_interchange

SUPPORTED_METRICS = ("cosine", "euclidean")
SUPPORTED_DIMS = (2, 5)


@dataclass(frozen=True)
class ProjectionConfig:
    source: str  # interchange file with the full-dimensional vectors
    out: str
    n_components: int = 5
    n_neighbors: int = 15
    metric: str = "cosine"
    seed: int = 42

    def __post_init__(self):
        if self.n_components not in SUPPORTED_DIMS:
            raise ConfigurationError(
                f"n_components must be one of {SUPPORTED_DIMS}, got {self.n_components}"
            )
        if self.metric not in SUPPORTED_METRICS:
            raise ConfigurationError(
                f"unknown metric {self.metric!r}; supported: {SUPPORTED_METRICS}"
            )
        if self.n_neighbors < 2:
            raise ConfigurationError("n_neighbors must be >= 2")


def _umap_available() -> bool:
    try:
        import umap  # noqa: F401

        return True
    except ImportError:
        return False


def _project_umap(values: np.ndarray, config: ProjectionConfig) -> np.ndarray:
    import umap

    n_neighbors = min(config.n_neighbors, values.shape[0] - 1)
    reducer = umap.UMAP(
        n_neighbors=n_neighbors,
        n_components=config.n_components,
        metric=config.metric,
        random_state=config.seed,
    )
    return np.asarray(reducer.fit_transform(values), dtype=np.float32)


def _project_pca(values: np.ndarray, config: ProjectionConfig) -> np.ndarray:
    X = values.astype(np.float64)
    if config.metric == "cosine":
        norms = np.linalg.norm(X, axis=1, keepdims=True)
        norms[norms == 0.0] = 1.0
        X = X / norms
    mean = X.mean(axis=0, keepdims=True)
    _, _, vt = np.linalg.svd(X - mean, full_matrices=False)
    k = config.n_components
    if vt.shape[0] < k:
        raise ExportError(
            f"cannot project {values.shape[0]}x{values.shape[1]} data to {k} dims"
        )
    components = vt[:k]
    flip = np.sign(components[np.arange(k), np.argmax(np.abs(components), axis=1)])
    flip[flip == 0] = 1.0
    components = components * flip[:, np.newaxis]
    return ((X - mean) @ components.T).astype(np.float32)


def export_projection(config: ProjectionConfig) -> dict:
    """Reduce the source file and write the projection in the same format."""
    ids, values = read_interchange(config.source)
    if values.shape[0] < 3:
        raise ExportError("projection needs at least 3 vectors")

    if _umap_available():
        method = "umap"
        projected = _project_umap(values, config)
    else:
        method = "pca_fallback"
        projected = _project_pca(values, config)

    write_interchange(config.out, ids, projected)
    manifest = {
        "kind": "projection",
        "method": method,
        "config": {
            "source": str(config.source),
            "n_components": config.n_components,
            "n_neighbors": config.n_neighbors,
            "metric": config.metric,
            "seed": config.seed,
        },
        "n_rows": len(ids),
        "dim": config.n_components,
        "versions": _versions(method),
    }
    _write_manifest(config.out, manifest)
    return manifest


def _versions(method: str) -> dict:
    from . import __version__

    versions = {"embed_exporter": __version__, "numpy": np.__version__}
    if method == "umap":
        import umap

        versions["umap"] = umap.__version__
    return versions
