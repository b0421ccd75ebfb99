"""Per-document cluster labels; -1 is reserved for noise."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import ValidationError


@dataclass(frozen=True)
class ClusterAssignment:
    """Integer labels, one per row; non-noise labels cover 0..k-1 exactly."""

    labels: np.ndarray
    allows_noise: bool = False
    k: int = field(init=False)

    def __post_init__(self):
        labels = np.asarray(self.labels, dtype=np.int64)
        object.__setattr__(self, "labels", labels)
        if labels.ndim != 1:
            raise ValidationError("labels must be one-dimensional")
        non_noise = labels[labels >= 0]
        if (labels < -1).any():
            raise ValidationError("labels below -1 are not allowed")
        if (labels == -1).any() and not self.allows_noise:
            raise ValidationError("noise label -1 from an algorithm that forbids noise")
        k = int(non_noise.max()) + 1 if non_noise.size else 0
        present = np.unique(non_noise)
        if present.size != k:
            raise ValidationError("non-noise labels must form a contiguous 0..k-1 range")
        object.__setattr__(self, "k", k)

    @property
    def n_rows(self) -> int:
        return self.labels.shape[0]

    @property
    def n_noise(self) -> int:
        return int((self.labels == -1).sum())


def renumber_by_first_member(labels: np.ndarray) -> np.ndarray:
    """Relabel non-noise clusters so cluster 0 is the one whose first member
    has the smallest row index, and so on; noise stays -1.  Pins a canonical
    numbering so identical partitions compare equal."""
    labels = np.asarray(labels, dtype=np.int64)
    out = np.full_like(labels, -1)
    mapping: dict[int, int] = {}
    for idx, lab in enumerate(labels):
        if lab < 0:
            continue
        if lab not in mapping:
            mapping[int(lab)] = len(mapping)
        out[idx] = mapping[int(lab)]
    return out
