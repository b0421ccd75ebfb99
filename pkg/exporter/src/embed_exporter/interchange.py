"""Binary interchange format shared with the clustering toolkit.

Layout: magic "EMB1", little-endian u32 n_rows and u32 dim, n_rows id
records (u16 byte length + UTF-8 id), then n_rows * dim little-endian
float32, row-major.  Writes are atomic: temp file in the target directory,
then rename.
"""

from __future__ import annotations

import os
import struct
import tempfile
from pathlib import Path

import numpy as np

from .errors import ExportError

MAGIC = b"EMB1"


def write_interchange(path, ids, values) -> None:
    values = np.asarray(values, dtype=np.float32)
    ids = [str(i) for i in ids]
    if values.ndim != 2:
        raise ExportError("vectors must form a 2-d array")
    if len(ids) != values.shape[0]:
        raise ExportError(f"{len(ids)} ids for {values.shape[0]} vectors")
    if len(ids) == 0:
        raise ExportError("refusing to write an empty embedding file")
    if not np.isfinite(values).all():
        raise ExportError("vectors contain non-finite values")

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(MAGIC)
            fh.write(struct.pack("<II", values.shape[0], values.shape[1]))
            for doc_id in ids:
                raw = doc_id.encode("utf-8")
                if len(raw) > 0xFFFF:
                    raise ExportError(f"id too long: {doc_id[:32]!r}...")
                fh.write(struct.pack("<H", len(raw)))
                fh.write(raw)
            fh.write(values.astype("<f4").tobytes(order="C"))
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise


def read_interchange(path) -> tuple[list[str], np.ndarray]:
    """Read an interchange file back: (ids, float32 matrix)."""
    data = Path(path).read_bytes()
    if len(data) < 12 or data[:4] != MAGIC:
        raise ExportError(f"{path}: not an interchange file")
    n_rows, dim = struct.unpack_from("<II", data, 4)
    offset = 12
    ids = []
    for i in range(n_rows):
        if offset + 2 > len(data):
            raise ExportError(f"{path}: truncated id record {i}")
        (id_len,) = struct.unpack_from("<H", data, offset)
        offset += 2
        ids.append(data[offset : offset + id_len].decode("utf-8"))
        offset += id_len
    expected = n_rows * dim * 4
    if len(data) - offset != expected:
        raise ExportError(f"{path}: truncated vector data")
    values = np.frombuffer(data, dtype="<f4", count=n_rows * dim, offset=offset)
    return ids, values.reshape(n_rows, dim).copy()
