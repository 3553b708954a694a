"""Per-video embedding files.

Binary layout (little-endian)::

    4s   magic b"DMEB"
    u16  version (1)
    u32  embedding dimension d
    u32  frame count n
    f64  n x d values, row-major (one row per frame)

Files ending in ``.csv`` are read as the fallback text format: one frame per
line, comma-separated values, no header.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

MAGIC = b"DMEB"
VERSION = 1
_HEADER = struct.Struct("<4sHII")


class EmbeddingFileError(ValueError):
    pass


def encode(frames: np.ndarray) -> bytes:
    frames = np.atleast_2d(np.asarray(frames, dtype=np.float64))
    n, d = frames.shape
    return _HEADER.pack(MAGIC, VERSION, d, n) + frames.astype("<f8").tobytes()


def decode(data: bytes) -> np.ndarray:
    if len(data) < _HEADER.size:
        raise EmbeddingFileError("embedding file truncated")
    magic, version, d, n = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise EmbeddingFileError("not an embedding file (bad magic)")
    if version != VERSION:
        raise EmbeddingFileError(f"unsupported embedding file version {version}")
    if len(data) - _HEADER.size != 8 * n * d:
        raise EmbeddingFileError(f"expected {n}x{d} values, found {(len(data) - _HEADER.size) // 8}")
    return np.frombuffer(data, dtype="<f8", offset=_HEADER.size).reshape(n, d).astype(np.float64)


def write_embeddings(path, frames):
    path = Path(path)
    if path.suffix.lower() == ".csv":
        frames = np.atleast_2d(np.asarray(frames, dtype=np.float64))
        path.write_text("".join(",".join(repr(float(v)) for v in row) + "\n" for row in frames))
    else:
        path.write_bytes(encode(frames))


def read_embeddings(path) -> np.ndarray:
    path = Path(path)
    if path.suffix.lower() == ".csv":
        rows = [line for line in path.read_text().splitlines() if line.strip()]
        if not rows:
            raise EmbeddingFileError(f"{path}: no frames")
        arr = np.array([[float(v) for v in line.split(",")] for line in rows])
    else:
        arr = decode(path.read_bytes())
    if arr.shape[0] == 0 or not np.all(np.isfinite(arr)):
        raise EmbeddingFileError(f"{path}: empty or non-finite embeddings")
    return arr


def load_store(manifest, videos=None) -> dict:
    """Read the embedding file of every manifest video that declares one."""
    store = {}
    for v in videos if videos is not None else manifest.videos():
        if v.embeddings is not None:
            store[v.id] = read_embeddings(v.embeddings)
    return store
