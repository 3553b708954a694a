"""Model files.

Binary container (little-endian)::

    4s   magic b"DMDL"
    u16  version (1)
    u16  label byte length, then UTF-8 label (e.g. the detector kind)
    u32  record count
    per record:
      u8   kind: 1 standardizer, 2 pca, 3 lda, 4 svm
      u32  feature dimension d
      u32  component count k (pca only, else 0)
      f64  scalars: pca (retained target, total variance), lda (b, ridge),
           svm (b, C, duality gap); none for the standardizer
      f64  arrays: standardizer mean[d], std[d]; pca mean[d], eigenvalues[k],
           basis[d*k] row-major; lda/svm w[d]

``to_json`` gives an equivalent human-readable dump for debugging.
"""

from __future__ import annotations

import json
import struct
from pathlib import Path

import numpy as np

from .linear import LdaModel, PcaModel, StandardizerModel
from .svm import SvmModel

MAGIC = b"DMDL"
VERSION = 1
KINDS = {StandardizerModel: 1, PcaModel: 2, LdaModel: 3, SvmModel: 4}
NAMES = {1: "standardizer", 2: "pca", 3: "lda", 4: "svm"}


class ModelFileError(ValueError):
    pass


def _f64(*arrays) -> bytes:
    return b"".join(np.asarray(a, dtype="<f8").tobytes() for a in arrays)


def _encode_record(model) -> bytes:
    kind = KINDS.get(type(model))
    if kind is None:
        raise ModelFileError(f"cannot serialize {type(model).__name__}")
    if kind == 1:
        d, k = model.mean.shape[0], 0
        body = _f64(model.mean, model.std)
    elif kind == 2:
        d, k = model.basis.shape
        body = _f64([model.retained_variance_target, model.total_variance], model.mean,
                    model.eigenvalues, model.basis.reshape(-1))
    elif kind == 3:
        d, k = model.w.shape[0], 0
        body = _f64([model.b, model.ridge], model.w)
    else:
        d, k = model.w.shape[0], 0
        body = _f64([model.b, model.C, model.duality_gap], model.w)
    return struct.pack("<BII", kind, d, k) + body


def encode(models, label: str = "") -> bytes:
    raw = label.encode("utf-8")
    parts = [MAGIC, struct.pack("<HH", VERSION, len(raw)), raw, struct.pack("<I", len(models))]
    parts.extend(_encode_record(m) for m in models)
    return b"".join(parts)


def decode(data: bytes):
    """Return ``(label, [models])``."""
    if data[:4] != MAGIC:
        raise ModelFileError("not a model file (bad magic)")
    version, nlabel = struct.unpack_from("<HH", data, 4)
    if version != VERSION:
        raise ModelFileError(f"unsupported model file version {version}")
    pos = 8
    label = data[pos:pos + nlabel].decode("utf-8")
    pos += nlabel
    (count,) = struct.unpack_from("<I", data, pos)
    pos += 4

    def take(n):
        nonlocal pos
        if pos + 8 * n > len(data):
            raise ModelFileError("model file truncated")
        arr = np.frombuffer(data, dtype="<f8", count=n, offset=pos).astype(np.float64)
        pos += 8 * n
        return arr

    models = []
    for _ in range(count):
        kind, d, k = struct.unpack_from("<BII", data, pos)
        pos += 9
        if kind == 1:
            models.append(StandardizerModel(mean=take(d), std=take(d)))
        elif kind == 2:
            retained, total = take(2)
            mean = take(d)
            eig = take(k)
            basis = take(d * k).reshape(d, k)
            models.append(PcaModel(mean=mean, basis=basis, eigenvalues=eig,
                                   retained_variance_target=float(retained), total_variance=float(total)))
        elif kind == 3:
            b, ridge = take(2)
            models.append(LdaModel(w=take(d), b=float(b), ridge=float(ridge)))
        elif kind == 4:
            b, C, gap = take(3)
            models.append(SvmModel(w=take(d), b=float(b), C=float(C), duality_gap=float(gap)))
        else:
            raise ModelFileError(f"unknown model kind {kind}")
    if pos != len(data):
        raise ModelFileError(f"{len(data) - pos} trailing bytes in model file")
    return label, models


def to_json(models, label: str = "") -> str:
    out = []
    for m in models:
        entry = {"kind": NAMES[KINDS[type(m)]]}
        for key, value in vars(m).items():
            entry[key] = value.tolist() if isinstance(value, np.ndarray) else value
        out.append(entry)
    return json.dumps({"label": label, "models": out}, indent=2, sort_keys=True)


def save_models(path, models, label: str = ""):
    Path(path).write_bytes(encode(models, label))


def load_models(path):
    return decode(Path(path).read_bytes())
