"""Per-frame feature tables on disk.

CSV layout: header ``frame_id,<col>,<col>...`` then one row per frame,
values written with ``repr`` so they round-trip exactly.

Binary layout (all integers little-endian)::

    4s   magic b"DMFT"
    u16  version (1)
    32s  SHA-256 of the newline-joined column names
    u32  column count, then per column: u16 byte length + UTF-8 name
    u64  row count, then per row: u16 byte length + UTF-8 frame id
    f64  row-major values, rows x columns
"""

from __future__ import annotations

import csv
import io
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .registry import names_hash

MAGIC = b"DMFT"
VERSION = 1


class FeatureFileError(ValueError):
    pass


@dataclass
class FeatureTable:
    columns: tuple
    frame_ids: list
    values: np.ndarray

    def __post_init__(self):
        self.columns = tuple(self.columns)
        self.frame_ids = list(self.frame_ids)
        self.values = np.asarray(self.values, dtype=np.float64).reshape(len(self.frame_ids), len(self.columns))

    def rows_for(self, frame_ids) -> np.ndarray:
        index = {fid: i for i, fid in enumerate(self.frame_ids)}
        try:
            return self.values[[index[f] for f in frame_ids]]
        except KeyError as exc:
            raise FeatureFileError(f"frame {exc.args[0]!r} missing from feature table") from None


def write_csv(path, table: FeatureTable):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("frame_id",) + table.columns)
    for fid, row in zip(table.frame_ids, table.values):
        writer.writerow([fid] + [repr(float(v)) for v in row])
    Path(path).write_text(buf.getvalue())


def read_csv(path) -> FeatureTable:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0][0] != "frame_id":
        raise FeatureFileError(f"{path}: missing frame_id header")
    header = rows[0][1:]
    values = [[float(v) for v in r[1:]] for r in rows[1:]]
    return FeatureTable(header, [r[0] for r in rows[1:]], np.array(values).reshape(len(values), len(header)))


def _pack_str(s: str) -> bytes:
    raw = s.encode("utf-8")
    return struct.pack("<H", len(raw)) + raw


def encode_binary(table: FeatureTable) -> bytes:
    parts = [MAGIC, struct.pack("<H", VERSION), names_hash(table.columns)]
    parts.append(struct.pack("<I", len(table.columns)))
    parts.extend(_pack_str(c) for c in table.columns)
    parts.append(struct.pack("<Q", len(table.frame_ids)))
    parts.extend(_pack_str(f) for f in table.frame_ids)
    parts.append(table.values.astype("<f8").tobytes())
    return b"".join(parts)


def decode_binary(data: bytes) -> FeatureTable:
    if data[:4] != MAGIC:
        raise FeatureFileError("not a feature table (bad magic)")
    (version,) = struct.unpack_from("<H", data, 4)
    if version != VERSION:
        raise FeatureFileError(f"unsupported feature table version {version}")
    digest = data[6:38]
    pos = 38

    def read_str():
        nonlocal pos
        (n,) = struct.unpack_from("<H", data, pos)
        s = data[pos + 2:pos + 2 + n].decode("utf-8")
        pos += 2 + n
        return s

    (ncols,) = struct.unpack_from("<I", data, pos)
    pos += 4
    columns = tuple(read_str() for _ in range(ncols))
    if names_hash(columns) != digest:
        raise FeatureFileError("column hash mismatch")
    (nrows,) = struct.unpack_from("<Q", data, pos)
    pos += 8
    frame_ids = [read_str() for _ in range(nrows)]
    size = nrows * ncols * 8
    if len(data) - pos != size:
        raise FeatureFileError(f"expected {size} bytes of values, found {len(data) - pos}")
    values = np.frombuffer(data, dtype="<f8", offset=pos).reshape(nrows, ncols).astype(np.float64)
    return FeatureTable(columns, frame_ids, values)


def write_features(path, table: FeatureTable):
    path = Path(path)
    if path.suffix.lower() == ".csv":
        write_csv(path, table)
    else:
        path.write_bytes(encode_binary(table))


def read_features(path) -> FeatureTable:
    path = Path(path)
    if path.suffix.lower() == ".csv":
        return read_csv(path)
    return decode_binary(path.read_bytes())
