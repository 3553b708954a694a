"""Binary Netpbm reader/writer: P5 (gray) and P6 (RGB), 8-bit samples."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .raster import RasterImage

_WHITESPACE = b" \t\n\r\x0b\x0c"


class NetpbmError(ValueError):
    pass


def _header_tokens(data: bytes, count: int):
    """Return ``count`` header tokens and the offset of the raster."""
    tokens = []
    pos = 2
    n = len(data)
    while len(tokens) < count:
        while pos < n and (data[pos] in _WHITESPACE or data[pos] == ord("#")):
            if data[pos] == ord("#"):
                while pos < n and data[pos] not in b"\r\n":
                    pos += 1
            else:
                pos += 1
        start = pos
        while pos < n and data[pos] not in _WHITESPACE and data[pos] != ord("#"):
            pos += 1
        if start == pos:
            raise NetpbmError("truncated header")
        tokens.append(data[start:pos])
    # exactly one whitespace byte separates maxval from the raster
    if pos >= n or data[pos] not in _WHITESPACE:
        raise NetpbmError("missing whitespace after maxval")
    return tokens, pos + 1


def decode(data: bytes) -> RasterImage:
    magic = data[:2]
    if magic == b"P5":
        channels = 1
    elif magic == b"P6":
        channels = 3
    else:
        raise NetpbmError(f"unsupported magic {magic!r}; only P5/P6 are read")
    tokens, offset = _header_tokens(data, 3)
    try:
        width, height, maxval = (int(t) for t in tokens)
    except ValueError as exc:
        raise NetpbmError(f"non-numeric header field in {tokens}") from exc
    if width < 1 or height < 1:
        raise NetpbmError(f"invalid dimensions {width}x{height}")
    if not 0 < maxval < 256:
        raise NetpbmError(f"only 8-bit samples are supported, maxval={maxval}")
    size = width * height * channels
    raster = data[offset:offset + size]
    if len(raster) < size:
        raise NetpbmError(f"raster truncated: expected {size} bytes, got {len(raster)}")
    arr = np.frombuffer(raster, dtype=np.uint8).astype(np.float64)
    if maxval != 255:
        arr = arr * (255.0 / maxval)
    shape = (height, width) if channels == 1 else (height, width, 3)
    return RasterImage(arr.reshape(shape))


def encode(img) -> bytes:
    """Quantize to 8 bits (round half to even) and serialize."""
    pixels = img.pixels if isinstance(img, RasterImage) else np.asarray(img, dtype=np.float64)
    if pixels.ndim == 2:
        magic = b"P5"
    elif pixels.ndim == 3 and pixels.shape[2] == 3:
        magic = b"P6"
    else:
        raise NetpbmError(f"cannot encode array of shape {pixels.shape}")
    height, width = pixels.shape[:2]
    samples = np.clip(np.rint(pixels), 0, 255).astype(np.uint8)
    return magic + f"\n{width} {height}\n255\n".encode("ascii") + samples.tobytes()


def read_image(path) -> RasterImage:
    return decode(Path(path).read_bytes())


def write_image(path, img):
    Path(path).write_bytes(encode(img))
