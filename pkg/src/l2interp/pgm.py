"""Netpbm PGM reader/writer (P2 ASCII and P5 binary, 8 or 16 bit)."""

from __future__ import annotations

import os
import re

import numpy as np

from .resample import ImageBuffer

__all__ = ["PgmError", "read_image", "write_image", "parse_pgm", "encode_pgm"]

_TOKEN = re.compile(rb"#[^\n]*|\S+")


class PgmError(ValueError):
    """Malformed, truncated, or unsupported netpbm data."""


def _header(data: bytes):
    tokens, pos = [], 0
    while len(tokens) < 4:
        m = _TOKEN.search(data, pos)
        if m is None:
            raise PgmError("truncated header")
        pos = m.end()
        if not m.group().startswith(b"#"):
            tokens.append(m.group())
    return tokens, pos


def parse_pgm(data: bytes) -> ImageBuffer:
    magic = data[:2]
    if magic not in (b"P2", b"P5"):
        raise PgmError(f"unsupported format {magic!r}; only grayscale P2/P5 is handled")
    tokens, pos = _header(data)
    try:
        width, height, maxval = (int(t) for t in tokens[1:4])
    except ValueError as exc:
        raise PgmError(f"malformed header: {exc}") from None
    if width < 1 or height < 1 or not 1 <= maxval <= 65535:
        raise PgmError(f"bad header values {width}x{height} maxval {maxval}")
    depth = 8 if maxval <= 255 else 16
    count = width * height

    if magic == b"P2":
        body = [t for t in _TOKEN.findall(data[pos:]) if not t.startswith(b"#")]
        if len(body) < count:
            raise PgmError(f"truncated payload: {len(body)} of {count} samples")
        try:
            samples = np.array([int(t) for t in body[:count]], dtype=np.int64)
        except ValueError as exc:
            raise PgmError(f"malformed sample: {exc}") from None
    else:
        # Exactly one whitespace byte separates maxval from the raster.
        start = pos + 1
        itemsize = 1 if maxval <= 255 else 2
        raw = data[start:start + count * itemsize]
        if len(raw) < count * itemsize:
            raise PgmError(f"truncated payload: {len(raw)} of {count * itemsize} bytes")
        samples = np.frombuffer(raw, dtype=">u2" if itemsize == 2 else np.uint8).astype(np.int64)

    if samples.max(initial=0) > maxval:
        raise PgmError("sample exceeds maxval")
    return ImageBuffer(samples.reshape(height, width), depth)


def encode_pgm(img: ImageBuffer) -> bytes:
    maxval = img.max_value
    header = f"P5\n{img.width} {img.height}\n{maxval}\n".encode("ascii")
    dtype = np.uint8 if img.bit_depth == 8 else ">u2"
    return header + img.samples.astype(dtype).tobytes()


def read_image(path: str | os.PathLike) -> ImageBuffer:
    with open(path, "rb") as fh:
        return parse_pgm(fh.read())


def write_image(img: ImageBuffer, path: str | os.PathLike) -> None:
    with open(path, "wb") as fh:
        fh.write(encode_pgm(img))
