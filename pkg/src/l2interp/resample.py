"""Separable zoom, exact orthogonal transforms, and rational rotation of grayscale images.

Zoom by a rational magnification m/Q maps output pixel u to the source
coordinate u*Q/m. All tap offsets are kept as integer numerators over a common
denominator, so the look-up-table path indexes its table exactly and agrees
with direct kernel evaluation to the last bit of every weight.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .ilut import Ilut, cached_ilut, lookup
from .kernels import Kernel, parse_kernel

__all__ = [
    "Boundary",
    "ImageBuffer",
    "ZoomSpec",
    "RationalRotation",
    "Orientation",
    "quantize",
    "convolve_sample",
    "zoom_float",
    "zoom",
    "orthogonal_transform",
    "approximate_rotation",
    "rotate_float",
    "rotate",
]


class Boundary(str, Enum):
    CLAMP = "clamp"
    MIRROR = "mirror"


class Orientation(str, Enum):
    ROT90 = "rot90"
    ROT180 = "rot180"
    ROT270 = "rot270"
    FLIP_H = "fliph"
    FLIP_V = "flipv"


@dataclass(frozen=True, eq=False)
class ImageBuffer:
    """Row-major grayscale samples of shape (height, width), 8 or 16 bit."""

    samples: np.ndarray
    bit_depth: int = 8

    def __post_init__(self):
        if self.bit_depth not in (8, 16):
            raise ValueError(f"bit depth must be 8 or 16, got {self.bit_depth}")
        s = np.asarray(self.samples)
        if s.ndim != 2 or s.size == 0:
            raise ValueError(f"samples must be a non-empty 2-D grid, got shape {s.shape}")
        if not np.issubdtype(s.dtype, np.integer):
            raise TypeError("samples must be integers")
        if s.min() < 0 or s.max() > self.max_value:
            raise ValueError(f"samples outside [0, {self.max_value}]")
        dtype = np.uint8 if self.bit_depth == 8 else np.uint16
        object.__setattr__(self, "samples", np.ascontiguousarray(s, dtype=dtype))

    @property
    def width(self) -> int:
        return self.samples.shape[1]

    @property
    def height(self) -> int:
        return self.samples.shape[0]

    @property
    def max_value(self) -> int:
        return (1 << self.bit_depth) - 1

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ImageBuffer)
            and self.bit_depth == other.bit_depth
            and np.array_equal(self.samples, other.samples)
        )


@dataclass(frozen=True)
class ZoomSpec:
    m: int
    Q: int = 100
    kernel: str = "l2opt:L=2"
    boundary: Boundary = Boundary.CLAMP
    use_ilut: bool = True

    def __post_init__(self):
        if self.m < 1 or self.Q < 1:
            raise ValueError(f"zoom needs m >= 1 and Q >= 1, got m={self.m}, Q={self.Q}")
        object.__setattr__(self, "boundary", Boundary(self.boundary))

    @property
    def factor(self) -> float:
        return self.m / self.Q


def quantize(values: np.ndarray, bit_depth: int) -> ImageBuffer:
    """Round half away from zero and clamp into the bit-depth range."""
    v = np.asarray(values, dtype=float)
    rounded = np.sign(v) * np.floor(np.abs(v) + 0.5)
    top = (1 << bit_depth) - 1
    return ImageBuffer(np.clip(rounded, 0, top).astype(np.int64), bit_depth)


def _resolve(idx: np.ndarray, n: int, boundary: Boundary) -> np.ndarray:
    if boundary is Boundary.CLAMP or n == 1:
        return np.clip(idx, 0, n - 1)
    period = 2 * n - 2
    r = np.mod(idx, period)
    return np.where(r < n, r, period - r)


def _as_float(img) -> tuple[np.ndarray, int | None]:
    if isinstance(img, ImageBuffer):
        return img.samples.astype(float), img.bit_depth
    return np.asarray(img, dtype=float), None


def _accumulate(vals: np.ndarray, w: np.ndarray, anchor: np.ndarray | None) -> np.ndarray:
    # With weights summing to one, accumulating offsets from an in-window
    # anchor sample keeps flat regions exact in floating point.
    if anchor is None:
        return (vals * w).sum(axis=-1)
    return anchor + ((vals - anchor[..., None]) * w).sum(axis=-1)


def convolve_sample(row, r: int, ilut: Ilut, boundary: Boundary | str = Boundary.CLAMP) -> float:
    """Interpolate ``row`` at source position r/Q using table weights."""
    boundary = Boundary(boundary)
    src = np.asarray(row, dtype=float)
    if src.ndim != 1 or src.size == 0:
        raise ValueError("row must be a non-empty 1-D sequence")
    Q, L = ilut.Q, ilut.L
    base = r // Q
    k = base + np.arange(-L + 1, L + 1)
    w = np.asarray(lookup(ilut, r - k * Q))
    vals = src[_resolve(k, src.size, boundary)]
    anchor = vals[L - 1] if ilut.partition_of_unity else None
    return float(_accumulate(vals, w, None if anchor is None else np.asarray(anchor)))


@dataclass(frozen=True)
class _Taps:
    index: np.ndarray  # (n_out, 2L) resolved source indices
    weight: np.ndarray  # (n_out, 2L)
    anchor: np.ndarray | None  # (n_out,) resolved index of the floor tap


def _axis_taps(n_in, n_out, num, den, kernel: Kernel, boundary, use_ilut) -> _Taps:
    """Taps for output u at source position u*num/den."""
    L = kernel.support
    u = np.arange(n_out, dtype=np.int64)
    base = (u * num) // den
    k = base[:, None] + np.arange(-L + 1, L + 1, dtype=np.int64)[None, :]
    offset = u[:, None] * num - k * den  # source offset numerator over den
    if use_ilut:
        # den is the table denominator; raw tables keep every weight
        # bit-identical to direct evaluation.
        table = cached_ilut(kernel, den, renormalize=False)
        weight = np.asarray(lookup(table, offset))
    else:
        weight = np.asarray(kernel(offset / den))
    idx = _resolve(k, n_in, boundary)
    anchor = idx[:, L - 1] if kernel.interpolating else None
    return _Taps(idx, weight, anchor)


def _apply_axis(arr: np.ndarray, axis: int, taps: _Taps) -> np.ndarray:
    # One whole-row gather per tap; avoids materializing all 2L taps at once.
    lines = np.ascontiguousarray(np.moveaxis(arr, axis, 0))
    if taps.anchor is None:
        out = np.zeros((taps.index.shape[0],) + lines.shape[1:])
        for j in range(taps.index.shape[1]):
            out += lines[taps.index[:, j]] * taps.weight[:, j, None]
    else:
        anchor = lines[taps.anchor]
        out = anchor.copy()
        for j in range(taps.index.shape[1]):
            out += (lines[taps.index[:, j]] - anchor) * taps.weight[:, j, None]
    return np.moveaxis(out, 0, axis)


def zoom_table_denominator(spec: ZoomSpec) -> int:
    """Denominator of the table serving this zoom: lcm of Q and the phase grid."""
    den = spec.m // math.gcd(spec.m, spec.Q)
    return spec.Q * den // math.gcd(spec.Q, den)


def zoom_float(img, spec: ZoomSpec, *, use_ilut: bool | None = None, order: str = "rows") -> np.ndarray:
    """Separable zoom without quantization; ``order`` is "rows" or "columns" first."""
    src, _ = _as_float(img)
    kernel = parse_kernel(spec.kernel)
    use_ilut = spec.use_ilut if use_ilut is None else use_ilut
    h, w = src.shape
    out_h = -(-h * spec.m // spec.Q)
    out_w = -(-w * spec.m // spec.Q)
    if out_h < 1 or out_w < 1:
        raise ValueError("zoom would produce an empty image")

    # Positions u*Q/m; with use_ilut the taps read a table at denominator
    # lcm(Q, m/gcd) rescaled to the reduced phase grid below.
    g = math.gcd(spec.m, spec.Q)
    num, den = spec.Q // g, spec.m // g
    D = zoom_table_denominator(spec)
    scale = D // den

    def taps(n_in, n_out):
        if not use_ilut:
            return _axis_taps(n_in, n_out, num, den, kernel, spec.boundary, False)
        return _axis_taps(n_in, n_out, num * scale, den * scale, kernel, spec.boundary, True)

    passes = [(1, taps(w, out_w)), (0, taps(h, out_h))]
    if order == "columns":
        passes.reverse()
    elif order != "rows":
        raise ValueError(f"order must be 'rows' or 'columns', got {order!r}")
    out = src
    for axis, t in passes:
        out = _apply_axis(out, axis, t)
    return out


def zoom(img: ImageBuffer, spec: ZoomSpec) -> ImageBuffer:
    return quantize(zoom_float(img, spec), img.bit_depth)


def orthogonal_transform(img: ImageBuffer, op: Orientation | str) -> ImageBuffer:
    """Lossless 90-degree rotations (counterclockwise as displayed) and flips."""
    op = Orientation(op)
    s = img.samples
    out = {
        Orientation.ROT90: lambda: np.rot90(s, 1),
        Orientation.ROT180: lambda: np.rot90(s, 2),
        Orientation.ROT270: lambda: np.rot90(s, 3),
        Orientation.FLIP_H: lambda: s[:, ::-1],
        Orientation.FLIP_V: lambda: s[::-1, :],
    }[op]()
    return ImageBuffer(out.copy(), img.bit_depth)


# --- rational rotation -------------------------------------------------------


def _round_half_away(v: float) -> int:
    return int(math.copysign(math.floor(abs(v) + 0.5), v))


@dataclass(frozen=True)
class RationalRotation:
    """Rotation matrix [[n, m], [-m, n]] / Q approximating an angle."""

    n: int
    m: int
    Q: int
    requested_angle: float
    angle_deviation: float
    implied_scale: float

    @classmethod
    def from_pair(cls, n: int, m: int, Q: int, requested_angle: float | None = None):
        actual = math.degrees(math.atan2(m, n))
        requested = actual if requested_angle is None else requested_angle
        dev = (requested - actual + 180.0) % 360.0 - 180.0
        return cls(n, m, Q, requested, dev, math.hypot(n, m) / Q)

    @property
    def actual_angle(self) -> float:
        return math.degrees(math.atan2(self.m, self.n))


def approximate_rotation(angle_deg: float, Q: int = 100) -> RationalRotation:
    """Nearest Q-rational cosine/sine pair n/Q, m/Q for ``angle_deg``."""
    if Q < 1:
        raise ValueError("Q must be >= 1")
    a = math.radians(angle_deg)
    n = _round_half_away(Q * math.cos(a))
    m = _round_half_away(Q * math.sin(a))
    return RationalRotation.from_pair(n, m, Q, angle_deg)


def rotate_float(
    img,
    rot: RationalRotation,
    kernel: Kernel | str = "l2opt:L=2",
    boundary: Boundary | str = Boundary.CLAMP,
    *,
    use_ilut: bool = True,
    chunk_rows: int = 64,
) -> np.ndarray:
    """Rotate about the image center on a same-size canvas, without quantization.

    Output pixel (x, y) samples the source at c + M_Q (p - c), computed as
    integer numerators over 2Q (the center may be a half-integer).
    """
    if rot.n == 0 and rot.m == 0:
        raise ValueError("degenerate rotation: n = m = 0")
    boundary = Boundary(boundary)
    kernel = parse_kernel(kernel)
    src, _ = _as_float(img)
    H, W = src.shape
    L = kernel.support
    n, m, Q = rot.n, rot.m, rot.Q
    D = 2 * Q
    table = cached_ilut(kernel, D, renormalize=False) if use_ilut else None
    taps = np.arange(-L + 1, L + 1, dtype=np.int64)
    X = 2 * np.arange(W, dtype=np.int64) - (W - 1)

    def weights(offset):
        if table is not None:
            return np.asarray(lookup(table, offset))
        return np.asarray(kernel(offset / D))

    out = np.empty((H, W))
    for y0 in range(0, H, chunk_rows):
        Y = 2 * np.arange(y0, min(H, y0 + chunk_rows), dtype=np.int64)[:, None] - (H - 1)
        px = (W - 1) * Q + n * X[None, :] - m * Y
        py = (H - 1) * Q + m * X[None, :] + n * Y
        bx, by = px // D, py // D
        kx = bx[..., None] + taps
        ky = by[..., None] + taps
        wx = weights(px[..., None] - kx * D)
        wy = weights(py[..., None] - ky * D)
        ix = _resolve(kx, W, boundary)
        iy = _resolve(ky, H, boundary)
        vals = src[iy[..., :, None], ix[..., None, :]]
        w2 = wy[..., :, None] * wx[..., None, :]
        flat_vals = vals.reshape(vals.shape[:2] + (-1,))
        flat_w = w2.reshape(w2.shape[:2] + (-1,))
        anchor = src[iy[..., L - 1], ix[..., L - 1]] if kernel.interpolating else None
        out[y0:y0 + Y.shape[0]] = _accumulate(flat_vals, flat_w, anchor)
    return out


def rotate(
    img: ImageBuffer,
    rot: RationalRotation,
    kernel: Kernel | str = "l2opt:L=2",
    boundary: Boundary | str = Boundary.CLAMP,
    *,
    use_ilut: bool = True,
) -> ImageBuffer:
    return quantize(rotate_float(img, rot, kernel, boundary, use_ilut=use_ilut), img.bit_depth)
