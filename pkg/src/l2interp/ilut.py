"""Interpolation look-up tables (ILUTs).

An ILUT samples a kernel at the Q-rational offsets r/Q, r = 0 .. Q*L, so that
any resampling whose phases are multiples of 1/Q reads weights from the table
instead of evaluating the kernel. Only the non-negative half is stored.
"""

from __future__ import annotations

import csv
import io
import struct
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

from .kernels import Kernel, parse_kernel

__all__ = [
    "Ilut",
    "build_ilut",
    "cached_ilut",
    "lookup",
    "phase_sums",
    "verify_theorem2",
    "FIXED_POINT_BITS",
]

MAGIC = b"ILUT"
FIXED_POINT_BITS = 16
RENORMALIZE_GUARD = 1e-9


@dataclass(frozen=True, eq=False)
class Ilut:
    Q: int
    L: int
    weights: np.ndarray = field(repr=False)
    source: str = ""

    def __post_init__(self):
        if len(self.weights) != self.Q * self.L + 1:
            raise ValueError(
                f"table needs Q*L+1 = {self.Q * self.L + 1} weights, got {len(self.weights)}"
            )
        self.weights.setflags(write=False)

    @cached_property
    def partition_of_unity(self) -> bool:
        """Whether every phase orbit of the table sums to one (within 1e-9)."""
        return bool(np.all(np.abs(phase_sums(self.weights, self.Q, self.L) - 1.0) <= RENORMALIZE_GUARD))

    def __len__(self) -> int:
        return len(self.weights)

    def __call__(self, r):
        return lookup(self, r)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["r", "x", "weight"])
        for r, v in enumerate(self.weights):
            w.writerow([r, f"{r / self.Q:.9g}", f"{v:.9g}"])
        return buf.getvalue()

    def to_bytes(self) -> bytes:
        """``ILUT`` magic, Q and L as little-endian u32, then weights as little-endian f64."""
        return MAGIC + struct.pack("<II", self.Q, self.L) + self.weights.astype("<f8").tobytes()

    @classmethod
    def from_bytes(cls, blob: bytes, source: str = "") -> "Ilut":
        if blob[:4] != MAGIC:
            raise ValueError("not an ILUT blob (bad magic)")
        Q, L = struct.unpack_from("<II", blob, 4)
        n = Q * L + 1
        payload = blob[12:]
        if len(payload) != 8 * n:
            raise ValueError(f"ILUT blob payload is {len(payload)} bytes, expected {8 * n}")
        return cls(Q, L, np.frombuffer(payload, dtype="<f8").astype(float), source)

    def fixed_point(self, bits: int = FIXED_POINT_BITS) -> np.ndarray:
        """Weights scaled by 2**bits and rounded to integers (benchmark path only)."""
        return np.round(self.weights * (1 << bits)).astype(np.int64)


def phase_sums(weights: np.ndarray, Q: int, L: int) -> np.ndarray:
    """sum_k h(r/Q + k) for every phase r = 0 .. Q, read from a one-sided table."""
    r = np.arange(Q + 1)[:, None]
    idx = np.abs(r + Q * np.arange(-L - 1, L + 1)[None, :])
    vals = np.where(idx <= Q * L, weights[np.minimum(idx, Q * L)], 0.0)
    return vals.sum(axis=1)


def _renormalize(w: np.ndarray, Q: int, L: int) -> np.ndarray:
    # Index i appears in the orbit of phase min(i mod Q, Q - i mod Q); multiples
    # of Q and, for even Q, the half phase are hit twice by the +/- shifts.
    sums = phase_sums(w, Q, L)
    rho = np.arange(len(w)) % Q
    cls = np.minimum(rho, Q - rho)
    scale = np.ones(len(w))
    moved = cls > 0
    scale[moved] = 1.0 / sums[cls[moved]]
    return w * scale


def build_ilut(k: Kernel | str, Q: int = 100, renormalize: bool = True) -> Ilut:
    """Tabulate ``k`` at r/Q for r = 0 .. Q*L.

    With ``renormalize`` each phase orbit of an interpolating kernel is rescaled
    to sum to exactly one; the raw residual must already be below 1e-9.
    """
    k = parse_kernel(k)
    if Q < 1:
        raise ValueError(f"Q must be a positive integer, got {Q}")
    L = k.support
    w = np.asarray(k(np.arange(Q * L + 1) / Q), dtype=float)
    if renormalize and k.interpolating:
        residual = float(np.max(np.abs(phase_sums(w, Q, L) - 1.0)))
        if residual > RENORMALIZE_GUARD:
            raise ValueError(
                f"kernel {k.name} misses the partition of unity by {residual:.3g} at Q={Q}"
            )
        w = _renormalize(w, Q, L)
    return Ilut(Q, L, w, k.name)


@lru_cache(maxsize=64)
def _cached(kernel_id: str, Q: int, renormalize: bool) -> Ilut:
    return build_ilut(kernel_id, Q, renormalize)


def cached_ilut(k: Kernel | str, Q: int, renormalize: bool = True) -> Ilut:
    return _cached(parse_kernel(k).name, Q, renormalize)


def lookup(t: Ilut, r):
    """Table weight at integer offset ``r`` (in units of 1/Q); zero outside support."""
    ra = np.abs(np.asarray(r, dtype=np.int64))
    top = t.Q * t.L
    out = np.where(ra <= top, t.weights[np.minimum(ra, top)], 0.0)
    return out if out.ndim else float(out)


def verify_theorem2(k: Kernel | str, Q: int, m: int, test_image, boundary: str = "clamp") -> float:
    """Max |ILUT zoom - continuous zoom| over all pixels, before quantization."""
    from .resample import ZoomSpec, zoom_float

    spec = ZoomSpec(m=m, Q=Q, kernel=parse_kernel(k).name, boundary=boundary)
    direct = zoom_float(test_image, spec, use_ilut=False)
    tabled = zoom_float(test_image, spec, use_ilut=True)
    return float(np.max(np.abs(direct - tabled)))
