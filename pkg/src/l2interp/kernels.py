"""Interpolation kernels: the kernel contract, classical analytic kernels, blending.

Every kernel is even, finitely supported on [-L, L], and evaluated on |x|.
Kernels are identified by a short textual id (``linear``, ``keys:a=-0.5``,
``cubic6``, ``tsinc:L=3``, ``l2opt:L=2``, ``blend:w=0.5,l2opt:L=3,cubic6``)
which :func:`parse_kernel` turns into a :class:`Kernel`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "Kernel",
    "KernelConditions",
    "KernelParseError",
    "sinc",
    "eval_linear",
    "eval_keys",
    "eval_cubic6",
    "eval_truncated_sinc",
    "eval_blend",
    "linear",
    "keys",
    "cubic6",
    "truncated_sinc",
    "l2optimal",
    "blend",
    "parse_kernel",
    "check_kernel_conditions",
]


class KernelParseError(ValueError):
    """Raised for malformed or out-of-range kernel ids."""


def _sinpi(x: np.ndarray) -> np.ndarray:
    # Reduce around the nearest integer so sin(pi*n) is exactly 0.
    n = np.round(x)
    r = x - n
    sign = np.where(np.fmod(n, 2.0) == 0.0, 1.0, -1.0)
    return sign * np.sin(np.pi * r)


def sinc(x):
    """Normalized sinc, sin(pi x) / (pi x), with sinc(0) = 1.

    Exactly zero at nonzero integers, unlike ``np.sinc`` which leaves
    residues of order 1e-17 there.
    """
    xa = np.asarray(x, dtype=float)
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(xa == 0.0, 1.0, _sinpi(xa) / (np.pi * xa))
    return out if out.ndim else float(out)


def _on_abs(x, support: float, body: Callable[[np.ndarray], np.ndarray]):
    a = np.abs(np.asarray(x, dtype=float))
    inside = a <= support
    out = np.zeros_like(a)
    if np.any(inside):
        out[inside] = body(a[inside])
    return out if out.ndim else float(out)


def eval_linear(x):
    return _on_abs(x, 1.0, lambda a: 1.0 - a)


def eval_keys(a: float, x):
    """Keys cubic convolution kernel with free parameter ``a`` (L = 2)."""

    def body(t):
        near = ((a + 2.0) * t - (a + 3.0)) * t * t + 1.0
        far = ((a * t - 5.0 * a) * t + 8.0 * a) * t - 4.0 * a
        return np.where(t <= 1.0, near, far)

    return _on_abs(x, 2.0, body)


def eval_cubic6(x):
    """Three-segment piecewise cubic on L = 3 (overall factor 1/5)."""

    def body(t):
        s0 = (6.0 * t - 11.0) * t * t + 5.0
        s1 = ((-3.0 * t + 16.0) * t - 27.0) * t + 14.0
        s2 = ((t - 8.0) * t + 21.0) * t - 18.0
        return np.select([t <= 1.0, t <= 2.0], [s0, s1], s2) / 5.0

    return _on_abs(x, 3.0, body)


def eval_truncated_sinc(L: int, x):
    return _on_abs(x, float(L), sinc)


@dataclass(frozen=True)
class Kernel:
    """A symmetric kernel with finite support ``support`` (the L of the kernel).

    ``func`` receives non-negative offsets inside the support only.
    ``interpolating`` marks kernels that satisfy both the cardinal condition
    and the partition of unity; truncated sinc does not.
    """

    name: str
    support: int
    func: Callable[[np.ndarray], np.ndarray]
    interpolating: bool = True

    def __call__(self, x):
        return _on_abs(x, float(self.support), self.func)

    eval = __call__

    @property
    def kernel_id(self) -> str:
        return self.name


def eval_blend(w: float, k1: Kernel, k2: Kernel, x):
    if not 0.0 < w < 1.0:
        raise ValueError(f"blend weight must lie in (0, 1), got {w}")
    return w * np.asarray(k1(x)) + (1.0 - w) * np.asarray(k2(x))


def _fmt(v: float) -> str:
    return repr(float(v)) if not float(v).is_integer() else f"{float(v):.1f}"


def linear() -> Kernel:
    return Kernel("linear", 1, lambda a: 1.0 - a)


def keys(a: float = -0.5) -> Kernel:
    return Kernel(f"keys:a={_fmt(a)}", 2, lambda t: eval_keys(a, t))


def cubic6() -> Kernel:
    return Kernel("cubic6", 3, eval_cubic6)


def truncated_sinc(L: int) -> Kernel:
    if L < 1:
        raise ValueError("support must be >= 1")
    return Kernel(f"tsinc:L={L}", L, sinc, interpolating=False)


def l2optimal(L: int) -> Kernel:
    from .l2opt import eval_HL

    if L < 1:
        raise ValueError("support must be >= 1")
    return Kernel(f"l2opt:L={L}", L, lambda t: eval_HL(L, t))


def blend(w: float, k1: Kernel, k2: Kernel) -> Kernel:
    if not 0.0 < w < 1.0:
        raise ValueError(f"blend weight must lie in (0, 1), got {w}")
    return Kernel(
        f"blend:w={_fmt(w)},{k1.name},{k2.name}",
        max(k1.support, k2.support),
        lambda t: eval_blend(w, k1, k2, t),
        interpolating=k1.interpolating and k2.interpolating,
    )


# --- kernel id parsing -------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def fail(self, msg: str):
        raise KernelParseError(f"{msg} in kernel id {self.text!r} at offset {self.pos}")

    def word(self) -> str:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalnum():
            self.pos += 1
        return self.text[start:self.pos]

    def expect(self, s: str):
        if not self.text.startswith(s, self.pos):
            self.fail(f"expected {s!r}")
        self.pos += len(s)

    def value(self) -> str:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] != ",":
            self.pos += 1
        return self.text[start:self.pos]

    def param(self, key: str, conv):
        self.expect(key + "=")
        raw = self.value()
        try:
            return conv(raw)
        except ValueError:
            self.fail(f"bad value {raw!r} for {key}")

    def kernel(self) -> Kernel:
        name = self.word().lower()
        if name == "linear":
            return linear()
        if name == "cubic6":
            return cubic6()
        if name == "keys":
            if self.text.startswith(":", self.pos):
                self.pos += 1
                a = self.param("a", float)
                if not math.isfinite(a):
                    self.fail("keys parameter must be finite")
                return keys(a)
            return keys()
        if name in ("tsinc", "l2opt"):
            self.expect(":")
            L = self.param("L", int)
            if L < 1:
                self.fail("support L must be >= 1")
            return truncated_sinc(L) if name == "tsinc" else l2optimal(L)
        if name == "blend":
            self.expect(":")
            w = self.param("w", float)
            if not 0.0 < w < 1.0:
                self.fail(f"blend weight {w} outside (0, 1)")
            self.expect(",")
            k1 = self.kernel()
            self.expect(",")
            k2 = self.kernel()
            return blend(w, k1, k2)
        self.fail(f"unknown kernel {name!r}")


def parse_kernel(text: str | Kernel) -> Kernel:
    """Build a kernel from its textual id; a :class:`Kernel` passes through."""
    if isinstance(text, Kernel):
        return text
    p = _Parser(text.strip())
    k = p.kernel()
    if p.pos != len(p.text):
        p.fail("trailing characters")
    return k


# --- conformance -------------------------------------------------------------


@dataclass(frozen=True)
class KernelConditions:
    cardinal_deviation: float
    partition_deviation: float


def check_kernel_conditions(k: Kernel, grid_step: float = 1e-3) -> KernelConditions:
    """Max deviations from h(n) = delta_n and from sum_k h(x + k) = 1 on [0, 1]."""
    if grid_step <= 0:
        raise ValueError("grid_step must be positive")
    L = k.support
    n = np.arange(-L, L + 1, dtype=float)
    card = float(np.max(np.abs(np.asarray(k(n)) - (n == 0))))
    xs = np.linspace(0.0, 1.0, int(round(1.0 / grid_step)) + 1)
    shifts = np.arange(-L - 1, L + 2, dtype=float)
    sums = np.asarray(k(xs[:, None] + shifts[None, :])).sum(axis=1)
    return KernelConditions(card, float(np.max(np.abs(sums - 1.0))))
