"""Objective image comparison (MAE / PSNR / max abs) between interpolation methods."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .resample import ImageBuffer, ZoomSpec, zoom

__all__ = ["CompareReport", "compare_images", "box_downscale", "compare_methods"]


@dataclass(frozen=True)
class CompareReport:
    method_a: str
    method_b: str
    mae: float
    psnr: float  # inf when the images are identical
    max_abs: int


def compare_images(a: ImageBuffer, b: ImageBuffer, method_a: str = "a", method_b: str = "b") -> CompareReport:
    if a.samples.shape != b.samples.shape:
        raise ValueError(f"shape mismatch {a.samples.shape} vs {b.samples.shape}")
    diff = a.samples.astype(np.int64) - b.samples.astype(np.int64)
    mse = float(np.mean(diff.astype(float) ** 2))
    peak = float((1 << max(a.bit_depth, b.bit_depth)) - 1)
    psnr = math.inf if mse == 0 else 10.0 * math.log10(peak * peak / mse)
    return CompareReport(method_a, method_b, float(np.mean(np.abs(diff))), psnr, int(np.max(np.abs(diff))))


def box_downscale(img: ImageBuffer, factor: int) -> ImageBuffer:
    """Average non-overlapping factor x factor blocks (trailing partial blocks dropped)."""
    if factor < 1:
        raise ValueError("factor must be >= 1")
    h, w = img.height // factor, img.width // factor
    if h < 1 or w < 1:
        raise ValueError(f"image {img.width}x{img.height} too small for factor {factor}")
    blocks = img.samples[: h * factor, : w * factor].astype(float)
    mean = blocks.reshape(h, factor, w, factor).mean(axis=(1, 3))
    return ImageBuffer(np.floor(mean + 0.5).astype(np.int64), img.bit_depth)


def compare_methods(
    img: ImageBuffer,
    m: int,
    Q: int,
    kernel_a: str,
    kernel_b: str,
    *,
    boundary: str = "clamp",
    reference: bool = False,
) -> list[CompareReport]:
    """Zoom ``img`` by m/Q with two kernels and compare the outputs.

    With ``reference`` the input is first box-downscaled by the integer factor
    m/Q, both kernels upscale it back, and each is also scored against the
    original (cropped to the reconstructed size).
    """
    if not reference:
        za = zoom(img, ZoomSpec(m, Q, kernel_a, boundary))
        zb = zoom(img, ZoomSpec(m, Q, kernel_b, boundary))
        return [compare_images(za, zb, kernel_a, kernel_b)]
    if m % Q:
        raise ValueError("the downscale/upscale protocol needs an integer factor m/Q")
    small = box_downscale(img, m // Q)
    za = zoom(small, ZoomSpec(m, Q, kernel_a, boundary))
    zb = zoom(small, ZoomSpec(m, Q, kernel_b, boundary))
    ref = ImageBuffer(img.samples[: za.height, : za.width], img.bit_depth)
    return [
        compare_images(za, zb, kernel_a, kernel_b),
        compare_images(za, ref, kernel_a, "reference"),
        compare_images(zb, ref, kernel_b, "reference"),
    ]
