"""Time table-driven vs analytic zoom and the fixed-point weight variant.

Reports the median of repeated runs for the weight computation and for the
whole separable zoom, per kernel.
"""

import argparse
import statistics
import time

import numpy as np

from l2interp.ilut import cached_ilut
from l2interp.kernels import parse_kernel
from l2interp.resample import Boundary, ImageBuffer, ZoomSpec, _axis_taps, zoom_float, zoom_table_denominator


def median_time(fn, runs):
    ts = []
    for _ in range(runs):
        t0 = time.perf_counter()
        fn()
        ts.append(time.perf_counter() - t0)
    return statistics.median(ts)


def fixed_point_zoom_rows(src, spec):
    # Integer weights scaled by 2**16, integer accumulation, one rounding shift.
    kernel = parse_kernel(spec.kernel)
    D = zoom_table_denominator(spec)
    table = cached_ilut(kernel, D, renormalize=False).fixed_point()
    n_out = -(-src.shape[1] * spec.m // spec.Q)
    num = spec.Q * D // spec.m
    taps = _axis_taps(src.shape[1], n_out, num, D, kernel, Boundary.CLAMP, True)
    u = np.arange(n_out)[:, None]
    k = (u * num) // D + np.arange(-kernel.support + 1, kernel.support + 1)[None, :]
    dist = np.abs(u * num - k * D)
    w = np.where(dist < len(table), table[np.minimum(dist, len(table) - 1)], 0)
    acc = (src[:, taps.index].astype(np.int64) * w[None]).sum(axis=-1)
    return (acc + (1 << 15)) >> 16


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--size", type=int, default=512)
    p.add_argument("--m", type=int, default=137)
    p.add_argument("--Q", type=int, default=100)
    p.add_argument("--runs", type=int, default=7)
    args = p.parse_args()

    rng = np.random.default_rng(0)
    img = ImageBuffer(rng.integers(0, 256, size=(args.size, args.size)))
    src = img.samples
    print(f"image {args.size}x{args.size}, zoom {args.m}/{args.Q}, median of {args.runs}")
    print(f"{'kernel':>14s} {'weights ilut':>13s} {'weights eval':>13s} {'zoom ilut':>10s} {'zoom eval':>10s} {'rows fixed':>11s}")
    for kid in ["linear", "keys:a=-0.5", "cubic6", "l2opt:L=2", "l2opt:L=3", "tsinc:L=3"]:
        spec = ZoomSpec(args.m, args.Q, kid)
        kernel = parse_kernel(kid)
        D = zoom_table_denominator(spec)
        num = args.Q * D // args.m
        n_out = -(-args.size * args.m // args.Q)
        cached_ilut(kernel, D, renormalize=False)
        w_ilut = median_time(lambda: _axis_taps(args.size, n_out, num, D, kernel, Boundary.CLAMP, True), args.runs)
        w_eval = median_time(lambda: _axis_taps(args.size, n_out, num, D, kernel, Boundary.CLAMP, False), args.runs)
        z_ilut = median_time(lambda: zoom_float(img, spec, use_ilut=True), args.runs)
        z_eval = median_time(lambda: zoom_float(img, spec, use_ilut=False), args.runs)
        fixed = median_time(lambda: fixed_point_zoom_rows(src, spec), args.runs)
        print(f"{kid:>14s} {w_ilut:13.5f} {w_eval:13.5f} {z_ilut:10.4f} {z_eval:10.4f} {fixed:11.4f}")


if __name__ == "__main__":
    main()
