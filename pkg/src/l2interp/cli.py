"""Command-line front end: kernel analytics, ILUTs, zoom/rotate and method comparison.

Exit codes: 0 success, 2 usage error, 3 I/O error, 4 numeric failure.
"""

from __future__ import annotations

import argparse
import csv
import math
import re
import statistics
import sys
import time
from typing import Callable, Iterable, Sequence

import numpy as np

from . import spectral
from .compare import compare_methods
from .ilut import build_ilut
from .kernels import KernelParseError, parse_kernel
from .pgm import PgmError, read_image, write_image
from .resample import ZoomSpec, approximate_rotation, rotate_float, quantize, zoom_float

EXIT_USAGE, EXIT_IO, EXIT_NUMERIC = 2, 3, 4
TIMING_RUNS = 5


class UsageError(Exception):
    pass


def fmt(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, str):
        return v
    return f"{float(v):.9g}"


def _emit(rows: Iterable[Sequence], header: Sequence[str], out) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])


def _open_out(path: str | None):
    return sys.stdout if path in (None, "-") else open(path, "w", newline="")


def _with_out(path, write: Callable) -> None:
    out = _open_out(path)
    try:
        write(out)
    finally:
        if out is not sys.stdout:
            out.close()


def _kernel(text: str):
    try:
        return parse_kernel(text)
    except (KernelParseError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def _grid(lo: float, hi: float, step: float) -> np.ndarray:
    if step <= 0:
        raise UsageError("--step must be positive")
    i0, i1 = math.ceil(lo / step - 1e-9), math.floor(hi / step + 1e-9)
    return np.arange(i0, i1 + 1) * step


def expand_kernel_ids(ids: Iterable[str]) -> list[str]:
    """Expand ``name:L=a..b`` into one id per L."""
    out = []
    for text in ids:
        m = re.fullmatch(r"(.*L=)(\d+)\.\.(\d+)", text)
        if m:
            out.extend(f"{m.group(1)}{L}" for L in range(int(m.group(2)), int(m.group(3)) + 1))
        else:
            out.append(text)
    return out


# --- subcommands --------------------------------------------------------------


def cmd_kernel(args) -> int:
    k = _kernel(args.kernel)
    xs = _grid(-k.support, k.support, args.step)
    ys = np.asarray(k(xs))
    _with_out(args.out, lambda out: _emit(zip(xs, ys), ["x", "h"], out))
    return 0


def cmd_ft(args) -> int:
    k = _kernel(args.kernel)
    if args.tmax <= 0:
        raise UsageError("--tmax must be positive")
    ts = _grid(0.0, args.tmax, args.step)
    fs = spectral.fourier_sample(k, ts)
    _with_out(args.out, lambda out: _emit(zip(ts, fs), ["t", "F"], out))
    return 0


def cmd_fae(args) -> int:
    if args.curve:
        Ls = range(0 if args.curve_from_zero else 1, args.curve + 1)
        rows = [(L, spectral.optimal_fae(L), spectral.fae_approx(L) if L else float("nan")) for L in Ls]
        _with_out(args.out, lambda out: _emit(rows, ["L", "E_L", "E_hat"], out))
        return 0
    ids = expand_kernel_ids(args.kernels + (args.kernel or []))
    if not ids:
        raise UsageError("give at least one kernel id")
    kernels = [_kernel(i) for i in ids]
    reports = [spectral.fae(k) for k in kernels]
    rows = [(r.kernel_id, r.L, r.E1, r.E2, r.E) for r in reports]
    _with_out(args.out, lambda out: _emit(rows, ["kernel_id", "L", "E1", "E2", "E"], out))
    return 0


def cmd_ilut(args) -> int:
    k = _kernel(args.kernel)
    if args.Q < 1:
        raise UsageError("--Q must be >= 1")
    table = build_ilut(k, args.Q, renormalize=args.renormalize)
    fmt_ = args.format or ("bin" if args.out and args.out.endswith(".bin") else "csv")
    if fmt_ == "bin":
        if not args.out or args.out == "-":
            sys.stdout.buffer.write(table.to_bytes())
        else:
            with open(args.out, "wb") as fh:
                fh.write(table.to_bytes())
    else:
        _with_out(args.out, lambda out: out.write(table.to_csv()))
    return 0


def _median_time(fn: Callable, runs: int = TIMING_RUNS):
    times, result = [], None
    for _ in range(runs):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return result, statistics.median(times)


def cmd_zoom(args) -> int:
    _kernel(args.kernel)
    try:
        spec = ZoomSpec(args.m, args.Q, args.kernel, args.boundary, args.ilut)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    img = read_image(args.input)
    values, seconds = _median_time(lambda: zoom_float(img, spec), args.runs)
    out = quantize(values, img.bit_depth)
    write_image(out, args.out)
    path = "ilut" if args.ilut else "analytic"
    print(
        f"zoom {img.width}x{img.height} -> {out.width}x{out.height} "
        f"kernel={spec.kernel} path={path} median_seconds={seconds:.6f}"
    )
    return 0


def cmd_rotate(args) -> int:
    k = _kernel(args.kernel)
    if args.Q < 1:
        raise UsageError("--Q must be >= 1")
    rot = approximate_rotation(args.angle, args.Q)
    if rot.n == 0 and rot.m == 0:
        raise UsageError("rotation degenerates to n = m = 0; increase --Q")
    img = read_image(args.input)
    values, seconds = _median_time(
        lambda: rotate_float(img, rot, k, args.boundary, use_ilut=args.ilut), args.runs
    )
    write_image(quantize(values, img.bit_depth), args.out)
    print(
        f"n={rot.n} m={rot.m} Q={rot.Q} angle_deviation={rot.angle_deviation:.6f} "
        f"implied_scale={rot.implied_scale:.6f} median_seconds={seconds:.6f}"
    )
    return 0


def cmd_compare(args) -> int:
    _kernel(args.kernel_a)
    _kernel(args.kernel_b)
    img = read_image(args.input)
    try:
        reports = compare_methods(
            img, args.m, args.Q, args.kernel_a, args.kernel_b,
            boundary=args.boundary, reference=args.reference,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = [(r.method_a, r.method_b, r.mae, "inf" if math.isinf(r.psnr) else r.psnr, r.max_abs) for r in reports]
    _with_out(args.out, lambda out: _emit(rows, ["method_a", "method_b", "mae", "psnr", "max_abs"], out))
    return 0


# --- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="l2interp", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common_image(sp, default_kernel="l2opt:L=2"):
        sp.add_argument("input")
        sp.add_argument("--out", required=True, help="output PGM path")
        sp.add_argument("--kernel", default=default_kernel)
        sp.add_argument("--Q", type=int, default=100)
        sp.add_argument("--boundary", choices=["clamp", "mirror"], default="clamp")
        sp.add_argument("--ilut", action=argparse.BooleanOptionalAction, default=True)
        sp.add_argument("--runs", type=int, default=TIMING_RUNS, help="timed repetitions (median reported)")

    sp = sub.add_parser("kernel", help="sample h(x) over [-L, L]")
    sp.add_argument("--kernel", required=True)
    sp.add_argument("--step", type=float, default=0.01)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_kernel)

    sp = sub.add_parser("ft", help="sample the Fourier transform F_h(t) over [0, tmax]")
    sp.add_argument("--kernel", required=True)
    sp.add_argument("--tmax", type=float, default=2.0)
    sp.add_argument("--step", type=float, default=0.01)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_ft)

    sp = sub.add_parser("fae", help="frequency approximation error of kernels")
    sp.add_argument("kernels", nargs="*", help="kernel ids; name:L=a..b expands to a sweep")
    sp.add_argument("--kernel", action="append", help="kernel id (repeatable)")
    sp.add_argument("--curve", type=int, metavar="LMAX", help="emit L, E_L, E_hat for L = 1..LMAX")
    sp.add_argument("--curve-from-zero", action="store_true", help="include the L = 0 row in --curve")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_fae)

    sp = sub.add_parser("ilut", help="build an interpolation look-up table")
    sp.add_argument("--kernel", required=True)
    sp.add_argument("--Q", type=int, default=100)
    sp.add_argument("--renormalize", action=argparse.BooleanOptionalAction, default=True)
    sp.add_argument("--format", choices=["csv", "bin"])
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_ilut)

    sp = sub.add_parser("zoom", help="zoom a PGM image by m/Q")
    common_image(sp)
    sp.add_argument("--m", type=int, required=True)
    sp.set_defaults(func=cmd_zoom)

    sp = sub.add_parser("rotate", help="rotate a PGM image by a Q-rational approximation of an angle")
    common_image(sp)
    sp.add_argument("--angle", type=float, required=True, help="degrees, counterclockwise as displayed")
    sp.set_defaults(func=cmd_rotate)

    sp = sub.add_parser("compare", help="MAE/PSNR between two kernels' zooms")
    sp.add_argument("input")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--Q", type=int, default=100)
    sp.add_argument("--kernel-a", required=True)
    sp.add_argument("--kernel-b", required=True)
    sp.add_argument("--boundary", choices=["clamp", "mirror"], default="clamp")
    sp.add_argument("--reference", action="store_true", help="box-downscale first and score against the original")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_compare)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"l2interp {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, PgmError) as exc:
        print(f"l2interp {args.command}: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ArithmeticError, FloatingPointError) as exc:
        print(f"l2interp {args.command}: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
