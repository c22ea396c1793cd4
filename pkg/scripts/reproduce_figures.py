"""Write the CSV series behind the kernel, aliasing, FAE-curve and Fourier plots.

Usage: python3 scripts/reproduce_figures.py [--out results/]
"""

import argparse
import csv
from pathlib import Path

import numpy as np

from l2interp.kernels import parse_kernel
from l2interp.l2opt import aliasing_term
from l2interp.spectral import fae, fae_approx, fourier_sample, optimal_fae

KERNELS = ["linear", "keys:a=-0.5", "cubic6", "tsinc:L=3", "l2opt:L=1", "l2opt:L=2", "l2opt:L=3"]


def write(path: Path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([v if isinstance(v, str) else f"{v + 0.0:.9g}" for v in r])
    print(f"wrote {path}")


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--out", default="results")
    p.add_argument("--lmax", type=int, default=20)
    args = p.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    x = np.round(np.arange(-3.0, 3.0 + 1e-9, 0.01), 10)
    cols = [np.asarray(parse_kernel(k)(x)) for k in KERNELS]
    write(out / "kernels.csv", ["x"] + KERNELS, zip(x, *cols))

    alias = [np.asarray(aliasing_term(L, x)) * (np.abs(x) < L) for L in (1, 2, 3)]
    write(out / "aliasing.csv", ["x", "T1", "T2", "T3"], zip(x, *alias))

    Ls = range(1, args.lmax + 1)
    write(out / "fae_curve.csv", ["L", "E_L", "E_hat"], ((L, optimal_fae(L), fae_approx(L)) for L in Ls))

    t = np.round(np.arange(0.0, 2.0 + 1e-9, 0.01), 10)
    fts = [fourier_sample(k, t) for k in KERNELS]
    write(out / "fourier.csv", ["t"] + KERNELS, zip(t, *fts))

    reports = [fae(k) for k in KERNELS]
    write(out / "fae_table.csv", ["kernel_id", "L", "E1", "E2", "E"], ((r.kernel_id, r.L, r.E1, r.E2, r.E) for r in reports))
    for r in reports:
        print(f"{r.kernel_id:>12s}  E = {r.E:.4f}")


if __name__ == "__main__":
    main()
