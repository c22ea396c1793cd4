"""L2-optimal interpolation kernels H_L and their aliasing term.

On each half-unit segment [n/2, (n+1)/2) the optimal kernel is sinc plus a
correction spread evenly across the 2L samples that share the segment's
phase, so that the shifted copies sum to one::

    H_L(x) = sinc(x) + (1/2L) * (1 - sum_k sinc(o_k(n, x)))

where o_k(n, x) = (-1)^(k+n) x + floor((k+1)/2) + (-1)^(k+n+1) floor((n+1)/2)
walks the phase orbit of x for k = 0 .. 2L-1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .kernels import sinc

__all__ = [
    "DiscretizedKernel",
    "eval_HL",
    "eval_HL_segment",
    "eval_cor2",
    "aliasing_term",
    "solve_discrete_optimal",
]


def _orbit_sum(L: int, n: np.ndarray, x: np.ndarray) -> np.ndarray:
    # n holds integer segment indices; floors are integer divisions.
    half_n = (n + 1) // 2
    total = np.zeros_like(x)
    for k in range(2 * L):
        sign = np.where((k + n) % 2 == 0, 1.0, -1.0)
        total = total + sinc(sign * x + (k + 1) // 2 - sign * half_n)
    return total


def eval_HL_segment(L: int, n, x):
    """Segment-``n`` formula of H_L evaluated at ``x`` without a membership check.

    Useful for one-sided limits at the junctions x = n/2.
    """
    xa = np.asarray(x, dtype=float)
    na = np.broadcast_to(np.asarray(n, dtype=np.int64), xa.shape)
    out = sinc(xa) + (1.0 - _orbit_sum(L, na, xa)) / (2 * L)
    return out if np.ndim(out) else float(out)


def _segments(L: int, x):
    a = np.abs(np.asarray(x, dtype=float))
    inside = a < L
    n = np.floor(2.0 * a).astype(np.int64)
    return a, inside, n


def eval_HL(L: int, x):
    """The L2-optimal kernel of support ``L`` (even, zero for |x| >= L)."""
    if L < 1:
        raise ValueError("support L must be >= 1")
    a, inside, n = _segments(L, x)
    out = np.zeros_like(a)
    if np.any(inside):
        out[inside] = eval_HL_segment(L, n[inside], a[inside])
    return out if out.ndim else float(out)


def aliasing_term(L: int, x):
    """T_L(x) = H_L(x) - sinc(x): the correction bracket alone, for |x| < L."""
    if L < 1:
        raise ValueError("support L must be >= 1")
    a, inside, n = _segments(L, x)
    out = np.array(sinc(a), dtype=float)
    out *= -1.0
    if np.any(inside):
        out[inside] = (1.0 - _orbit_sum(L, n[inside], a[inside])) / (2 * L)
    return out if out.ndim else float(out)


def eval_cor2(L: int, x):
    """Explicit closed forms of H_1, H_2, H_3 (independent of the general formula)."""
    if L not in (1, 2, 3):
        raise ValueError(f"closed forms exist for L in {{1, 2, 3}}, got {L}")
    a = np.abs(np.asarray(x, dtype=float))
    s = sinc
    if L == 1:
        body = lambda t: 0.5 * (1 + s(t) - s(1 - t))
    elif L == 2:
        def body(t):
            near = 1 + 3 * s(t) - s(1 - t) - s(1 + t) - s(2 - t)
            far = 1 + 3 * s(t) - s(1 - t) - s(2 - t) - s(3 - t)
            return 0.25 * np.where(t <= 1, near, far)
    else:
        def body(t):
            common = 1 + 5 * s(t) - s(1 - t) - s(2 - t) - s(3 - t)
            s0 = common - s(1 + t) - s(2 + t)
            s1 = common - s(1 + t) - s(4 - t)
            s2 = common - s(4 - t) - s(5 - t)
            return np.select([t <= 1, t <= 2], [s0, s1], s2) / 6.0

    out = np.zeros_like(a)
    inside = a < L
    if np.any(inside):
        out[inside] = body(a[inside])
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class DiscretizedKernel:
    L: int
    grid_step: float
    samples: np.ndarray

    @property
    def x(self) -> np.ndarray:
        return np.arange(len(self.samples)) * self.grid_step


def solve_discrete_optimal(L: int, grid_step: float) -> DiscretizedKernel:
    """Least-squares fit of grid samples on [0, L] to sinc, under the kernel constraints.

    Minimizes sum_i (h_i - sinc(x_i))^2 over samples x_i = i * grid_step subject
    to h(n) = delta_n at integers and sum_k h(|x + k|) = 1 at every grid point
    x in [0, 1]. Solved globally by the null-space method, so it shares nothing
    with the closed-form kernel beyond sinc itself.
    """
    if L < 1:
        raise ValueError("support L must be >= 1")
    per_half = 0.5 / grid_step if grid_step > 0 else math.inf
    steps = int(round(per_half)) if math.isfinite(per_half) else 0
    if grid_step <= 0 or grid_step > 0.125 or abs(per_half - steps) > 1e-9:
        raise ValueError(
            f"grid_step must divide 1/2 evenly and be <= 1/8, got {grid_step}"
        )
    per_unit = 2 * steps
    N = L * per_unit + 1
    xs = np.arange(N) / per_unit

    rows, rhs = [], []
    for j in range(L + 1):
        row = np.zeros(N)
        row[j * per_unit] = 1.0
        rows.append(row)
        rhs.append(1.0 if j == 0 else 0.0)
    for i in range(per_unit + 1):
        row = np.zeros(N)
        for k in range(-L - 1, L + 2):
            idx = abs(i + k * per_unit)
            if idx < N:
                row[idx] += 1.0
        rows.append(row)
        rhs.append(1.0)
    A = np.array(rows)
    b = np.array(rhs)

    h0 = np.linalg.lstsq(A, b, rcond=None)[0]
    _, sv, vt = np.linalg.svd(A)
    rank = int(np.sum(sv > sv[0] * 1e-12))
    null = vt[rank:].T
    target = np.asarray(sinc(xs))
    h = h0 + null @ (null.T @ (target - h0))
    return DiscretizedKernel(L, 1.0 / per_unit, h)
