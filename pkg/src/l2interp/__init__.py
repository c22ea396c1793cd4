"""L2-optimal interpolation kernels, their frequency error, ILUTs and a zoom/rotate engine."""

from .ilut import Ilut, build_ilut, lookup, verify_theorem2
from .kernels import Kernel, check_kernel_conditions, parse_kernel, sinc
from .l2opt import aliasing_term, eval_cor2, eval_HL, solve_discrete_optimal
from .resample import (
    ImageBuffer,
    RationalRotation,
    ZoomSpec,
    approximate_rotation,
    orthogonal_transform,
    rotate,
    zoom,
)
from .spectral import FAEReport, fae, fae_approx, fae_frequency_domain, fourier_sample, optimal_fae

__all__ = [
    "FAEReport",
    "Ilut",
    "ImageBuffer",
    "Kernel",
    "RationalRotation",
    "ZoomSpec",
    "aliasing_term",
    "approximate_rotation",
    "build_ilut",
    "check_kernel_conditions",
    "eval_HL",
    "eval_cor2",
    "fae",
    "fae_approx",
    "fae_frequency_domain",
    "fourier_sample",
    "lookup",
    "optimal_fae",
    "orthogonal_transform",
    "parse_kernel",
    "rotate",
    "sinc",
    "solve_discrete_optimal",
    "verify_theorem2",
    "zoom",
]
