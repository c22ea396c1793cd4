from fractions import Fraction
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from l2interp.kernels import (
    Kernel,
    KernelParseError,
    blend,
    check_kernel_conditions,
    cubic6,
    eval_blend,
    eval_cubic6,
    eval_keys,
    eval_linear,
    eval_truncated_sinc,
    l2optimal,
    linear,
    parse_kernel,
    sinc,
)

from conftest import BUILTIN_IDS, INTERPOLATING_IDS


def keys_exact(a: Fraction, x: Fraction) -> Fraction:
    x = abs(x)
    if x <= 1:
        return (a + 2) * x**3 - (a + 3) * x**2 + 1
    if x <= 2:
        return a * x**3 - 5 * a * x**2 + 8 * a * x - 4 * a
    return Fraction(0)


def test_sinc_values():
    assert sinc(0.0) == 1.0
    assert sinc(1.0) == 0.0
    assert sinc(0.5) == pytest.approx(2 / math.pi, abs=1e-15)
    assert np.all(sinc(np.arange(-20.0, 21.0)[np.arange(-20, 21) != 0]) == 0.0)


@given(st.floats(-50, 50, allow_nan=False))
def test_sinc_matches_definition(x):
    expected = 1.0 if x == 0 else math.sin(math.pi * x) / (math.pi * x)
    assert sinc(x) == pytest.approx(expected, abs=1e-14)


def test_linear_values():
    assert eval_linear(0.0) == 1.0
    assert eval_linear(0.5) == 0.5
    assert eval_linear(1.7) == 0.0
    assert eval_linear(-0.25) == 0.75


@pytest.mark.parametrize("x", [Fraction(0), Fraction(1, 2), Fraction(3, 2), Fraction(7, 5), Fraction(1, 3)])
def test_keys_against_exact_rational(x):
    a = Fraction(-1, 2)
    assert eval_keys(-0.5, float(x)) == pytest.approx(float(keys_exact(a, x)), abs=1e-15)


def test_keys_examples():
    assert eval_keys(-0.5, 0.0) == 1.0
    assert eval_keys(-0.5, 0.5) == 0.5625
    assert eval_keys(-0.5, 1.5) == -0.0625


@pytest.mark.parametrize("a", [-1.0, -0.75, -0.5, -0.25])
def test_keys_continuous_at_one(a):
    assert eval_keys(a, 1.0 - 1e-12) == pytest.approx(eval_keys(a, 1.0 + 1e-12), abs=1e-10)


def test_cubic6_knots():
    assert eval_cubic6(0.0) == 1.0
    assert eval_cubic6(1.0) == 0.0
    assert eval_cubic6(2.0) == 0.0
    assert eval_cubic6(3.0) == 0.0
    assert eval_cubic6(3.5) == 0.0


def test_truncated_sinc():
    assert eval_truncated_sinc(3, 0.0) == 1.0
    assert eval_truncated_sinc(3, 2.5) == pytest.approx(math.sin(2.5 * math.pi) / (2.5 * math.pi), abs=1e-15)
    assert eval_truncated_sinc(3, 3.5) == 0.0


def test_blend_examples():
    lin = linear()
    assert eval_blend(0.5, lin, lin, 0.3) == pytest.approx(0.7, abs=1e-15)
    h3, c6 = l2optimal(3), cubic6()
    for w in (0.1, 0.5, 0.9):
        assert eval_blend(w, h3, c6, 0.0) == 1.0
    assert eval_blend(0.5, h3, c6, 0.5) == pytest.approx(0.5 * (h3(0.5) + c6(0.5)), abs=1e-15)


@pytest.mark.parametrize("w", [0.0, 1.0, -0.2, 1.5])
def test_blend_rejects_weight(w):
    with pytest.raises(ValueError):
        eval_blend(w, linear(), linear(), 0.1)
    with pytest.raises(ValueError):
        blend(w, linear(), linear())


def test_blend_support_is_max():
    assert blend(0.5, linear(), cubic6()).support == 3
    k = blend(0.5, linear(), cubic6())
    assert k(2.5) == pytest.approx(0.5 * eval_cubic6(2.5))


@pytest.mark.parametrize("kid", INTERPOLATING_IDS)
def test_conditions_hold_for_interpolating_kernels(kid):
    rep = check_kernel_conditions(parse_kernel(kid), 1e-3)
    assert rep.cardinal_deviation <= 1e-9
    assert rep.partition_deviation <= 1e-9


def test_conditions_exact_for_linear_and_tight_for_keys():
    rep = check_kernel_conditions(linear(), 1e-3)
    assert rep.cardinal_deviation == 0.0 and rep.partition_deviation == 0.0
    rep = check_kernel_conditions(parse_kernel("keys:a=-0.5"), 1e-3)
    assert rep.cardinal_deviation <= 1e-12 and rep.partition_deviation <= 1e-12


def test_conditions_zero_function():
    zero = Kernel("zero", 1, lambda a: 0.0 * a, interpolating=False)
    rep = check_kernel_conditions(zero, 1e-3)
    assert rep.partition_deviation == 1.0


def test_truncated_sinc_is_not_partition_of_unity():
    rep = check_kernel_conditions(parse_kernel("tsinc:L=3"), 1e-3)
    assert rep.cardinal_deviation == 0.0
    assert rep.partition_deviation > 0.05


@pytest.mark.parametrize("kid", BUILTIN_IDS)
@settings(max_examples=50, deadline=None)
@given(x=st.floats(-8, 8, allow_nan=False))
def test_even_and_finite_support(kid, x):
    k = parse_kernel(kid)
    assert k(x) == k(-x)
    if abs(x) > k.support + 1e-12:
        assert k(x) == 0.0


@settings(max_examples=30, deadline=None)
@given(
    w=st.floats(0.01, 0.99),
    left=st.sampled_from(INTERPOLATING_IDS[:-1]),
    right=st.sampled_from(INTERPOLATING_IDS[:-1]),
)
def test_blend_of_conforming_kernels_conforms(w, left, right):
    k = blend(w, parse_kernel(left), parse_kernel(right))
    rep = check_kernel_conditions(k, 1e-2)
    assert rep.cardinal_deviation <= 1e-9
    assert rep.partition_deviation <= 1e-9


@pytest.mark.parametrize(
    "text, name, support",
    [
        ("linear", "linear", 1),
        ("keys:a=-0.5", "keys:a=-0.5", 2),
        ("keys", "keys:a=-0.5", 2),
        ("cubic6", "cubic6", 3),
        ("tsinc:L=3", "tsinc:L=3", 3),
        ("l2opt:L=2", "l2opt:L=2", 2),
        ("blend:w=0.5,l2opt:L=3,cubic6", "blend:w=0.5,l2opt:L=3,cubic6", 3),
        ("blend:w=0.25,keys:a=-0.75,blend:w=0.5,linear,cubic6", "blend:w=0.25,keys:a=-0.75,blend:w=0.5,linear,cubic6", 3),
    ],
)
def test_parse_roundtrip(text, name, support):
    k = parse_kernel(text)
    assert k.name == name
    assert k.support == support
    assert parse_kernel(k.name).name == k.name


@pytest.mark.parametrize(
    "bad", ["", "lanczos", "blend:w=1.5,linear,linear", "blend:w=0.5,linear", "tsinc:L=0", "l2opt", "keys:a=x", "linear,"]
)
def test_parse_errors(bad):
    with pytest.raises(KernelParseError):
        parse_kernel(bad)
