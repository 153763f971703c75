import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_series
from toeplitz_qc.circle import CircleGrid, FourierSeries, evaluate
from toeplitz_qc.errors import PreconditionError, ResolutionError
from toeplitz_qc.transforms import (ONE_SIDED_TOL, conjugation, conjugation_by_quadrature,
                                    double_hilbert_check, hilbert, outer_function,
                                    outer_function_report)

COS = FourierSeries.cos_sin([1.0])
SIN = FourierSeries.cos_sin(sin=[1.0])


def test_hilbert_examples():
    assert hilbert(COS).max_abs_diff(SIN) < 1e-16
    assert hilbert(FourierSeries.constant(7.0)).max_abs_diff(FourierSeries.zeros(0)) == 0
    assert hilbert(SIN).max_abs_diff(-COS) < 1e-16


def test_hilbert_weights_by_hand(rng):
    s = random_series(rng, 5, real=False)
    h = hilbert(s)
    for n in range(-5, 6):
        assert h[n] == -1j * np.sign(n) * s[n]
    assert h[0] == 0


def test_hilbert_keeps_real(rng):
    s = random_series(rng, 7)
    assert hilbert(s).is_real_valued(0.0)


def test_double_hilbert_examples():
    s = FourierSeries.constant(1.0) + COS
    rep = double_hilbert_check(s)
    assert rep.output.max_abs_diff(-COS) < 1e-16
    assert rep.worst == 0
    rep = double_hilbert_check(FourierSeries.char(0))
    assert rep.output.max_abs_diff(FourierSeries.zeros(0)) == 0 and rep.worst == 0


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 40), st.integers(0, 2 ** 32 - 1))
def test_double_hilbert_property(degree, seed):
    s = random_series(np.random.default_rng(seed), degree)
    assert double_hilbert_check(s).worst < 1e-12


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 40), st.integers(0, 2 ** 32 - 1))
def test_l2_contraction(degree, seed):
    s = random_series(np.random.default_rng(seed), degree, real=False)
    h2, s2 = hilbert(s).l2_squared(), s.l2_squared()
    assert h2 <= s2 * (1 + 1e-15)
    assert abs(s2 - h2 - abs(s[0]) ** 2) <= 1e-12 * s2


def test_hilbert_linear(rng):
    a, b = random_series(rng, 6), random_series(rng, 9)
    assert hilbert(a * 2.0 + b).max_abs_diff(hilbert(a) * 2.0 + hilbert(b)) < 1e-14


def test_conjugation_examples(rng):
    assert conjugation(COS).max_abs_diff(-SIN) < 1e-16
    assert conjugation(FourierSeries.constant(3.0)).max_abs_diff(FourierSeries.zeros(0)) == 0
    s = random_series(rng, 12)
    assert (conjugation(s) + hilbert(s)).max_abs_diff(FourierSeries.zeros(0)) == 0


def test_kernel_quadrature_against_coefficients(rng):
    # the kernel Im[(e^{it}+z)/(e^{it}-z)] integrates cos to r sin: it reproduces +hilbert
    grid = CircleGrid(32)
    s = random_series(rng, 8)
    s = s * (1.0 / np.sum(np.abs(s.coeffs)))  # unit l1 norm: Abel error <= (1 - r) * 8
    target = evaluate(hilbert(s), grid).values
    errs = []
    for r in (0.99, 0.999):
        q = conjugation_by_quadrature(s, r, grid)
        errs.append(np.max(np.abs(q.values - target)))
    assert errs[1] < 1e-2
    assert errs[1] < errs[0]
    # and the Abel-damped series matches to quadrature precision
    q = conjugation_by_quadrature(s, 0.999, grid).values
    damped = FourierSeries(hilbert(s).coeffs * 0.999 ** np.abs(s.indices))
    assert np.max(np.abs(q - evaluate(damped, grid).values)) < 1e-10


def test_outer_zero():
    out = outer_function(FourierSeries.zeros(0))
    assert out.max_abs_diff(FourierSeries.constant(1.0)) < 1e-15


def test_outer_cos_taylor_coefficients():
    out = outer_function(COS, degree=20)
    for k in range(21):
        assert abs(out[-k] - 1 / math.factorial(k)) < 1e-14
    for k in range(1, 21):
        assert abs(out[k]) < 1e-15


def test_outer_cos_modulus():
    rep = outer_function_report(COS)
    assert rep.identity_residuals["modulus"] < 1e-10
    grid = CircleGrid(256)
    vals = evaluate(rep.output, grid).values
    assert np.max(np.abs(np.abs(vals) - np.exp(np.cos(grid.points)))) < 1e-10


def test_outer_one_sided_random(rng):
    for _ in range(10):
        w = random_series(rng, int(rng.integers(1, 9)), decay=1.0) * 0.5
        rep = outer_function_report(w)
        assert rep.identity_residuals["offside_ratio"] < ONE_SIDED_TOL


def test_outer_inverse_pair(rng):
    grid = CircleGrid(512)
    w = random_series(rng, 6, decay=1.0) * 0.5
    a = evaluate(outer_function(w), grid).values
    b = evaluate(outer_function(-w), grid).values
    assert np.max(np.abs(a * b - 1)) < 1e-10


def test_outer_rejects_complex_w():
    with pytest.raises(PreconditionError):
        outer_function(FourierSeries.char(1))


def test_outer_band_overflow():
    with pytest.raises(ResolutionError, match="raise the grid size"):
        outer_function(COS * 40.0, grid_size=64)
