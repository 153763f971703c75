import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_series
from toeplitz_qc.circle import (CircleGrid, FourierSeries, GridFunction, coefficients, evaluate,
                                fejer_mean, fejer_series, grid_for_degree, poisson)
from toeplitz_qc.errors import DomainError, ResolutionError, ValidationError


def test_grid_points_and_size():
    g = CircleGrid(16)
    assert g.points[0] == 0.0
    assert np.all(np.diff(g.points) > 0) and g.points[-1] < 2 * np.pi
    assert g.max_degree == 7
    for bad in (4, 12, 100):
        with pytest.raises(ValidationError):
            CircleGrid(bad)


def test_grid_for_degree():
    assert grid_for_degree(10).size == 64
    assert grid_for_degree(0).size == 8


def test_real_grid_function_has_zero_imaginary_part(grid64):
    f = GridFunction(grid64, np.exp(1j * grid64.points), real=True)
    assert np.all(f.values.imag == 0)
    with pytest.raises(ValueError):
        f.values[0] = 1.0


def test_grid_function_length_checked(grid64):
    with pytest.raises(ValidationError):
        GridFunction(grid64, np.ones(10))


def test_coefficients_of_char2(grid64):
    f = GridFunction(grid64, np.exp(2j * grid64.points))
    s = coefficients(f, 4)
    expected = np.zeros(9)
    expected[2 + 4] = 1
    assert np.max(np.abs(s.coeffs - expected)) < 1e-12


def test_coefficients_of_constant(grid64):
    s = coefficients(GridFunction.constant(1.0, grid64), 5)
    assert abs(s[0] - 1) < 1e-15
    assert np.max(np.abs(np.delete(s.coeffs, 5))) < 1e-15


def test_coefficients_of_three_plus_cos(grid64):
    s = coefficients(GridFunction(grid64, 3 + np.cos(grid64.points), real=True), 6)
    # direct summation oracle
    for n in range(-6, 7):
        direct = np.mean((3 + np.cos(grid64.points)) * np.exp(-1j * n * grid64.points))
        assert abs(s[n] - direct) < 1e-14
    assert abs(s[0] - 3) < 1e-14 and abs(s[1] - 0.5) < 1e-14 and abs(s[-1] - 0.5) < 1e-14


def test_coefficients_resolution_error(grid64):
    with pytest.raises(ResolutionError):
        coefficients(GridFunction.constant(1.0, grid64), 32)


def test_evaluate_examples(grid64):
    assert np.max(np.abs(evaluate(FourierSeries.char(1), grid64).values - np.exp(1j * grid64.points))) < 1e-14
    v = evaluate(FourierSeries.constant(2.5 - 1j), grid64).values
    assert np.max(np.abs(v - (2.5 - 1j))) < 1e-15


def test_round_trip_degree_10(rng):
    grid = CircleGrid(128)
    s = random_series(rng, 10, real=False)
    back = coefficients(evaluate(s, grid), 10)
    assert back.max_abs_diff(s) < 1e-12


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 16), st.integers(0, 2 ** 32 - 1))
def test_round_trip_property(degree, seed):
    grid = CircleGrid(128)
    s = random_series(np.random.default_rng(seed), degree, real=False)
    assert coefficients(evaluate(s, grid), degree).max_abs_diff(s) < 1e-12


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 20), st.integers(0, 2 ** 32 - 1))
def test_parseval(degree, seed):
    grid = CircleGrid(128)
    s = random_series(np.random.default_rng(seed), degree, real=False)
    f = evaluate(s, grid)
    assert abs(s.l2_squared() - np.mean(np.abs(f.values) ** 2)) < 1e-10 * max(1, s.l2_squared())


def test_real_series_symmetry(rng):
    s = random_series(rng, 6)
    for n in range(7):
        assert s[-n] == np.conj(s[n])
    assert s.is_real_valued()
    assert np.all(evaluate(s, CircleGrid(64)).values.imag == 0)


def test_series_algebra():
    a = FourierSeries.char(1)
    b = FourierSeries.char(-1)
    assert (a * b).max_abs_diff(FourierSeries.constant(1)) == 0
    assert (a + b).max_abs_diff(FourierSeries.cos_sin([1.0]) * 2) < 1e-15
    assert a.shift(2).max_abs_diff(FourierSeries.char(3)) == 0
    assert a[5] == 0
    assert a.conj().max_abs_diff(b) == 0


def test_fejer_constant(grid64):
    for N in (1, 5, 40):
        out = fejer_mean(GridFunction.constant(4.0, grid64), N)
        assert np.max(np.abs(out.values - 4.0)) < 1e-14


def test_fejer_cos_order_one(grid64):
    cos = GridFunction(grid64, np.cos(grid64.points), real=True)
    out = fejer_mean(cos, 1)
    assert np.max(np.abs(out.values - 0.5 * np.cos(grid64.points))) < 1e-14
    # kernel quadrature oracle: F_1(t) = 1 + cos t, sigma_1 f(x) = mean_t f(x - t) F_1(t)
    t = grid64.points
    direct = np.array([np.mean(np.cos(x - t) * (1 + np.cos(t))) for x in t])
    assert np.max(np.abs(out.values - direct)) < 1e-14


def test_fejer_does_not_increase_sup(rng):
    grid = CircleGrid(256)
    for _ in range(10):
        f = evaluate(random_series(rng, 20), grid)
        for N in (1, 3, 10, 40):
            assert fejer_mean(f, N).sup_norm() <= f.sup_norm() * (1 + 1e-12)


def test_fejer_converges_for_band_limited(rng):
    grid = CircleGrid(1 << 14)
    f = evaluate(random_series(rng, 5), grid)
    errs = [np.max(np.abs(fejer_mean(f, N).values - f.values)) for N in (10, 100, 1000)]
    assert errs[0] > errs[1] > errs[2]
    assert fejer_series(FourierSeries.char(2), 3).max_abs_diff(FourierSeries.char(2) * 0.5) == 0


def test_poisson_examples(grid64):
    for n in (-3, 0, 2):
        for r in (0.3, 0.9):
            out = poisson(FourierSeries.char(n), r, grid64).values
            assert np.max(np.abs(out - r ** abs(n) * np.exp(1j * n * grid64.points))) < 1e-14
    out = poisson(FourierSeries.constant(1.0), 0.5, grid64).values
    assert np.max(np.abs(out - 1)) < 1e-15


def test_poisson_cos_half_against_kernel_quadrature(grid64):
    r = 0.5
    out = poisson(FourierSeries.cos_sin([1.0]), r, grid64).values
    assert np.max(np.abs(out - 0.5 * np.cos(grid64.points))) < 1e-15
    t = CircleGrid(4096).points
    kernel = lambda x: (1 - r ** 2) / (1 - 2 * r * np.cos(x - t) + r ** 2)
    direct = np.array([np.mean(np.cos(t) * kernel(x)) for x in grid64.points])
    assert np.max(np.abs(out - direct)) < 1e-12


def test_poisson_domain():
    for r in (0.0, 1.0, -0.5, 1.5):
        with pytest.raises(DomainError):
            poisson(FourierSeries.char(1), r, CircleGrid(8))


def test_poisson_tends_to_boundary_values(rng):
    grid = CircleGrid(256)
    s = random_series(rng, 8)
    f = evaluate(s, grid).values
    errs = [np.max(np.abs(poisson(s, 1 - 1 / N, grid).values - f)) for N in (10, 100, 1000, 10000)]
    assert all(b < a for a, b in zip(errs, errs[1:]))
