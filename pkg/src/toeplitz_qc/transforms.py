"""Hilbert transform, conjugation operator and the outer-type factor.

All transforms act on coefficient tables. With the multiplier ``-i sgn(n)``,
``hilbert(cos) = sin`` and ``exp(w - i hilbert(w))`` has its spectrum on the
NONPOSITIVE indices: ``w - i hilbert(w)`` has coefficients ``(1 - sgn n) a(n)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .circle import CircleGrid, FourierSeries, GridFunction, coefficients, evaluate
from .errors import DomainError, PreconditionError, ResolutionError

__all__ = [
    "TransformReport",
    "hilbert",
    "double_hilbert_check",
    "conjugation",
    "conjugation_by_quadrature",
    "outer_function",
    "outer_function_report",
    "ONE_SIDED_TOL",
]

# off-side coefficient mass, relative to the largest coefficient
ONE_SIDED_TOL = 1e-9
MAX_OUTER_GRID = 1 << 18


@dataclass
class TransformReport:
    input: FourierSeries
    output: FourierSeries
    identity_residuals: dict = field(default_factory=dict)

    def __post_init__(self):
        for name, value in self.identity_residuals.items():
            if not value >= 0:
                raise ValueError(f"residual {name} must be nonnegative, got {value}")

    @property
    def worst(self):
        return max(self.identity_residuals.values(), default=0.0)


def hilbert(s):
    """Coefficient multiplier ``-i sgn(n)``; kills the mean."""
    return FourierSeries(-1j * np.sign(s.indices) * s.coeffs, real=s.real)


def double_hilbert_check(s):
    """Residual of ``hilbert(hilbert(s)) = -s + a(0)``."""
    twice = hilbert(hilbert(s))
    expected = -s + s[0]
    residual = twice.max_abs_diff(expected)
    return TransformReport(s, twice, {"double_hilbert": residual})


def conjugation(s):
    """Conjugation operator on the circle, realized as ``-hilbert(s)``."""
    return -hilbert(s)


def conjugation_by_quadrature(s, r, grid, quad_size=1 << 15):
    """Evaluate ``(1/2pi) int w(t) Im[(e^{it}+z)/(e^{it}-z)] dt`` at ``z = r e^{i theta}``.

    Direct rectangle-rule quadrature of the kernel integral, independent of the
    coefficient route. ``quad_size`` must resolve the kernel width ``1 - r``.
    """
    if not 0.0 < r < 1.0:
        raise DomainError(f"radius must lie in (0, 1), got {r}", module="transforms",
                          contract="conjugation_by_quadrature")
    qgrid = CircleGrid(quad_size)
    t = qgrid.points
    w = evaluate(s, qgrid).values
    out = np.empty(grid.size, dtype=complex)
    et = np.exp(1j * t)
    for j, theta in enumerate(grid.points):
        z = r * np.exp(1j * theta)
        kernel = ((et + z) / (et - z)).imag
        out[j] = np.mean(w * kernel)
    return GridFunction(grid, out, real=s.real)


def _outer_samples(w, grid):
    w_vals = evaluate(w, grid).values.real
    wt_vals = evaluate(hilbert(w), grid).values.real
    return w_vals, np.exp(w_vals - 1j * wt_vals)


def _outer_grid(w, grid_size):
    if grid_size is not None:
        return CircleGrid(grid_size)
    size = 64
    while size < 8 * (w.degree + 1):
        size *= 2
    return CircleGrid(size)


def outer_function_report(w, degree=None, grid_size=None):
    """Series of ``exp(w - i hilbert(w))`` with its diagnostics.

    The exponential is sampled on a grid at least 8x the bandwidth of ``w``;
    the grid is doubled until the upper half of the alias-free band carries
    negligible energy. Residuals reported: ``tail_energy`` (energy dropped by
    truncation at ``degree``), ``offside_ratio`` (largest positive-index
    coefficient over the largest coefficient) and ``modulus`` (sup error of
    ``|outer| = exp(w)``).
    """
    if not w.is_real_valued(1e-12 * max(1.0, float(np.max(np.abs(w.coeffs), initial=0)))):
        raise PreconditionError("outer_function needs a real-valued w", module="transforms",
                                contract="outer_function")
    w = FourierSeries(w.coeffs, real=True)
    grid = _outer_grid(w, grid_size)
    while True:
        _, samples = _outer_samples(w, grid)
        full = coefficients(GridFunction(grid, samples), grid.max_degree)
        band = np.abs(full.indices)
        total = np.sum(np.abs(full.coeffs) ** 2)
        upper = np.sum(np.abs(full.coeffs[band > grid.size // 4]) ** 2)
        if upper <= 1e-28 * total:
            break
        if grid_size is not None or grid.size >= MAX_OUTER_GRID:
            raise ResolutionError(
                f"exp(w - i hilbert(w)) is not resolved on {grid.size} points "
                f"(upper-band energy ratio {upper / total:.2e}); raise the grid size",
                module="transforms", contract="outer_function")
        grid = CircleGrid(grid.size * 2)
    if degree is None:
        degree = grid.size // 4
    if degree > grid.max_degree:
        raise ResolutionError(f"degree {degree} exceeds the alias-free band of {grid.size} points",
                              module="transforms", contract="outer_function")
    out = full.truncated(degree)
    tail = float(total - np.sum(np.abs(out.coeffs) ** 2))
    peak = float(np.max(np.abs(out.coeffs)))
    positive = out.coeffs[out.indices > 0]
    offside = float(np.max(np.abs(positive), initial=0.0)) / peak
    w_vals, _ = _outer_samples(w, grid)
    modulus = float(np.max(np.abs(np.abs(evaluate(out, grid).values) - np.exp(w_vals))))
    residuals = {"tail_energy": max(tail, 0.0), "offside_ratio": offside, "modulus": modulus}
    return TransformReport(w, out, residuals)


def outer_function(w, degree=None, grid_size=None):
    """Series of ``exp(w - i hilbert(w))`` for real ``w``.

    Raises :class:`ResolutionError` if the sampled exponential needs a grid
    larger than the internal cap, or if its spectrum is not one-sided.
    """
    report = outer_function_report(w, degree=degree, grid_size=grid_size)
    if report.identity_residuals["offside_ratio"] >= ONE_SIDED_TOL:
        raise ResolutionError(
            "spectrum of the outer factor is not one-sided at this resolution "
            f"(ratio {report.identity_residuals['offside_ratio']:.2e})",
            module="transforms", contract="outer_function")
    return report.output
