"""The conjugate-series example: a VMO function that is not bounded.

``g_M(x) = sum_{k=2}^M sin(k x) / (k ln k)`` converges uniformly because
``k * 1/(k ln k) = 1/ln k -> 0``; its Hilbert transform
``h_M(x) = -sum_{k=2}^M cos(k x) / (k ln k)`` satisfies
``|h_M(0)| = sum 1/(k ln k) ~ ln ln M``, so the limit is unbounded near 0
while the partial sums converge uniformly on closed arcs avoiding 0.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .circle import FourierSeries, evaluate, fejer_mean, grid_for_degree
from .errors import ResolutionError, ValidationError
from .symbols import g_series, h_series
from .transforms import hilbert

__all__ = [
    "ExampleH",
    "example_h",
    "sup_at_zero",
    "sup_at_zero_ladder",
    "fejer_defect_series",
    "DecayTable",
    "uniform_convergence_off_zero",
]


def _harmonic_log_terms(M):
    k = np.arange(2, int(M) + 1, dtype=float)
    return 1.0 / (k * np.log(k))


def sup_at_zero(M):
    """``sum_{k=2}^M 1/(k ln k)``, summed in increasing ``k``."""
    if M < 2:
        raise ValidationError("M must be >= 2", module="symbol_algebra", contract="example_h")
    return float(np.cumsum(_harmonic_log_terms(M))[-1])


def sup_at_zero_ladder(Ms):
    """:func:`sup_at_zero` at several orders from one ascending running sum."""
    Ms = sorted(int(M) for M in Ms)
    running = np.cumsum(_harmonic_log_terms(Ms[-1]))
    return {M: float(running[M - 2]) for M in Ms}


def fejer_defect_series(M):
    """Series of ``(1/(M+1)) sum_{j=2}^M cos(j x) / ln j``."""
    coeffs = np.zeros(2 * M + 1, dtype=complex)
    j = np.arange(2, M + 1)
    c = 1.0 / (2 * (M + 1) * np.log(j))
    coeffs[M + j] = c
    coeffs[M - j] = c
    return FourierSeries(coeffs, real=True)


@dataclass
class ExampleH:
    M: int
    g_M: object
    h_M: object
    coefficient_residual: float
    fejer_residual: float
    fejer_residual_stated: float
    sup_at_zero: float

    def to_dict(self):
        return {"terms": self.M, "coefficient_residual": self.coefficient_residual,
                "fejer_residual": self.fejer_residual,
                "fejer_residual_stated": self.fejer_residual_stated,
                "sup_at_zero": self.sup_at_zero,
                "h_at_zero": float(self.h_M.values[0].real)}


def example_h(M, grid=None):
    """Partial sums ``g_M``, ``h_M = hilbert(g_M)`` and their checks.

    ``coefficient_residual``: largest coefficient gap between ``hilbert(g_M)``
    and ``-1/(2 k ln k)`` at ``+-k``.
    ``fejer_residual``: sup over the grid of
    ``|h_M - sigma_M(h_M) + (1/(M+1)) sum cos(j x)/ln j|``; the Fejér weights
    ``1 - |n|/(M+1)`` leave exactly ``(|n|/(M+1)) a(n)``, which carries the sign
    of the ``h_M`` coefficients, i.e. a minus sign.
    ``fejer_residual_stated``: the same with the opposite sign on the last term;
    it equals ``(2/(M+1)) sup|sum cos(j x)/ln j|`` and does not vanish.
    ``sup_at_zero``: ``|h_M(0)| = sum_{k=2}^M 1/(k ln k)``.
    """
    M = int(M)
    if M < 2:
        raise ValidationError("M must be >= 2", module="symbol_algebra", contract="example_h")
    grid = grid_for_degree(M, oversample=4) if grid is None else grid
    if grid.max_degree < M:
        raise ResolutionError(f"a {grid.size}-point grid cannot carry degree {M}",
                              module="symbol_algebra", contract="example_h")
    g = g_series(M)
    h = hilbert(g)
    coefficient_residual = h.max_abs_diff(h_series(M))
    g_M = evaluate(g, grid)
    h_M = evaluate(h, grid)
    sigma = fejer_mean(h_M, M)
    defect = evaluate(fejer_defect_series(M), grid).values.real
    gap = h_M.values.real - sigma.values.real
    return ExampleH(M, g_M, h_M, coefficient_residual,
                    float(np.max(np.abs(gap + defect))),
                    float(np.max(np.abs(gap - defect))),
                    sup_at_zero(M))


@dataclass
class DecayTable:
    interval: tuple
    rows: list
    cumulative_at_zero: list = None

    @property
    def sups(self):
        return [s for _, s in self.rows]

    @property
    def strictly_decreasing(self):
        s = self.sups
        return all(b < a for a, b in zip(s, s[1:]))

    def to_dict(self):
        out = {"interval": list(self.interval),
               "rows": [{"M": M, "sup": s} for M, s in self.rows]}
        if self.cumulative_at_zero is not None:
            out["cumulative_at_zero"] = [{"M": M, "drift": d} for M, d in self.cumulative_at_zero]
        return out


def _default_coefficients(k):
    return -1.0 / (k * np.log(k))


def _doubling_sup(M, a, b, coefficient_fn, oversample):
    k = np.arange(M + 1, 2 * M + 1)
    cos_coeffs = np.asarray(coefficient_fn(k.astype(float)), dtype=float)
    coeffs = np.zeros(4 * M + 1, dtype=complex)
    coeffs[2 * M + k] = cos_coeffs / 2
    coeffs[2 * M - k] = cos_coeffs / 2
    grid = grid_for_degree(2 * M, oversample=oversample)
    diff = evaluate(FourierSeries(coeffs, real=True), grid).values.real
    theta = grid.points
    inside = (theta >= a) & (theta <= b)
    return float(np.max(np.abs(diff[inside]))) if inside.any() else 0.0


def uniform_convergence_off_zero(Ms, interval, coefficient_fn=None, oversample=8):
    """Sup of ``|h_{2M} - h_M|`` over ``interval`` for each ``M`` of a ladder.

    ``interval = (a, b)`` with ``0 <= a < b <= 2 pi``; the closed arc is sampled
    on a grid 8x the top degree. ``coefficient_fn(k)`` gives the cosine
    coefficient of term ``k`` (default ``-1/(k ln k)``).

    Doubling differences shrink even at 0, because each one is a finite block
    of a divergent series. When the interval contains 0 the table therefore
    also carries ``cumulative_at_zero``: ``|h_{2M}(0) - h_{M_0}(0)|`` for the
    smallest rung ``M_0``, which keeps growing like ``ln ln M``.
    """
    a, b = map(float, interval)
    if not 0 <= a < b <= 2 * np.pi:
        raise ValidationError(f"interval must satisfy 0 <= a < b <= 2pi, got {interval}",
                              module="symbol_algebra", contract="uniform_convergence_off_zero")
    coefficient_fn = _default_coefficients if coefficient_fn is None else coefficient_fn
    Ms = sorted(int(M) for M in Ms)
    with ThreadPoolExecutor() as pool:
        sups = list(pool.map(lambda M: _doubling_sup(M, a, b, coefficient_fn, oversample), Ms))
    table = DecayTable((a, b), list(zip(Ms, sups)))
    if a == 0.0:
        k = np.arange(Ms[0] + 1, 2 * Ms[-1] + 1, dtype=float)
        running = np.cumsum(np.abs(np.asarray(coefficient_fn(k), dtype=float)))
        table.cumulative_at_zero = [(M, float(running[2 * M - Ms[0] - 1])) for M in Ms]
    return table
