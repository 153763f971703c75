"""Uniform grids on the unit circle, Fourier coefficients and summation means.

Conventions: ``chi_n(t) = exp(i n t)`` and

    a(n) = (1 / 2pi) * integral_0^{2pi} f(t) chi_{-n}(t) dt,

discretized with the rectangle rule on ``size`` equispaced points. The rule is
exact for trigonometric polynomials whose degree stays below ``size``, which
is what makes the coefficient arithmetic in the rest of the package exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ResolutionError, ValidationError

__all__ = [
    "CircleGrid",
    "GridFunction",
    "FourierSeries",
    "coefficients",
    "evaluate",
    "fejer_mean",
    "poisson",
    "grid_for_degree",
]

MIN_GRID_SIZE = 8


def _is_power_of_two(n):
    return n > 0 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class CircleGrid:
    """Equispaced points ``2 pi j / size`` on [0, 2 pi)."""

    size: int

    def __post_init__(self):
        if not isinstance(self.size, (int, np.integer)) or isinstance(self.size, bool):
            raise ValidationError(f"grid size must be an integer, got {self.size!r}",
                                  module="circle_fourier", contract="CircleGrid")
        if self.size < MIN_GRID_SIZE or not _is_power_of_two(int(self.size)):
            raise ValidationError(
                f"grid size must be a power of two >= {MIN_GRID_SIZE}, got {self.size}",
                module="circle_fourier", contract="CircleGrid")
        object.__setattr__(self, "size", int(self.size))

    @property
    def points(self):
        return 2 * np.pi * np.arange(self.size) / self.size

    @property
    def spacing(self):
        return 2 * np.pi / self.size

    @property
    def max_degree(self):
        """Largest degree whose coefficients are recoverable without aliasing."""
        return self.size // 2 - 1

    def __repr__(self):
        return f"CircleGrid({self.size})"


def grid_for_degree(degree, oversample=4):
    """Smallest admissible grid holding a degree-``degree`` polynomial ``oversample`` times."""
    need = max(MIN_GRID_SIZE, oversample * (int(degree) + 1))
    return CircleGrid(1 << (need - 1).bit_length())


def _frozen(arr):
    arr = np.array(arr, dtype=complex)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Samples of a function on a :class:`CircleGrid`.

    ``real=True`` tags the function as real valued; the imaginary parts are
    then forced to exactly zero.
    """

    grid: CircleGrid
    values: np.ndarray
    real: bool = False

    def __post_init__(self):
        values = np.asarray(self.values)
        if values.shape != (self.grid.size,):
            raise ValidationError(
                f"expected {self.grid.size} samples, got shape {values.shape}",
                module="circle_fourier", contract="GridFunction")
        if self.real:
            values = values.real.astype(complex)
        object.__setattr__(self, "values", _frozen(values))

    @classmethod
    def from_callable(cls, func, grid, real=False):
        return cls(grid, np.asarray(func(grid.points), dtype=complex), real=real)

    @classmethod
    def constant(cls, c, grid):
        return cls(grid, np.full(grid.size, c, dtype=complex), real=complex(c).imag == 0)

    @property
    def points(self):
        return self.grid.points

    def real_part(self):
        return self.values.real

    def sup_norm(self):
        return float(np.max(np.abs(self.values)))

    def mean(self):
        return complex(np.mean(self.values))

    def conj(self):
        return GridFunction(self.grid, np.conj(self.values), real=self.real)

    def map(self, func, real=None):
        return GridFunction(self.grid, func(self.values), real=self.real if real is None else real)

    def _combine(self, other, op):
        if isinstance(other, GridFunction):
            if other.grid != self.grid:
                raise ValidationError("grid mismatch", module="circle_fourier")
            return GridFunction(self.grid, op(self.values, other.values),
                                real=self.real and other.real)
        return GridFunction(self.grid, op(self.values, other),
                            real=self.real and np.isrealobj(other))

    def __add__(self, other):
        return self._combine(other, np.add)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, np.subtract)

    def __mul__(self, other):
        return self._combine(other, np.multiply)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._combine(other, np.divide)

    def __neg__(self):
        return GridFunction(self.grid, -self.values, real=self.real)

    def __repr__(self):
        return f"GridFunction(grid={self.grid!r}, real={self.real})"


@dataclass(frozen=True, eq=False)
class FourierSeries:
    """Two-sided coefficient table ``a(n)`` for ``-degree <= n <= degree``.

    ``coeffs[n + degree]`` holds ``a(n)``.
    """

    coeffs: np.ndarray
    real: bool = False
    degree: int = field(init=False)

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs, dtype=complex)
        if coeffs.ndim != 1 or coeffs.size % 2 != 1:
            raise ValidationError("coefficient table must have odd length 2N+1",
                                  module="circle_fourier", contract="FourierSeries")
        object.__setattr__(self, "degree", (coeffs.size - 1) // 2)
        if self.real:
            # enforce a(-n) = conj(a(n)) exactly
            coeffs = 0.5 * (coeffs + np.conj(coeffs[::-1]))
        object.__setattr__(self, "coeffs", _frozen(coeffs))

    # construction helpers

    @classmethod
    def zeros(cls, degree, real=False):
        return cls(np.zeros(2 * degree + 1, dtype=complex), real=real)

    @classmethod
    def from_dict(cls, table, degree=None, real=False):
        """Build from ``{n: a(n)}``."""
        top = max((abs(int(n)) for n in table), default=0)
        degree = top if degree is None else degree
        if top > degree:
            raise ValidationError(f"index {top} exceeds degree {degree}", module="circle_fourier")
        coeffs = np.zeros(2 * degree + 1, dtype=complex)
        for n, value in table.items():
            coeffs[int(n) + degree] += value
        return cls(coeffs, real=real)

    @classmethod
    def char(cls, n):
        """The delta series of ``chi_n``."""
        return cls.from_dict({n: 1.0})

    @classmethod
    def constant(cls, c):
        return cls(np.array([c], dtype=complex), real=complex(c).imag == 0)

    @classmethod
    def cos_sin(cls, cos=(), sin=(), const=0.0):
        """Real series ``const + sum cos[k-1] cos(k t) + sum sin[k-1] sin(k t)``."""
        degree = max(len(cos), len(sin), 0)
        table = {0: const}
        for k, c in enumerate(cos, start=1):
            table[k] = table.get(k, 0) + c / 2
            table[-k] = table.get(-k, 0) + c / 2
        for k, s in enumerate(sin, start=1):
            table[k] = table.get(k, 0) + s / 2j
            table[-k] = table.get(-k, 0) - s / 2j
        return cls.from_dict(table, degree=degree, real=True)

    # access

    @property
    def indices(self):
        return np.arange(-self.degree, self.degree + 1)

    def __getitem__(self, n):
        n = int(n)
        if abs(n) > self.degree:
            return 0j
        return complex(self.coeffs[n + self.degree])

    def as_dict(self, tol=0.0):
        return {int(n): complex(c) for n, c in zip(self.indices, self.coeffs) if abs(c) > tol}

    def padded(self, degree):
        """Same series with a larger (or equal) coefficient table."""
        if degree < self.degree:
            raise ValidationError("cannot pad to a smaller degree", module="circle_fourier")
        out = np.zeros(2 * degree + 1, dtype=complex)
        out[degree - self.degree: degree + self.degree + 1] = self.coeffs
        return FourierSeries(out, real=self.real)

    def truncated(self, degree):
        if degree >= self.degree:
            return self.padded(degree)
        d = self.degree
        return FourierSeries(self.coeffs[d - degree: d + degree + 1], real=self.real)

    def effective_degree(self, tol=0.0):
        """Largest ``|n|`` whose coefficient exceeds ``tol`` in modulus."""
        nz = np.nonzero(np.abs(self.coeffs) > tol)[0]
        if nz.size == 0:
            return 0
        return int(np.max(np.abs(nz - self.degree)))

    def l2_squared(self):
        return float(np.sum(np.abs(self.coeffs) ** 2))

    def is_real_valued(self, tol=1e-12):
        return bool(np.all(np.abs(self.coeffs - np.conj(self.coeffs[::-1])) <= tol))

    # arithmetic

    def _aligned(self, other):
        d = max(self.degree, other.degree)
        return self.padded(d).coeffs, other.padded(d).coeffs

    def __add__(self, other):
        if not isinstance(other, FourierSeries):
            other = FourierSeries.constant(other)
        a, b = self._aligned(other)
        return FourierSeries(a + b, real=self.real and other.real)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, FourierSeries):
            other = FourierSeries.constant(other)
        a, b = self._aligned(other)
        return FourierSeries(a - b, real=self.real and other.real)

    def __neg__(self):
        return FourierSeries(-self.coeffs, real=self.real)

    def __mul__(self, other):
        if isinstance(other, FourierSeries):
            # product of trig polynomials = convolution of coefficient tables
            return FourierSeries(np.convolve(self.coeffs, other.coeffs),
                                 real=self.real and other.real)
        return FourierSeries(self.coeffs * other, real=self.real and complex(other).imag == 0)

    __rmul__ = __mul__

    def conj(self):
        """Series of the complex conjugate function: ``a(n) -> conj(a(-n))``."""
        return FourierSeries(np.conj(self.coeffs[::-1]), real=self.real)

    def shift(self, k):
        """Series of ``chi_k * f``."""
        k = int(k)
        d = self.degree + abs(k)
        out = np.zeros(2 * d + 1, dtype=complex)
        start = d - self.degree + k
        out[start: start + self.coeffs.size] = self.coeffs
        return FourierSeries(out)

    def max_abs_diff(self, other):
        a, b = self._aligned(other)
        return float(np.max(np.abs(a - b)))

    def __repr__(self):
        return f"FourierSeries(degree={self.degree}, real={self.real})"


def coefficients(f, degree):
    """Fourier coefficients ``a(n)``, ``|n| <= degree``, by the rectangle rule."""
    grid = f.grid
    if degree < 0:
        raise ValidationError("degree must be nonnegative", module="circle_fourier")
    if degree > grid.max_degree:
        raise ResolutionError(
            f"degree {degree} needs a grid of at least {2 * (degree + 1)} points, "
            f"got {grid.size}", module="circle_fourier", contract="coefficients")
    spectrum = np.fft.fft(f.values) / grid.size
    idx = np.arange(-degree, degree + 1) % grid.size
    return FourierSeries(spectrum[idx], real=f.real)


def evaluate(s, grid):
    """Sample ``sum_n a(n) exp(i n theta)`` on ``grid``.

    Exact at the grid points for any degree; indices are folded modulo the
    grid size before the inverse FFT.
    """
    bins = np.zeros(grid.size, dtype=complex)
    np.add.at(bins, s.indices % grid.size, s.coeffs)
    values = np.fft.ifft(bins) * grid.size
    return GridFunction(grid, values, real=s.real)


def _interpolant_degree(f, N):
    return min(int(N), f.grid.max_degree)


def fejer_mean(f, N):
    """N-th Fejér (Cesàro) mean: weights ``1 - |n| / (N + 1)`` on ``a(n)``.

    Coefficients beyond the grid's alias-free band are treated as zero.
    """
    if N < 1:
        raise ValidationError("Fejér order must be >= 1", module="circle_fourier",
                              contract="fejer_mean")
    d = _interpolant_degree(f, N)
    s = coefficients(f, d)
    weights = 1.0 - np.abs(s.indices) / (N + 1.0)
    return evaluate(FourierSeries(s.coeffs * weights, real=f.real), f.grid)


def fejer_series(s, N):
    """Coefficient-level Fejér mean of a series (no grid involved)."""
    s = s.truncated(min(s.degree, int(N)))
    weights = 1.0 - np.abs(s.indices) / (N + 1.0)
    return FourierSeries(s.coeffs * weights, real=s.real)


def poisson_series(s, r):
    if not 0.0 < r < 1.0:
        raise DomainError(f"radius must lie in (0, 1), got {r}", module="circle_fourier",
                          contract="poisson")
    return FourierSeries(s.coeffs * r ** np.abs(s.indices).astype(float), real=s.real)


def poisson(s, r, grid):
    """Harmonic extension sampled on the circle of radius ``r``.

    Abel summation: coefficient ``n`` is damped by ``r**|n|``.
    """
    return evaluate(poisson_series(s, r), grid)
