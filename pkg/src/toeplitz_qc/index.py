"""Winding numbers of Poisson-smoothed symbols and the Fredholm index bridge.

``ind(f)`` is the winding number about 0 of ``theta -> f_hat(r e^{i theta})``.
The curve is smoothed at several radii and the answers must agree; any
disagreement raises instead of returning a guess. The operator index of the
Toeplitz operator with an invertible symbol is ``-ind(f)``.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .circle import coefficients, poisson
from .errors import DomainError, IllConditionedError, NumericalContractError, PreconditionError, ResolutionError

__all__ = [
    "DEFAULT_DELTA",
    "WindingResult",
    "default_radius",
    "stability_radii",
    "curve_winding",
    "winding_number",
    "index_additivity_check",
    "operator_index",
    "require_invertible",
]

DEFAULT_DELTA = 1e-6
STABILITY_RADII = (0.9, 0.99)


@dataclass
class WindingResult:
    winding: int
    min_curve_modulus: float
    radius_used: float
    stability: dict = field(default_factory=dict)

    @property
    def stable(self):
        return all(v == self.winding for v in self.stability.values())


def default_radius(grid):
    return 1.0 - 2 * np.pi / grid.size


def stability_radii(grid, r=None):
    r = default_radius(grid) if r is None else r
    return tuple(sorted(set(STABILITY_RADII) | {float(r)}))


def require_invertible(f, delta=DEFAULT_DELTA, module="fredholm_index"):
    m = float(np.min(np.abs(f.values)))
    if m < delta:
        raise PreconditionError(
            f"symbol is not invertible at resolution: min |f| = {m:.3g} < delta = {delta:g}",
            module=module, contract="invertible_at_resolution")
    return m


def curve_winding(values, delta=DEFAULT_DELTA):
    """Winding number about 0 of a closed sampled curve.

    Sums the principal-argument increments between consecutive samples
    (closing back to the first); each increment must stay below pi.
    Returns ``(winding, min_modulus)``.
    """
    values = np.asarray(values, dtype=complex)
    m = float(np.min(np.abs(values)))
    if m < delta:
        raise IllConditionedError(
            f"curve passes within {m:.3g} of the origin (delta = {delta:g})",
            module="fredholm_index", contract="winding_number")
    inc = np.angle(np.roll(values, -1) / values)
    worst = float(np.max(np.abs(inc)))
    if worst >= np.pi - 1e-9:
        raise ResolutionError(
            f"argument jumps by {worst:.3f} rad between adjacent samples; refine the grid",
            module="fredholm_index", contract="winding_number")
    total = float(np.sum(inc)) / (2 * np.pi)
    n = int(np.rint(total))
    if abs(total - n) > 1e-6:
        raise NumericalContractError(f"accumulated argument {total:.9f} turns is not an integer",
                                     module="fredholm_index", contract="winding_number")
    return n, m


def _smoothed_winding(series, grid, r, delta):
    return curve_winding(poisson(series, r, grid).values, delta)


def winding_number(f, r=None, delta=DEFAULT_DELTA, radii=None):
    """Winding number of the Poisson-smoothed symbol, checked across radii."""
    grid = f.grid
    require_invertible(f, delta)
    r = default_radius(grid) if r is None else float(r)
    if not 0.0 < r < 1.0:
        raise DomainError(f"radius must lie in (0, 1), got {r}", module="fredholm_index",
                          contract="winding_number")
    radii = stability_radii(grid, r) if radii is None else tuple(sorted(set(radii) | {r}))
    series = coefficients(f, grid.max_degree)
    with ThreadPoolExecutor(max_workers=len(radii)) as pool:
        results = list(pool.map(lambda rho: _smoothed_winding(series, grid, rho, delta), radii))
    stability = {rho: res[0] for rho, res in zip(radii, results)}
    winding, min_mod = dict(zip(radii, results))[r]
    if len(set(stability.values())) != 1:
        raise NumericalContractError(
            f"winding number depends on the smoothing radius: {stability}",
            module="fredholm_index", contract="winding_number")
    return WindingResult(winding, min_mod, r, stability)


def index_additivity_check(f, g, **kwargs):
    """Winding numbers of ``f``, ``g`` and ``f g`` and whether they add up."""
    ind_f = winding_number(f, **kwargs).winding
    ind_g = winding_number(g, **kwargs).winding
    ind_fg = winding_number(f * g, **kwargs).winding
    return {"ind_f": ind_f, "ind_g": ind_g, "ind_fg": ind_fg,
            "additive": ind_fg == ind_f + ind_g}


def operator_index(f, **kwargs):
    """Predicted Fredholm index ``dim ker - dim ker*`` of the Toeplitz operator."""
    return -winding_number(f, **kwargs).winding
