"""Invertibility, the factorization ``f = chi_n exp(w - i hilbert(w)) exp(i g)``,
and classification of invertible symbols into path components.

Two symbols lie in the same component when their winding numbers agree and the
difference of their phases is bounded with vanishing mean oscillation. On
sampled data the last two properties are only decidable as resolution-indexed
trends, so verdicts are three valued.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circle import FourierSeries, GridFunction, coefficients, evaluate
from .errors import NumericalContractError, PreconditionError, ResolutionError
from .index import DEFAULT_DELTA, winding_number
from .oscillation import OscillationProfile, bmo_profile, vmo_verdict
from .transforms import hilbert

__all__ = [
    "Invertibility",
    "invertibility",
    "unwrap_phase",
    "Factorization",
    "factorize",
    "ComponentFingerprint",
    "Comparison",
    "phase_witness",
    "boundedness_verdict",
    "fingerprint",
    "compare",
    "compare_ladder",
    "classify",
    "classify_ladder",
    "BOUNDED_SUP",
    "TREND_RATE_FLOOR",
]

BOUNDED_SUP = 50.0
TREND_RATE_FLOOR = 0.2
CLOSURE_TOL = 1e-6


@dataclass
class Invertibility:
    min_modulus: float
    invertible_at_resolution: bool


def invertibility(f, delta=DEFAULT_DELTA):
    m = float(np.min(np.abs(f.values)))
    return Invertibility(m, m >= delta)


def unwrap_phase(values, base=0):
    """Continuous argument of a closed curve sampled on a grid.

    Increments between neighbours are principal arguments and must stay below
    pi. The phase at ``base`` is the principal argument there. Returns the
    phase and the closure defect (total turn, in radians) around the circle.
    """
    values = np.asarray(values, dtype=complex)
    n = values.size
    inc = np.angle(np.roll(values, -1) / values)
    worst = float(np.max(np.abs(inc)))
    if worst >= np.pi - 1e-9:
        raise ResolutionError(
            f"phase jumps by {worst:.3f} rad between adjacent samples; refine the grid",
            module="symbol_algebra", contract="phase_unwrap")
    order = (base + np.arange(n)) % n
    phase = np.empty(n)
    phase[order] = np.angle(values[base]) + np.concatenate(([0.0], np.cumsum(inc[order][:-1])))
    return phase, float(np.sum(inc))


@dataclass
class Factorization:
    """``f = chi_winding * exp(w - i hilbert(w)) * exp(i g)`` on a grid."""

    winding: int
    log_modulus: FourierSeries
    phase: FourierSeries
    residual: float
    grid: object = None
    unimodularity: float = 0.0

    def reconstruct(self, grid=None):
        grid = self.grid if grid is None else grid
        w = evaluate(self.log_modulus, grid).values.real
        wt = evaluate(hilbert(self.log_modulus), grid).values.real
        g = evaluate(self.phase, grid).values.real
        values = np.exp(1j * self.winding * grid.points) * np.exp(w - 1j * wt) * np.exp(1j * g)
        return GridFunction(grid, values)

    def alternate_phase(self):
        """Phase ``g + hilbert(w)`` of the form ``chi_n exp(w) exp(i (g + hilbert(w)))``."""
        return self.phase + hilbert(self.log_modulus)


def factorize(f, degree=None, delta=DEFAULT_DELTA, base=0, r=None):
    """Factor an invertible sampled symbol.

    ``w`` is the truncated series of ``ln|f|``; ``u = f exp(-w + i hilbert(w))``
    is unimodular; ``winding`` is the winding number of ``u``; ``g`` is the
    unwrapped phase of ``chi_{-winding} u`` re-expanded to ``degree``. The pair
    ``(w, g)`` is not unique; the contract is the reconstruction residual.
    """
    grid = f.grid
    inv = invertibility(f, delta)
    if not inv.invertible_at_resolution:
        raise PreconditionError(
            f"symbol is not invertible at resolution (min |f| = {inv.min_modulus:.3g})",
            module="symbol_algebra", contract="factorize")
    degree = grid.max_degree if degree is None else int(degree)
    logmod = GridFunction(grid, np.log(np.abs(f.values)), real=True)
    w = coefficients(logmod, degree)
    wv = evaluate(w, grid).values.real
    wt = evaluate(hilbert(w), grid).values.real
    u = f.values * np.exp(-wv + 1j * wt)
    unimodularity = float(np.max(np.abs(np.abs(u) - 1.0)))
    n = winding_number(GridFunction(grid, u), r=r, delta=delta).winding
    v = u * np.exp(-1j * n * grid.points)
    phase, turn = unwrap_phase(v, base)
    if abs(turn) > CLOSURE_TOL:
        raise NumericalContractError(
            f"phase of chi_(-{n}) u does not close (turn {turn:.3g} rad)",
            module="symbol_algebra", contract="factorize")
    g = coefficients(GridFunction(grid, phase, real=True), degree)
    out = Factorization(n, w, g, 0.0, grid, unimodularity)
    out.residual = float(np.max(np.abs(out.reconstruct().values - f.values)))
    return out


def phase_witness(f, winding, base=0):
    """Unwrapped phase ``h`` with ``f = |f| chi_winding exp(i h)``, as a real grid function."""
    grid = f.grid
    v = f.values / np.abs(f.values) * np.exp(-1j * winding * grid.points)
    phase, turn = unwrap_phase(v, base)
    if abs(turn) > CLOSURE_TOL:
        raise NumericalContractError(
            f"phase witness does not close for winding {winding} (turn {turn:.3g} rad)",
            module="symbol_algebra", contract="classify")
    return GridFunction(grid, phase, real=True)


def _centered_sup(witness):
    v = witness.values.real
    return float(np.max(np.abs(v - np.mean(v))))


def boundedness_verdict(sups, bound=BOUNDED_SUP, rate_floor=TREND_RATE_FLOOR):
    """Three-valued boundedness decision.

    ``sups`` is a single sup-norm or a mapping from truncation order ``M`` to
    the sup-norm at that order. On a ladder, ``unbounded_trend`` means the
    sup strictly increases at every rung and its growth rate per unit of
    ``ln ln M`` never falls below ``rate_floor`` times the largest rate, i.e.
    the growth keeps pace with a divergent ``ln ln M`` law instead of
    saturating. Otherwise ``bounded`` when the largest sup is below ``bound``,
    else ``inconclusive``.
    """
    if not isinstance(sups, dict):
        return "bounded" if float(sups) < bound else "inconclusive"
    Ms = sorted(sups)
    s = np.array([sups[M] for M in Ms], dtype=float)
    if len(Ms) >= 3:
        steps = np.diff(s)
        loglog = np.diff(np.log(np.log(np.array(Ms, dtype=float))))
        rates = steps / loglog
        if np.all(steps > 1e-9 * np.max(np.abs(s))) and np.min(rates) >= rate_floor * np.max(rates):
            return "unbounded_trend"
    return "bounded" if np.max(s) < bound else "inconclusive"


@dataclass
class ComponentFingerprint:
    winding: int
    phase_bounded: str
    phase_osc_profile: OscillationProfile
    witness: GridFunction
    vmo_consistent: bool = True
    phase_sups: object = None
    shared: str = None
    reason: str = ""

    def to_dict(self):
        out = {"winding": self.winding, "phase_bounded": self.phase_bounded,
               "vmo_consistent": self.vmo_consistent,
               "phase_osc_profile": self.phase_osc_profile.to_dict()}
        if isinstance(self.phase_sups, dict):
            out["phase_sups"] = {str(k): v for k, v in sorted(self.phase_sups.items())}
        elif self.phase_sups is not None:
            out["phase_sup"] = self.phase_sups
        if self.shared is not None:
            out["shared"] = self.shared
            out["reason"] = self.reason
        return out


@dataclass
class Comparison:
    """Component comparison of two invertible symbols."""

    first: ComponentFingerprint
    second: ComponentFingerprint
    difference: ComponentFingerprint
    verdict: str
    reason: str

    def to_dict(self):
        return {"verdict": self.verdict, "reason": self.reason,
                "first": self.first.to_dict(), "second": self.second.to_dict(),
                "difference": self.difference.to_dict()}


def fingerprint(f, delta=DEFAULT_DELTA, K=None):
    fac = factorize(f, delta=delta)
    witness = phase_witness(f, fac.winding)
    profile = bmo_profile(witness, K)
    sup = _centered_sup(witness)
    return ComponentFingerprint(fac.winding, boundedness_verdict(sup), profile, witness,
                                vmo_verdict(profile), sup)


def _decide(w1, w2, bounded, vmo):
    if w1 != w2:
        return "different", f"winding numbers differ ({w1} vs {w2})"
    if bounded == "unbounded_trend":
        return "different", "phase difference grows without bound across truncation orders"
    if bounded == "bounded" and vmo:
        return "same", "equal winding; bounded phase difference with decaying oscillation"
    return "inconclusive", f"equal winding; phase difference {bounded}, vmo-consistent={vmo}"


def _difference(fp1, fp2, K):
    d = fp1.witness - fp2.witness
    d = GridFunction(d.grid, d.values.real, real=True)
    profile = bmo_profile(d, K)
    return d, profile


def compare(f1, f2, delta=DEFAULT_DELTA, K=None):
    """Decide whether two sampled invertible symbols share a path component."""
    fp1 = fingerprint(f1, delta, K)
    fp2 = fingerprint(f2, delta, K)
    d, profile = _difference(fp1, fp2, K)
    sup = _centered_sup(d)
    bounded = boundedness_verdict(sup)
    vmo = vmo_verdict(profile)
    verdict, reason = _decide(fp1.winding, fp2.winding, bounded, vmo)
    diff = ComponentFingerprint(fp1.winding - fp2.winding, bounded, profile, d, vmo, sup,
                                verdict, reason)
    return Comparison(fp1, fp2, diff, verdict, reason)


def compare_ladder(pairs, delta=DEFAULT_DELTA, K=None):
    """Compare two symbol families realized at increasing truncation orders.

    ``pairs`` maps ``M -> (f1_M, f2_M)``. Winding numbers must agree across the
    ladder; the boundedness verdict uses the growth of the phase-difference
    sup with ``M``; the oscillation profile is the one at the top rung.
    """
    sups, fps = {}, {}
    for M in sorted(pairs):
        f1, f2 = pairs[M]
        fp1 = fingerprint(f1, delta, K)
        fp2 = fingerprint(f2, delta, K)
        d, profile = _difference(fp1, fp2, K)
        sups[M] = _centered_sup(d)
        fps[M] = (fp1, fp2, d, profile)
    windings = {(fps[M][0].winding, fps[M][1].winding) for M in fps}
    if len(windings) != 1:
        raise NumericalContractError(f"winding numbers change along the ladder: {windings}",
                                     module="symbol_algebra", contract="classify")
    top = max(fps)
    fp1, fp2, d, profile = fps[top]
    fp1.phase_sups = {M: fps[M][0].phase_sups for M in fps}
    fp2.phase_sups = {M: fps[M][1].phase_sups for M in fps}
    fp1.phase_bounded = boundedness_verdict(fp1.phase_sups)
    fp2.phase_bounded = boundedness_verdict(fp2.phase_sups)
    bounded = boundedness_verdict(sups)
    vmo = vmo_verdict(profile)
    verdict, reason = _decide(fp1.winding, fp2.winding, bounded, vmo)
    diff = ComponentFingerprint(fp1.winding - fp2.winding, bounded, profile, d, vmo, sups,
                                verdict, reason)
    return Comparison(fp1, fp2, diff, verdict, reason)


def _reference(grid, g_ref, k_ref):
    phase = np.zeros(grid.size) if g_ref is None else g_ref.values.real
    return GridFunction(grid, np.exp(1j * (k_ref * grid.points + phase)))


def _attach(fp, comparison, has_ref):
    if has_ref:
        fp.shared = comparison.verdict
        fp.reason = comparison.reason
        fp.phase_bounded = comparison.difference.phase_bounded
        fp.phase_osc_profile = comparison.difference.phase_osc_profile
        fp.vmo_consistent = comparison.difference.vmo_consistent
        fp.phase_sups = comparison.difference.phase_sups
        fp.witness = comparison.difference.witness
    return fp


def classify(f, g_ref=None, k_ref=None, delta=DEFAULT_DELTA, K=None):
    """Fingerprint of ``f``'s path component.

    With a reference phase ``g_ref`` (and optional reference winding ``k_ref``,
    default: the winding of ``f``) the boundedness and oscillation tests apply
    to the phase difference, and ``shared`` states whether ``f`` and
    ``chi_k exp(i g_ref)`` lie in the same component at this resolution.
    """
    has_ref = g_ref is not None or k_ref is not None
    if not has_ref:
        return fingerprint(f, delta, K)
    k = winding_number(f, delta=delta).winding if k_ref is None else int(k_ref)
    comparison = compare(f, _reference(f.grid, g_ref, k), delta, K)
    return _attach(comparison.first, comparison, True)


def classify_ladder(fs, g_refs=None, k_ref=None, delta=DEFAULT_DELTA, K=None):
    """:func:`classify` over truncation orders; ``fs`` maps ``M`` to a sampled symbol.

    ``g_refs`` is ``None``, a single reference phase per ``M`` (mapping) or a
    callable ``grid -> GridFunction``.
    """
    pairs = {}
    for M, f in fs.items():
        if callable(g_refs):
            g = g_refs(f.grid)
        elif isinstance(g_refs, dict):
            g = g_refs[M]
        else:
            g = g_refs
        k = winding_number(f, delta=delta).winding if k_ref is None else int(k_ref)
        pairs[M] = (f, _reference(f.grid, g, k))
    comparison = compare_ladder(pairs, delta, K)
    return _attach(comparison.first, comparison, True)
