"""Mean oscillation over arcs, BMO profiles, VMO trend verdicts and essential ranges.

Arcs are half-open angular intervals ``[start, start + length)``. Integrals over
an arc use the grid points it contains, each with weight ``2 pi / size``, so the
arc mean is the plain average of the samples inside the arc.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from .errors import ResolutionError, ValidationError

__all__ = [
    "Arc",
    "OscillationProfile",
    "EssentialRangeEstimate",
    "arc_mean",
    "mean_oscillation",
    "double_integral_oscillation",
    "bmo_profile",
    "default_depth",
    "vmo_verdict",
    "essential_range",
    "integer_valued_vmo_check",
]

TWO_PI = 2 * np.pi
MIN_ARC_POINTS = 4
DEFAULT_ARC_POINTS = 8


@dataclass(frozen=True)
class Arc:
    start: float
    length: float

    def __post_init__(self):
        if not 0 < self.length <= TWO_PI + 1e-12:
            raise ValidationError(f"arc length must lie in (0, 2pi], got {self.length}",
                                  module="oscillation", contract="Arc")
        object.__setattr__(self, "start", float(self.start) % TWO_PI)

    def indices(self, grid):
        """Indices of grid points inside the arc, in arc order."""
        h = grid.spacing
        first = int(np.ceil(self.start / h - 1e-9))
        count = int(np.ceil((self.start + self.length) / h - 1e-9)) - first
        count = min(count, grid.size)
        return (first + np.arange(count)) % grid.size

    def contains(self, theta):
        return (np.asarray(theta) - self.start) % TWO_PI < self.length


def _arc_values(f, arc):
    idx = arc.indices(f.grid)
    if idx.size < MIN_ARC_POINTS:
        raise ResolutionError(
            f"arc of length {arc.length:.3g} holds {idx.size} grid points; "
            f"need at least {MIN_ARC_POINTS}", module="oscillation", contract="arc_mean")
    return f.values[idx]


def arc_mean(f, arc):
    """Average of ``f`` over ``arc``."""
    v = _arc_values(f, arc)
    mean = np.mean(v)
    return float(mean.real) if f.real else complex(mean)


def mean_oscillation(f, arc, raw=False):
    """Root-mean-square deviation of ``f`` from its arc mean.

    ``raw=True`` returns the unrooted mean square deviation.
    """
    v = _arc_values(f, arc)
    ms = float(np.mean(np.abs(v - np.mean(v)) ** 2))
    return ms if raw else float(np.sqrt(ms))


def double_integral_oscillation(f, arc):
    """``(1 / (2 |I|^2)) int_I int_I |f(t) - f(x)|^2 dx dt`` by direct double sum."""
    v = _arc_values(f, arc)
    diff = v[:, None] - v[None, :]
    return float(np.mean(np.abs(diff) ** 2) / 2)


@dataclass
class OscillationProfile:
    """Worst mean oscillation per dyadic scale ``2 pi 2^-k``, ``k = 0..K``."""

    lengths: np.ndarray
    worst: np.ndarray
    worst_raw: np.ndarray = None

    def __post_init__(self):
        self.lengths = np.asarray(self.lengths, dtype=float)
        self.worst = np.asarray(self.worst, dtype=float)
        if np.any(self.worst < 0):
            raise ValueError("oscillation values must be nonnegative")
        if np.any(np.diff(self.lengths) >= 0):
            raise ValueError("arc lengths must be strictly decreasing")

    @property
    def levels(self):
        return list(zip(self.lengths.tolist(), self.worst.tolist()))

    @property
    def depth(self):
        return len(self.lengths) - 1

    def bmo_estimate(self):
        """Lower estimate of the BMO norm (max over the scanned arcs)."""
        return float(np.max(self.worst))

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["scale", "worst_oscillation"])
        for length, o in self.levels:
            writer.writerow([repr(length), repr(o)])
        return buf.getvalue()

    def to_dict(self):
        return {"scale": self.lengths.tolist(), "worst_oscillation": self.worst.tolist()}


def default_depth(grid, points=DEFAULT_ARC_POINTS):
    """Deepest level whose arcs still hold ``points`` grid points."""
    return int(np.log2(grid.size // points))


def bmo_profile(f, K=None):
    """Worst oscillation over sliding dyadic windows (50% overlap) at each scale.

    Level ``k`` scans arcs of length ``2 pi 2^-k`` starting at every multiple
    of half that length.
    """
    grid = f.grid
    if K is None:
        K = default_depth(grid)
    K = int(K)
    if K < 0:
        raise ValidationError("depth must be nonnegative", module="oscillation")
    if grid.size >> K < MIN_ARC_POINTS:
        raise ResolutionError(
            f"depth {K} leaves {grid.size >> K} points per arc on a {grid.size}-grid; "
            f"need at least {MIN_ARC_POINTS}", module="oscillation", contract="bmo_profile")
    v = f.values
    lengths, worst = [], []
    for k in range(K + 1):
        width = grid.size >> k
        step = max(width // 2, 1)
        starts = np.arange(0, grid.size, step) if k > 0 else np.array([0])
        idx = (starts[:, None] + np.arange(width)[None, :]) % grid.size
        windows = v[idx]
        ms = np.mean(np.abs(windows - windows.mean(axis=1, keepdims=True)) ** 2, axis=1)
        lengths.append(TWO_PI / 2 ** k)
        worst.append(float(np.max(ms)))
    worst_raw = np.array(worst)
    return OscillationProfile(np.array(lengths), np.sqrt(worst_raw), worst_raw)


def vmo_verdict(profile, ratio=0.25, floor=1e-12):
    """Resolution-indexed VMO trend decision.

    VMO-consistent iff the finest level is below ``ratio`` times the worst
    level and the last three levels are non-increasing. Profiles that are
    identically zero (below ``floor``) count as consistent.
    """
    o = profile.worst
    peak = float(np.max(o))
    if peak <= floor:
        return True
    tail = o[-3:]
    nonincreasing = bool(np.all(np.diff(tail) <= 1e-12 * peak))
    return bool(o[-1] < ratio * peak and nonincreasing)


@dataclass
class EssentialRangeEstimate:
    edges: np.ndarray
    occupancy: np.ndarray
    gaps: list = field(default_factory=list)

    @property
    def total_measure(self):
        return float(np.sum(self.occupancy))

    @property
    def occupied_bins(self):
        return int(np.count_nonzero(self.occupancy))

    def clusters(self):
        """Value intervals covered by runs of occupied bins."""
        occ = self.occupancy > 0
        out, start = [], None
        for i, flag in enumerate(occ):
            if flag and start is None:
                start = i
            if not flag and start is not None:
                out.append((float(self.edges[start]), float(self.edges[i])))
                start = None
        if start is not None:
            out.append((float(self.edges[start]), float(self.edges[-1])))
        return out

    @property
    def connected(self):
        return not self.gaps


def essential_range(f, bins=64, gap_bins=2):
    """Measure-weighted histogram of the sampled values of a real function.

    Gaps are maximal runs of empty bins interior to ``[min, max]`` that are
    wider than ``gap_bins`` bin widths.
    """
    if bins < 8:
        raise ValidationError("essential_range needs at least 8 bins", module="oscillation")
    values = f.values.real
    lo, hi = float(np.min(values)), float(np.max(values))
    if hi - lo <= 1e-12 * max(1.0, abs(lo)):
        pad = 0.5
        edges = np.linspace(lo - pad, hi + pad, bins + 1)
    else:
        edges = np.linspace(lo, hi, bins + 1)
    weights = np.full(values.size, f.grid.spacing)
    occupancy, _ = np.histogram(values, bins=edges, weights=weights)
    gaps = []
    occupied = np.nonzero(occupancy > 0)[0]
    for left, right in zip(occupied[:-1], occupied[1:]):
        if right - left - 1 > gap_bins:
            gaps.append((float(edges[left + 1]), float(edges[right])))
    return EssentialRangeEstimate(edges, occupancy, gaps)


@dataclass
class IntegerCheck:
    verdict: str
    integers: list
    lower_bound: float = 0.0
    profile: OscillationProfile = None


def integer_valued_vmo_check(f, tol=0.25, K=None):
    """Classify a sampled function against "integer valued and VMO implies constant".

    ``constant``: every sample within ``tol`` of one integer.
    ``oscillation_lower_bound``: samples cluster near two or more integers; the
    reported bound is the smallest worst-oscillation over all scales, which stays
    away from zero because of the jump between the clusters.
    ``not_integer_valued``: otherwise.
    """
    values = f.values
    nearest = np.round(values.real)
    close = np.all(np.abs(values - nearest) <= tol)
    if not close:
        return IntegerCheck("not_integer_valued", [])
    ints = sorted({int(n) for n in nearest})
    if len(ints) == 1:
        return IntegerCheck("constant", ints)
    profile = bmo_profile(f, K)
    return IntegerCheck("oscillation_lower_bound", ints, float(np.min(profile.worst)), profile)
