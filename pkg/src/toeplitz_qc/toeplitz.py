"""Finite sections of Toeplitz operators and the desk-scale operator checks.

The section of size ``N`` is the ``N x N`` matrix ``a(j - k)``, ``0 <= j, k < N``:
the compression of multiplication by the symbol to the first ``N``
nonnegative-frequency exponentials.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .circle import FourierSeries, evaluate, grid_for_degree
from .errors import AmbiguousThresholdError, ResolutionError, ValidationError
from .factorization import compare, compare_ladder
from .index import DEFAULT_DELTA, operator_index

__all__ = [
    "FiniteToeplitz",
    "CompactPerturbation",
    "SectionReport",
    "finite_section",
    "section_norm",
    "symbol_sup",
    "section_norm_convergence",
    "kernel_count_index_estimate",
    "semicommutator",
    "compact_perturbation_norm_check",
    "operator_component_test",
]

DEFAULT_EPS = 1e-6
GAP_FACTOR = 10.0


@dataclass(frozen=True, eq=False)
class FiniteToeplitz:
    size: int
    entries: np.ndarray
    symbol_ref: FourierSeries

    def __matmul__(self, other):
        other = other.entries if isinstance(other, FiniteToeplitz) else other
        return self.entries @ other

    def is_toeplitz(self):
        e = self.entries
        return all(np.all(np.diagonal(e, offset=d) == e[max(-d, 0), max(d, 0)])
                   for d in range(-self.size + 1, self.size))

    def singular_values(self):
        return scipy.linalg.svdvals(self.entries)


def finite_section(s, N):
    """``N x N`` matrix with entries ``a(j - k)``; ``a(n) = 0`` off the series support."""
    N = int(N)
    if N < 1:
        raise ValidationError("section size must be >= 1", module="toeplitz_numerics",
                              contract="finite_section")
    col = np.array([s[n] for n in range(N)], dtype=complex)
    row = np.array([s[-n] for n in range(N)], dtype=complex)
    return FiniteToeplitz(N, scipy.linalg.toeplitz(col, row), s)


def section_norm(s, N):
    return float(finite_section(s, N).singular_values()[0])


def symbol_sup(s, oversample=64):
    """``||f||_inf`` of a trigonometric polynomial, by sampling a fine grid."""
    grid = grid_for_degree(max(s.degree, 1), oversample=oversample)
    return evaluate(s, grid).sup_norm()


@dataclass
class CompactPerturbation:
    """Finite-rank operator ``sum_i u_i v_i^*`` given by coefficient vectors.

    Vectors shorter than the section are zero padded; longer ones are cut.
    """

    factors: list

    @property
    def rank(self):
        return len(self.factors)

    @classmethod
    def zero(cls):
        return cls([])

    @classmethod
    def random(cls, rank, length, rng, scale=1.0):
        factors = []
        for _ in range(rank):
            u = rng.standard_normal(length) + 1j * rng.standard_normal(length)
            v = rng.standard_normal(length) + 1j * rng.standard_normal(length)
            factors.append((scale * u / np.linalg.norm(u), v / np.linalg.norm(v)))
        return cls(factors)

    def matrix(self, N):
        if self.rank > N:
            raise ValidationError(f"rank {self.rank} exceeds section size {N}",
                                  module="toeplitz_numerics", contract="CompactPerturbation")
        out = np.zeros((N, N), dtype=complex)
        for u, v in self.factors:
            uu = np.zeros(N, dtype=complex)
            vv = np.zeros(N, dtype=complex)
            u = np.asarray(u, dtype=complex)[:N]
            v = np.asarray(v, dtype=complex)[:N]
            uu[: u.size] = u
            vv[: v.size] = v
            out += np.outer(uu, np.conj(vv))
        return out


@dataclass
class SectionReport:
    norms: dict = field(default_factory=dict)
    small_singular_counts: dict = field(default_factory=dict)
    tail_compression_norms: dict = field(default_factory=dict)
    symbol_sup: float = None

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["N", "norm", "count"])
        counts = {}
        for (N, _eps), c in self.small_singular_counts.items():
            counts[N] = c
        for N in sorted(self.norms):
            writer.writerow([N, repr(self.norms[N]), counts.get(N, "")])
        return buf.getvalue()

    def to_dict(self):
        return {"norms": {str(N): v for N, v in sorted(self.norms.items())},
                "small_singular_counts": [
                    {"N": N, "eps": eps, "count": c}
                    for (N, eps), c in sorted(self.small_singular_counts.items())],
                "tail_compression_norms": {str(M): v for M, v in
                                           sorted(self.tail_compression_norms.items())},
                "symbol_sup": self.symbol_sup}

    def summary_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def section_norm_convergence(s, ladder):
    """Spectral norms of the sections along an increasing ladder of sizes."""
    ladder = [int(N) for N in ladder]
    if any(b <= a for a, b in zip(ladder, ladder[1:])):
        raise ValidationError("ladder must be increasing", module="toeplitz_numerics",
                              contract="section_norm_convergence")
    with ThreadPoolExecutor() as pool:
        norms = list(pool.map(lambda N: section_norm(s, N), ladder))
    return SectionReport(norms=dict(zip(ladder, norms)), symbol_sup=symbol_sup(s))


@dataclass
class KernelCount:
    count: int
    predicted: int
    index: int
    singular_values: np.ndarray

    def to_dict(self):
        return {"count": self.count, "predicted": self.predicted, "operator_index": self.index,
                "smallest_singular_values": self.singular_values[-min(10, self.singular_values.size):][::-1].tolist()}


def kernel_count_index_estimate(s, N, eps=DEFAULT_EPS, delta=DEFAULT_DELTA):
    """Count singular values of the section below ``eps``; compare with ``|index|``.

    Square sections always have index 0, so the count of near-zero singular
    values is used as a proxy for ``|dim ker - dim ker*|``; the sign comes
    from the winding number, never from the count. Raises
    :class:`AmbiguousThresholdError` when ``eps`` is within a factor 10 of
    the singular values on either side of the cut.
    """
    sv = finite_section(s, N).singular_values()
    count = int(np.sum(sv < eps))
    ascending = sv[::-1]
    if count < sv.size and ascending[count] < GAP_FACTOR * eps:
        raise AmbiguousThresholdError(
            f"singular value {ascending[count]:.3g} is within a factor {GAP_FACTOR:g} "
            f"of eps = {eps:g}", module="toeplitz_numerics", contract="kernel_count_index_estimate")
    if count > 0 and ascending[count - 1] > eps / GAP_FACTOR:
        raise AmbiguousThresholdError(
            f"singular value {ascending[count - 1]:.3g} is within a factor {GAP_FACTOR:g} "
            f"of eps = {eps:g}", module="toeplitz_numerics", contract="kernel_count_index_estimate")
    grid = grid_for_degree(max(s.degree, 1), oversample=16)
    index = operator_index(evaluate(s, grid), delta=delta)
    return KernelCount(count, abs(index), index, sv)


@dataclass
class Semicommutator:
    matrix: np.ndarray
    tail_norms: dict
    block: int

    def to_dict(self):
        return {"block": self.block, "norm": float(np.linalg.norm(self.matrix, 2)) if self.block else 0.0,
                "tail_norms": {str(M): v for M, v in sorted(self.tail_norms.items())}}


def semicommutator(phi, psi, N, tail_depth=None):
    """``T_phi T_psi - T_{phi psi}`` on the interior block of the size-``N`` sections.

    The interior block drops the last ``deg phi + deg psi`` rows and columns,
    where truncation of the sections leaves artifacts the infinite operator
    does not have. ``tail_norms[M]`` is the spectral norm of the block with
    both indices ``>= M``.
    """
    dphi = phi.effective_degree()
    dpsi = psi.effective_degree()
    N = int(N)
    if N < max(2 * (dphi + dpsi), 1):
        raise ResolutionError(f"N = {N} is below 2 (deg phi + deg psi) = {2 * (dphi + dpsi)}",
                              module="toeplitz_numerics", contract="semicommutator")
    prod = phi * psi
    full = finite_section(phi, N) @ finite_section(psi, N) - finite_section(prod, N).entries
    block = N - dphi - dpsi
    m = full[:block, :block]
    tail_depth = min(block, 2 * (dphi + dpsi) + 4) if tail_depth is None else int(tail_depth)
    tails = {}
    for M in range(tail_depth):
        sub = m[M:, M:]
        tails[M] = float(np.linalg.norm(sub, 2)) if sub.size else 0.0
    return Semicommutator(m, tails, block)


@dataclass
class PerturbationCheck:
    lhs: dict
    rhs: float
    holds: bool
    section_norms: dict

    def to_dict(self):
        return {"lhs": {str(N): v for N, v in sorted(self.lhs.items())}, "rhs": self.rhs,
                "holds": self.holds,
                "section_norms": {str(N): v for N, v in sorted(self.section_norms.items())}}


def compact_perturbation_norm_check(s, K, ladder, rel_tol=0.02):
    """``||T_N + K_N||`` along a ladder against ``||f||_inf``.

    The inequality ``||T + K|| >= ||T||`` holds for the infinite operator but
    can fail for individual finite sections, so only the top rung is tested:
    ``holds`` iff ``lhs(N_top) >= (1 - rel_tol) ||f||_inf``.
    """
    ladder = sorted(int(N) for N in ([ladder] if np.isscalar(ladder) else ladder))
    if K.rank > ladder[0]:
        raise ValidationError(f"rank {K.rank} exceeds section size {ladder[0]}",
                              module="toeplitz_numerics", contract="compact_perturbation_norm_check")
    rhs = symbol_sup(s)
    lhs, plain = {}, {}
    for N in ladder:
        T = finite_section(s, N).entries
        lhs[N] = float(scipy.linalg.svdvals(T + K.matrix(N))[0])
        plain[N] = float(scipy.linalg.svdvals(T)[0])
    holds = lhs[ladder[-1]] >= (1 - rel_tol) * rhs
    return PerturbationCheck(lhs, rhs, bool(holds), plain)


@dataclass
class OperatorVerdict:
    verdict: str
    reason: str
    fingerprints: tuple
    operator_indices: tuple
    perturbation_ranks: tuple

    def to_dict(self):
        return {"verdict": self.verdict, "reason": self.reason,
                "operator_indices": list(self.operator_indices),
                "perturbation_ranks": list(self.perturbation_ranks),
                "fingerprints": [fp.to_dict() for fp in self.fingerprints]}


def operator_component_test(f1, f2, K1=None, K2=None, delta=DEFAULT_DELTA, K=None):
    """Do ``T_f1 + K1`` and ``T_f2 + K2`` lie in the same path component?

    Compact perturbations neither change the Fredholm index nor the component,
    so the decision reduces to comparing the symbols; ``K1`` and ``K2`` are
    recorded but do not enter the computation. ``f1`` and ``f2`` may also be
    mappings ``M -> sampled symbol`` over a truncation ladder.
    """
    K1 = CompactPerturbation.zero() if K1 is None else K1
    K2 = CompactPerturbation.zero() if K2 is None else K2
    if isinstance(f1, dict):
        comparison = compare_ladder({M: (f1[M], f2[M]) for M in f1}, delta, K)
    else:
        comparison = compare(f1, f2, delta, K)
    indices = (-comparison.first.winding, -comparison.second.winding)
    return OperatorVerdict(comparison.verdict, comparison.reason,
                           (comparison.first, comparison.second), indices, (K1.rank, K2.rank))
