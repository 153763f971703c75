"""Executable acceptance criteria.

Each ``criterion_*`` function runs one group of checks at fixed seeds and fixed
tolerances and returns a :class:`CriterionResult`. ``run_all`` is what the
``verify-all`` command and ``tests/test_acceptance.py`` execute.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .circle import CircleGrid, FourierSeries, GridFunction, coefficients, evaluate, grid_for_degree
from .example_h import example_h, sup_at_zero_ladder, uniform_convergence_off_zero
from .factorization import classify, compare, compare_ladder, factorize
from .index import index_additivity_check, winding_number
from .oscillation import (Arc, bmo_profile, double_integral_oscillation, mean_oscillation,
                          vmo_verdict)
from .symbols import BuiltinH, ExpI, realize
from .toeplitz import (CompactPerturbation, compact_perturbation_norm_check,
                       kernel_count_index_estimate, operator_component_test, section_norm,
                       semicommutator)
from .transforms import conjugation, double_hilbert_check, hilbert, outer_function_report

__all__ = ["Check", "CriterionResult", "CRITERIA", "run_all", "random_real_series"]

SEED = 20240611
H_LADDER = (10 ** 3, 10 ** 4, 10 ** 5, 10 ** 6)


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class CriterionResult:
    number: int
    title: str
    checks: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def add(self, name, passed, detail=""):
        self.checks.append(Check(name, bool(passed), detail))

    def lines(self):
        status = "PASS" if self.passed else "FAIL"
        out = [f"[{status}] criterion {self.number}: {self.title} ({self.seconds:.1f}s)"]
        for c in self.checks:
            out.append(f"    [{'PASS' if c.passed else 'FAIL'}] {c.name}: {c.detail}")
        return out

    def to_dict(self):
        return {"criterion": self.number, "title": self.title, "passed": self.passed,
                "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail}
                           for c in self.checks]}


def random_real_series(rng, degree, scale=1.0, decay=0.0, mean=True):
    """Random real trig polynomial of exactly ``degree`` with ``|a(k)| ~ scale / k**decay``."""
    k = np.arange(1, degree + 1)
    amp = scale / k ** decay
    pos = amp * (rng.standard_normal(degree) + 1j * rng.standard_normal(degree)) / 2
    coeffs = np.concatenate((np.conj(pos[::-1]),
                             [rng.standard_normal() * scale if mean else 0.0], pos))
    return FourierSeries(coeffs, real=True)


def _phase_series(rng, degree, size):
    """Real series with sup-norm of roughly ``size``."""
    s = random_real_series(rng, degree, 1.0, decay=1.0, mean=False)
    peak = evaluate(s, grid_for_degree(degree, 16)).sup_norm()
    return s * (size / peak)


def _symbol(grid, n, w=None, g=None):
    """Samples of ``chi_n exp(w) exp(i g)``."""
    v = np.exp(1j * n * grid.points)
    if w is not None:
        v = v * np.exp(evaluate(w, grid).values.real)
    if g is not None:
        v = v * np.exp(1j * evaluate(g, grid).values.real)
    return GridFunction(grid, v)


def criterion_1():
    res = CriterionResult(1, "transform identities on 50 random real trig polynomials")
    rng = np.random.default_rng(SEED + 1)
    grid = CircleGrid(512)
    worst_dh, worst_conj, worst_l2, contraction = 0.0, 0.0, 0.0, True
    for _ in range(50):
        degree = int(rng.integers(1, 33))
        s = random_real_series(rng, degree)
        s = coefficients(evaluate(s, grid), 32)
        worst_dh = max(worst_dh, double_hilbert_check(s).worst)
        worst_conj = max(worst_conj, (conjugation(s) + hilbert(s)).max_abs_diff(FourierSeries.zeros(0)))
        lhs, rhs = hilbert(s).l2_squared(), s.l2_squared()
        contraction &= lhs <= rhs * (1 + 1e-15)
        worst_l2 = max(worst_l2, abs(rhs - abs(s[0]) ** 2 - lhs) / rhs)
    res.add("hilbert(hilbert(s)) = -s + a(0)", worst_dh < 1e-12, f"max residual {worst_dh:.2e} < 1e-12")
    res.add("conjugation = -hilbert", worst_conj == 0.0, f"max |conj + hilbert| = {worst_conj:.1e} (exact)")
    res.add("L2 contraction", contraction and worst_l2 < 1e-12,
            f"||Hs||^2 <= ||s||^2, defect equals |a(0)|^2 to {worst_l2:.1e}")
    return res


def criterion_2():
    res = CriterionResult(2, "outer factor exp(w - i hilbert(w)) is one-sided with modulus exp(w)")
    rng = np.random.default_rng(SEED + 2)
    worst_side, worst_mod = 0.0, 0.0
    for _ in range(20):
        degree = int(rng.integers(1, 9))
        w = random_real_series(rng, degree, 0.5, decay=0.5)
        rep = outer_function_report(w)
        worst_side = max(worst_side, rep.identity_residuals["offside_ratio"])
        worst_mod = max(worst_mod, rep.identity_residuals["modulus"])
    res.add("positive-index mass / peak", worst_side < 1e-9, f"max {worst_side:.2e} < 1e-9")
    res.add("|outer| = exp(w)", worst_mod < 1e-10, f"max error {worst_mod:.2e} < 1e-10")
    return res


def _random_invertible(rng, grid):
    n = int(rng.integers(-3, 4))
    if rng.random() < 0.5:
        q = random_real_series(rng, int(rng.integers(1, 6)), 1.0, mean=False)
        q = FourierSeries(q.coeffs + 1j * random_real_series(rng, q.degree, 1.0, mean=False).coeffs)
        q = q * (1.0 / np.sum(np.abs(q.coeffs)))
        v = (3.0 + evaluate(q, grid).values) * np.exp(1j * n * grid.points)
        return GridFunction(grid, v), n
    w = _phase_series(rng, int(rng.integers(1, 6)), 0.5)
    g = _phase_series(rng, int(rng.integers(1, 6)), 0.5)
    return _symbol(grid, n, w, g), n


def criterion_3():
    res = CriterionResult(3, "index table, ind(exp(ig)) = 0 and additivity")
    grid = CircleGrid(256)
    table_ok, bad = True, []
    for n in range(-8, 9):
        wr = winding_number(_symbol(grid, n))
        if wr.winding != n or any(v != n for v in wr.stability.values()) or len(wr.stability) != 3:
            table_ok, bad = False, bad + [n]
    res.add("winding(chi_n) = n, n in -8..8, all three radii", table_ok,
            "exact" if table_ok else f"failures at {bad}")
    rng = np.random.default_rng(SEED + 3)
    zeros = [winding_number(_symbol(grid, 0, g=_phase_series(rng, int(rng.integers(1, 9)), 1.0))).winding
             for _ in range(20)]
    res.add("ind(exp(ig)) = 0 for 20 band-limited g", all(z == 0 for z in zeros), f"windings {set(zeros)}")
    failures = 0
    for _ in range(50):
        f, _nf = _random_invertible(rng, grid)
        g, _ng = _random_invertible(rng, grid)
        out = index_additivity_check(f, g)
        failures += not out["additive"]
    res.add("ind(fg) = ind(f) + ind(g) on 50 random pairs", failures == 0, f"{failures} failures")
    return res


def criterion_4():
    res = CriterionResult(4, "factorization round trip on 30 symbols chi_n exp(w) exp(ig)")
    rng = np.random.default_rng(SEED + 4)
    grid = CircleGrid(512)
    wrong, worst = [], 0.0
    for _ in range(30):
        n = int(rng.integers(-4, 5))
        w = _phase_series(rng, int(rng.integers(1, 9)), 0.6)
        g = _phase_series(rng, int(rng.integers(1, 9)), 0.6)
        fac = factorize(_symbol(grid, n, w, g))
        if fac.winding != n:
            wrong.append((n, fac.winding))
        worst = max(worst, fac.residual)
    res.add("recovered winding exact", not wrong, "all 30 exact" if not wrong else f"mismatches {wrong}")
    res.add("reconstruction residual", worst < 1e-8, f"max {worst:.2e} < 1e-8")
    return res


def _triangle(grid):
    return GridFunction(grid, np.abs(grid.points - np.pi), real=True)


def criterion_5():
    res = CriterionResult(5, "oscillation identities, non-VMO indicator, VMO conjugates")
    rng = np.random.default_rng(SEED + 5)
    grid = CircleGrid(1024)
    worst = 0.0
    for _ in range(20):
        s = random_real_series(rng, int(rng.integers(1, 17)))
        s = FourierSeries(s.coeffs + 1j * random_real_series(rng, s.degree).coeffs)
        f = evaluate(s, grid)
        arc = Arc(rng.uniform(0, 2 * np.pi), rng.uniform(0.1, 2 * np.pi))
        a, b = mean_oscillation(f, arc, raw=True), double_integral_oscillation(f, arc)
        worst = max(worst, abs(a - b))
    res.add("double-integral identity", worst < 1e-10, f"max residual {worst:.2e} < 1e-10")
    ind = GridFunction(grid, (grid.points < np.pi).astype(float), real=True)
    prof = bmo_profile(ind)
    lowest = float(np.min(prof.worst))
    res.add("semicircle indicator profile >= 0.4 at every scale", lowest >= 0.4,
            f"min over {prof.depth + 1} scales = {lowest:.4f}")
    # Hölder-1/2 conjugates decay like sqrt(arc length): give them two more dyadic levels
    grid = CircleGrid(4096)
    verdicts = []
    for i in range(10):
        if i < 8:
            v = evaluate(random_real_series(rng, int(rng.integers(1, 9)), decay=1.0), grid)
        elif i == 8:
            v = _triangle(grid)
        else:
            v = GridFunction(grid, np.sqrt(np.abs(np.sin(grid.points))), real=True)
        h = evaluate(hilbert(coefficients(v, grid.max_degree)), grid)
        verdicts.append(vmo_verdict(bmo_profile(h)))
    res.add("hilbert of continuous functions VMO-consistent (10 cases)", all(verdicts),
            f"{sum(verdicts)}/10 consistent")
    return res


def criterion_6():
    res = CriterionResult(6, "example H: coefficients, Fejér identity, ln ln growth, off-zero convergence")
    ex = example_h(512)
    res.add("coefficients of hilbert(g_M) = -1/(2 k ln k)", ex.coefficient_residual == 0.0,
            f"max gap {ex.coefficient_residual:.1e} (exact)")
    # identity exactly as stated: h - sigma(h) - (1/(M+1)) sum cos(jx)/ln j
    res.add("Fejér identity as stated: |h - sigma(h) - (1/(M+1)) sum cos/ln| < 1e-8",
            ex.fejer_residual_stated < 1e-8, f"sup = {ex.fejer_residual_stated:.3e} at M=512")
    res.add("Fejér identity with the sign the weights produce: |h - sigma(h) + (1/(M+1)) sum cos/ln|",
            ex.fejer_residual < 1e-8, f"sup = {ex.fejer_residual:.3e} at M=512")
    sums = sup_at_zero_ladder((10 ** 3, 10 ** 6))
    growth = sums[10 ** 6] - sums[10 ** 3]
    model = np.log(np.log(1e6)) - np.log(np.log(1e3))
    rel = abs(growth - model) / model
    res.add("sup_at_zero(1e6) - sup_at_zero(1e3) vs ln ln 1e6 - ln ln 1e3", rel < 0.10,
            f"{growth:.5f} vs {model:.5f}, relative error {rel:.2e} < 0.10")
    table = uniform_convergence_off_zero((64, 128, 256, 512), (np.pi / 2, 3 * np.pi / 2))
    res.add("sup over [pi/2, 3pi/2] of |h_2M - h_M| strictly decreasing", table.strictly_decreasing,
            ", ".join(f"{s:.2e}" for s in table.sups))
    return res


def criterion_7():
    res = CriterionResult(7, "finite sections: norm, kernel count, semicommutators, compact perturbations")
    two_cos = FourierSeries.cos_sin([1.0], const=2.0)
    norm = section_norm(two_cos, 1024)
    res.add("||section(2 + cos, 1024)|| in [2.97, 3.0]", 2.97 <= norm <= 3.0, f"{norm:.8f}")
    bad = []
    for N in (64, 128, 256):
        for n in range(-8, 9):
            kc = kernel_count_index_estimate(FourierSeries.char(n), N, 1e-6)
            if kc.count != abs(n) or kc.predicted != abs(n) or kc.index != -n:
                bad.append((N, n, kc.count, kc.predicted))
    res.add("kernel count = |index| for chi_n, |n| <= 8, N = 64..256", not bad,
            "exact" if not bad else f"mismatches {bad}")
    rng = np.random.default_rng(SEED + 7)
    phi = FourierSeries(rng.integers(-5, 6, 7) + 1j * rng.integers(-5, 6, 7))
    psi = FourierSeries.from_dict({k: complex(rng.integers(-5, 6), rng.integers(-5, 6)) for k in range(4)})
    sc = semicommutator(phi, psi, 64)
    res.add("semicommutator = 0 for analytic psi", np.all(sc.matrix == 0),
            f"max entry {np.max(np.abs(sc.matrix)):.1e} (exact)")
    sc = semicommutator(FourierSeries.char(1), FourierSeries.char(-1), 16)
    expected = np.zeros((sc.block, sc.block))
    expected[0, 0] = -1.0
    rank_one = np.array_equal(sc.matrix, expected) and all(v == 0 for M, v in sc.tail_norms.items() if M >= 1)
    res.add("semicommutator(chi_1, chi_-1) = -P0 exactly", rank_one, f"block {sc.block}, tails {sc.tail_norms}")
    corner = CompactPerturbation([(np.array([0.0, -1.0]), np.array([1.0]))])
    chk = compact_perturbation_norm_check(FourierSeries.char(1), corner, (64, 128, 256, 512))
    res.add("||T(chi_1) + K|| >= 0.98 at N=512, K removes the corner", chk.holds,
            f"lhs {chk.lhs[512]:.6f} vs 0.98 * {chk.rhs:.6f}")
    K = CompactPerturbation.random(2, 32, rng, scale=2.0)
    chk = compact_perturbation_norm_check(two_cos, K, (64, 128, 256, 512))
    res.add("||T(2 + cos) + K|| >= 0.98 * 3 at N=512, random rank 2", chk.holds,
            f"lhs {chk.lhs[512]:.6f} vs 0.98 * {chk.rhs:.6f}")
    return res


def _h_ladder(beta, Ms=H_LADDER):
    out = {}
    for M in Ms:
        grid = grid_for_degree(M, oversample=2)
        out[M] = realize(ExpI(BuiltinH(M, beta)), grid, exp_factor=1)
    return out


def criterion_8():
    res = CriterionResult(8, "classification of path components")
    rng = np.random.default_rng(SEED + 8)
    grid = CircleGrid(1024)
    verdicts = []
    pairs = []
    for _ in range(20):
        n = int(rng.integers(-3, 4))
        w = _phase_series(rng, int(rng.integers(1, 7)), 0.5)
        g = _phase_series(rng, int(rng.integers(1, 7)), 0.8)
        q = _phase_series(rng, int(rng.integers(1, 7)), 0.5)
        p = _phase_series(rng, int(rng.integers(1, 7)), 0.8)
        f1 = _symbol(grid, n, w, g)
        f2 = f1 * _symbol(grid, 0, q, p)
        pairs.append((f1, f2))
        verdicts.append(compare(f1, f2).verdict)
    res.add("same component: exp(QC_R) factors and bounded phases (20 pairs)",
            all(v == "same" for v in verdicts), f"verdicts {sorted(set(verdicts))}")
    mism = []
    for f1, _ in pairs[:10]:
        k = int(rng.choice([-2, -1, 1, 2]))
        mism.append(compare(f1, f1 * _symbol(grid, k)).verdict)
    res.add("different component on winding mismatch (10 pairs)",
            all(v == "different" for v in mism), f"verdicts {sorted(set(mism))}")
    fp = classify(_symbol(grid, 1), g_ref=GridFunction.constant(0.0, grid), k_ref=0)
    res.add("chi_1 vs chi_0", fp.shared == "different", fp.reason)
    trend = []
    for beta, gamma in ((4.0, 3.0), (1.0, -0.5)):
        f1, f2 = _h_ladder(beta), _h_ladder(gamma)
        cmp = compare_ladder({M: (f1[M], f2[M]) for M in H_LADDER})
        trend.append((beta, gamma, cmp.difference.phase_bounded, cmp.verdict))
    res.add("beta H vs gamma H, |beta - gamma| >= 1, M = 1e3..1e6: unbounded_trend",
            all(t[2] == "unbounded_trend" and t[3] == "different" for t in trend),
            "; ".join(f"({b:g}, {c:g}) -> {v}/{d}" for b, c, v, d in trend))
    stable = True
    for f1, f2 in pairs[:5] + [(pairs[0][0], pairs[0][0] * _symbol(grid, 1))]:
        base = operator_component_test(f1, f2).verdict
        for _ in range(2):
            K1 = CompactPerturbation.random(int(rng.integers(1, 5)), 64, rng, scale=rng.uniform(0.1, 10))
            K2 = CompactPerturbation.random(int(rng.integers(1, 5)), 64, rng, scale=rng.uniform(0.1, 10))
            stable &= operator_component_test(f1, f2, K1, K2).verdict == base
    res.add("operator component verdict invariant under rank <= 4 perturbations", stable,
            "6 symbol pairs x 2 random perturbation pairs")
    one = {M: GridFunction.constant(1.0, f.grid) for M, f in _h_ladder(4.0).items()}
    ladder = _h_ladder(4.0)
    K = CompactPerturbation.random(3, 64, rng)
    op = operator_component_test(ladder, one, K, None)
    res.add("T(exp(4i H)) + K vs identity: different at resolution", op.verdict == "different", op.reason)
    return res


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4,
            5: criterion_5, 6: criterion_6, 7: criterion_7, 8: criterion_8}


def run_criterion(number):
    start = time.perf_counter()
    res = CRITERIA[number]()
    res.seconds = time.perf_counter() - start
    return res


def run_all(numbers=None, echo=None):
    results = []
    for number in (sorted(CRITERIA) if numbers is None else numbers):
        res = run_criterion(number)
        if echo is not None:
            for line in res.lines():
                echo(line)
        results.append(res)
    return results
