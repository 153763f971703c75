import numpy as np
import pytest

from toeplitz_qc.circle import CircleGrid, GridFunction, evaluate
from toeplitz_qc.errors import NumericalContractError, PreconditionError, ResolutionError
from toeplitz_qc.factorization import (boundedness_verdict, classify, classify_ladder, compare,
                                       factorize, invertibility, phase_witness, unwrap_phase)
from toeplitz_qc.symbols import BuiltinH, ExpI, realize
from toeplitz_qc.transforms import hilbert

GRID = CircleGrid(256)
TH = GRID.points


def sym(values):
    return GridFunction(GRID, values)


def test_invertibility_examples():
    out = invertibility(sym(np.exp(3j * TH)))
    assert out.min_modulus == pytest.approx(1.0) and out.invertible_at_resolution
    out = invertibility(GridFunction(GRID, np.cos(TH)))
    assert out.min_modulus < 1e-15 and not out.invertible_at_resolution
    out = invertibility(GridFunction(GRID, 2 + np.cos(TH)))
    assert out.min_modulus == 1.0 and out.invertible_at_resolution


def test_factorize_three_chi_two():
    fac = factorize(sym(3 * np.exp(2j * TH)))
    assert fac.winding == 2
    assert fac.log_modulus[0] == pytest.approx(np.log(3))
    assert np.max(np.abs(np.delete(fac.log_modulus.coeffs, fac.log_modulus.degree))) < 1e-14
    g = evaluate(fac.phase, GRID).values.real
    assert np.max(np.abs(np.angle(np.exp(1j * g)))) < 1e-12
    assert fac.residual < 1e-10


def test_factorize_exp_cos():
    fac = factorize(sym(np.exp(np.cos(TH)) + 0j))
    assert fac.winding == 0 and fac.residual < 1e-10
    assert np.max(np.abs(evaluate(fac.log_modulus, GRID).values - np.cos(TH))) < 1e-13
    # w - i hilbert(w) carries the phase -sin, so g compensates with +sin
    assert np.max(np.abs(evaluate(fac.phase, GRID).values - np.sin(TH))) < 1e-12


def test_factorize_phase_character():
    fac = factorize(sym(np.exp(-1j * TH) * np.exp(0.3j * np.sin(TH))))
    assert fac.winding == -1 and fac.residual < 1e-8
    assert np.max(np.abs(evaluate(fac.phase, GRID).values - 0.3 * np.sin(TH))) < 1e-12


def test_reconstruction_residual_is_sup_error(rng):
    w = rng.standard_normal(3) * 0.2
    vals = np.exp(2j * TH + w[0] * np.cos(TH) + 1j * w[1] * np.sin(2 * TH) + w[2] * np.sin(TH))
    fac = factorize(sym(vals))
    assert fac.residual == np.max(np.abs(fac.reconstruct().values - vals))
    alt = evaluate(fac.alternate_phase(), GRID).values.real
    direct = evaluate(fac.phase, GRID).values.real + evaluate(hilbert(fac.log_modulus), GRID).values.real
    assert np.max(np.abs(alt - direct)) < 1e-14


def test_factorize_errors():
    with pytest.raises(PreconditionError):
        factorize(GridFunction(GRID, np.cos(TH)))
    # principal increments never exceed pi, so the unwrap guard trips exactly at a sign flip
    with pytest.raises(ResolutionError):
        unwrap_phase(np.array([1, 1j, -1j, -1j, 1j]))


def test_unwrap_phase_closure():
    phase, turn = unwrap_phase(np.exp(1j * (np.pi + 2 * np.sin(TH))))
    assert abs(turn) < 1e-12
    assert np.max(np.abs(phase - (np.pi + 2 * np.sin(TH)) + 2 * np.pi * np.round((phase - np.pi - 2 * np.sin(TH)) / (2 * np.pi)))) < 1e-12
    with pytest.raises(NumericalContractError):
        phase_witness(sym(np.exp(1j * TH)), 0)


def test_boundedness_verdict():
    assert boundedness_verdict(3.0) == "bounded"
    assert boundedness_verdict(80.0) == "inconclusive"
    Ms = [10 ** 3, 10 ** 4, 10 ** 5, 10 ** 6]
    lnln = {M: 4 * np.log(np.log(M)) for M in Ms}
    assert boundedness_verdict(lnln) == "unbounded_trend"
    saturating = {M: 2 - 1 / M for M in Ms}
    assert boundedness_verdict(saturating) == "bounded"
    stalled = {10: 1.0, 100: 2.0, 1000: 2.0}
    assert boundedness_verdict(stalled) == "bounded"


def test_classify_same_component():
    f = sym(np.exp(0.5) * np.exp(1j * np.cos(TH)))
    fp = classify(f, g_ref=GridFunction(GRID, np.cos(TH), real=True))
    assert fp.shared == "same" and fp.winding == 0
    assert fp.phase_bounded == "bounded" and fp.vmo_consistent


def test_classify_winding_mismatch():
    fp = classify(sym(np.exp(1j * TH)), g_ref=GridFunction.constant(0.0, GRID), k_ref=0)
    assert fp.shared == "different" and "winding" in fp.reason


def test_classify_without_reference():
    fp = classify(sym(np.exp(2j * TH) * np.exp(0.5j * np.sin(3 * TH))))
    assert fp.winding == 2 and fp.shared is None and fp.phase_bounded == "bounded"
    assert fp.to_dict()["winding"] == 2


def test_classify_ladder_unbounded_trend():
    spec = lambda M: ExpI(BuiltinH(M, 4.0))
    fs = {}
    for M in (10 ** 3, 10 ** 4, 10 ** 5):
        from toeplitz_qc.circle import grid_for_degree
        grid = grid_for_degree(M + 2, oversample=2)
        fs[M] = GridFunction(grid, np.exp(2j * grid.points) * realize(spec(M), grid, exp_factor=1).values)
    fp = classify_ladder(fs, g_refs=lambda grid: GridFunction.constant(0.0, grid), k_ref=2)
    assert fp.phase_bounded == "unbounded_trend"
    assert fp.shared == "different"
    sups = fp.phase_sups
    assert sups[10 ** 5] > sups[10 ** 4] > sups[10 ** 3]


def test_compare_symmetric_verdict(rng):
    f1 = sym(np.exp(1j * TH) * np.exp(0.4 * np.cos(2 * TH)))
    f2 = sym(np.exp(1j * TH) * np.exp(0.7j * np.sin(TH)))
    assert compare(f1, f2).verdict == compare(f2, f1).verdict == "same"
