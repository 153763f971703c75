import sys

import numpy as np
import pytest

from toeplitz_qc.circle import CircleGrid, FourierSeries


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def grid64():
    return CircleGrid(64)


@pytest.fixture
def grid256():
    return CircleGrid(256)


def random_series(rng, degree, real=True, decay=0.0):
    k = np.arange(1, degree + 1)
    pos = (rng.standard_normal(degree) + 1j * rng.standard_normal(degree)) / k ** decay
    if real:
        coeffs = np.concatenate((np.conj(pos[::-1]), [rng.standard_normal()], pos))
        return FourierSeries(coeffs, real=True)
    neg = rng.standard_normal(degree) + 1j * rng.standard_normal(degree)
    return FourierSeries(np.concatenate((neg, [rng.standard_normal()], pos)))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "SUMMARY", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
