import numpy as np
import pytest

from cyclic_dunkl.operators import OperatorContext
from cyclic_dunkl.series import TruncatedSeries

ACCEPTANCE_LINES = []


def random_valid_nu(rng, m, margin=0.01, spread=3.0):
    k = np.arange(1, m)
    return tuple(-1 + k / m + margin + rng.uniform(0, spread, m - 1))


def random_series(rng, order, degree=None):
    degree = order if degree is None else degree
    c = np.zeros(order + 1, dtype=complex)
    c[: degree + 1] = rng.uniform(-1, 1, degree + 1) + 1j * rng.uniform(-1, 1, degree + 1)
    return TruncatedSeries(c)


@pytest.fixture
def rng():
    return np.random.default_rng(20261019)


@pytest.fixture
def ctx_m2():
    return OperatorContext.build(2, [0.5])


@pytest.fixture
def ctx_m3():
    return OperatorContext.build(3, [1 / 3, 2 / 3])


@pytest.fixture
def acceptance_log():
    def log(criterion, passed, detail):
        line = f"ACCEPTANCE {criterion}: {'PASS' if passed else 'FAIL'} {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)

    return log


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
