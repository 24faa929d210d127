import numpy as np
import pytest

from elasinv import tensor_core as tc
from elasinv.elasticity import decompose, random_elasticity
from elasinv.genericity import genericity_report

ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def generic_elasticity(rng, threshold=1e-6):
    while True:
        E = random_elasticity(rng)
        if genericity_report(decompose(E).H, threshold).generic:
            return E


def rel(a, b):
    return tc.norm(np.asarray(a) - np.asarray(b)) / max(tc.norm(b), 1e-300)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
