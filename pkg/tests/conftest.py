import sys

import numpy as np
import pytest

from ringspread import (
    make_cat,
    make_coherent,
    make_density_poly,
    make_eigenstate,
    make_trig,
)
from ringspread.corpus import random_states


@pytest.fixture(scope="session")
def catalog():
    return {
        "uniform": make_eigenstate(0),
        "psi_s": make_trig(1, "sin"),
        "psi_c": make_trig(1, "cos"),
        "psi_s2": make_trig(2, "sin"),
        "psi_s4": make_density_poly(0.2),
        "cs": make_coherent(0.0, 0.0),
        "cat": make_cat(0.0, 0.0),
    }


@pytest.fixture(scope="session")
def corpus():
    return random_states(50)


@pytest.fixture(scope="session")
def corpus_phi0():
    return np.random.default_rng(7).uniform(-np.pi, np.pi, 36)


def same_up_to_phase(a, b):
    """Max modulus difference after removing one global phase."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    k = np.argmax(np.abs(b))
    phase = a[k] / b[k]
    phase /= abs(phase)
    return np.max(np.abs(a - phase * b))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.format_results(mod.RESULTS):
        terminalreporter.write_line(line)
