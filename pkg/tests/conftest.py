import numpy as np
import pytest

from xxzmat import fixtures


@pytest.fixture(scope="session")
def p0():
    return fixtures.chain("P0")


@pytest.fixture(scope="session")
def p1():
    return fixtures.chain("P1")


@pytest.fixture(scope="session")
def p0_pair():
    return fixtures.spectral_pair("P0")


@pytest.fixture(scope="session")
def p1_pair():
    return fixtures.spectral_pair("P1")


@pytest.fixture(scope="session")
def p0_periods():
    return fixtures.periods("P0")


@pytest.fixture(scope="session")
def p0_omega():
    return fixtures.omega_evaluator("P0")


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240811)
