import pytest

from lambkit.hydrogenic import BasisSpec, build_pseudostates, hydrogen, muonium
from lambkit.units import load_constants


@pytest.fixture(scope="session")
def constants():
    return load_constants()


@pytest.fixture(scope="session")
def spectrum():
    return build_pseudostates(BasisSpec(100, 0.5))


@pytest.fixture(scope="session")
def spectrum_length():
    return build_pseudostates(BasisSpec(100, 0.5), gauge="length")


@pytest.fixture(scope="session")
def h_atom(constants):
    return hydrogen(constants)


@pytest.fixture(scope="session")
def mu_atom(constants):
    return muonium(constants)
