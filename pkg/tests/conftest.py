import pytest
from click.testing import CliRunner

# internal imports
from prepost_nchv.constructions import cabello_scenario, hardy_scenario
from prepost_nchv.optimizer import maximize_cabello_family, maximize_hardy


@pytest.fixture(scope='session')
def cabello():
    return cabello_scenario()


@pytest.fixture(scope='session')
def hardy():
    # generic angles, nowhere near the optimum or the boundary
    return hardy_scenario(0.4, 0.7)


@pytest.fixture(scope='session')
def hardy_optimum():
    return maximize_hardy(grid=64, refine_tol=1e-9)


@pytest.fixture(scope='session')
def cabello_family_optimum():
    return maximize_cabello_family(grid=64, refine_tol=1e-9)


@pytest.fixture
def runner():
    return CliRunner(mix_stderr=False)
