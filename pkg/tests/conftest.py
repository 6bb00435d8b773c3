import numpy as np
import pytest

from metacrystal import lattice
from metacrystal.band import DispersionSpec


@pytest.fixture
def sawtooth():
    return DispersionSpec.sawtooth(J=1.0, a=1.0)


@pytest.fixture
def sinusoidal():
    return DispersionSpec.sinusoidal(J=1.0, a=1.0)


@pytest.fixture
def nn_custom():
    return DispersionSpec.custom({1: -0.5, -1: -0.5})


@pytest.fixture
def ref_packet():
    """Initial state of the defect and disorder runs: exp[-(n+20)^2/16 + i pi n/2] on 256 sites."""
    return lattice.gaussian_packet(256, -20.0, 16.0, np.pi / 2)


def pytest_terminal_summary(terminalreporter, config):
    from test_acceptance import ACCEPTANCE_KEY
    lines = config.stash.get(ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
