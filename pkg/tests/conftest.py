import numpy as np
import pytest

from ionspin.drive import resonant_omega
from ionspin.stark import field_in_cleavage_plane, numeric_spectrum
from ionspin.units import MN_GAAS

ACCEPTANCE_LINES: list[str] = []

GAMMA = MN_GAAS.gamma_dipole
E_DC = 1.0e7  # 100 kV/cm
E_AC = 2.5e6  # 25 kV/cm


@pytest.fixture
def record_criterion():
    def _record(number: int, name: str, passed: bool, detail: str = ""):
        line = f"criterion {number:>2} [{'PASS' if passed else 'FAIL'}] {name}"
        if detail:
            line += f" :: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return passed

    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def default_dc():
    return field_in_cleavage_plane(0.0, E_DC)


@pytest.fixture(scope="session")
def default_omega():
    return resonant_omega(E_DC, 0.0, GAMMA)


@pytest.fixture(scope="session")
def xi1_state(default_dc):
    return numeric_spectrum(default_dc, GAMMA).vector(0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
