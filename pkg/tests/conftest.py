import pytest

from susy_pauli import aux_ode
from susy_pauli.fields import FieldProfile, PhysicalConfig
from susy_pauli.grid import GridSpec

CFG = PhysicalConfig(1.0)


@pytest.fixture(scope="session")
def cfg():
    return CFG


@pytest.fixture(scope="session")
def sinus_profile():
    return FieldProfile.sinusoidal(1.0, 0.5, 1.0, 0.0, 0.0)


@pytest.fixture(scope="session")
def sinus_sol(sinus_profile):
    return aux_ode.solve(sinus_profile, CFG, 0.0, 10.0, tol=1e-12)


@pytest.fixture(scope="session")
def driven_sol():
    """Sinusoidal B and D together, so every coefficient moves."""
    prof = FieldProfile.sinusoidal(1.0, 0.3, 2.0, 0.2, 0.3)
    return aux_ode.solve(prof, CFG, 0.0, 4.0, tol=1e-12)


@pytest.fixture(scope="session")
def landau_sol():
    """Constant B = 1, D = 0 with f = exp(it)."""
    return aux_ode.solve(FieldProfile.constant(1.0, 0.0), CFG, 0.0, 10.0, tol=1e-12)


@pytest.fixture(scope="session")
def grid64():
    return GridSpec(64, 20.0)


# acceptance summary: one line per criterion, printed after the run
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
