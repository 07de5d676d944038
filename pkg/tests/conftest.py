"""Shared fixtures and the acceptance-criteria summary hook."""

import math

import pytest

from noonfringe import (FilterProfile, FrequencyGrid, JointSpectrum,
                        TaylorMedium, bandwidth_nm_to_angular,
                        self_consistent_calibration,
                        wavelength_nm_to_angular)

# reference experiment: 405 nm pump, 810 nm order-4 filters of 7.3 nm width
OMEGA0 = wavelength_nm_to_angular(810.0)
DELTA_OMEGA = bandwidth_nm_to_angular(7.3, 810.0)
KAPPA_REF = 0.14
VISIBILITY_REF = 0.568


@pytest.fixture(scope="session")
def omega0():
    return OMEGA0


@pytest.fixture(scope="session")
def delta_omega():
    return DELTA_OMEGA


@pytest.fixture(scope="session")
def ref_filter():
    return FilterProfile(center=OMEGA0, fwhm=DELTA_OMEGA, order=4)


@pytest.fixture(scope="session")
def ref_jsa():
    return JointSpectrum(pump_center=2.0 * OMEGA0,
                         pump_fwhm=math.sqrt(KAPPA_REF) * DELTA_OMEGA)


@pytest.fixture(scope="session")
def ref_grid():
    return FrequencyGrid(center=OMEGA0)


@pytest.fixture(scope="session")
def t_self_consistent():
    """phi_prime*delta_omega making (v=0.568, kappa=0.14) satisfy the law."""
    return self_consistent_calibration(VISIBILITY_REF, KAPPA_REF)


@pytest.fixture(scope="session")
def ref_medium(t_self_consistent):
    return TaylorMedium(reference=OMEGA0, phi0=0.0,
                        phi_prime=t_self_consistent / DELTA_OMEGA)


# --------------------------------------------------------------------------
# acceptance summary: one pass/fail line per criterion at the end of the run
# --------------------------------------------------------------------------

_ACCEPTANCE_LINES: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def acceptance():
    """Record a pass/fail line for one acceptance criterion."""

    def record(criterion: int, ok: bool, detail: str) -> None:
        _ACCEPTANCE_LINES[criterion] = (bool(ok), detail)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for criterion in sorted(_ACCEPTANCE_LINES):
        ok, detail = _ACCEPTANCE_LINES[criterion]
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {criterion}: {status} — {detail}")
