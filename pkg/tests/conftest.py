import re

import numpy as np
import pytest

from vortexbeams import GridSpec, kinematics_from_voltage

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")


def pytest_terminal_summary(terminalreporter):
    """Print one pass/fail line per acceptance criterion after the run."""
    rows = []
    for key, status in (("passed", "PASS"), ("failed", "FAIL"), ("error", "FAIL")):
        for rep in terminalreporter.stats.get(key, []):
            if getattr(rep, "when", "call") != "call" and status == "PASS":
                continue
            m = _CRITERION.search(rep.nodeid)
            if m is None:
                continue
            label = m.group(2).replace("_", " ")
            rows.append((int(m.group(1)), status, label, rep.duration))
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for num, status, label, dur in sorted(rows):
        terminalreporter.write_line(f"[{status}] criterion {num}: {label} ({dur:.1f} s)")


@pytest.fixture(scope="session")
def kin74():
    """200 kV microscope beam, k_perp tuned for a 0.05 nm vortex radius."""
    return kinematics_from_voltage(200.0, 7.4)


@pytest.fixture(scope="session")
def kin30():
    """Same gun, hard-focused beam (more grid fringes per aperture)."""
    return kinematics_from_voltage(200.0, 30.0)


@pytest.fixture()
def grid256(kin30):
    # k_perp * dx = 0.5, comfortably under the pi/4 sampling guard
    return GridSpec.square(256, 0.5 / kin30.k_perp)


@pytest.fixture()
def rng():
    return np.random.default_rng(20260821)
