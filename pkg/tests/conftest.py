"""Shared fixtures: a WR-90-like bench geometry and spec factories."""

import math
import sys

import pytest

from transpin import (GuidedModeSpec, ModeFamily, ModeIndex, SurfaceWaveSpec,
                      WaveguideGeometry, cutoff_frequency)
from transpin.constants import SI


@pytest.fixture(scope="session")
def bench_geometry():
    return WaveguideGeometry(a=0.0229, b=0.0102, length=0.37)


@pytest.fixture(scope="session")
def unit_geometry():
    return WaveguideGeometry(a=1.0, b=1.0, length=1.0)


@pytest.fixture(scope="session")
def make_guided(bench_geometry):
    """Factory: guided spec at a frequency given as a multiple of cutoff."""

    def factory(family="TM", m=1, n=1, ratio=math.sqrt(2.0), amplitude=1.0,
                direction=+1, constants=SI, geometry=None):
        geometry = bench_geometry if geometry is None else geometry
        index = ModeIndex(ModeFamily(family), m, n)
        omega = ratio * cutoff_frequency(index, geometry, constants)
        return GuidedModeSpec(geometry, index, omega, amplitude, direction,
                              constants)

    return factory


@pytest.fixture(scope="session")
def make_surface():
    def factory(family="TM", eta=1.5, phi_deg=60.0, omega=1.2e15,
                amplitude=1.0, area=1e-6, direction=+1, constants=SI):
        return SurfaceWaveSpec(ModeFamily(family), eta,
                               math.radians(phi_deg), omega, amplitude, area,
                               direction, constants)

    return factory


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Print one PASS/FAIL line per acceptance criterion after the run."""
    test_acceptance = sys.modules.get("tests.test_acceptance") or sys.modules.get(
        "test_acceptance")
    results = getattr(test_acceptance, "RESULTS", {}) if test_acceptance else {}
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        description, passed = results[number]
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"{status}  criterion {number:2d}  {description}")
