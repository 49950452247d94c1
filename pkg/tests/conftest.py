import math

import pytest

from spadesign import elliptic_k_agm


def k_ratio_exact(k):
    """K(k)/K(k') from the AGM integral."""
    return elliptic_k_agm(k) / elliptic_k_agm(math.sqrt(1 - k * k))


@pytest.fixture
def paper_geometry():
    from spadesign import CpwGeometry

    return CpwGeometry(w=10e-6, s=6e-6, h=550e-6, eps_r=11.7)


ACCEPTANCE_RESULTS = []


@pytest.fixture
def criterion(request):
    """Record one acceptance criterion; the line is printed in the summary."""

    def record(number, title, ok, detail=""):
        status = "PASS" if ok else "FAIL"
        ACCEPTANCE_RESULTS.append(f"[{status}] criterion {number:>2}: {title} {detail}".rstrip())
        assert ok, f"criterion {number} failed: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_RESULTS, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
