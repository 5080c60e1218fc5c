import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bernstein_lab import RealCompactSet, cantor_generation, green_for  # noqa: E402

ACCEPTANCE_LINES: list[str] = []

SEGMENT = RealCompactSet.from_intervals([(-1.0, 1.0)])
PAIR = RealCompactSet.from_intervals([(-1.0, -0.5), (0.5, 1.0)])
UNEVEN = RealCompactSet.from_intervals([(0.0, 1.0), (2.0, 4.0)])
NARROW_GAP = RealCompactSet.from_intervals([(-1.0, -0.1), (0.1, 1.0)])
CANTOR2 = cantor_generation(1 / 3, 2)
CANTOR3 = cantor_generation(1 / 3, 3)


@pytest.fixture(scope="session")
def green_cache():
    cache = {}

    def get(E):
        if E not in cache:
            cache[E] = green_for(E)
        return cache[E]

    return get


@pytest.fixture
def criterion():
    """Record a one-line pass/fail verdict for an acceptance criterion."""

    def record(label: str, passed: bool, detail: str) -> bool:
        ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] criterion {label}: {detail}")
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
