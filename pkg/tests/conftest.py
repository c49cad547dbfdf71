import os
import time

import pytest
from hypothesis import settings

from koszulkit.randoms import make_rng

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_CRITERIA: dict[int, str] = {}


@pytest.fixture
def rng():
    return make_rng()


class Criterion:
    """Times one acceptance criterion and records its one-line verdict."""

    def __init__(self, number: int, title: str, limit: float, tolerance: str = "exact"):
        self.number, self.title, self.limit, self.tolerance = number, title, limit, tolerance
        self.start = time.perf_counter()

    def finish(self, ok: bool, detail: str) -> float:
        elapsed = time.perf_counter() - self.start
        ok = ok and elapsed < self.limit
        line = (f"[{'PASS' if ok else 'FAIL'}] criterion {self.number:>2} {self.title}: {detail}; "
                f"tolerance {self.tolerance}; {elapsed:.2f} s (limit {self.limit:g} s)")
        _CRITERIA[self.number] = line
        print(line)
        return elapsed


@pytest.fixture
def criterion():
    return Criterion


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for n in sorted(_CRITERIA):
            terminalreporter.write_line(_CRITERIA[n])
