import os
import sys

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from genkoszul.ring import PolyRing  # noqa: E402

settings.register_profile("desk", max_examples=40, deadline=None)
settings.load_profile("desk")

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


@pytest.fixture
def R2():
    return PolyRing(["x", "y"])


@pytest.fixture
def R3():
    return PolyRing(["x", "y", "z"])


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(RESULTS):
            terminalreporter.write_line(line)
