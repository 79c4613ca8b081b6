import sys

import pytest

from pentaloss.code import build_pentagon_code
from pentaloss.strategy import NonPreannouncedRecursion


@pytest.fixture(scope="session")
def code():
    return build_pentagon_code()


@pytest.fixture(scope="session")
def recursion():
    return NonPreannouncedRecursion()



def pytest_terminal_summary(terminalreporter):
    mod = next((m for name, m in sys.modules.items() if name.endswith("test_acceptance")), None)
    results = getattr(mod, "RESULTS", [])
    if results:
        terminalreporter.section("acceptance criteria")
        for line in results:
            terminalreporter.write_line(line)
