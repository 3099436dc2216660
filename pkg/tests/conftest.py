from __future__ import annotations

import pytest

from .oracles import zn_ring


@pytest.fixture(scope="session")
def z12():
    return zn_ring(12)


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(test_acceptance.LINES.items()):
            terminalreporter.write_line(line)
