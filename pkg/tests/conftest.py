import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from addcomp.complement import build_blocks  # noqa: E402
from addcomp.greedy import build_sequence  # noqa: E402
from addcomp.sequence import Sequence  # noqa: E402

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def seq4():
    return Sequence((1, 4, 130, 31591))


@pytest.fixture(scope="session")
def seq5():
    return build_sequence(2, extra_terms=1)[0]


@pytest.fixture(scope="session")
def seq6():
    return build_sequence(2, extra_terms=2)[0]


@pytest.fixture(scope="session")
def blocks1(seq4):
    return build_blocks(seq4, 1)


@pytest.fixture(scope="session")
def blocks2(seq4):
    return build_blocks(seq4, 2)


@pytest.fixture(scope="session")
def blocks3(seq5):
    return build_blocks(seq5, 3)


@pytest.fixture(scope="session")
def blocks4(seq6):
    return build_blocks(seq6, 4)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: s.split()[1]):
            terminalreporter.write_line(line)
