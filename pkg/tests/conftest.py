import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from phishuffle.philaw import builtin  # noqa: E402
from phishuffle.words import Alphabet  # noqa: E402


@pytest.fixture(scope="session")
def ab():
    return Alphabet.of("a b")


@pytest.fixture(scope="session")
def abc():
    return Alphabet.of("a b c")


@pytest.fixture(scope="session")
def stuffle6():
    return builtin("stuffle", alphabet=Alphabet.of("y1..y6 weights 1..6"))


@pytest.fixture(scope="session")
def mod2():
    return builtin("mod2", alphabet=Alphabet.of("y0 y1"))


ACCEPTANCE_LINES: dict = {}


def record_acceptance(number: int, passed: bool, summary: str, detail: str = "") -> str:
    line = f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {summary}"
    if detail:
        line += f"  [{detail}]"
    ACCEPTANCE_LINES[number] = line
    print(line)
    return line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
