import pytest

from nanocob.algebra import InvolutiveAlphabet
from nanocob.words import Nanoword

from _acceptance_report import LINES


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def pm():
    return InvolutiveAlphabet.plus_minus()


@pytest.fixture
def two_free():
    """a<->A, b<->B: two free orbits, representatives a, b."""
    return InvolutiveAlphabet.fixed_point_free(("a", "b"), ("A", "B"))


@pytest.fixture
def three_free():
    return InvolutiveAlphabet.fixed_point_free(("a", "b", "c"), ("A", "B", "C"))


@pytest.fixture
def mixed():
    """One free orbit a<->A plus a fixed point c."""
    return InvolutiveAlphabet.build(("a", "A", "c"), {"a": "A", "A": "a", "c": "c"})


def make_word(ground, letters, **proj):
    return Nanoword.from_names(ground, letters, proj)


@pytest.fixture
def word_factory():
    return make_word
