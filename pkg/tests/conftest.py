from fractions import Fraction

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from l0l1.sequences import FiniteSequence

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")


def rationals(bound=10, max_den=6, nonnegative=False):
    return st.fractions(min_value=0 if nonnegative else -bound, max_value=bound, max_denominator=max_den)


def sequences(max_size=12, **kw):
    return st.lists(rationals(**kw), max_size=max_size).map(lambda v: FiniteSequence(tuple(v)))


def positive_rationals(bound=20, max_den=8):
    return st.fractions(min_value=Fraction(1, max_den), max_value=bound, max_denominator=max_den)


# -- acceptance summary -------------------------------------------------------

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion():
    def record(number: int, ok: bool, text: str) -> None:
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {text}")
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
