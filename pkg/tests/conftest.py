from fractions import Fraction

import pytest
from hypothesis import strategies as st

from monotile.numeric import QS3

small_fractions = st.fractions(min_value=-50, max_value=50, max_denominator=40)
qs3s = st.builds(QS3, small_fractions, small_fractions)
nonzero_qs3s = qs3s.filter(bool)
unit_rationals = st.fractions(min_value=0, max_value=1, max_denominator=60).filter(
    lambda f: 0 < f < 1)


@pytest.fixture(scope="session")
def hat():
    from monotile.tilefamily import named_tile
    return named_tile("hat")


def frac(s: str) -> Fraction:
    return Fraction(s)


# one PASS/FAIL line per acceptance criterion, printed after the run
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[n]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {n}: {text}")
