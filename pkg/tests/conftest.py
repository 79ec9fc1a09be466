from fractions import Fraction

import pytest
from hypothesis import strategies as st

from nws_hpm.hpm import preset_case

CASE1_LAMBDA = Fraction(1, 10)


def preset(case: int):
    return preset_case(case, CASE1_LAMBDA if case == 1 else None)


@pytest.fixture(params=[1, 2, 3, 4], ids=lambda c: f"case{c}")
def case_id(request):
    return request.param


fractions = st.builds(
    Fraction,
    st.integers(min_value=-50, max_value=50),
    st.integers(min_value=1, max_value=12),
)


ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


def record_acceptance(number: int, passed: bool, detail: str) -> None:
    ACCEPTANCE_RESULTS[number] = (passed, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        passed, detail = ACCEPTANCE_RESULTS[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}")
