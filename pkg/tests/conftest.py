import pytest
from hypothesis import strategies as st

from mumu.harness.gen import GenConfig, gen

# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def subjects(calc: str, sort: str = "term", max_size: int = 10, **kw):
    """Hypothesis strategy drawing generator seeds and building subjects from them."""
    return st.integers(0, 2**32).map(lambda s: gen(GenConfig(s, max_size, calc, sort, **kw)))


def any_sort(calc: str, max_size: int = 10):
    return st.one_of(*(subjects(calc, s, max_size) for s in ("term", "command", "context")))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def lm_term():
    from mumu import parse_lm

    return parse_lm
