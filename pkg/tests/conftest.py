import pytest
from hypothesis import HealthCheck, settings, strategies as st

from qcongruence.arith import BiPoly, QLaurent, QPoly

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

small_ints = st.integers(-6, 6)
scalars = st.one_of(small_ints, st.fractions(min_value=-5, max_value=5, max_denominator=7))


def qpolys(max_len=7, elements=scalars):
    return st.lists(elements, max_size=max_len).map(QPoly)


def nonzero_qpolys(max_len=7):
    return qpolys(max_len).filter(bool)


def laurents(max_len=5):
    return st.builds(QLaurent, qpolys(max_len), st.integers(-4, 4))


def bipolys(max_a=3, max_len=4):
    return st.builds(BiPoly, st.lists(laurents(max_len), max_size=max_a), st.integers(-2, 2))


def int_bipolys(max_a=3, max_len=4):
    lau = st.builds(QLaurent, qpolys(max_len, small_ints), st.integers(-3, 3))
    return st.builds(BiPoly, st.lists(lau, max_size=max_a), st.integers(-2, 2))


def pytest_configure(config):
    config._acceptance_lines = []


@pytest.fixture
def criterion(request):
    """Report one acceptance line: criterion(number, ok, summary)."""
    lines = request.config._acceptance_lines

    def report(number, ok, summary):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {summary}"
        lines.append(line)
        tr = request.config.pluginmanager.getplugin("terminalreporter")
        if tr is not None:
            tr.write_line("")
            tr.write_line(line)
        return ok

    return report


def pytest_terminal_summary(terminalreporter, config):
    lines = getattr(config, "_acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split(":")[0].split()[1])):
            terminalreporter.write_line(line)
