from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from chenfliess.series import VectorSeries

settings.register_profile(
    "default",
    max_examples=200,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

coeffs = st.one_of(
    st.integers(-3, 3).map(Fraction),
    st.fractions(min_value=-2, max_value=2, max_denominator=3),
)
nonzero = st.one_of(st.integers(1, 3), st.integers(-3, -1)).map(Fraction)


@st.composite
def words(draw, m, min_len=0, max_len=3):
    return tuple(draw(st.lists(st.integers(0, m), min_size=min_len, max_size=max_len)))


@st.composite
def vseries(draw, m, n, dim=None, const="any", max_terms=3, max_len=None):
    """Sparse random vector series; ``const`` is any, one, nonzero or zero."""
    dim = m if dim is None else dim
    top = n if max_len is None else min(n, max_len)
    comps = []
    for _ in range(dim):
        d = {}
        for _ in range(draw(st.integers(0, max_terms))):
            if top < 1:
                break
            w = draw(words(m, 1, top))
            d[w] = d.get(w, 0) + draw(coeffs)
        if const == "one":
            d[()] = 1
        elif const == "nonzero":
            d[()] = draw(nonzero)
        elif const == "any":
            d[()] = draw(coeffs)
        comps.append(d)
    return VectorSeries.from_dicts(m, n, comps)


def group_element(m, n, **kw):
    return vseries(m, n, const="one", **kw)


def improper(m, n, dim=None, **kw):
    return vseries(m, n, dim=dim, const="nonzero", **kw)


def proper(m, n, dim=None, **kw):
    return vseries(m, n, dim=dim, const="zero", **kw)


small_m = st.integers(1, 2)
small_n = st.integers(1, 4)


@pytest.fixture
def ps():
    from chenfliess.textio import parse_series

    return parse_series


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
