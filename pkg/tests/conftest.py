import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from temporal_reach.model import SparsityPattern, StructuredPair, TemporalNetwork
from temporal_reach.netjson import fixture

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def ex1():
    return fixture("ex1")


@pytest.fixture
def eh3():
    return fixture("eh3")


@pytest.fixture
def fig2():
    return fixture("fig2")


@pytest.fixture
def fig3():
    return fixture("fig3")


@st.composite
def patterns(draw, rows, cols):
    # about one cell in three nonzero
    cells = draw(st.lists(st.sampled_from([True, False, False]),
                          min_size=rows * cols, max_size=rows * cols))
    nz = frozenset((i // cols, i % cols) for i, c in enumerate(cells) if c)
    return SparsityPattern(rows, cols, nz)


@st.composite
def pairs(draw, n=None, max_n=4, max_m=2):
    n = draw(st.integers(1, max_n)) if n is None else n
    m = draw(st.integers(0, max_m))
    return StructuredPair(draw(patterns(n, n)), draw(patterns(n, m)))


@st.composite
def networks(draw, max_n=4, max_N=3, max_m=2):
    n = draw(st.integers(1, max_n))
    N = draw(st.integers(1, max_N))
    return TemporalNetwork(n, tuple(draw(pairs(n=n, max_m=max_m)) for _ in range(N)))


def random_nets(count, seed, max_n=4, max_N=3, max_m=2, min_n=1, min_N=1):
    """Deterministic stream of random networks with varying size and density."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(min_n, max_n + 1))
        N = int(rng.integers(min_N, max_N + 1))
        dens = float(rng.uniform(0.15, 0.6))
        ps = []
        for _ in range(N):
            m = int(rng.integers(0, max_m + 1))
            a = rng.random((n, n)) < dens
            b = rng.random((n, m)) < float(rng.uniform(0.2, 0.7))
            ps.append(StructuredPair(SparsityPattern.from_array(a), SparsityPattern.from_array(b)))
        out.append(TemporalNetwork(n, tuple(ps)))
    return out


_ACCEPTANCE = []


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _ACCEPTANCE.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
