from __future__ import annotations

import functools

import pytest
from hypothesis import strategies as st

from superleavitt.algebra import RATIONAL, Element
from superleavitt.fixtures import fixture
from superleavitt.graph import build_graph
from superleavitt.rewrite import ReductionSystem
from superleavitt.textio import parse_element_expr

FIXTURE_NAMES = ["arrow", "grass", "line2", "loop", "rose2", "chainx", "fedge"]


@functools.lru_cache(maxsize=None)
def system(name: str) -> ReductionSystem:
    return ReductionSystem(fixture(name))


def word(g, text: str):
    """The single word spelled by ``text``, e.g. ``"e1.e1*"``."""
    (w,) = parse_element_expr(g, text).terms
    return w


def el(g, text: str) -> Element:
    return parse_element_expr(g, text, RATIONAL)


@pytest.fixture(params=FIXTURE_NAMES)
def fixture_system(request) -> ReductionSystem:
    return system(request.param)


@st.composite
def random_graphs(draw, max_vertices: int = 4, max_edges: int = 4):
    n = draw(st.integers(1, max_vertices))
    parities = draw(st.lists(st.sampled_from("bf"), min_size=n, max_size=n))
    vertices = [(f"x{i}", p) for i, p in enumerate(parities)]
    k = draw(st.integers(0, max_edges))
    ends = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
    pairs = draw(st.lists(ends, min_size=k, max_size=k))
    edges = [(f"e{j}", f"x{a}", f"x{b}") for j, (a, b) in enumerate(pairs)]
    return build_graph(vertices, edges)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for tag in sorted(RESULTS, key=lambda t: int(t[1:])):
            terminalreporter.write_line(RESULTS[tag])
