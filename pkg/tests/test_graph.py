import pytest
from hypothesis import given, settings

from superleavitt.fixtures import fixture, grass
from superleavitt.graph import (
    EdgeKind,
    GraphError,
    b_regular_vertices,
    bosonic_core,
    build_graph,
    edge_kind,
    generator_order,
)

from conftest import random_graphs


def order_names(g):
    return [str(x) for x in generator_order(g)]


def test_arrow_has_no_special_edge():
    assert dict(fixture("arrow").special_map) == {}


def test_rose2_special_is_last_declared_loop():
    assert fixture("rose2").gamma("v") == "e2"


def test_dangling_endpoint_rejected():
    with pytest.raises(GraphError, match="undeclared"):
        build_graph([("v", "b")], [("e", "v", "nowhere")])


@pytest.mark.parametrize(
    "vertices, edges, special, needle",
    [
        ([("v", "b"), ("v", "f")], [], None, "duplicate"),
        ([("v", "b")], [("v", "v", "v")], None, "duplicate"),
        ([("v", "b"), ("u", "b")], [("e", "v", "u")], {"u": "e"}, "not B-regular"),
        ([("v", "b"), ("u", "b")], [("e", "v", "u"), ("f", "u", "u")], {"u": "e"}, "does not start"),
        ([("v", "b"), ("w", "f")], [("e", "v", "v"), ("f", "v", "w")], {"v": "f"}, "fermionic range"),
        ([("v", "b")], [("e", "v", "v")], {"v": "nope"}, "not declared"),
        ([("v", "b")], [], {"q": "e"}, "unknown vertex"),
        ([("1v", "b")], [], None, "invalid name"),
        ([], [], None, "no vertices"),
    ],
)
def test_validation_errors(vertices, edges, special, needle):
    with pytest.raises(GraphError, match=needle):
        build_graph(vertices, edges, special)


def test_error_carries_offending_name():
    with pytest.raises(GraphError) as info:
        build_graph([("v", "b")], [("e", "v", "x")])
    assert info.value.name == "e"


def test_edge_kinds():
    assert edge_kind(fixture("arrow"), "e") is EdgeKind.RIGHT_FERMIONIC
    assert edge_kind(fixture("line2"), "e") is EdgeKind.BOSONIC
    assert edge_kind(fixture("fedge"), "f") is EdgeKind.FERMIONIC
    g = build_graph([("w", "f"), ("v", "b")], [("e", "w", "v")])
    assert edge_kind(g, "e") is EdgeKind.LEFT_FERMIONIC
    with pytest.raises(GraphError):
        edge_kind(g, "zz")


def test_b_regular_vertices():
    assert b_regular_vertices(fixture("arrow")) == set()
    assert b_regular_vertices(fixture("loop")) == {"v"}
    assert b_regular_vertices(grass(1, 2)) == set()


def test_bosonic_core():
    core = bosonic_core(fixture("arrow"))
    assert [v.name for v in core.vertices] == ["v"] and core.edges == ()
    g = fixture("chainx")
    assert bosonic_core(g) == g
    assert bosonic_core(fixture("fedge")).vertices == ()


def test_generator_orders():
    assert order_names(fixture("rose2")) == ["v", "e1", "e2", "e1*", "e2*"]
    assert order_names(fixture("arrow")) == ["v", "w", "e", "e*"]
    assert order_names(grass(1, 2)) == ["v", "w1", "w2"]


def test_explicit_special_moves_to_end_of_siblings():
    g = build_graph([("v", "b"), ("w", "f")], [("e1", "v", "v"), ("f", "v", "w"), ("e2", "v", "v")], {"v": "e1"})
    assert g.gamma("v") == "e1"
    assert order_names(g) == ["v", "w", "e2", "e1", "f", "e2*", "e1*", "f*"]


def test_bosonic_vertices_precede_fermionic_regardless_of_declaration():
    g = build_graph([("w", "f"), ("v", "b")])
    assert order_names(g) == ["v", "w"]


@settings(max_examples=150, deadline=None)
@given(random_graphs())
def test_order_invariants(g):
    order = generator_order(g)
    assert [order.rank(x) for x in order] == list(range(len(g.vertices) + 2 * len(g.edges)))
    kinds = [(x.kind != "vertex") + x.is_ghost + (x.is_vertex and x.parity == 1) * 0.5 for x in order]
    assert kinds == sorted(kinds)
    edges = [x.name for x in order if x.kind == "edge"]
    ghosts = [x.name for x in order if x.is_ghost]
    assert edges == ghosts
    for v in b_regular_vertices(g):
        siblings = [n for n in edges if g.edge_map[n].source == v and g.parity(g.edge_map[n].range) == 0]
        assert siblings[-1] == g.gamma(v)
    assert bosonic_core(bosonic_core(g)) == bosonic_core(g)
    for e in g.edges:
        assert (edge_kind(g, e.name) is EdgeKind.BOSONIC) == (g.parity(e.source) == g.parity(e.range) == 0)
