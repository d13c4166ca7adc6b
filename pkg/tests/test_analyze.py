import itertools
import random

import pytest

from superleavitt.algebra import Element, element_mul, parity_of
from superleavitt.analyze import (
    analyze,
    check_supercommutative_algebra,
    cycle_chain_analysis,
    growth_class,
    has_identity,
    in_jacobson_radical,
    is_supercommutative_graph,
    is_von_neumann_regular,
    monomial_class,
    nilpotency_check,
    power,
    project_bosonic,
    quasi_inverse_witness,
    supercommutativity_witness,
)
from superleavitt.basis import basis_words
from superleavitt.fixtures import grass
from superleavitt.graph import build_graph
from superleavitt.rewrite import ReductionSystem

from conftest import FIXTURE_NAMES, el, system, word


def names(w):
    return [str(x) for x in w]


def test_identity():
    ok, one = has_identity(system("line2"))
    assert ok and one == el(system("line2").graph, "v1 + v2")
    assert has_identity(system("arrow")) == (False, None)
    assert has_identity(grass(1, 2)) == (False, None)


def test_supercommutative_predicate():
    assert is_supercommutative_graph(grass(1, 2))
    assert is_supercommutative_graph(system("loop").graph)
    assert not is_supercommutative_graph(system("arrow").graph)


def test_supercommutative_algebra_check():
    assert check_supercommutative_algebra(system("grass"), 3)
    assert check_supercommutative_algebra(system("loop"), 3)
    x, y = supercommutativity_witness(system("line2"), 2)
    assert (names(x), names(y)) == (["v1"], ["e"])


def test_von_neumann_regularity():
    assert is_von_neumann_regular(system("line2").graph)
    assert not is_von_neumann_regular(system("loop").graph)
    assert not is_von_neumann_regular(system("arrow").graph)


def test_quasi_inverse_examples():
    g = system("line2").graph
    rs = system("line2")
    y = quasi_inverse_witness(g, word(g, "e"))
    assert names(y) == ["e*"]
    assert rs.reduce_word(word(g, "e") + y + word(g, "e")) == el(g, "e")
    assert names(quasi_inverse_witness(g, word(g, "v1"))) == ["v1"]
    lg = system("loop").graph
    y = quasi_inverse_witness(lg, word(lg, "c.c"))
    assert names(y) == ["c*", "c*"]
    x = word(lg, "c.c")
    assert system("loop").reduce_word(x + y + x) == el(lg, "c.c")
    a = system("arrow").graph
    with pytest.raises(ValueError):
        quasi_inverse_witness(a, word(a, "e"))


def test_projection_and_radical():
    a = system("arrow").graph
    assert project_bosonic(a, el(a, "v + e")) == el(a, "v")
    g = system("grass").graph
    assert project_bosonic(g, el(g, "w1.w2")) == 0
    c = system("chainx").graph
    x = el(c, "c1.a + 2 a*.c1* - v2")
    assert project_bosonic(c, x) == x
    for text, member in (("e", True), ("v", False), ("e*", True), ("w", True), ("v.w", True)):
        assert in_jacobson_radical(system("arrow"), el(a, text)) is member
    assert in_jacobson_radical(system("grass"), el(g, "w1.w2"))


def test_monomial_class():
    a = system("arrow").graph
    assert monomial_class(a, word(a, "e")) == "rightFermionic"
    assert monomial_class(a, word(a, "e*")) == "leftFermionic"
    g = system("grass").graph
    assert monomial_class(g, word(g, "w1")) == "fermionic"
    ln = system("line2").graph
    assert monomial_class(ln, word(ln, "e")) == "bosonic"


def test_cycle_chains():
    cc = cycle_chain_analysis(system("chainx").graph)
    assert (cc.d1, cc.d2, cc.shares_vertex) == (2, 1, False)
    assert cc.exits == {("v1",): ["a"], ("v2",): []}
    assert cycle_chain_analysis(system("rose2").graph).shares_vertex
    cc = cycle_chain_analysis(system("line2").graph)
    assert (cc.d1, cc.d2) == (0, 0)


def test_fermionic_range_edge_is_not_an_exit():
    g = build_graph([("v", "b"), ("w", "f")], [("c", "v", "v"), ("f", "v", "w")])
    cc = cycle_chain_analysis(g)
    assert (cc.d1, cc.d2) == (1, 0)


def test_growth_classes():
    assert growth_class(system("rose2")).classification == "exponential"
    gc = growth_class(system("chainx"))
    assert (gc.classification, gc.gk_estimate) == ("polynomial", 3)
    gc = growth_class(system("loop"))
    assert (gc.classification, gc.gk_estimate) == ("polynomial", 1)
    gc = growth_class(system("arrow"))
    assert (gc.classification, gc.gk_estimate, gc.dimension) == ("finite", 0, 5)


def test_analyze_reports():
    r = analyze(system("arrow").graph)
    assert (r.has_identity, r.is_supercommutative, r.is_von_neumann_regular, r.growth, r.dimension) == (
        False, False, False, "finite", 5)
    assert any("CK2 not imposed at v" in w for w in r.warnings)
    r = analyze(system("line2").graph)
    assert (r.has_identity, r.is_von_neumann_regular, r.growth, r.dimension) == (True, True, "finite", 4)
    r = analyze(system("chainx").graph)
    assert (r.growth, r.gk_estimate, r.d1, r.d2) == ("polynomial", 3, 2, 1)


def test_grass_discrepancy_warning():
    r = analyze(grass(1, 3))
    assert r.dimension == 15
    assert any(w.startswith("discrepancy:") and "= 8" in w for w in r.warnings)


def test_cube_counterexample_reported():
    r = analyze(grass(0, 6))
    assert any("cube" in w for w in r.warnings)
    rs = ReductionSystem(grass(0, 6))
    x = el(rs.graph, "w1.w2 + w3.w4 + w5.w6")
    assert power(rs, x, 3) == el(rs.graph, "6 w1.w2.w3.w4.w5.w6")
    assert power(rs, x, 4) == 0


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_radical_is_an_ideal(name):
    rs = system(name)
    g = rs.graph
    words = [w for level in basis_words(rs, 3) for w in level]
    inside = [w for w in words if in_jacobson_radical(rs, Element.word(w))]
    for x, y in itertools.product(inside, words):
        assert in_jacobson_radical(rs, element_mul(rs, Element.word(x), Element.word(y)))
        assert in_jacobson_radical(rs, element_mul(rs, Element.word(y), Element.word(x)))


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_odd_radical_elements_square_to_zero(name):
    rs = system(name)
    odd = [w for level in basis_words(rs, 3) for w in level
           if parity_of(w) == 1 and in_jacobson_radical(rs, Element.word(w))]
    rng = random.Random(7)
    for _ in range(100 if odd else 0):
        x = Element([(rng.choice(odd), rng.choice((1, -1, 2))) for _ in range(rng.randint(1, 4))])
        assert power(rs, x, 2) == 0


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_nil_bound(name):
    nc = nilpotency_check(system(name), samples=50, seed=2)
    assert not nc.bound_failures


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_predicate_matches_algebra(name):
    rs = system(name)
    assert is_supercommutative_graph(rs.graph) == check_supercommutative_algebra(rs, 3)


def test_invariants_on_fixtures():
    for name in FIXTURE_NAMES:
        g = system(name).graph
        cc = cycle_chain_analysis(g)
        assert cc.d2 <= cc.d1
        gc = growth_class(g)
        assert (gc.gk_estimate == 0) == (cc.d1 == 0 and not cc.shares_vertex)
