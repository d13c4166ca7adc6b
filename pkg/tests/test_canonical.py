import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superleavitt.algebra import Element, element_mul
from superleavitt.basis import basis_words
from superleavitt.canonical import (
    FermionBlock,
    PathPair,
    ShapeError,
    StructuredMonomial,
    conforms_to_monomial_form,
    from_structured,
    merge_sign,
    mul_structured,
    normal_shape,
    to_structured,
)
from superleavitt.fixtures import grass
from superleavitt.rewrite import ReductionSystem

from conftest import FIXTURE_NAMES, el, random_graphs, system, word


def mono(*segments, coefficient=1):
    return StructuredMonomial(coefficient, tuple(segments))


def test_to_structured_examples():
    a = system("arrow").graph
    m = to_structured(a, word(a, "v.w"))
    assert m.segments == (PathPair(vertex="v"), FermionBlock(("w",))) and normal_shape(m) == "b"
    r = system("rose2").graph
    m = to_structured(r, word(r, "e1.e1*"))
    assert m.segments == (PathPair(("e1",), ("e1",)),) and normal_shape(m) == "a"
    g = system("grass").graph
    m = to_structured(g, word(g, "w1.w2"))
    assert m.segments == (FermionBlock(("w1", "w2")),) and normal_shape(m) == "b"


def test_beta_is_stored_unreversed():
    g = system("rose2").graph
    m = to_structured(g, word(g, "e1.e1.e2*.e1*"))
    assert m.segments == (PathPair(("e1", "e1"), ("e1", "e2")),)


def test_from_structured_examples():
    loop = system("loop").graph
    with pytest.raises(ShapeError, match="special"):
        from_structured(loop, mono(PathPair(("c",), ("c", "c"))))
    a = system("arrow").graph
    assert from_structured(a, mono(PathPair(("e",), ()))) == el(a, "e")
    g = system("grass").graph
    assert from_structured(g, mono(PathPair(vertex="v"), FermionBlock(("w1",)))) == el(g, "v.w1")


def test_shape_errors():
    loop = system("loop").graph
    assert not conforms_to_monomial_form(loop, word(loop, "c*.c"))
    with pytest.raises(ShapeError) as info:
        to_structured(loop, word(loop, "c*.c"))
    assert info.value.position == 1
    g = system("grass").graph
    with pytest.raises(ShapeError, match="ascending"):
        from_structured(g, mono(FermionBlock(("w2", "w1"))))
    with pytest.raises(ShapeError):
        from_structured(g, mono(FermionBlock(())))


def test_mul_structured_examples():
    loop = system("loop").graph
    got = mul_structured(loop, mono(PathPair(("c",), ())), mono(PathPair((), ("c",))))
    assert got == el(loop, "v")
    g = system("grass").graph
    w1, w2 = mono(FermionBlock(("w1",))), mono(FermionBlock(("w2",)))
    assert mul_structured(g, w2, w1) == el(g, "-w1.w2")
    assert mul_structured(g, w1, w1) == 0


def test_coefficients_multiply():
    g = system("grass").graph
    got = mul_structured(g, mono(FermionBlock(("w2",)), coefficient=3), mono(FermionBlock(("w1",)), coefficient=2))
    assert got == el(g, "-6 w1.w2")


def _bubble_sign(ranks):
    ranks, sign = list(ranks), 1
    for i in range(len(ranks)):
        for j in range(len(ranks) - 1 - i):
            if ranks[j] > ranks[j + 1]:
                ranks[j], ranks[j + 1] = ranks[j + 1], ranks[j]
                sign = -sign
    return sign


@settings(max_examples=200, deadline=None)
@given(st.permutations(range(6)), st.integers(0, 6))
def test_merge_sign_matches_adjacent_transpositions(perm, cut):
    g = grass(0, 6)
    names = [f"w{i + 1}" for i in perm]
    left, right = tuple(sorted(names[:cut])), tuple(names[cut:])
    sign, merged = merge_sign(g, left, right)
    assert merged == tuple(f"w{i + 1}" for i in range(6))
    assert sign == _bubble_sign([int(n[1:]) for n in left + right])


def test_merge_sign_duplicate_is_zero():
    assert merge_sign(grass(0, 3), ("w1", "w2"), ("w2",))[0] == 0


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_round_trip_and_oracle(name):
    rs = system(name)
    g = rs.graph
    words = [w for level in basis_words(rs, 4) for w in level]
    for w in words:
        m = to_structured(g, w)
        assert normal_shape(m) is not None
        assert from_structured(g, m) == Element.word(w)
    short = [w for w in words if len(w) <= 3]
    for x, y in itertools.product(short, short):
        expect = element_mul(rs, Element.word(x), Element.word(y))
        assert mul_structured(g, to_structured(g, x), to_structured(g, y)) == expect, (x, y)


@settings(max_examples=60, deadline=None)
@given(random_graphs(max_vertices=3, max_edges=3), st.integers(0, 2**32 - 1))
def test_oracle_on_random_graphs(g, seed):
    rs = ReductionSystem(g)
    words = [w for level in basis_words(rs, 3) for w in level]
    for w in words:
        assert conforms_to_monomial_form(g, w)
    rng = random.Random(seed)
    for _ in range(40):
        x, y = rng.choice(words), rng.choice(words)
        expect = element_mul(rs, Element.word(x), Element.word(y))
        assert mul_structured(g, to_structured(g, x), to_structured(g, y)) == expect
