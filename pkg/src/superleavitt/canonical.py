"""Structured monomials: path pairs interleaved with fermionic blocks.

A normal-form word is split into segments ``x0 W1 x1 ... Wn xn`` where
each ``xi`` is a :class:`PathPair` (``alpha beta*``, or a bare bosonic
vertex) and each ``Wi`` a :class:`FermionBlock` of distinct fermionic
vertices in ascending rank.

:func:`mul_structured` multiplies such monomials by working on segments
directly (path popping, Cuntz-Krieger expansion at the seam, Grassmann
merge) and never calls the rewrite engine, so it serves as an
independent oracle for :func:`superleavitt.algebra.element_mul`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .algebra import RATIONAL, Element, Field, Word
from .graph import BOSONIC, FERMIONIC, SuperGraph
from .rewrite import fermion_killing_vertices, vanishing_edges

__all__ = [
    "FermionBlock",
    "PathPair",
    "ShapeError",
    "StructuredMonomial",
    "conforms_to_monomial_form",
    "from_structured",
    "merge_sign",
    "mul_structured",
    "normal_shape",
    "to_structured",
    "validate",
]


class ShapeError(ValueError):
    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at letter {position})"
        super().__init__(message)
        self.position = position


@dataclass(frozen=True)
class PathPair:
    """``alpha beta*`` as two edge-name tuples, or a bare bosonic vertex.

    ``vertex`` is set exactly when both paths are empty.
    """

    alpha: tuple[str, ...] = ()
    beta: tuple[str, ...] = ()
    vertex: str | None = None

    @property
    def is_vertex(self) -> bool:
        return self.vertex is not None


@dataclass(frozen=True)
class FermionBlock:
    vertices: tuple[str, ...]


Segment = Union[PathPair, FermionBlock]


@dataclass(frozen=True)
class StructuredMonomial:
    coefficient: object
    segments: tuple[Segment, ...]


# -- endpoint helpers -------------------------------------------------------

def _src(g: SuperGraph, p: PathPair) -> str:
    if p.vertex is not None:
        return p.vertex
    if p.alpha:
        return g.edge_map[p.alpha[0]].source
    return g.edge_map[p.beta[-1]].range


def _rng(g: SuperGraph, p: PathPair) -> str:
    if p.vertex is not None:
        return p.vertex
    if p.beta:
        return g.edge_map[p.beta[0]].source
    return g.edge_map[p.alpha[-1]].range


def _is_b(g: SuperGraph, v: str) -> bool:
    return g.parity(v) == BOSONIC


def _bosonic_edge(g: SuperGraph, e: str) -> bool:
    edge = g.edge_map[e]
    return _is_b(g, edge.source) and _is_b(g, edge.range)


# -- validation -------------------------------------------------------------

def _check_path(g: SuperGraph, path: tuple[str, ...], what: str) -> None:
    for e in path:
        if e not in g.edge_map:
            raise ShapeError(f"unknown edge {e!r} in {what}")
    for e, f in zip(path, path[1:]):
        mid = g.edge_map[e].range
        if mid != g.edge_map[f].source:
            raise ShapeError(f"{what} is not a path: {e} then {f}")
        if not _is_b(g, mid):
            raise ShapeError(f"{what} passes through fermionic vertex {mid}")


def _check_pair(g: SuperGraph, p: PathPair) -> None:
    if p.vertex is not None:
        if p.alpha or p.beta:
            raise ShapeError("vertex path pair must have empty paths")
        if p.vertex not in g.vertex_map or not _is_b(g, p.vertex):
            raise ShapeError(f"{p.vertex!r} is not a bosonic vertex")
        return
    if not p.alpha and not p.beta:
        raise ShapeError("empty path pair")
    _check_path(g, p.alpha, "alpha")
    _check_path(g, p.beta, "beta")
    vanishing = set(vanishing_edges(g))
    for e in (*p.alpha, *p.beta):
        if e in vanishing:
            raise ShapeError(f"edge {e!r} is zero in the algebra")
    if p.alpha and p.beta:
        a, b = p.alpha[-1], p.beta[-1]
        ra, rb = g.edge_map[a].range, g.edge_map[b].range
        if ra != rb:
            raise ShapeError(f"r({a}) != r({b})")
        if not _is_b(g, ra):
            raise ShapeError(f"alpha and beta meet at fermionic vertex {ra}")
        if a == b and g.gamma(g.edge_map[a].source) == a:
            raise ShapeError(f"both paths end in the special edge {a}")


def _check_block(g: SuperGraph, blk: FermionBlock) -> None:
    if not blk.vertices:
        raise ShapeError("empty fermionic block")
    ranks = []
    for w in blk.vertices:
        if w not in g.vertex_map or g.parity(w) != FERMIONIC:
            raise ShapeError(f"{w!r} is not a fermionic vertex")
        ranks.append(g.order.lookup(w).rank)
    if any(x >= y for x, y in zip(ranks, ranks[1:])):
        raise ShapeError("fermionic block is not strictly ascending")


def validate(g: SuperGraph, m: StructuredMonomial) -> None:
    """Raise :class:`ShapeError` unless ``m`` has the monomial shape.

    Checked: path pairs are reduced ``alpha beta*`` with a bosonic meeting
    point and no special-special tail; blocks are strictly ascending;
    segments alternate; a path pair next to a block has its endpoint on
    that side bosonic; consecutive path pairs across a block share the
    junction vertex.
    """
    segs = m.segments
    if not segs:
        raise ShapeError("monomial has no segments")
    for i, s in enumerate(segs):
        if isinstance(s, PathPair):
            _check_pair(g, s)
        elif isinstance(s, FermionBlock):
            _check_block(g, s)
        else:
            raise ShapeError(f"segment {i} has unknown type {type(s).__name__}")
        if i and isinstance(s, PathPair) == isinstance(segs[i - 1], PathPair):
            raise ShapeError(f"segments {i - 1} and {i} do not alternate")
    pairs = [(i, s) for i, s in enumerate(segs) if isinstance(s, PathPair)]
    for i, p in pairs:
        if i + 1 < len(segs) and not _is_b(g, _rng(g, p)):
            raise ShapeError(f"path pair {i} ends at a fermionic vertex before a block")
        if i > 0 and not _is_b(g, _src(g, p)):
            raise ShapeError(f"path pair {i} starts at a fermionic vertex after a block")
    for (i, p), (_, q) in zip(pairs, pairs[1:]):
        if _rng(g, p) != _src(g, q):
            raise ShapeError(f"path pairs around block {i + 1} do not share a vertex")


def normal_shape(m: StructuredMonomial) -> str | None:
    """Which nonzero normal-form shape ``m`` has: 'a', 'b', 'c' or None.

    (a) a single path pair with edges, (b) an optional bosonic vertex then
    one fermionic block, (c) a single bosonic vertex.
    """
    segs = m.segments
    kinds = tuple("v" if isinstance(s, PathPair) and s.is_vertex else
                  "p" if isinstance(s, PathPair) else "w" for s in segs)
    return {("p",): "a", ("w",): "b", ("v", "w"): "b", ("v",): "c"}.get(kinds)


# -- conversion -------------------------------------------------------------

def to_structured(g: SuperGraph, x: Word, coefficient=1) -> StructuredMonomial:
    """Split a normal-form word into segments.

    Raises :class:`ShapeError` if the word does not have monomial shape.
    """
    if not x:
        raise ShapeError("empty word")
    segs: list[Segment] = []
    i, n = 0, len(x)
    while i < n:
        start = i
        gen = x[i]
        if gen.is_vertex and gen.parity == FERMIONIC:
            while i < n and x[i].is_vertex and x[i].parity == FERMIONIC:
                i += 1
            segs.append(FermionBlock(tuple(t.name for t in x[start:i])))
            continue
        if gen.is_vertex:
            segs.append(PathPair(vertex=gen.name))
            i += 1
            continue
        alpha, ghosts = [], []
        while i < n and not x[i].is_vertex:
            if x[i].is_ghost:
                ghosts.append(x[i].name)
            elif ghosts:
                raise ShapeError("edge after ghost edge", i)
            else:
                alpha.append(x[i].name)
            i += 1
        segs.append(PathPair(tuple(alpha), tuple(reversed(ghosts))))
    m = StructuredMonomial(coefficient, tuple(segs))
    validate(g, m)
    return m


def _flatten(g: SuperGraph, segs) -> Word:
    order = g.order
    out = []
    for s in segs:
        if isinstance(s, FermionBlock):
            out.extend(order.lookup(w) for w in s.vertices)
        elif s.vertex is not None:
            out.append(order.lookup(s.vertex))
        else:
            out.extend(order.lookup(e) for e in s.alpha)
            out.extend(order.lookup(e, ghost=True) for e in reversed(s.beta))
    return tuple(out)


def from_structured(g: SuperGraph, m: StructuredMonomial, field: Field = RATIONAL) -> Element:
    validate(g, m)
    return Element.word(_flatten(g, m.segments), m.coefficient, field)


def conforms_to_monomial_form(g: SuperGraph, x: Word) -> bool:
    try:
        to_structured(g, x)
    except ShapeError:
        return False
    return True


# -- multiplication ---------------------------------------------------------

def merge_sign(g: SuperGraph, left: tuple[str, ...], right: tuple[str, ...]) -> tuple[int, tuple[str, ...]]:
    """Sort the concatenation of two blocks; return (sign, sorted block).

    Sign is 0 when a vertex repeats.
    """
    seq = left + right
    if len(set(seq)) < len(seq):
        return 0, ()
    ranks = [g.order.lookup(w).rank for w in seq]
    inversions = sum(1 for i in range(len(ranks)) for j in range(i + 1, len(ranks)) if ranks[i] > ranks[j])
    return (-1) ** inversions, tuple(sorted(seq, key=lambda w: g.order.lookup(w).rank))


def _ck2_seam(g: SuperGraph, a: tuple[str, ...], b: tuple[str, ...]) -> list[tuple[int, PathPair]]:
    """Expand ``a b*`` while both end in the same special edge."""
    terms: list[tuple[int, PathPair]] = []
    while a and b and a[-1] == b[-1] and g.gamma(g.edge_map[a[-1]].source) == a[-1]:
        v = g.edge_map[a[-1]].source
        a, b = a[:-1], b[:-1]
        for e in g.out_edges(v):
            if e.name != g.gamma(v) and _is_b(g, e.range):
                terms.append((-1, PathPair(a + (e.name,), b + (e.name,))))
        if not a and not b:
            return [(1, PathPair(vertex=v)), *terms]
    return [(1, PathPair(a, b)), *terms]


def _pair_product(g: SuperGraph, p: PathPair, q: PathPair) -> list[tuple[int, PathPair]]:
    if p.vertex is not None:
        if q.vertex is not None:
            return [(1, p)] if p.vertex == q.vertex else []
        return [(1, q)] if _src(g, q) == p.vertex else []
    if q.vertex is not None:
        return [(1, p)] if _rng(g, p) == q.vertex else []

    a1, b1, a2, b2 = p.alpha, p.beta, q.alpha, q.beta
    last = None
    while b1 and a2:
        if b1[0] != a2[0] or not _bosonic_edge(g, b1[0]):
            return []
        last = b1[0]
        b1, a2 = b1[1:], a2[1:]

    if b1:
        if b2:
            meet = g.edge_map[b1[0]].source
            if meet != g.edge_map[b2[-1]].range or not _is_b(g, meet):
                return []
        return [(1, PathPair(a1, b2 + b1))]
    if a2:
        if a1:
            meet = g.edge_map[a1[-1]].range
            if meet != g.edge_map[a2[0]].source or not _is_b(g, meet):
                return []
        return [(1, PathPair(a1 + a2, b2))]
    if last is None:
        meet = g.edge_map[a1[-1]].range
        if meet != g.edge_map[b2[-1]].range or not _is_b(g, meet):
            return []
        return _ck2_seam(g, a1, b2)
    if a1 and b2:
        return _ck2_seam(g, a1, b2)
    if a1 or b2:
        return [(1, PathPair(a1, b2))]
    return [(1, PathPair(vertex=g.edge_map[last].range))]


def _seam(g: SuperGraph, left: Segment, right: Segment, killers: set[str]):
    """Rewrite one adjacent segment pair.

    Returns None when the pair is already in normal order, otherwise a
    list of (sign, replacement segments); an empty list means zero.
    """
    lp, rp = isinstance(left, PathPair), isinstance(right, PathPair)
    if lp and rp:
        return [(c, [s]) for c, s in _pair_product(g, left, right)]
    if not lp and not rp:
        sign, merged = merge_sign(g, left.vertices, right.vertices)
        return [(sign, [FermionBlock(merged)])] if sign else []
    if lp:
        if not left.is_vertex or left.vertex in killers:
            return []
        return None
    if not right.is_vertex or right.vertex in killers:
        return []
    return [(1, [right, left])]


def mul_structured(g: SuperGraph, m1: StructuredMonomial, m2: StructuredMonomial, field: Field = RATIONAL) -> Element:
    """Product of two structured monomials, without the rewrite engine."""
    validate(g, m1)
    validate(g, m2)
    killers = fermion_killing_vertices(g)
    result = Element.zero(field)
    coefficient = field(m1.coefficient) * field(m2.coefficient)
    work = [(coefficient, list(m1.segments) + list(m2.segments))]
    while work:
        c, segs = work.pop()
        for i in range(len(segs) - 1):
            out = _seam(g, segs[i], segs[i + 1], killers)
            if out is not None:
                for sign, repl in out:
                    work.append((c * sign, segs[:i] + repl + segs[i + 2:]))
                break
        else:
            result = result + Element.word(_flatten(g, segs), c, field)
    return result
