"""Finite directed graphs with Bosonic and Fermionic vertices.

A :class:`SuperGraph` is the combinatorial input of a Leavitt path
superalgebra: every vertex carries a parity, edges inherit a kind from
their endpoints, and every B-regular vertex has a designated *special*
edge used to orient the Cuntz-Krieger decomposition as a rewrite rule.

The graph also owns the generator alphabet (vertices, edges, ghost edges)
together with its well-order, since both are fixed by declaration order.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping

__all__ = [
    "BOSONIC",
    "FERMIONIC",
    "EdgeKind",
    "Generator",
    "GeneratorOrder",
    "GraphError",
    "Edge",
    "SuperGraph",
    "Vertex",
    "b_regular_vertices",
    "bosonic_core",
    "build_graph",
    "edge_kind",
    "generator_order",
]

BOSONIC = 0
FERMIONIC = 1

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class GraphError(ValueError):
    """Raised for malformed graph descriptions.

    ``name`` is the offending vertex or edge name when one exists, so that
    front ends can map the error back to a source line.
    """

    def __init__(self, message: str, name: str | None = None):
        super().__init__(message)
        self.name = name


class EdgeKind(enum.Enum):
    BOSONIC = "bosonic"
    LEFT_FERMIONIC = "leftFermionic"
    RIGHT_FERMIONIC = "rightFermionic"
    FERMIONIC = "fermionic"


_KIND_BY_PARITIES = {
    (BOSONIC, BOSONIC): EdgeKind.BOSONIC,
    (FERMIONIC, BOSONIC): EdgeKind.LEFT_FERMIONIC,
    (BOSONIC, FERMIONIC): EdgeKind.RIGHT_FERMIONIC,
    (FERMIONIC, FERMIONIC): EdgeKind.FERMIONIC,
}


@dataclass(frozen=True)
class Vertex:
    name: str
    parity: int

    @property
    def is_bosonic(self) -> bool:
        return self.parity == BOSONIC


@dataclass(frozen=True)
class Edge:
    name: str
    source: str
    range: str


@dataclass(frozen=True, eq=False)
class Generator:
    """One letter of the free algebra: a vertex, an edge or a ghost edge.

    Generators are interned per graph, so identity is equality.  ``source``
    and ``range`` are vertex names; for a vertex both are the vertex itself
    and for a ghost edge they are swapped relative to the underlying edge.
    """

    kind: str  # "vertex" | "edge" | "ghost"
    name: str
    rank: int
    source: str
    range: str
    parity: int
    source_parity: int
    range_parity: int

    @property
    def is_vertex(self) -> bool:
        return self.kind == "vertex"

    @property
    def is_ghost(self) -> bool:
        return self.kind == "ghost"

    @property
    def touches_fermion(self) -> bool:
        return self.source_parity == FERMIONIC or self.range_parity == FERMIONIC

    def __str__(self) -> str:
        return self.name + "*" if self.kind == "ghost" else self.name

    def __repr__(self) -> str:
        return f"Generator({self})"


class GeneratorOrder:
    """The total order on generators used for deg-lex comparison.

    Iterating yields generators in ascending rank.
    """

    def __init__(self, generators: Iterable[Generator]):
        self.generators = tuple(generators)
        self._by_key = {(g.name, g.is_ghost): g for g in self.generators}

    def __iter__(self) -> Iterator[Generator]:
        return iter(self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def rank(self, g: Generator) -> int:
        return g.rank

    def lookup(self, name: str, ghost: bool = False) -> Generator:
        try:
            return self._by_key[name, ghost]
        except KeyError:
            what = "ghost of " if ghost else ""
            raise KeyError(f"no generator {what}{name!r}") from None

    def vertex(self, name: str) -> Generator:
        g = self.lookup(name)
        if not g.is_vertex:
            raise KeyError(f"{name!r} is not a vertex")
        return g

    def names(self) -> list[str]:
        return [str(g) for g in self.generators]


@dataclass(frozen=True)
class SuperGraph:
    """Immutable finite graph with parities and special edges.

    ``special`` holds ``(vertex, edge)`` pairs, one per B-regular vertex,
    in vertex declaration order.  Use :func:`build_graph` to construct a
    validated instance.
    """

    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    special: tuple[tuple[str, str], ...] = ()

    @cached_property
    def vertex_map(self) -> dict[str, Vertex]:
        return {v.name: v for v in self.vertices}

    @cached_property
    def edge_map(self) -> dict[str, Edge]:
        return {e.name: e for e in self.edges}

    @cached_property
    def special_map(self) -> Mapping[str, str]:
        return dict(self.special)

    @property
    def bosonic(self) -> list[str]:
        return [v.name for v in self.vertices if v.parity == BOSONIC]

    @property
    def fermionic(self) -> list[str]:
        return [v.name for v in self.vertices if v.parity == FERMIONIC]

    def parity(self, vertex: str) -> int:
        return self.vertex_map[vertex].parity

    def gamma(self, vertex: str) -> str | None:
        return self.special_map.get(vertex)

    def out_edges(self, vertex: str) -> list[Edge]:
        return [e for e in self.edges if e.source == vertex]

    @cached_property
    def order(self) -> GeneratorOrder:
        return _make_order(self)


def _make_order(g: SuperGraph) -> GeneratorOrder:
    vertex_rank = {}
    for parity in (BOSONIC, FERMIONIC):
        for v in g.vertices:
            if v.parity == parity:
                vertex_rank[v.name] = len(vertex_rank)

    def edge_key(item: tuple[int, Edge]) -> tuple:
        index, e = item
        src_bosonic = g.parity(e.source) == BOSONIC
        if src_bosonic:
            to_fermion = g.parity(e.range) == FERMIONIC
            is_gamma = g.gamma(e.source) == e.name
            return (vertex_rank[e.source], to_fermion, is_gamma, index)
        return (vertex_rank[e.source], False, False, index)

    ordered_edges = [e for _, e in sorted(enumerate(g.edges), key=edge_key)]

    gens: list[Generator] = []
    for name in sorted(vertex_rank, key=vertex_rank.__getitem__):
        p = g.parity(name)
        gens.append(Generator("vertex", name, len(gens), name, name, p, p, p))
    for kind in ("edge", "ghost"):
        for e in ordered_edges:
            ps, pr = g.parity(e.source), g.parity(e.range)
            src, rng = (e.source, e.range) if kind == "edge" else (e.range, e.source)
            psrc, prng = (ps, pr) if kind == "edge" else (pr, ps)
            gens.append(Generator(kind, e.name, len(gens), src, rng, (ps + pr) % 2, psrc, prng))
    return GeneratorOrder(gens)


def _parity_value(p) -> int:
    if p in (BOSONIC, FERMIONIC):
        return int(p)
    if isinstance(p, str):
        low = p.lower()
        if low in ("b", "bosonic", "boson"):
            return BOSONIC
        if low in ("f", "fermionic", "fermion"):
            return FERMIONIC
    raise GraphError(f"unknown parity {p!r}")


def build_graph(
    vertices: Iterable[tuple[str, object]],
    edges: Iterable[tuple[str, str, str]] = (),
    special: Mapping[str, str] | None = None,
) -> SuperGraph:
    """Validate a graph description and assign special edges.

    ``vertices`` is a sequence of ``(name, parity)`` with parity given as
    0/1 or ``"bosonic"``/``"fermionic"``; ``edges`` is a sequence of
    ``(name, source, range)``.  Every B-regular vertex without an entry in
    ``special`` gets its last-declared bosonic-range edge.
    """
    vlist = [Vertex(name, _parity_value(p)) for name, p in vertices]
    elist = [Edge(*e) for e in edges]
    if not vlist:
        raise GraphError("graph has no vertices")

    seen: set[str] = set()
    for item in [*vlist, *elist]:
        if not isinstance(item.name, str) or not _IDENT.match(item.name):
            raise GraphError(f"invalid name {item.name!r}", item.name)
        if item.name in seen:
            raise GraphError(f"duplicate name {item.name!r}", item.name)
        seen.add(item.name)

    parity = {v.name: v.parity for v in vlist}
    for e in elist:
        for end in (e.source, e.range):
            if end not in parity:
                raise GraphError(f"edge {e.name!r} uses undeclared vertex {end!r}", e.name)

    def bosonic_range_out(v: str) -> list[Edge]:
        return [e for e in elist if e.source == v and parity[e.range] == BOSONIC]

    regular = [v.name for v in vlist if v.parity == BOSONIC and bosonic_range_out(v.name)]
    special = dict(special or {})
    edge_names = {e.name: e for e in elist}
    for v, e in special.items():
        if v not in parity:
            raise GraphError(f"special edge declared for unknown vertex {v!r}", v)
        if v not in regular:
            raise GraphError(f"vertex {v!r} is not B-regular; it cannot have a special edge", v)
        if e not in edge_names:
            raise GraphError(f"special edge {e!r} is not declared", e)
        edge = edge_names[e]
        if edge.source != v:
            raise GraphError(f"special edge {e!r} does not start at {v!r}", e)
        if parity[edge.range] != BOSONIC:
            raise GraphError(f"special edge {e!r} has fermionic range", e)

    resolved = tuple(
        (v, special[v] if v in special else bosonic_range_out(v)[-1].name) for v in regular
    )
    return SuperGraph(tuple(vlist), tuple(elist), resolved)


def edge_kind(g: SuperGraph, e: str) -> EdgeKind:
    try:
        edge = g.edge_map[e]
    except KeyError:
        raise GraphError(f"unknown edge {e!r}", e) from None
    return _KIND_BY_PARITIES[g.parity(edge.source), g.parity(edge.range)]


def b_regular_vertices(g: SuperGraph) -> set[str]:
    """Bosonic vertices emitting at least one edge with bosonic range.

    These are exactly the vertices where the Cuntz-Krieger decomposition
    is imposed.
    """
    return {
        e.source
        for e in g.edges
        if g.parity(e.source) == BOSONIC and g.parity(e.range) == BOSONIC
    }


def bosonic_core(g: SuperGraph) -> SuperGraph:
    """Subgraph on the bosonic vertices and the edges between them."""
    verts = tuple(v for v in g.vertices if v.parity == BOSONIC)
    keep = {v.name for v in verts}
    edges = tuple(e for e in g.edges if e.source in keep and e.range in keep)
    special = tuple((v, e) for v, e in g.special if v in keep)
    return SuperGraph(verts, edges, special)


def generator_order(g: SuperGraph) -> GeneratorOrder:
    return g.order
