"""Structural predicates on a graph superalgebra, checked two ways.

Graph-side criteria (identity, supercommutativity, regularity, growth)
are computed from the graph; the algebra-side functions verify them on
actual normal forms.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import networkx as nx

from .algebra import RATIONAL, Element, Field, Word, element_mul, parity_of, supercommutator
from .basis import basis_words, total_dimension
from .canonical import PathPair, ShapeError, to_structured
from .graph import BOSONIC, FERMIONIC, SuperGraph, bosonic_core
from .textio import format_element
from .rewrite import InvariantError, ReductionSystem, fermion_killing_vertices, vanishing_edges

__all__ = [
    "AnalysisReport",
    "CycleChainAnalysis",
    "GrowthClass",
    "analyze",
    "cycle_chain_analysis",
    "growth_class",
    "has_identity",
    "in_jacobson_radical",
    "is_supercommutative_graph",
    "is_von_neumann_regular",
    "monomial_class",
    "nilpotency_check",
    "power",
    "project_bosonic",
    "quasi_inverse_witness",
    "random_radical_element",
    "supercommutativity_witness",
    "check_supercommutative_algebra",
]

SAMPLE_COEFFICIENTS = (1, -1, 2, -2, "1/2")


def _system(obj: SuperGraph | ReductionSystem, field: Field = RATIONAL) -> ReductionSystem:
    return obj if isinstance(obj, ReductionSystem) else ReductionSystem(obj, field)


def _graph(obj: SuperGraph | ReductionSystem) -> SuperGraph:
    return obj.graph if isinstance(obj, ReductionSystem) else obj


# -- identity, supercommutativity, regularity -------------------------------

def has_identity(obj: SuperGraph | ReductionSystem) -> tuple[bool, Element | None]:
    """Whether the algebra is unital, with the unit ``sum(v)`` when it is.

    The candidate unit is checked against every generator on both sides.
    """
    g = _graph(obj)
    if g.fermionic:
        return False, None
    rs = _system(obj)
    one = Element(((((rs.order.vertex(v),)), 1) for v in g.bosonic), rs.field)
    for x in rs.order:
        gx = Element.word(x, 1, rs.field)
        if element_mul(rs, one, gx) != gx or element_mul(rs, gx, one) != gx:
            raise InvariantError(f"sum of vertices does not fix {x}")
    return True, one


def is_supercommutative_graph(g: SuperGraph) -> bool:
    """Every surviving edge is fermionic or a solitary bosonic loop.

    Edges that vanish in the algebra are ignored.
    """
    gone = set(vanishing_edges(g))
    live = [e for e in g.edges if e.name not in gone]
    for e in live:
        if g.parity(e.source) == FERMIONIC and g.parity(e.range) == FERMIONIC:
            continue
        if e.source != e.range or g.parity(e.source) != BOSONIC:
            return False
        v = e.source
        if any(f is not e and v in (f.source, f.range) for f in live):
            return False
    return True


def supercommutativity_witness(obj, max_len: int) -> tuple[Word, Word] | None:
    """First pair of basis words violating supercommutativity, if any."""
    rs = _system(obj)
    words = [w for level in basis_words(rs, max_len) for w in level]
    for x, y in itertools.product(words, words):
        if supercommutator(rs, Element.word(x, 1, rs.field), Element.word(y, 1, rs.field)):
            return x, y
    return None


def check_supercommutative_algebra(obj, max_len: int) -> bool:
    return supercommutativity_witness(obj, max_len) is None


def _has_cycle(g: SuperGraph) -> bool:
    dg = nx.MultiDiGraph()
    dg.add_nodes_from(v.name for v in g.vertices)
    dg.add_edges_from((e.source, e.range) for e in g.edges)
    return not nx.is_directed_acyclic_graph(dg)


def is_von_neumann_regular(g: SuperGraph) -> bool:
    return not g.fermionic and not _has_cycle(g)


def quasi_inverse_witness(g: SuperGraph, x: Word) -> Word:
    """``y = beta alpha*`` for a bosonic basis word ``x = alpha beta*``."""
    try:
        m = to_structured(g, x)
    except ShapeError as exc:
        raise ValueError(f"not a monomial: {exc}") from None
    if len(m.segments) != 1 or not isinstance(m.segments[0], PathPair):
        raise ValueError("quasi-inverse needs a single path pair")
    if any(gen.touches_fermion for gen in x):
        raise ValueError("quasi-inverse needs a bosonic word")
    p = m.segments[0]
    if p.is_vertex:
        return tuple(x)
    order = g.order
    return tuple(order.lookup(e) for e in p.beta) + tuple(order.lookup(e, True) for e in reversed(p.alpha))


# -- radical ------------------------------------------------------------------

def _bosonic_word(w: Word) -> bool:
    return not any(gen.parity or gen.touches_fermion for gen in w)


def project_bosonic(g: SuperGraph, x: Element) -> Element:
    """Keep the monomials built only from bosonic vertices and edges."""
    return Element(((w, c) for w, c in x.terms.items() if _bosonic_word(w)), x.field)


def in_jacobson_radical(obj, x: Element) -> bool:
    rs = _system(obj, x.field)
    return not project_bosonic(rs.graph, rs.reduce_element(x))


def monomial_class(g: SuperGraph, x: Word) -> str:
    if not x:
        raise ValueError("empty word")
    s = g.parity(x[0].source) == FERMIONIC
    r = g.parity(x[-1].range) == FERMIONIC
    return {(False, False): "bosonic", (True, False): "leftFermionic",
            (False, True): "rightFermionic", (True, True): "fermionic"}[s, r]


def power(rs: ReductionSystem, x: Element, k: int) -> Element:
    out = x
    for _ in range(k - 1):
        if not out:
            break
        out = element_mul(rs, out, x)
    return out


def random_radical_element(rs: ReductionSystem, rng: random.Random, pool: Sequence[Word], max_terms: int = 4) -> Element:
    """Random combination of up to ``max_terms`` radical basis words."""
    k = rng.randint(1, max_terms)
    terms = [(rng.choice(pool), rs.field(rng.choice(SAMPLE_COEFFICIENTS))) for _ in range(k)]
    return Element(terms, rs.field)


@dataclass
class NilpotencyCheck:
    samples: int
    bound: int
    bound_failures: list[Element] = field(default_factory=list)
    cube_failures: list[Element] = field(default_factory=list)


def nilpotency_check(rs: ReductionSystem, samples: int = 200, seed: int = 0, max_len: int = 3) -> NilpotencyCheck:
    """Sample nonzero radical elements; test ``x^(|F|+2) = 0`` and ``x^3 = 0``.

    Draws that cancel to zero are redrawn.
    """
    g = rs.graph
    bound = len(g.fermionic) + 2
    pool = [w for level in basis_words(rs, max_len) for w in level if not _bosonic_word(w)]
    out = NilpotencyCheck(0, bound)
    if not pool:
        return out
    rng = random.Random(seed)
    attempts = 0
    while out.samples < samples and attempts < 20 * samples:
        attempts += 1
        x = random_radical_element(rs, rng, pool)
        if not x:
            continue
        out.samples += 1
        if power(rs, x, bound):
            out.bound_failures.append(x)
        if power(rs, x, 3):
            out.cube_failures.append(x)
    return out


def _cube_counterexample(rs: ReductionSystem) -> Element | None:
    """Sum of three disjoint fermionic pairs, returned when its cube survives."""
    ws = [rs.order.vertex(w) for w in rs.graph.fermionic]
    if len(ws) < 6:
        return None
    x = Element((((ws[i], ws[i + 1]), 1) for i in (0, 2, 4)), rs.field)
    return x if power(rs, x, 3) else None


# -- cycles and growth --------------------------------------------------------

@dataclass
class CycleChainAnalysis:
    sccs: list[tuple[tuple[str, ...], int]]
    cycles: list[tuple[str, ...]]
    shares_vertex: bool
    reach: dict[tuple[str, ...], list[tuple[str, ...]]]
    d1: int
    d2: int
    exits: dict[tuple[str, ...], list[str]]


def cycle_chain_analysis(g: SuperGraph) -> CycleChainAnalysis:
    """Chains of bosonic cycles: ``d1`` is the longest, ``d2`` the longest
    ending in a cycle with an exit."""
    core = bosonic_core(g)
    decl = {v.name: i for i, v in enumerate(core.vertices)}
    dg = nx.MultiDiGraph()
    dg.add_nodes_from(decl)
    dg.add_edges_from((e.source, e.range) for e in core.edges)

    cond = nx.condensation(dg)
    members = {n: tuple(sorted(cond.nodes[n]["members"], key=decl.__getitem__)) for n in cond}
    internal = {n: 0 for n in cond}
    for e in core.edges:
        a, b = cond.graph["mapping"][e.source], cond.graph["mapping"][e.range]
        if a == b:
            internal[a] += 1

    is_cycle = {n: internal[n] > 0 and internal[n] == len(members[n]) for n in cond}
    shares = any(internal[n] > len(members[n]) for n in cond)

    exits: dict[tuple[str, ...], list[str]] = {}
    for n in cond:
        if is_cycle[n]:
            vs = set(members[n])
            exits[members[n]] = [e.name for e in core.edges if e.source in vs and e.range not in vs]

    chain = {}
    for n in nx.topological_sort(cond):
        best = max((chain[p] for p in cond.predecessors(n)), default=0)
        chain[n] = best + (1 if is_cycle[n] else 0)
    d1 = max((chain[n] for n in cond if is_cycle[n]), default=0)
    d2 = max((chain[n] for n in cond if is_cycle[n] and exits[members[n]]), default=0)

    reach = {}
    for n in cond:
        if is_cycle[n]:
            reach[members[n]] = sorted(
                (members[m] for m in nx.descendants(cond, n) if is_cycle[m]),
                key=lambda t: decl[t[0]],
            )

    order_key = lambda n: decl[members[n][0]]  # noqa: E731
    nodes = sorted(cond, key=order_key)
    return CycleChainAnalysis(
        sccs=[(members[n], internal[n]) for n in nodes],
        cycles=[members[n] for n in nodes if is_cycle[n]],
        shares_vertex=shares,
        reach=reach,
        d1=d1,
        d2=d2,
        exits=exits,
    )


@dataclass
class GrowthClass:
    classification: str  # "finite" | "polynomial" | "exponential"
    gk_estimate: int | None = None
    dimension: int | None = None


def growth_class(obj) -> GrowthClass:
    g = _graph(obj)
    cc = cycle_chain_analysis(g)
    if cc.shares_vertex:
        return GrowthClass("exponential")
    if cc.d1 == 0:
        return GrowthClass("finite", 0, total_dimension(_system(obj)))
    return GrowthClass("polynomial", max(2 * cc.d1 - 1, 2 * cc.d2))


# -- report -------------------------------------------------------------------

@dataclass
class AnalysisReport:
    has_identity: bool
    is_supercommutative: bool
    is_von_neumann_regular: bool
    growth: str
    gk_estimate: int | None
    dimension: int | None
    d1: int
    d2: int
    warnings: list[str] = field(default_factory=list)


def _warnings(rs: ReductionSystem, growth: GrowthClass) -> list[str]:
    g = rs.graph
    out = []
    for v in g.bosonic:
        outs = g.out_edges(v)
        if outs and all(g.parity(e.range) == FERMIONIC for e in outs):
            out.append(f"CK2 not imposed at {v}: it emits only fermionic-range edges")
    for e in vanishing_edges(g):
        out.append(f"edge {e} is zero: its source is B-regular and its range fermionic")
    if g.fermionic:
        for v in sorted(fermion_killing_vertices(g), key=lambda n: rs.order.vertex(n).rank):
            out.append(f"{v} annihilates every fermionic vertex: it lies on a bosonic edge")
        if growth.classification == "polynomial":
            out.append("gk_estimate is the Leavitt path algebra formula on the bosonic core")
    if not g.edges and g.fermionic and growth.dimension is not None:
        n, m = len(g.bosonic), len(g.fermionic)
        tensor = n * 2**m
        if tensor != growth.dimension:
            out.append(
                f"discrepancy: edge-free graph has dimension {growth.dimension}, "
                f"tensor-product reading gives {n}*2^{m} = {tensor}"
            )
    x = _cube_counterexample(rs)
    if x is not None:
        out.append(f"discrepancy: {format_element(x)} lies in the radical but its cube is nonzero")
    return out


def analyze(g: SuperGraph, field: Field = RATIONAL, nil_samples: int = 0, seed: int = 0) -> AnalysisReport:
    rs = ReductionSystem(g, field)
    growth = growth_class(rs)
    cc = cycle_chain_analysis(g)
    unital, _ = has_identity(rs)
    warnings = _warnings(rs, growth)
    if nil_samples:
        nc = nilpotency_check(rs, nil_samples, seed)
        if nc.bound_failures:
            warnings.append(f"{len(nc.bound_failures)} sampled radical elements have x^{nc.bound} != 0")
        if nc.cube_failures:
            warnings.append(f"discrepancy: {len(nc.cube_failures)} sampled radical elements have x^3 != 0")
    return AnalysisReport(
        has_identity=unital,
        is_supercommutative=is_supercommutative_graph(g),
        is_von_neumann_regular=is_von_neumann_regular(g),
        growth=growth.classification,
        gk_estimate=growth.gk_estimate,
        dimension=growth.dimension,
        d1=cc.d1,
        d2=cc.d2,
        warnings=warnings,
    )
