"""Reduction system of a Leavitt path superalgebra.

Every defining relation is oriented so that its right-hand side is
smaller in deg-lex order than the pattern it replaces.  All patterns have
length one or two, so irreducibility of a word is a local property of
adjacent letters.

Semantics adopted for fermionic vertices: a fermionic vertex next to any
edge or ghost edge annihilates it, and edges/ghosts meeting at a
fermionic vertex multiply to zero.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .algebra import RATIONAL, Element, Field, Word, deglex_key
from .graph import BOSONIC, FERMIONIC, Generator, SuperGraph, b_regular_vertices

__all__ = [
    "ConfluenceReport",
    "InvariantError",
    "ReductionSystem",
    "Rule",
    "STRATEGIES",
    "build_reduction_system",
    "check_confluence",
    "is_irreducible",
    "reduce_element",
    "reduce_word",
    "fermion_killing_vertices",
    "vanishing_edges",
]

STRATEGIES = ("leftmost", "rightmost", "random")


class InvariantError(RuntimeError):
    """An internal consistency check failed (non-descending step, bad shape)."""


@dataclass(frozen=True)
class Rule:
    pattern: Word
    replacement: Element
    label: str

    def __str__(self) -> str:
        lhs = ".".join(map(str, self.pattern))
        rhs = " + ".join(
            f"{c}*{'.'.join(map(str, w))}" for w, c in self.replacement.sorted_terms()
        ) or "0"
        return f"[{self.label}] {lhs} -> {rhs}"


@dataclass
class ReductionStats:
    steps: int = 0


def vanishing_edges(g: SuperGraph) -> list[str]:
    """Edges that are zero in the algebra although no pair rule kills them.

    An edge ``e`` with bosonic B-regular source ``v`` and fermionic range
    satisfies ``e = v e = sum(f f* e) = 0`` because every term of the
    Cuntz-Krieger sum at ``v`` ends in a ghost orthogonal to ``e``.
    """
    regular = b_regular_vertices(g)
    return [
        e.name for e in g.edges
        if e.source in regular and g.parity(e.range) == FERMIONIC
    ]


def fermion_killing_vertices(g: SuperGraph) -> set[str]:
    """Bosonic vertices whose product with any fermionic vertex is zero.

    If ``v`` is the source of a bosonic edge then ``v`` is a sum of terms
    ``e e*`` and ``w e = 0``; if ``v`` is the range of a bosonic edge then
    ``v = e* e`` and ``w e* = 0``.  Either way ``w v = v w = 0``.
    """
    out = set()
    for e in g.edges:
        if g.parity(e.source) == BOSONIC and g.parity(e.range) == BOSONIC:
            out.update((e.source, e.range))
    return out


class ReductionSystem:
    """Oriented relations of the superalgebra over ``graph``.

    Rules are indexed by their one- or two-letter pattern.  Reduction works
    on elements, so multi-term replacements (the Cuntz-Krieger sum and the
    Grassmann sign) carry exact coefficients.
    """

    def __init__(self, graph: SuperGraph, field: Field = RATIONAL):
        self.graph = graph
        self.field = field
        self.order = graph.order
        self.single: dict[Generator, Rule] = {}
        self.pair: dict[tuple[Generator, Generator], Rule] = {}
        self._nf_cache: dict[Word, Element] = {}
        self._killers = fermion_killing_vertices(graph)
        self._build()

    @property
    def rules(self) -> list[Rule]:
        return [*self.single.values(), *self.pair.values()]

    def __len__(self) -> int:
        return len(self.single) + len(self.pair)

    # -- construction -----------------------------------------------------

    def _el(self, *terms: tuple[Sequence[Generator], int]) -> Element:
        return Element(((tuple(w), c) for w, c in terms), self.field)

    def _build(self) -> None:
        g, order = self.graph, self.order
        gens = list(order)
        zero = Element.zero(self.field)

        for name in vanishing_edges(g):
            for ghost in (False, True):
                x = order.lookup(name, ghost)
                self.single[x] = Rule((x,), zero, "vanish")

        for x, y in itertools.product(gens, gens):
            rule = self._pair_rule(x, y)
            if rule is not None:
                self.pair[x, y] = rule

    def _pair_rule(self, x: Generator, y: Generator) -> Rule | None:
        g, order = self.graph, self.order
        zero = Element.zero(self.field)
        pat = (x, y)

        if x.is_vertex and y.is_vertex:
            if x.parity == BOSONIC and y.parity == BOSONIC:
                return Rule(pat, self._el(((x,), 1)) if x is y else zero, "R1")
            if x.parity == FERMIONIC and y.parity == FERMIONIC:
                if x is y:
                    return Rule(pat, zero, "R1")
                if x.rank > y.rank:
                    return Rule(pat, self._el(((y, x), -1)), "R1")
                return None
            bosonic = y if x.parity == FERMIONIC else x
            if bosonic.name in self._killers:
                return Rule(pat, zero, "R1z")
            if x.parity == FERMIONIC:
                return Rule(pat, self._el(((y, x), 1)), "R1")
            return None

        if x.is_vertex:
            if x.name == y.source and x.parity == BOSONIC:
                return Rule(pat, self._el(((y,), 1)), "R2")
            return Rule(pat, zero, "R3")

        if y.is_vertex:
            if y.name == x.range and y.parity == BOSONIC:
                return Rule(pat, self._el(((x,), 1)), "R2")
            return Rule(pat, zero, "R3")

        if x.is_ghost and not y.is_ghost:
            if x.name == y.name and not x.touches_fermion:
                return Rule(pat, self._el(((order.vertex(x.source),), 1)), "R5")
            return Rule(pat, zero, "R5")

        if not x.is_ghost and y.is_ghost and x.name == y.name:
            v = x.source
            if g.gamma(v) == x.name:
                terms = [((order.vertex(v),), 1)]
                for e in g.out_edges(v):
                    if e.name != x.name and g.parity(e.range) == BOSONIC:
                        terms.append(((order.lookup(e.name), order.lookup(e.name, True)), -1))
                return Rule(pat, self._el(*terms), "R6")

        if x.range != y.source or x.range_parity == FERMIONIC:
            return Rule(pat, zero, "R4")
        return None

    # -- matching ---------------------------------------------------------

    def redexes(self, w: Word) -> list[tuple[int, Rule]]:
        """All (start, rule) matches in ``w``, ordered by start position."""
        found = []
        single, pair = self.single, self.pair
        for i, x in enumerate(w):
            r = single.get(x)
            if r is not None:
                found.append((i, r))
            if i + 1 < len(w):
                r = pair.get((x, w[i + 1]))
                if r is not None:
                    found.append((i, r))
        return found

    def leftmost_redex(self, w: Word) -> tuple[int, Rule] | None:
        single, pair = self.single, self.pair
        n = len(w)
        for i, x in enumerate(w):
            r = single.get(x)
            if r is None and i + 1 < n:
                r = pair.get((x, w[i + 1]))
            if r is not None:
                return i, r
        return None

    def is_irreducible(self, w: Word) -> bool:
        return self.leftmost_redex(w) is None

    # -- reduction --------------------------------------------------------

    def _picker(self, strategy: str, rng: random.Random | None) -> Callable[[Word], tuple[int, Rule] | None]:
        if strategy == "leftmost":
            return self.leftmost_redex
        if strategy == "rightmost":
            def pick(w: Word):
                found = self.redexes(w)
                return found[-1] if found else None
            return pick
        if strategy == "random":
            rng = rng or random.Random(0)

            def pick(w: Word):
                found = self.redexes(w)
                return rng.choice(found) if found else None
            return pick
        raise ValueError(f"unknown strategy {strategy!r}")

    def _run(self, start: dict[Word, object], pick, check_descent: bool, stats: ReductionStats | None) -> Element:
        zero = self.field.zero
        work = dict(start)
        done: dict[Word, object] = {}
        steps = 0
        while work:
            w, c = work.popitem()
            hit = pick(w)
            if hit is None:
                total = done.get(w, zero) + c
                if total:
                    done[w] = total
                else:
                    del done[w]
                continue
            i, rule = hit
            steps += 1
            prefix, suffix = w[:i], w[i + len(rule.pattern):]
            for r, d in rule.replacement.terms.items():
                nw = prefix + r + suffix
                if check_descent and deglex_key(nw) >= deglex_key(w):
                    raise InvariantError(f"rule {rule} does not descend on {w}")
                total = work.get(nw, zero) + c * d
                if total:
                    work[nw] = total
                else:
                    work.pop(nw, None)
        if stats is not None:
            stats.steps += steps
        out = Element.__new__(Element)
        out.field = self.field
        out.terms = done
        return out

    def reduce_word(
        self,
        w: Word,
        strategy: str = "leftmost",
        rng: random.Random | None = None,
        check_descent: bool = False,
        stats: ReductionStats | None = None,
    ) -> Element:
        w = tuple(w)
        cacheable = strategy == "leftmost" and not check_descent and stats is None
        if cacheable:
            hit = self._nf_cache.get(w)
            if hit is not None:
                return hit
        nf = self._run({w: self.field.one}, self._picker(strategy, rng), check_descent, stats)
        if cacheable and len(self._nf_cache) < 200_000:
            self._nf_cache[w] = nf
        return nf

    def reduce_element(self, x: Element, strategy: str = "leftmost", rng: random.Random | None = None) -> Element:
        if x.field != self.field:
            raise ValueError("element and reduction system use different fields")
        return self._run(x.terms, self._picker(strategy, rng), False, None)


def build_reduction_system(g: SuperGraph, field: Field = RATIONAL) -> ReductionSystem:
    return ReductionSystem(g, field)


def reduce_word(rs: ReductionSystem, x: Word, strategy: str = "leftmost", **kw) -> Element:
    return rs.reduce_word(x, strategy, **kw)


def reduce_element(rs: ReductionSystem, x: Element, strategy: str = "leftmost", **kw) -> Element:
    return rs.reduce_element(x, strategy, **kw)


def is_irreducible(rs: ReductionSystem, x: Word) -> bool:
    return rs.is_irreducible(tuple(x))


@dataclass
class ConfluenceReport:
    max_len: int
    words_tested: int
    strategies: list[str]
    disagreements: list[tuple[Word, dict[str, Element]]] = field(default_factory=list)
    max_steps: int = 0

    @property
    def passed(self) -> bool:
        return not self.disagreements


def all_words(rs: ReductionSystem, max_len: int) -> Iterable[Word]:
    gens = list(rs.order)
    for n in range(1, max_len + 1):
        yield from itertools.product(gens, repeat=n)


def check_confluence(
    rs: ReductionSystem,
    max_len: int,
    strategies: Sequence[str] = STRATEGIES,
    seed: int = 0,
    random_repeats: int = 3,
) -> ConfluenceReport:
    """Reduce every word up to ``max_len`` under each strategy and compare.

    The random strategy runs ``random_repeats`` times with independent
    seeded generators.
    """
    runs: list[tuple[str, str, int | None]] = []
    for s in strategies:
        if s == "random":
            runs += [(f"random#{k + 1}", s, k) for k in range(random_repeats)]
        else:
            runs.append((s, s, None))

    report = ConfluenceReport(max_len, 0, [name for name, _, _ in runs])
    rngs = {k: random.Random(f"{seed}:{k}") for _, _, k in runs if k is not None}
    for w in all_words(rs, max_len):
        report.words_tested += 1
        results: dict[str, Element] = {}
        for name, strategy, k in runs:
            stats = ReductionStats()
            results[name] = rs.reduce_word(
                w, strategy, rng=rngs.get(k) if k is not None else None, stats=stats
            )
            report.max_steps = max(report.max_steps, stats.steps)
        first = next(iter(results.values()), None)
        if any(r != first for r in results.values()):
            report.disagreements.append((w, results))
    report.disagreements.sort(key=lambda d: deglex_key(d[0]))
    return report
