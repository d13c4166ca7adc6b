"""Graph files, element expressions and their printed forms.

Graph file, one declaration per line (``#`` starts a comment)::

    field rational | field gf P
    bosonic NAME+
    fermionic NAME+
    edge NAME SRC -> DST
    special VERTEX EDGE

Element expressions: ``expr := [sign] term (("+"|"-") term)*``,
``term := [RATIONAL] word``, ``word := atom ("." atom)*`` and
``atom := NAME ["*"]``; a trailing ``*`` marks a ghost edge.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .algebra import RATIONAL, Element, Field
from .graph import BOSONIC, FERMIONIC, GraphError, SuperGraph, build_graph

__all__ = [
    "ExprError",
    "GraphSpec",
    "ParseError",
    "dump_graph_spec",
    "format_coefficient",
    "format_element",
    "format_word",
    "parse_element_expr",
    "parse_graph_file",
]

_NAME = r"[A-Za-z_][A-Za-z0-9_]*"


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ExprError(ValueError):
    pass


@dataclass
class GraphSpec:
    field: Field = RATIONAL
    vertices: list[tuple[str, int]] = dc_field(default_factory=list)
    edges: list[tuple[str, str, str]] = dc_field(default_factory=list)
    special: dict[str, str] = dc_field(default_factory=dict)
    lines: dict[str, int] = dc_field(default_factory=dict)

    def build(self) -> SuperGraph:
        try:
            return build_graph(self.vertices, self.edges, self.special)
        except GraphError as exc:
            raise ParseError(str(exc), self.lines.get(exc.name or "")) from None


_EDGE = re.compile(rf"edge\s+({_NAME})\s+({_NAME})\s*->\s*({_NAME})\Z")


def parse_graph_file(text: str) -> GraphSpec:
    spec = GraphSpec()
    seen_field = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "field":
            if seen_field:
                raise ParseError("second field declaration", lineno)
            seen_field = True
            if rest == ["rational"]:
                spec.field = RATIONAL
            elif len(rest) == 2 and rest[0] == "gf" and rest[1].isdigit():
                try:
                    spec.field = Field(int(rest[1]))
                except ValueError as exc:
                    raise ParseError(f"bad field: {exc}", lineno) from None
            else:
                raise ParseError("expected 'field rational' or 'field gf P'", lineno)
        elif head in ("bosonic", "fermionic"):
            if not rest:
                raise ParseError(f"'{head}' needs at least one name", lineno)
            for name in rest:
                if not re.fullmatch(_NAME, name):
                    raise ParseError(f"invalid name {name!r}", lineno)
                spec.vertices.append((name, BOSONIC if head == "bosonic" else FERMIONIC))
                spec.lines.setdefault(name, lineno)
        elif head == "edge":
            m = _EDGE.match(line)
            if not m:
                raise ParseError("expected 'edge NAME SRC -> DST'", lineno)
            spec.edges.append(m.groups())
            spec.lines.setdefault(m.group(1), lineno)
        elif head == "special":
            if len(rest) != 2:
                raise ParseError("expected 'special VERTEX EDGE'", lineno)
            v, e = rest
            if v in spec.special:
                raise ParseError(f"second special edge for {v}", lineno)
            spec.special[v] = e
            spec.lines.setdefault(v, lineno)
            spec.lines.setdefault(e, lineno)
        else:
            raise ParseError(f"unknown declaration {head!r}", lineno)
    return spec


def dump_graph_spec(g: SuperGraph, field: Field = RATIONAL) -> str:
    """Graph file text that rebuilds ``g`` with the same generator order."""
    out = [f"field {field.name}"]
    for v in g.vertices:
        out.append(f"{'bosonic' if v.parity == BOSONIC else 'fermionic'} {v.name}")
    for e in g.edges:
        out.append(f"edge {e.name} {e.source} -> {e.range}")
    for v, e in g.special:
        out.append(f"special {v} {e}")
    return "\n".join(out) + "\n"


# -- element expressions ------------------------------------------------------

_TOKEN = re.compile(rf"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>{_NAME})|(?P<op>[-+.*]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ExprError(f"unexpected character {text[pos:].lstrip()[:1]!r} at {pos}")
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


class _ExprParser:
    def __init__(self, g: SuperGraph, field: Field, text: str):
        self.g, self.field, self.order = g, field, g.order
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, None)

    def take(self, kind: str, value: str | None = None):
        k, v, p = self.peek()
        if k != kind or (value is not None and v != value):
            want = value or kind
            where = f"at {p}" if p is not None else "at end"
            raise ExprError(f"expected {want} {where}")
        self.i += 1
        return v

    def parse(self) -> Element:
        if [(k, v) for k, v, _ in self.tokens] == [("num", "0")]:
            return Element.zero(self.field)
        if not self.tokens:
            raise ExprError("empty expression")
        terms = []
        sign = 1
        k, v, _ = self.peek()
        if k == "op" and v in "+-":
            sign = -1 if v == "-" else 1
            self.i += 1
        terms.append(self.term(sign))
        while self.i < len(self.tokens):
            op = self.take("op")
            if op not in "+-":
                raise ExprError(f"expected + or - but found {op!r}")
            terms.append(self.term(-1 if op == "-" else 1))
        return Element(terms, self.field)

    def term(self, sign: int):
        coef = Fraction(1)
        if self.peek()[0] == "num":
            text = self.take("num")
            num, _, den = text.partition("/")
            if den and int(den) == 0:
                raise ExprError(f"zero denominator in {text}")
            coef = Fraction(int(num), int(den or 1))
        word = [self.atom()]
        while self.peek()[:2] == ("op", "."):
            self.i += 1
            word.append(self.atom())
        try:
            c = self.field(sign * coef)
        except ZeroDivisionError as exc:
            raise ExprError(str(exc)) from None
        return tuple(word), c

    def atom(self):
        name = self.take("name")
        ghost = False
        if self.peek()[:2] == ("op", "*"):
            self.i += 1
            ghost = True
        if name in self.g.vertex_map:
            if ghost:
                raise ExprError(f"ghost marker on vertex {name}")
            return self.order.lookup(name)
        if name in self.g.edge_map:
            return self.order.lookup(name, ghost)
        raise ExprError(f"unknown generator {name!r}")


def parse_element_expr(g: SuperGraph, text: str, field: Field = RATIONAL) -> Element:
    """Parse an element expression; the result is not reduced."""
    return _ExprParser(g, field, text).parse()


def format_word(w) -> str:
    return ".".join(map(str, w))


def format_coefficient(c, field: Field = RATIONAL) -> str:
    q = field.to_fraction(c)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_element(x: Element) -> str:
    """Terms in descending deg-lex order, e.g. ``- e1.e1* + v``."""
    if not x:
        return "0"
    parts = []
    for i, (w, c) in enumerate(x.sorted_terms()):
        q = x.field.to_fraction(c)
        neg = q < 0
        mag = -q if neg else q
        text = format_word(w) if mag == 1 else f"{format_coefficient(mag)} {format_word(w)}"
        if i == 0:
            parts.append(f"- {text}" if neg else text)
        else:
            parts.append(f"{'-' if neg else '+'} {text}")
    return " ".join(parts)
