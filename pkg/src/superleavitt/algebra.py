"""Exact scalars, words and elements of the free algebra on a graph.

Words are tuples of interned :class:`~superleavitt.graph.Generator`
objects.  Elements are sparse linear combinations of words with exact
coefficients; they are not reduced on construction, the rewrite module
owns normal forms.
"""

from __future__ import annotations

from fractions import Fraction
from typing import TYPE_CHECKING, Iterable, Iterator, Mapping, Union

from .graph import Generator

if TYPE_CHECKING:
    from .rewrite import ReductionSystem

__all__ = [
    "Element",
    "Field",
    "FieldMismatch",
    "RATIONAL",
    "Word",
    "compare_words",
    "deglex_key",
    "element_add",
    "element_mul",
    "element_scale",
    "graded_parts",
    "parity_of",
    "prime_field",
    "supercommutator",
    "word_parity",
    "word_range",
    "word_source",
]

Word = tuple[Generator, ...]
INHOMOGENEOUS = "inhomogeneous"


class FieldMismatch(ValueError):
    pass


class Field:
    """A coefficient field: the rationals or a prime field of odd order."""

    def __init__(self, characteristic: int = 0):
        if characteristic == 2:
            raise ValueError("characteristic 2 is not allowed")
        self.characteristic = characteristic
        if characteristic:
            from sympy import isprime
            from sympy.polys.domains import GF

            if not isprime(characteristic):
                raise ValueError(f"{characteristic} is not prime")
            self._gf = GF(characteristic, symmetric=False)

    @property
    def name(self) -> str:
        return f"gf {self.characteristic}" if self.characteristic else "rational"

    def __call__(self, value) -> object:
        if not self.characteristic:
            return Fraction(value)
        if isinstance(value, Fraction) or isinstance(value, str):
            q = Fraction(value)
            if q.denominator % self.characteristic == 0:
                raise ZeroDivisionError(f"{q} has no image in GF({self.characteristic})")
            return self._gf(q.numerator) / self._gf(q.denominator)
        if isinstance(value, int):
            return self._gf(value)
        return self._gf(int(value))

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def to_fraction(self, c) -> Fraction:
        """Canonical rational representative (``0..p-1`` for prime fields)."""
        if not self.characteristic:
            return Fraction(c)
        return Fraction(int(c) % self.characteristic)

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self) -> int:
        return hash(("field", self.characteristic))

    def __repr__(self) -> str:
        return f"Field({self.name})"


RATIONAL = Field(0)


def prime_field(p: int) -> Field:
    return Field(p)


def word_parity(w: Word) -> int:
    return sum(g.parity for g in w) % 2


def word_source(w: Word) -> str:
    return w[0].source


def word_range(w: Word) -> str:
    return w[-1].range


def deglex_key(w: Word) -> tuple:
    return (len(w), tuple(g.rank for g in w))


def compare_words(a: Word, b: Word) -> int:
    """-1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``.

    Shorter words are smaller; equal lengths compare lexicographically by
    generator rank.
    """
    ka, kb = deglex_key(a), deglex_key(b)
    return (ka > kb) - (ka < kb)


Scalar = Union[int, Fraction, object]


class Element:
    """Finite linear combination of words with nonzero coefficients."""

    __slots__ = ("terms", "field")

    def __init__(self, terms: Mapping[Word, Scalar] | Iterable[tuple[Word, Scalar]] = (), field: Field = RATIONAL):
        self.field = field
        self.terms: dict[Word, object] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for w, c in items:
            c = field(c) if not _is_native(c, field) else c
            total = self.terms.get(w, field.zero) + c
            if total:
                self.terms[w] = total
            else:
                self.terms.pop(w, None)

    @classmethod
    def word(cls, w: Word | Generator, coefficient: Scalar = 1, field: Field = RATIONAL) -> "Element":
        if isinstance(w, Generator):
            w = (w,)
        return cls({tuple(w): coefficient}, field)

    @classmethod
    def zero(cls, field: Field = RATIONAL) -> "Element":
        return cls((), field)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[Word, object]]:
        return iter(self.sorted_terms())

    def sorted_terms(self) -> list[tuple[Word, object]]:
        """Terms in descending deg-lex order."""
        return sorted(self.terms.items(), key=lambda t: deglex_key(t[0]), reverse=True)

    def words(self) -> list[Word]:
        return [w for w, _ in self.sorted_terms()]

    def coefficient(self, w: Word):
        return self.terms.get(tuple(w), self.field.zero)

    def _check(self, other: "Element") -> None:
        if self.field != other.field:
            raise FieldMismatch(f"cannot combine elements over {self.field.name} and {other.field.name}")

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, Element):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        out = Element.__new__(Element)
        out.field = self.field
        out.terms = dict(self.terms)
        for w, c in other.terms.items():
            total = out.terms.get(w, self.field.zero) + c
            if total:
                out.terms[w] = total
            else:
                del out.terms[w]
        return out

    def __neg__(self) -> "Element":
        return self.scale(-1)

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def scale(self, c: Scalar) -> "Element":
        c = self.field(c) if not _is_native(c, self.field) else c
        out = Element.__new__(Element)
        out.field = self.field
        out.terms = {w: c * d for w, d in self.terms.items()} if c else {}
        return out

    def __rmul__(self, c: Scalar) -> "Element":
        return self.scale(c)

    def parity(self):
        return parity_of(self)

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*{'.'.join(map(str, w))}" for w, c in self.sorted_terms())
        return f"Element({body or '0'})"


def _is_native(c, field: Field) -> bool:
    if not field.characteristic:
        return isinstance(c, Fraction)
    return type(c) is type(field.one)


def parity_of(x: Word | Element):
    """0 or 1 for a word or homogeneous element, else ``"inhomogeneous"``."""
    if isinstance(x, Element):
        parities = {word_parity(w) for w in x.terms}
        if not parities:
            return 0
        if len(parities) > 1:
            return INHOMOGENEOUS
        return parities.pop()
    return word_parity(x)


def element_add(x: Element, y: Element) -> Element:
    return x + y


def element_scale(c: Scalar, x: Element) -> Element:
    return x.scale(c)


def element_mul(rs: "ReductionSystem", x: Element, y: Element) -> Element:
    """Concatenate words bilinearly, then reduce to normal form."""
    x._check(y)
    raw: dict[Word, object] = {}
    zero = x.field.zero
    for u, a in x.terms.items():
        for v, b in y.terms.items():
            w = u + v
            total = raw.get(w, zero) + a * b
            if total:
                raw[w] = total
            else:
                del raw[w]
    out = Element.__new__(Element)
    out.field = x.field
    out.terms = raw
    return rs.reduce_element(out)


def supercommutator(rs: "ReductionSystem", a: Element, b: Element) -> Element:
    pa, pb = parity_of(a), parity_of(b)
    if pa == INHOMOGENEOUS or pb == INHOMOGENEOUS:
        raise ValueError("supercommutator needs homogeneous arguments")
    sign = -1 if pa * pb else 1
    return element_mul(rs, a, b) - element_mul(rs, b, a).scale(sign)


def graded_parts(x: Element) -> tuple[Element, Element]:
    even = Element(((w, c) for w, c in x.terms.items() if word_parity(w) == 0), x.field)
    odd = Element(((w, c) for w, c in x.terms.items() if word_parity(w) == 1), x.field)
    return even, odd
