"""Irreducible-word basis, dimension series and growth fitting."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .algebra import Element, Word, deglex_key
from .rewrite import ReductionSystem

__all__ = [
    "BudgetExceeded",
    "DimensionSeries",
    "GrowthFit",
    "basis_words",
    "brute_force_dimension",
    "dimension_series",
    "fit_growth",
    "loglog_slope",
    "total_dimension",
]

BRUTE_FORCE_BUDGET = 2_000_000


class BudgetExceeded(RuntimeError):
    pass


@dataclass
class DimensionSeries:
    per_length: list[int]
    graph_name: str = ""

    @property
    def cumulative(self) -> list[int]:
        return list(itertools.accumulate(self.per_length))

    @property
    def max_len(self) -> int:
        return len(self.per_length)


@dataclass
class GrowthFit:
    classification: str  # "finite" | "polynomial" | "exponential"
    degree_estimate: float | None = None
    ratio_estimate: float | None = None
    fit_quality: float = 1.0
    window: tuple[int, int] = field(default=(0, 0))


def basis_words(rs: ReductionSystem, max_len: int) -> list[list[Word]]:
    """Irreducible words of length 1..max_len, each list in deg-lex order.

    Irreducibility is prefix-closed because every pattern is contiguous, so
    each level is grown from the previous one.
    """
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    gens = [x for x in rs.order if x not in rs.single]
    pair = rs.pair
    levels = [[(x,) for x in gens]]
    for _ in range(max_len - 1):
        levels.append([w + (x,) for w in levels[-1] for x in gens if (w[-1], x) not in pair])
    return levels


def _transfer(rs: ReductionSystem) -> tuple[list, list[list[int]]]:
    gens = [x for x in rs.order if x not in rs.single]
    follow = [[j for j, y in enumerate(gens) if (x, y) not in rs.pair] for x in gens]
    return gens, follow


def dimension_series(rs: ReductionSystem, max_len: int, name: str = "") -> DimensionSeries:
    """Number of irreducible words of each length, by transfer counting.

    Counts walks in the graph of allowed adjacent letter pairs, which is
    exactly the irreducible words since every pattern has length <= 2.
    """
    gens, follow = _transfer(rs)
    counts = [1] * len(gens)
    per_length = []
    for n in range(max_len):
        if n:
            nxt = [0] * len(gens)
            for i, c in enumerate(counts):
                if c:
                    for j in follow[i]:
                        nxt[j] += c
            counts = nxt
        per_length.append(sum(counts))
    return DimensionSeries(per_length, name)


def total_dimension(rs: ReductionSystem) -> int | None:
    """Total dimension when finite, else None.

    A walk longer than the number of letters repeats a letter, and a
    repeated letter in an allowed walk gives words of every length.
    """
    gens, _ = _transfer(rs)
    s = dimension_series(rs, len(gens) + 1)
    if s.per_length[-1]:
        return None
    return sum(s.per_length)


def _echelon_insert(pivots: dict[Word, Element], x: Element) -> bool:
    """Reduce ``x`` against ``pivots``; store it and return True if independent."""
    while x:
        lead = max(x.terms, key=deglex_key)
        row = pivots.get(lead)
        if row is None:
            pivots[lead] = x
            return True
        x = x - row.scale(x.terms[lead] / row.terms[lead])
    return False


def brute_force_dimension(rs: ReductionSystem, max_len: int, budget: int = BRUTE_FORCE_BUDGET) -> list[int]:
    """Dimension of the span of all words of length <= n, for n = 1..max_len.

    Every word over the alphabet is reduced and the normal forms are fed to
    exact Gaussian elimination.
    """
    gens = list(rs.order)
    total = sum(len(gens) ** n for n in range(1, max_len + 1))
    if total > budget:
        raise BudgetExceeded(f"{total} words exceeds budget {budget}")
    pivots: dict[Word, Element] = {}
    out = []
    for n in range(1, max_len + 1):
        for w in itertools.product(gens, repeat=n):
            nf = rs.reduce_word(w)
            if nf:
                _echelon_insert(pivots, nf)
        out.append(len(pivots))
    return out


def _lstsq(xs: Sequence[float], ys: Sequence[float]) -> tuple[float, float]:
    """Slope and coefficient of determination of a least-squares line."""
    x, y = np.asarray(xs, float), np.asarray(ys, float)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0 else max(0.0, 1.0 - float(np.sum(resid**2)) / ss_tot)
    return float(slope), r2


def loglog_slope(s: DimensionSeries, lo: int, hi: int) -> float:
    """Least-squares slope of log c(n) against log n for lo <= n <= hi."""
    c = s.cumulative
    ns = range(lo, hi + 1)
    return _lstsq([math.log(n) for n in ns], [math.log(c[n - 1]) for n in ns])[0]


def fit_growth(
    s: DimensionSeries,
    window: int | None = None,
    exp_threshold: float = 1.05,
    quality_min: float = 0.98,
) -> GrowthFit:
    """Classify growth from the tail of a dimension series.

    The last ``window`` lengths are used: all zero means finite; a log-linear
    fit of per-length counts with ratio above ``exp_threshold`` (and good
    fit) means exponential; otherwise the log-log slope of cumulative
    counts is the polynomial degree.
    """
    n_max = s.max_len
    if window is None:
        window = n_max // 2
    if window < 2 or n_max < 2 * window:
        raise ValueError(f"series of length {n_max} too short for window {window}")
    lo = n_max - window + 1
    ns = list(range(lo, n_max + 1))
    f = s.per_length[lo - 1:]
    c = s.cumulative[lo - 1:]
    span = (lo, n_max)

    if not any(f):
        return GrowthFit("finite", fit_quality=1.0, window=span)
    if all(f):
        slope, r2 = _lstsq(ns, [math.log(v) for v in f])
        if slope > math.log(exp_threshold) and r2 >= quality_min:
            return GrowthFit("exponential", ratio_estimate=math.exp(slope), fit_quality=r2, window=span)
    slope, r2 = _lstsq([math.log(n) for n in ns], [math.log(v) for v in c])
    return GrowthFit("polynomial", degree_estimate=slope, fit_quality=r2, window=span)
