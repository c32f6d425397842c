"""
Exact Rank Enumerator

Runs the generating-function recurrences for plane increasing trees and turns
them into exact counts:

- B_{>=k}: trees whose root has rank at least k, B'_{>=k} = B_{>=k-1}/(1 - B_{>=k-1})
- A_k, A_{>=k}: rank-k vertices summed over all trees, A' = A/(1-T)^2 + B'
- P_{>k}: trees weighted by the chance that the randomised descent path is longer than k
- p-type vertices (whose subtree is a single path) and ordered pairs of them

(1-T)^{-2} equals (1-2z)^{-1}, so every linear equation above is solved by a
two-term coefficient recurrence.
"""
from __future__ import annotations

import logging
import math
from fractions import Fraction
from functools import lru_cache

from planerank.models.enum_schemas import PathAlgTable, PTypeTable, RankTable, RootRankTable
from planerank.models.series_schemas import ExactRational, RationalLike, SeriesEGF
from planerank.services.series_engine import (
    add,
    antiderivative,
    derivative,
    geom_inverse,
    monomial,
    mul,
    scale,
    sub,
)

logger = logging.getLogger(__name__)


# ============================================
# Tree counts
# ============================================

def double_factorial(m: int) -> int:
    """m·(m-2)·(m-4)···; 1 for m <= 0."""
    return math.prod(range(m, 0, -2))


def tree_count(n: int) -> int:
    """t(n) = (2n-3)!!, with t(1) = 1."""
    if n < 1:
        raise ValueError(f"tree_count needs n >= 1, got n={n}")
    if n == 1:
        return 1
    return double_factorial(2 * n - 3)


def _require_order(order: int) -> None:
    if order < 1:
        raise ValueError(f"Truncation order must be at least 1, got {order}")


@lru_cache(maxsize=None)
def t_series(order: int) -> SeriesEGF:
    """T(z) = 1 - sqrt(1-2z) from its coefficients t(n)/n!."""
    coeffs = [Fraction(0)]
    coeffs.extend(Fraction(tree_count(n), math.factorial(n)) for n in range(1, order + 1))
    return SeriesEGF(tuple(coeffs))


@lru_cache(maxsize=None)
def inverse_kernel(order: int) -> SeriesEGF:
    """(1-T)^{-1}."""
    return geom_inverse(t_series(order))


@lru_cache(maxsize=None)
def square_kernel(order: int) -> SeriesEGF:
    """(1-T)^{-2}; its coefficients are 2^nu."""
    inv = inverse_kernel(order)
    return mul(inv, inv)


@lru_cache(maxsize=None)
def cube_kernel(order: int) -> SeriesEGF:
    """(1-T)^{-3}."""
    return mul(square_kernel(order), inverse_kernel(order))


def solve_linear(source: SeriesEGF, order: int) -> SeriesEGF:
    """
    Solution of Y' = Y/(1-T)^2 + S with Y(0) = 0.

    With R = Y/(1-2z), R(nu) = 2R(nu-1) + Y(nu) and (nu+1)Y(nu+1) = R(nu) + S(nu).
    The source needs coefficients up to order-1.
    """
    if source.truncation_order < order - 1:
        raise ValueError(
            f"Source truncated at {source.truncation_order}, need at least {order - 1}"
        )
    y = [Fraction(0)] * (order + 1)
    r = Fraction(0)
    for nu in range(order):
        r = 2 * r + y[nu]
        y[nu + 1] = (r + source[nu]) / (nu + 1)
    return SeriesEGF(tuple(y))


# ============================================
# Root rank and rank series
# ============================================

def root_rank_series(kmax: int, order: int) -> RootRankTable:
    """B_{>=k} for k <= kmax+1 and B_k for k <= kmax, exact to z^order."""
    _require_order(order)
    if kmax < 0:
        raise ValueError(f"kmax must be non-negative, got {kmax}")

    b_geq: dict[int, SeriesEGF] = {0: t_series(order)}
    for k in range(1, kmax + 2):
        prev = b_geq[k - 1]
        if prev.valuation() > order:
            b_geq[k] = prev
            continue
        b_geq[k] = antiderivative(mul(prev, geom_inverse(prev))).truncate(order)

    b = {k: sub(b_geq[k], b_geq[k + 1]) for k in range(kmax + 1)}
    logger.info("Root rank series ready", extra={"kmax": kmax, "order": order})
    return RootRankTable(kmax=kmax, order=order, b_geq=b_geq, b=b)


def rank_series(kmax: int, order: int, table: RootRankTable) -> RankTable:
    """A_k and A_{>=k} for k <= kmax from the root-rank series."""
    if table.kmax < kmax or table.order < order:
        raise ValueError(
            f"Root rank table (kmax={table.kmax}, order={table.order}) "
            f"does not cover kmax={kmax}, order={order}"
        )

    a: dict[int, SeriesEGF] = {}
    a_geq: dict[int, SeriesEGF] = {}
    for k in range(kmax + 1):
        a[k] = solve_linear(derivative(table.b[k].truncate(order)), order)
        a_geq[k] = solve_linear(derivative(table.b_geq[k].truncate(order)), order)

    logger.info("Rank series ready", extra={"kmax": kmax, "order": order})
    return RankTable(kmax=kmax, order=order, a=a, a_geq=a_geq)


def _check_range(k: int, n: int, kmax: int, order: int) -> None:
    if not 0 <= k <= kmax:
        raise ValueError(f"k={k} outside 0..{kmax}")
    if not 1 <= n <= order:
        raise ValueError(f"n={n} outside 1..{order}")


def expected_rank_count(k: int, n: int, table: RankTable) -> ExactRational:
    """E[X_k(n)] = a_k(n)/t(n)."""
    _check_range(k, n, table.kmax, table.order)
    return table.count(k, n) / tree_count(n)


def rank_geq_tail(k: int, n: int, table: RankTable) -> ExactRational:
    """E[X_{>=k}(n)] = a_{>=k}(n)/t(n)."""
    _check_range(k, n, table.kmax, table.order)
    return table.count_geq(k, n) / tree_count(n)


def largest_rank_tail(k: int, n: int, table: RankTable) -> ExactRational:
    """First-moment bound P(R_n >= k) <= min(1, E[X_{>=k}(n)])."""
    return min(Fraction(1), rank_geq_tail(k, n, table))


def largest_rank_window(n: int, epsilon: float) -> tuple[int, int]:
    """
    Ranks (lower, upper) between which the largest rank of a large tree falls
    with high probability: ceil((1-eps)L) and ceil((1.5+eps)L), L = log n/log log n.
    """
    if n < 3:
        raise ValueError(f"The largest-rank window needs n >= 3, got n={n}")
    if not 0 < epsilon < 1:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    scale_ = math.log(n) / math.log(math.log(n))
    return math.ceil((1 - epsilon) * scale_), math.ceil((1.5 + epsilon) * scale_)


def tail_inequality_holds(k: int, n: int, table: RankTable) -> bool:
    """E[X_{>=k}(n)] <= 8 n^{3/2}/(k-2)!, compared exactly after squaring both sides."""
    if k < 3:
        raise ValueError(f"The tail inequality is stated for k >= 3, got k={k}")
    lhs = rank_geq_tail(k, n, table) * math.factorial(k - 2)
    return lhs * lhs <= 64 * n ** 3


def geometric_tail_holds(k: int, n: int, table: RankTable) -> bool:
    """n^{-1} E[X_{>k}(n)] <= 2^{-k}, exact."""
    if k + 1 > table.kmax:
        raise ValueError(f"Rank table kmax={table.kmax} cannot give X_{{>{k}}}")
    tail = rank_geq_tail(k + 1, n, table)
    return tail / n <= Fraction(1, 2 ** k)


def root_rank_tail(k: int, n: int, table: RootRankTable) -> ExactRational:
    """p_{>k}(n) = b_{>=k+1}(n)/t(n), the chance that the root has rank above k."""
    if not 0 <= k <= table.kmax:
        raise ValueError(f"k={k} outside 0..{table.kmax}")
    if not 1 <= n <= table.order:
        raise ValueError(f"n={n} outside 1..{table.order}")
    return table.count_geq(k + 1, n) / tree_count(n)


# ============================================
# Randomised descent path
# ============================================

def path_alg_series(kmax: int, order: int) -> PathAlgTable:
    """
    P_{>k} for k = -1..kmax and pi_{>k}(n) = n![z^n]P_{>k}/t(n).

    From the root the descent keeps one child subtree, chosen with probability
    proportional to the total size of the other subtrees (the only child when
    there is one). Summed over ordered (kept, dropped) pairs this gives

        P''_{>k} = P'_{>k-1} + P_{>k-1}·[(1-T)^{-3} + (1-T)^{-2}]

    with P_{>-1} = T and P_{>0} = T - z, and zero constants of integration.
    """
    _require_order(order)
    if kmax < 0:
        raise ValueError(f"kmax must be non-negative, got {kmax}")

    t = t_series(order)
    kernel = add(cube_kernel(order), square_kernel(order))

    p_series: dict[int, SeriesEGF] = {-1: t, 0: sub(t, monomial(1, 1, order))}
    for k in range(1, kmax + 1):
        prev = p_series[k - 1]
        rhs = add(derivative(prev), mul(prev, kernel))
        p_series[k] = antiderivative(antiderivative(rhs)).truncate(order)

    pi: dict[tuple[int, int], Fraction] = {}
    for k, series in p_series.items():
        for n in range(1, order + 1):
            pi[(k, n)] = series.count(n) / tree_count(n)

    logger.info("Descent path series ready", extra={"kmax": kmax, "order": order})
    return PathAlgTable(kmax=kmax, order=order, p_series=p_series, pi=pi)


def path_length_pgf(n: int, rho: RationalLike, table: PathAlgTable) -> ExactRational:
    """
    sum_{k=0..kmax} rho^k · pi_{>k}(n): the generating function of the descent
    path's tail probabilities. At rho = 1 and kmax >= n-1 this is the expected length.
    """
    if not 1 <= n <= table.order:
        raise ValueError(f"n={n} outside 1..{table.order}")
    rho = Fraction(rho)
    return sum((rho ** k * table.pi[(k, n)] for k in range(table.kmax + 1)), Fraction(0))


# ============================================
# p-type vertices
# ============================================

def ptype_series(kmax: int, order: int, with_pairs: bool = True) -> PTypeTable:
    """
    Series for p-type vertices of rank k. A tree whose root is p-type of rank k is
    the path on k+1 vertices, so the source is d/dz z^{k+1}/(k+1)! = z^k/k!.
    """
    _require_order(order)
    pa = {
        k: solve_linear(monomial(k, Fraction(1, math.factorial(k)), order - 1), order)
        for k in range(kmax + 1)
    }
    table = PTypeTable(kmax=kmax, order=order, pa=pa)
    if not with_pairs:
        return table
    pairs = {k: ptype_pair_series(k, order, table) for k in range(kmax + 1)}
    logger.info("p-type series ready", extra={"kmax": kmax, "order": order})
    return PTypeTable(kmax=kmax, order=order, pa=pa, pa_pair=pairs)


def ptype_pair_series(k: int, order: int, table: PTypeTable) -> SeriesEGF:
    """Ordered pairs of distinct p-type rank-k vertices: Y' = Y/(1-T)^2 + 2 A_k^2/(1-T)^3."""
    if k not in table.pa:
        raise ValueError(f"p-type table has no series for k={k}")
    if table.order < order:
        raise ValueError(f"p-type table order {table.order} below {order}")
    single = table.pa[k].truncate(order)
    source = scale(mul(mul(single, single), cube_kernel(order)), 2)
    return solve_linear(source, order)


def ptype_closed_form(k: int, n: int) -> int:
    """Total p-type rank-k vertices over all trees on [n]."""
    if n < 1 or k < 0:
        raise ValueError(f"Need n >= 1 and k >= 0, got n={n}, k={k}")
    if n <= k:
        return 0
    if n == k + 1:
        return 1
    return double_factorial(2 * n - 1) // double_factorial(2 * k + 3)


def ptype_second_moment_ratio(k: int, n: int, table: PTypeTable) -> ExactRational:
    """E[X^2]/E[X]^2 for the p-type rank-k count X; tends to 1 as n grows."""
    single = table.count(k, n)
    if single == 0:
        raise ValueError(f"No p-type rank-{k} vertices at n={n}")
    t = tree_count(n)
    first = single / t
    second = (table.pair_count(k, n) + single) / t
    return second / (first * first)


def expected_ptype_count(k: int, n: int) -> ExactRational:
    """E[p-type rank-k vertices] = (2n-1)/(2k+3)!! for n >= k+2, without forming t(n)."""
    if n < 1 or k < 0:
        raise ValueError(f"Need n >= 1 and k >= 0, got n={n}, k={k}")
    if n <= k:
        return Fraction(0)
    if n == k + 1:
        return Fraction(1, tree_count(n))
    return Fraction(2 * n - 1, double_factorial(2 * k + 3))
