"""
Exact truncated power-series arithmetic.

Every operation returns a new SeriesEGF at the smaller truncation order of its
operands. Products and reciprocals work on integer numerators over a common
denominator so that Fraction normalisation happens once per output
coefficient instead of once per term.
"""
from __future__ import annotations

import logging
from fractions import Fraction
from math import factorial, gcd, lcm

from planerank.models.series_schemas import RationalLike, SeriesEGF

logger = logging.getLogger(__name__)


def _common_order(f: SeriesEGF, g: SeriesEGF) -> int:
    return min(f.truncation_order, g.truncation_order)


def _scaled(coeffs: tuple[Fraction, ...]) -> tuple[list[int], int]:
    """Integers x_i and a denominator d with coeffs[i] = x_i / d."""
    den = lcm(*(c.denominator for c in coeffs)) if coeffs else 1
    return [c.numerator * (den // c.denominator) for c in coeffs], den


def from_coefficients(coeffs) -> SeriesEGF:
    return SeriesEGF.from_coefficients(coeffs)


def constant(value: RationalLike, order: int) -> SeriesEGF:
    return SeriesEGF.constant(value, order)


def monomial(power: int, coefficient: RationalLike, order: int) -> SeriesEGF:
    return SeriesEGF.monomial(power, coefficient, order)


def truncate(f: SeriesEGF, order: int) -> SeriesEGF:
    return f.truncate(order)


def valuation(f: SeriesEGF) -> int:
    return f.valuation()


def egf_count(f: SeriesEGF, n: int) -> Fraction:
    """n!·[z^n]F."""
    if not 0 <= n <= f.truncation_order:
        raise ValueError(f"n={n} outside the truncation order {f.truncation_order}")
    return f.count(n)


def add(f: SeriesEGF, g: SeriesEGF) -> SeriesEGF:
    order = _common_order(f, g)
    return SeriesEGF(tuple(f[i] + g[i] for i in range(order + 1)))


def sub(f: SeriesEGF, g: SeriesEGF) -> SeriesEGF:
    order = _common_order(f, g)
    return SeriesEGF(tuple(f[i] - g[i] for i in range(order + 1)))


def scale(f: SeriesEGF, c: RationalLike) -> SeriesEGF:
    c = Fraction(c)
    return SeriesEGF(tuple(c * x for x in f.coeffs))


def mul(f: SeriesEGF, g: SeriesEGF) -> SeriesEGF:
    """Cauchy product, schoolbook, truncated at the common order."""
    order = _common_order(f, g)
    vf, vg = f.valuation(), g.valuation()
    if vf + vg > order:
        return SeriesEGF.zero(order)

    fi, fd = _scaled(f.coeffs[: order + 1])
    gi, gd = _scaled(g.coeffs[: order + 1])
    out = [0] * (order + 1)
    for i in range(vf, order + 1 - vg):
        a = fi[i]
        if not a:
            continue
        for j in range(vg, order + 1 - i):
            b = gi[j]
            if b:
                out[i + j] += a * b

    den = fd * gd
    return SeriesEGF(tuple(Fraction(x, den) for x in out))


def geom_inverse(f: SeriesEGF) -> SeriesEGF:
    """
    1/(1 - F) via G(nu) = sum_{j=1..nu} F(j)·G(nu-j), G(0) = 1.

    G is kept as integers over a running common denominator which is widened
    only when a new coefficient needs it.

    Raises:
        ValueError: If F(0) != 0
    """
    if f[0] != 0:
        raise ValueError(f"geom_inverse needs F(0) = 0, got F(0) = {f[0]}")

    order = f.truncation_order
    v = f.valuation()
    fi, fd = _scaled(f.coeffs)

    numerators = [1]
    den = 1
    out = [Fraction(1)]
    for nu in range(1, order + 1):
        acc = 0
        for j in range(v, nu + 1):
            a = fi[j]
            if a:
                acc += a * numerators[nu - j]
        value = Fraction(acc, fd * den)
        out.append(value)

        widen = value.denominator // gcd(value.denominator, den)
        if widen != 1:
            numerators = [x * widen for x in numerators]
            den *= widen
        numerators.append(value.numerator * (den // value.denominator))

    return SeriesEGF(tuple(out))


def derivative(f: SeriesEGF) -> SeriesEGF:
    """F'; the order drops by one (a constant series of order 0 gives the zero series of order 0)."""
    order = f.truncation_order
    if order == 0:
        return SeriesEGF.zero(0)
    return SeriesEGF(tuple((nu + 1) * f[nu + 1] for nu in range(order)))


def antiderivative(f: SeriesEGF) -> SeriesEGF:
    """Integral from 0; the order grows by one."""
    return SeriesEGF((Fraction(0),) + tuple(c / (nu + 1) for nu, c in enumerate(f.coeffs)))


def egf_from_counts(counts, order: int) -> SeriesEGF:
    """Series with [z^n] = counts[n]/n! for n = 0..order (missing counts are 0)."""
    coeffs = []
    for n in range(order + 1):
        value = counts[n] if n < len(counts) else 0
        coeffs.append(Fraction(value, factorial(n)))
    return SeriesEGF(tuple(coeffs))
