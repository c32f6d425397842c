from fractions import Fraction

import pytest

from planerank.models.series_schemas import SeriesEGF
from planerank.services.exact_rank_enum import t_series
from planerank.services.series_engine import (
    add,
    antiderivative,
    derivative,
    egf_count,
    egf_from_counts,
    geom_inverse,
    monomial,
    mul,
    scale,
    sub,
    truncate,
    valuation,
)


def series(*coeffs):
    return SeriesEGF.from_coefficients(coeffs)


class TestSeriesModel:
    def test_coefficients_become_fractions(self):
        f = series(1, 2, 3)
        assert all(isinstance(c, Fraction) for c in f.coeffs)
        assert f.truncation_order == 2

    def test_empty_series_rejected(self):
        with pytest.raises(ValueError):
            SeriesEGF(())

    def test_valuation(self):
        assert valuation(series(0, 0, 5, 1)) == 2
        assert valuation(SeriesEGF.zero(3)) == 4

    def test_monomial_beyond_order_vanishes(self):
        assert monomial(5, 1, 3) == SeriesEGF.zero(3)

    def test_truncate_never_extends(self):
        f = series(1, 2, 3)
        assert truncate(f, 1) == series(1, 2)
        assert truncate(f, 7) is f


class TestArithmetic:
    def test_add_and_sub_use_smaller_order(self):
        f = series(1, 2, 3, 4)
        g = series(1, 1)
        assert add(f, g) == series(2, 3)
        assert sub(f, g) == series(0, 1)

    def test_scale(self):
        assert scale(series(1, 2), Fraction(1, 2)) == series(Fraction(1, 2), 1)

    def test_mul_binomial(self):
        one_plus_z = series(1, 1, 0, 0)
        assert mul(one_plus_z, one_plus_z) == series(1, 2, 1, 0)

    def test_mul_with_fractions(self):
        f = series(0, Fraction(1, 3), Fraction(1, 2))
        g = series(Fraction(2, 5), Fraction(1, 7), 0)
        assert mul(f, g) == series(0, Fraction(2, 15), Fraction(1, 5) + Fraction(1, 21))

    def test_mul_commutes(self):
        f = series(Fraction(1, 2), 0, Fraction(-3, 4), 2, Fraction(1, 9))
        g = series(0, Fraction(5, 6), 1, Fraction(-1, 3))
        assert mul(f, g) == mul(g, f)

    def test_tree_series_squared(self):
        t = t_series(4)
        assert mul(t, t).coeffs[2] == 1

    def test_mul_skips_high_valuation(self):
        f = series(0, 0, 1)
        assert mul(f, f) == SeriesEGF.zero(2)

    def test_geom_inverse_of_z(self):
        assert geom_inverse(series(0, 1, 0, 0, 0)) == series(1, 1, 1, 1, 1)

    def test_geom_inverse_needs_zero_constant(self):
        with pytest.raises(ValueError):
            geom_inverse(series(1, 1))

    def test_geom_inverse_times_one_minus_f_is_one(self):
        f = series(0, Fraction(1, 3), Fraction(-2, 7), Fraction(5, 11), 1)
        one_minus_f = sub(SeriesEGF.constant(1, 4), f)
        assert mul(geom_inverse(f), one_minus_f) == SeriesEGF.constant(1, 4)


class TestCalculus:
    def test_derivative_drops_order(self):
        assert derivative(series(5, 1, 1, 1)) == series(1, 2, 3)

    def test_derivative_of_order_zero(self):
        assert derivative(series(7)) == SeriesEGF.zero(0)

    def test_antiderivative_raises_order(self):
        assert antiderivative(series(1, 1, 1)) == series(0, 1, Fraction(1, 2), Fraction(1, 3))

    def test_derivative_inverts_antiderivative(self):
        f = series(Fraction(2, 3), 4, Fraction(-1, 5))
        assert derivative(antiderivative(f)) == f

    def test_antiderivative_recovers_all_but_constant(self):
        f = series(Fraction(7, 2), 4, Fraction(-1, 5), Fraction(2, 3))
        without_constant = sub(f, SeriesEGF.constant(f.coeffs[0], f.truncation_order))
        assert antiderivative(derivative(f)) == without_constant

    def test_tree_series_satisfies_its_equation(self):
        # T' = 1/(1 - T)
        t = t_series(12)
        assert derivative(t) == truncate(geom_inverse(t), 11)


class TestCounts:
    def test_egf_count(self):
        assert egf_count(t_series(6), 4) == 15

    def test_egf_count_out_of_range(self):
        with pytest.raises(ValueError):
            egf_count(t_series(3), 4)

    def test_egf_from_counts_pads_with_zero(self):
        f = egf_from_counts([0, 1, 1, 3], 5)
        assert f.count(3) == 3
        assert f.count(5) == 0
        assert f.truncation_order == 5
