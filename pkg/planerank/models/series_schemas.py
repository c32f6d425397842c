"""Truncated power series data model."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Union

# Arbitrary-precision signed rational, always in lowest terms with a positive denominator.
ExactRational = Fraction

RationalLike = Union[int, Fraction]


@dataclass(frozen=True)
class SeriesEGF:
    """
    Truncated power series F(z) = sum_{nu <= N} c(nu) z^nu.

    Coefficients are stored as ordinary coefficients c(nu) = [z^nu]F; when F is
    an exponential generating function the count it encodes is n!·c(n).
    Instances are immutable and safe to share between workers.
    """
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise ValueError("A series needs at least its z^0 coefficient")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @classmethod
    def from_coefficients(cls, coeffs: Iterable[RationalLike]) -> "SeriesEGF":
        return cls(tuple(coeffs))

    @classmethod
    def zero(cls, order: int) -> "SeriesEGF":
        return cls((Fraction(0),) * (order + 1))

    @classmethod
    def constant(cls, value: RationalLike, order: int) -> "SeriesEGF":
        return cls((Fraction(value),) + (Fraction(0),) * order)

    @classmethod
    def monomial(cls, power: int, coefficient: RationalLike, order: int) -> "SeriesEGF":
        """coefficient·z^power truncated at `order` (vanishes if power > order)."""
        coeffs = [Fraction(0)] * (order + 1)
        if power <= order:
            coeffs[power] = Fraction(coefficient)
        return cls(tuple(coeffs))

    @property
    def truncation_order(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, nu: int) -> Fraction:
        return self.coeffs[nu]

    def count(self, n: int) -> Fraction:
        """EGF count n!·[z^n]F (an integer whenever F counts labelled objects)."""
        return self.coeffs[n] * factorial(n)

    def valuation(self) -> int:
        """Index of the first non-zero coefficient; truncation_order + 1 for the zero series."""
        for nu, c in enumerate(self.coeffs):
            if c:
                return nu
        return len(self.coeffs)

    def truncate(self, order: int) -> "SeriesEGF":
        if order >= self.truncation_order:
            return self
        return SeriesEGF(self.coeffs[: order + 1])

    def __repr__(self) -> str:
        head = ", ".join(str(c) for c in self.coeffs[:6])
        tail = ", ..." if len(self.coeffs) > 6 else ""
        return f"SeriesEGF(N={self.truncation_order}, [{head}{tail}])"
