"""Exact generating-function tables produced by the exact rank enumerator."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from planerank.models.series_schemas import SeriesEGF


@dataclass(frozen=True)
class RootRankTable:
    """B_{>=k} for k = 0..kmax+1 and B_k for k = 0..kmax, all truncated at `order`."""
    kmax: int
    order: int
    b_geq: dict[int, SeriesEGF]
    b: dict[int, SeriesEGF]

    def count_geq(self, k: int, n: int) -> Fraction:
        """b_{>=k}(n): trees on [n] whose root has rank at least k."""
        return self.b_geq[k].count(n)

    def count(self, k: int, n: int) -> Fraction:
        """b_k(n): trees on [n] whose root has rank exactly k."""
        return self.b[k].count(n)


@dataclass(frozen=True)
class RankTable:
    """A_k and A_{>=k} for k = 0..kmax, truncated at `order`."""
    kmax: int
    order: int
    a: dict[int, SeriesEGF]
    a_geq: dict[int, SeriesEGF]

    def count(self, k: int, n: int) -> Fraction:
        """a_k(n): rank-k vertices summed over all trees on [n]."""
        return self.a[k].count(n)

    def count_geq(self, k: int, n: int) -> Fraction:
        return self.a_geq[k].count(n)


@dataclass(frozen=True)
class PathAlgTable:
    """P_{>k} for k = -1..kmax and the probabilities pi_{>k}(n) for 1 <= n <= order."""
    kmax: int
    order: int
    p_series: dict[int, SeriesEGF]
    pi: dict[tuple[int, int], Fraction]


@dataclass(frozen=True)
class PTypeTable:
    """Path-type series: single-vertex counts and ordered same-rank pair counts."""
    kmax: int
    order: int
    pa: dict[int, SeriesEGF]
    pa_pair: dict[int, SeriesEGF] = field(default_factory=dict)

    def count(self, k: int, n: int) -> Fraction:
        return self.pa[k].count(n)

    def pair_count(self, k: int, n: int) -> Fraction:
        return self.pa_pair[k].count(n)
