"""Plane trees and exhaustive census results."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class PlaneTree:
    """
    Rooted plane increasing tree on labels 1..n.

    Both sequences are indexed by label and have length n+1 (slot 0 unused);
    parent[1] is 0 because the root has no parent. children[v] is the ordered
    list of v's children, left to right.
    """
    n: int
    parent: Sequence[int]
    children: Sequence[Sequence[int]]

    def key(self) -> tuple[tuple[int, ...], ...]:
        """Canonical hashable form; two trees are equal iff their keys are equal."""
        return tuple(tuple(c) for c in self.children[1:])

    def leaves(self) -> list[int]:
        return [v for v in range(1, self.n + 1) if not self.children[v]]


@dataclass(frozen=True)
class OracleCensus:
    """Totals over every plane increasing tree on [n]."""
    n: int
    tree_total: int
    a: dict[int, int]
    b: dict[int, int]
    b_geq: dict[int, int]
    ptype: dict[int, int]
    ptype_pair: dict[int, int]
    pair: dict[tuple[int, int], int]
    pi_exact: dict[int, Fraction] = field(default_factory=dict)
