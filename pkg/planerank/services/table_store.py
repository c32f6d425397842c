"""In-memory cache of exact tables shared by the CLI and the verify workflow."""
from __future__ import annotations

import logging
from typing import Optional

from planerank.models.enum_schemas import PathAlgTable, PTypeTable, RankTable, RootRankTable
from planerank.models.oracle_schemas import OracleCensus
from planerank.services.brute_force_oracle import census_all
from planerank.services.exact_rank_enum import (
    path_alg_series,
    ptype_series,
    rank_series,
    root_rank_series,
)

logger = logging.getLogger(__name__)


class TableStore:
    """
    Singleton cache keyed by (kmax, order).

    A request is served by any cached table with kmax and order at least as
    large; the exact tables stay valid when read below their limits.
    """

    _instance: Optional["TableStore"] = None

    def __new__(cls) -> "TableStore":
        """Singleton pattern for the table store."""
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance._root = {}
            cls._instance._rank = {}
            cls._instance._path = {}
            cls._instance._ptype = {}
            cls._instance._census = {}
        return cls._instance

    @staticmethod
    def _covering(cache: dict, kmax: int, order: int):
        for (k, n), table in cache.items():
            if k >= kmax and n >= order:
                return table
        return None

    def root_rank(self, kmax: int, order: int) -> RootRankTable:
        table = self._covering(self._root, kmax, order)
        if table is None:
            table = root_rank_series(kmax, order)
            self._root[(kmax, order)] = table
        return table

    def rank(self, kmax: int, order: int) -> RankTable:
        table = self._covering(self._rank, kmax, order)
        if table is None:
            table = rank_series(kmax, order, self.root_rank(kmax, order))
            self._rank[(kmax, order)] = table
        return table

    def path_alg(self, kmax: int, order: int) -> PathAlgTable:
        table = self._covering(self._path, kmax, order)
        if table is None:
            table = path_alg_series(kmax, order)
            self._path[(kmax, order)] = table
        return table

    def ptype(self, kmax: int, order: int) -> PTypeTable:
        table = self._covering(self._ptype, kmax, order)
        if table is None:
            table = ptype_series(kmax, order)
            self._ptype[(kmax, order)] = table
        return table

    def census(self, n: int, force: bool = False) -> OracleCensus:
        if n not in self._census:
            self._census[n] = census_all(n, force=force)
        return self._census[n]

    def clear_all(self) -> None:
        """Drop every cached table (useful for testing)."""
        self._root.clear()
        self._rank.clear()
        self._path.clear()
        self._ptype.clear()
        self._census.clear()


# Global table store instance
table_store = TableStore()
