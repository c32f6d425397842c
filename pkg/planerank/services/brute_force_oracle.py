"""
Brute-force oracle.

Walks every plane increasing tree on [n] by choosing, for m = 2..n, one of the
2m-3 attachment gaps of the tree on [m-1]. Vertex v with c children has c+1
gaps; gaps are numbered host by host in label order and left to right within
a host, so the slot sequence (s_2, ..., s_n), 1 <= s_m <= 2m-3, names each tree
exactly once.

Every census quantity depends only on the unlabelled plane shape of a tree,
so trees are tallied by shape and each distinct shape is censused once.
"""
from __future__ import annotations

import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable, Optional, Sequence

from planerank.config import settings
from planerank.models.oracle_schemas import OracleCensus, PlaneTree

logger = logging.getLogger(__name__)

Shape = tuple  # nested tuple of child shapes; () is a leaf


def _cap(force: bool) -> int:
    return settings.oracle_force_cap if force else settings.oracle_cap


def _check_n(n: int, force: bool) -> None:
    if n < 1:
        raise ValueError(f"Oracle needs n >= 1, got n={n}")
    cap = _cap(force)
    if n > cap:
        hint = "" if force else f" (--force raises it to {settings.oracle_force_cap})"
        raise ValueError(f"Oracle n={n} exceeds the cap n <= {cap}{hint}")


def _attach(parent: list[int], children: list[list[int]], m: int, slot: int) -> None:
    """Insert vertex m into gap number `slot` (1-based) of the tree on [m-1]."""
    if not 1 <= slot <= max(1, 2 * m - 3):
        raise ValueError(f"Slot {slot} out of range for vertex {m}")
    remaining = slot
    for host in range(1, m):
        gaps = len(children[host]) + 1
        if remaining <= gaps:
            children[host].insert(remaining - 1, m)
            parent[m] = host
            return
        remaining -= gaps
    raise ValueError(f"Slot {slot} out of range for vertex {m}")


def _freeze(n: int, parent: list[int], children: list[list[int]]) -> PlaneTree:
    return PlaneTree(n=n, parent=tuple(parent), children=tuple(tuple(c) for c in children))


def decode_slots(slots: Sequence[int]) -> PlaneTree:
    """Tree for the slot sequence (s_2, ..., s_n)."""
    n = len(slots) + 1
    parent = [0] * (n + 1)
    children: list[list[int]] = [[] for _ in range(n + 1)]
    for m, slot in enumerate(slots, start=2):
        _attach(parent, children, m, slot)
    return _freeze(n, parent, children)


def enumerate_trees(
    n: int,
    visitor: Callable[[PlaneTree], None],
    force: bool = False,
    prefix: Sequence[int] = (),
) -> int:
    """
    Call visitor once for every tree on [n] whose slot sequence starts with prefix.

    Returns:
        Number of trees visited ((2n-3)!! for an empty prefix)

    Raises:
        ValueError: If n is outside 1..cap or the prefix is invalid
    """
    _check_n(n, force)
    if len(prefix) > max(0, n - 1):
        raise ValueError(f"Prefix of length {len(prefix)} too long for n={n}")

    parent = [0] * (n + 1)
    children: list[list[int]] = [[] for _ in range(n + 1)]
    for m, slot in enumerate(prefix, start=2):
        _attach(parent, children, m, slot)

    visited = 0

    def grow(m: int) -> None:
        nonlocal visited
        if m > n:
            visitor(_freeze(n, parent, children))
            visited += 1
            return
        for host in range(1, m):
            kids = children[host]
            for pos in range(len(kids) + 1):
                kids.insert(pos, m)
                parent[m] = host
                grow(m + 1)
                kids.pop(pos)
        parent[m] = 0

    grow(2 + len(prefix))
    return visited


def tree_shape(tree: PlaneTree) -> Shape:
    """Unlabelled plane shape; children have larger labels, so one reverse sweep suffices."""
    shapes: list[Shape] = [()] * (tree.n + 1)
    for v in range(tree.n, 0, -1):
        shapes[v] = tuple(shapes[c] for c in tree.children[v])
    return shapes[1]


# ============================================
# Per-shape census
# ============================================

@lru_cache(maxsize=None)
def _size(shape: Shape) -> int:
    return 1 + sum(_size(c) for c in shape)


@lru_cache(maxsize=None)
def _rank(shape: Shape) -> int:
    if not shape:
        return 0
    return 1 + min(_rank(c) for c in shape)


@lru_cache(maxsize=None)
def _is_path(shape: Shape) -> bool:
    return not shape or (len(shape) == 1 and _is_path(shape[0]))


@lru_cache(maxsize=None)
def _rank_histogram(shape: Shape) -> Counter:
    hist = Counter({_rank(shape): 1})
    for c in shape:
        hist.update(_rank_histogram(c))
    return hist


@lru_cache(maxsize=None)
def _ptype_histogram(shape: Shape) -> Counter:
    hist: Counter = Counter()
    if _is_path(shape):
        hist[_rank(shape)] += 1
    for c in shape:
        hist.update(_ptype_histogram(c))
    return hist


@lru_cache(maxsize=None)
def _descent_distribution(shape: Shape) -> tuple[tuple[int, Fraction], ...]:
    """
    Exact law of the descent path length from the root of shape.

    With s >= 2 children of sizes j_1..j_s the kept child r has probability
    (sum_{r' != r} j_{r'}) / ((sum j)·(s-1)); a sole child is kept for sure.
    """
    if not shape:
        return ((0, Fraction(1)),)
    s = len(shape)
    total = _size(shape) - 1
    law: Counter = Counter()
    for child in shape:
        if s == 1:
            weight = Fraction(1)
        else:
            weight = Fraction(total - _size(child), total * (s - 1))
        for length, prob in _descent_distribution(child):
            law[length + 1] += weight * prob
    return tuple(sorted(law.items()))


def _census_part(n: int, prefix: tuple[int, ...], force: bool) -> Counter:
    shapes: Counter = Counter()
    enumerate_trees(n, lambda tree: shapes.update((tree_shape(tree),)), force=force, prefix=prefix)
    return shapes


def _prefixes(n: int) -> list[tuple[int, ...]]:
    """Slot prefixes (s_2, s_3, s_4) splitting the tree space into 15 parts."""
    if n < 4:
        return [()]
    return [(1, s3, s4) for s3, s4 in product(range(1, 4), range(1, 6))]


def count_shapes(n: int, force: bool = False, threads: Optional[int] = None) -> Counter:
    """Number of labelled trees on [n] with each plane shape."""
    _check_n(n, force)
    threads = settings.threads if threads is None else threads
    prefixes = _prefixes(n)

    if threads <= 1 or len(prefixes) == 1:
        parts = [_census_part(n, p, force) for p in prefixes]
    else:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_census_part, [n] * len(prefixes), prefixes, [force] * len(prefixes)))

    shapes: Counter = Counter()
    for part in parts:
        shapes.update(part)
    return shapes


def census_all(n: int, force: bool = False, threads: Optional[int] = None) -> OracleCensus:
    """Exact totals over every tree on [n]."""
    shapes = count_shapes(n, force=force, threads=threads)
    logger.info("Oracle enumeration done", extra={"n": n, "shapes": len(shapes)})

    ranks = range(n)
    tree_total = 0
    a: Counter = Counter()
    b: Counter = Counter()
    ptype: Counter = Counter()
    ptype_pair: Counter = Counter()
    pair: Counter = Counter()
    descent: Counter = Counter()

    for shape, weight in shapes.items():
        tree_total += weight
        hist = _rank_histogram(shape)
        p_hist = _ptype_histogram(shape)
        b[_rank(shape)] += weight
        for k, count in hist.items():
            a[k] += weight * count
        for k, count in p_hist.items():
            ptype[k] += weight * count
            ptype_pair[k] += weight * count * (count - 1)
        for k1, h1 in hist.items():
            for k2, h2 in hist.items():
                pair[(k1, k2)] += weight * (h1 * h2 - (h1 if k1 == k2 else 0))
        for length, prob in _descent_distribution(shape):
            descent[length] += weight * prob

    pi_exact = {
        k: sum((p for length, p in descent.items() if length > k), Fraction(0)) / tree_total
        for k in range(-1, n)
    }
    b_geq = {k: sum(b[j] for j in ranks if j >= k) for k in range(n + 1)}

    return OracleCensus(
        n=n,
        tree_total=tree_total,
        a={k: a[k] for k in ranks},
        b={k: b[k] for k in ranks},
        b_geq=b_geq,
        ptype={k: ptype[k] for k in ranks},
        ptype_pair={k: ptype_pair[k] for k in ranks},
        pair={(k1, k2): pair[(k1, k2)] for k1 in ranks for k2 in ranks},
        pi_exact=pi_exact,
    )
