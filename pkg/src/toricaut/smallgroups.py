"""Identification of finite groups of order at most 12 from their Cayley table."""

from __future__ import annotations

import itertools
from collections import Counter
from math import gcd

CATALOG_MAX_ORDER = 12


def element_orders(table) -> list[int]:
    """Order of every element; index 0 must be the identity."""
    out = []
    for a in range(len(table)):
        k, x = 1, a
        while x != 0:
            x = table[x][a]
            k += 1
        out.append(k)
    return out


def is_abelian(table) -> bool:
    n = len(table)
    return all(table[a][b] == table[b][a] for a in range(n) for b in range(a + 1, n))


def _invariant_factor_lists(order: int):
    # all d_1 | d_2 | ... | d_k with d_1 >= 2 and product == order
    def rec(remaining, prev):
        if remaining == 1:
            yield []
            return
        for d in range(prev, remaining + 1):
            if remaining % d == 0:
                for rest in rec(remaining // d, d):
                    if not rest or rest[0] % d == 0:
                        yield [d] + rest

    return list(rec(order, 2))


def _abelian_order_stats(factors) -> Counter:
    stats = Counter()
    for elem in itertools.product(*(range(d) for d in factors)):
        o = 1
        for x, d in zip(elem, factors):
            k = d // gcd(d, x)
            o = o * k // gcd(o, k)
        stats[o] += 1
    return stats


def abelian_name(factors) -> str:
    return " x ".join(f"Z/{d}" for d in factors) if factors else "1"


def identify(order: int, abelian: bool, orders) -> str | None:
    """Catalog label, or ``None`` beyond the catalog range.

    Abelian groups are pinned down by their element-order statistics;
    the nonabelian groups of order at most 12 by the number of involutions.
    """
    stats = Counter(orders)
    if order > CATALOG_MAX_ORDER:
        return None
    if abelian:
        for factors in _invariant_factor_lists(order):
            if _abelian_order_stats(factors) == stats:
                return abelian_name(factors)
        return None
    involutions = stats[2]
    if order == 6:
        return "S3"
    if order == 8:
        return {5: "D4", 1: "Q8"}.get(involutions)
    if order == 10:
        return "D5"
    if order == 12:
        return {7: "D6", 3: "A4", 1: "Dic3"}.get(involutions)
    return None


def generators(table) -> list[int]:
    """A small generating set, found greedily by element index."""
    n = len(table)
    span = {0}
    gens = []
    for g in range(1, n):
        if g in span:
            continue
        gens.append(g)
        frontier = list(span)
        span = set(span)
        while frontier:
            x = frontier.pop()
            for h in gens:
                y = table[x][h]
                if y not in span:
                    span.add(y)
                    frontier.append(y)
        if len(span) == n:
            break
    return gens


def is_group_table(table) -> bool:
    """Closure, identity at index 0, inverses and associativity."""
    n = len(table)
    if any(len(row) != n for row in table):
        return False
    if any(table[0][a] != a or table[a][0] != a for a in range(n)):
        return False
    if any(0 not in row for row in table):
        return False
    return all(
        table[table[a][b]][c] == table[a][table[b][c]]
        for a in range(n)
        for b in range(n)
        for c in range(n)
    )

