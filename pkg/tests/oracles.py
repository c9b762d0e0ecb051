"""Independent reference implementations used as test oracles.

These deliberately avoid the library's code paths: the index oracle does
a full scan with no early exit, minimality goes through itertools
combinations instead of bitmask walks, and the totient comes from
factorization.
"""

from __future__ import annotations

import math
from itertools import combinations


def oracle_norm(entries, n: int, m: int) -> int:
    return sum((m * e) % n or n for e in entries)


def oracle_index(entries, n: int) -> tuple[int, int]:
    """(best_norm, best_multiplier) over all units, full scan, smallest-m ties."""
    best_norm = -1
    best_m = 0
    for m in range(1, n):
        if math.gcd(m, n) != 1:
            continue
        total = oracle_norm(entries, n, m)
        if best_m == 0 or total < best_norm:
            best_norm, best_m = total, m
    return best_norm, best_m


def oracle_minimal(entries, n: int) -> bool:
    if sum(entries) % n != 0:
        return False
    positions = range(len(entries))
    for size in range(1, len(entries)):
        for combo in combinations(positions, size):
            if sum(entries[i] for i in combo) % n == 0:
                return False
    return True


def oracle_totient(n: int) -> int:
    result = n
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            while m % d == 0:
                m //= d
            result -= result // d
        d += 1
    if m > 1:
        result -= result // m
    return result


def random_entries(rng, n: int, max_length: int = 6) -> list[int]:
    length = rng.randint(1, max_length)
    return [rng.randint(1, n) for _ in range(length)]
