"""Exact arithmetic over Z_n: residues, units, and residue sequences.

Everything here is plain integer arithmetic.  Residues are kept in the
range [1, n], with the zero element of the group represented as n, so
that sums of representatives are directly comparable against multiples
of n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator

# Desk-scale caps; beyond these the exhaustive machinery is pointless anyway.
MAX_ORDER = 2**31 - 1
MAX_LENGTH = 64


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test (n is capped well below 2**31)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def primes_between(lo: int, hi: int) -> list[int]:
    """All primes p with lo <= p <= hi, ascending."""
    return [p for p in range(max(lo, 2), hi + 1) if is_prime(p)]


def least_positive_residue(x: int, n: int) -> int:
    """The unique r with r congruent to x mod n and 1 <= r <= n."""
    if n < 1:
        raise ValueError(f"modulus must be positive, got {n}")
    r = x % n
    return r if r else n


def units(n: int) -> list[int]:
    """The multipliers in [1, n-1] coprime to n, ascending."""
    if n < 2:
        raise ValueError(f"group order must be at least 2, got {n}")
    return [m for m in range(1, n) if math.gcd(m, n) == 1]


def modular_inverse(x: int, n: int) -> int:
    """Inverse of x mod n; raises ValueError when gcd(x, n) != 1."""
    return pow(x, -1, n)


@dataclass(frozen=True)
class CyclicOrder:
    """Order of the ambient cyclic group Z_n.

    The primality flag is always computed here, never supplied by the
    caller.
    """

    n: int
    is_prime: bool = field(init=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"group order must be at least 2, got {self.n}")
        if self.n > MAX_ORDER:
            raise ValueError(f"group order {self.n} exceeds the supported cap {MAX_ORDER}")
        object.__setattr__(self, "is_prime", is_prime(self.n))

    def units(self) -> list[int]:
        return units(self.n)


@dataclass(frozen=True)
class ResidueSequence:
    """A finite multiset of residues in [1, n] over Z_n.

    Entries are stored sorted ascending; two sequences are equal exactly
    when their orders and sorted entry tuples are equal.
    """

    order: CyclicOrder
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        entries = tuple(sorted(int(e) for e in self.entries))
        if not entries:
            raise ValueError("a residue sequence needs at least one entry")
        if len(entries) > MAX_LENGTH:
            raise ValueError(f"sequence length {len(entries)} exceeds the supported cap {MAX_LENGTH}")
        n = self.order.n
        if entries[0] < 1 or entries[-1] > n:
            bad = entries[0] if entries[0] < 1 else entries[-1]
            raise ValueError(f"entry {bad} outside [1, {n}]")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def of(cls, entries: Iterable[int], n: int) -> "ResidueSequence":
        return cls(CyclicOrder(n), tuple(entries))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __str__(self) -> str:
        return f"({','.join(map(str, self.entries))}) over Z_{self.order.n}"

    def entry_sum(self) -> int:
        return sum(self.entries)

    def scale(self, m: int) -> "ResidueSequence":
        """Entry-wise multiplication by m, reduced to least positive residues.

        Any integer m is accepted; only units give a bijection.
        """
        n = self.order.n
        return ResidueSequence(self.order, tuple((m * e) % n or n for e in self.entries))


def scale(sequence: ResidueSequence, m: int) -> ResidueSequence:
    """Free-function alias of ResidueSequence.scale."""
    return sequence.scale(m)
