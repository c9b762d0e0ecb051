"""Index computation and structural predicates for residue sequences."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .residues import ResidueSequence

# Minimality enumerates all proper sub-multisets, so the length is capped.
MINIMALITY_LENGTH_CAP = 30


@dataclass(frozen=True)
class IndexCertificate:
    """The index of a sequence together with a multiplier witnessing it.

    best_norm is the smallest rescaled entry sum over all units, attained
    at best_multiplier; the index is exactly best_norm / group_order.
    """

    group_order: int
    best_multiplier: int
    best_norm: int

    @property
    def index_value(self) -> Fraction:
        return Fraction(self.best_norm, self.group_order)

    @property
    def is_integral(self) -> bool:
        return self.best_norm % self.group_order == 0


def norm(sequence: ResidueSequence, multiplier: int = 1) -> int:
    """Sum of the least positive residues of the entries rescaled by a unit."""
    n = sequence.order.n
    if math.gcd(multiplier, n) != 1:
        raise ValueError(f"multiplier {multiplier} is not a unit mod {n}")
    total = 0
    for e in sequence.entries:
        r = (multiplier * e) % n
        total += r if r else n
    return total


def index_certificate(sequence: ResidueSequence) -> IndexCertificate:
    """Minimize norm(sequence, m) over all units m, ascending.

    Ties go to the smallest multiplier.  The scan stops as soon as the
    unconditional lower bound for the norm is reached, which cannot change
    the result: for a zero-sum sequence every norm is a positive multiple
    of n, otherwise every norm is at least the length.
    """
    n = sequence.order.n
    entries = sequence.entries
    length = len(entries)
    if sum(entries) % n == 0:
        floor = n * ((length + n - 1) // n)
    else:
        floor = length
    prime = sequence.order.is_prime
    best_m = 0
    best_norm = 0
    for m in range(1, n):
        if not prime and math.gcd(m, n) != 1:
            continue
        total = 0
        for e in entries:
            r = (m * e) % n
            total += r if r else n
        if best_m == 0 or total < best_norm:
            best_m = m
            best_norm = total
            if total == floor:
                break
    return IndexCertificate(n, best_m, best_norm)


def index_value(sequence: ResidueSequence) -> Fraction:
    """The index of the sequence as an exact fraction."""
    return index_certificate(sequence).index_value


def is_zero_sum(sequence: ResidueSequence) -> bool:
    return sequence.entry_sum() % sequence.order.n == 0


def is_minimal_zero_sum(sequence: ResidueSequence) -> bool:
    """Zero-sum with no proper nonempty sub-multiset summing to zero.

    Walks every proper subset of positions in Gray-code order, so each
    step updates the running sum by one entry.  Lengths above 30 are
    rejected outright.
    """
    length = len(sequence)
    if length > MINIMALITY_LENGTH_CAP:
        raise ValueError(
            f"minimality check supports length <= {MINIMALITY_LENGTH_CAP}, got {length}"
        )
    n = sequence.order.n
    if not is_zero_sum(sequence):
        return False
    entries = sequence.entries
    full = (1 << length) - 1
    running = 0
    previous = 0
    for i in range(1, full + 1):
        code = i ^ (i >> 1)
        flipped = code ^ previous
        previous = code
        position = flipped.bit_length() - 1
        if code & flipped:
            running += entries[position]
        else:
            running -= entries[position]
        if code != full and running % n == 0:
            return False
    return True


def max_multiplicity(sequence: ResidueSequence) -> int:
    """Largest number of times any single element appears."""
    return max(Counter(sequence.entries).values())


def orbit_canonical(sequence: ResidueSequence) -> ResidueSequence:
    """Lexicographically smallest rescaling of the sequence by a unit.

    Constant on unit orbits and idempotent, so it canonically labels the
    orbit; the index is the same for every member.
    """
    n = sequence.order.n
    prime = sequence.order.is_prime
    entries = sequence.entries
    best: tuple[int, ...] | None = None
    for m in range(1, n):
        if not prime and math.gcd(m, n) != 1:
            continue
        candidate = tuple(sorted((m * e) % n or n for e in entries))
        if best is None or candidate < best:
            best = candidate
    assert best is not None
    return ResidueSequence(sequence.order, best)
