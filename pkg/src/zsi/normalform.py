"""Normal forms of length-5 minimal zero-sum sequences and witness search.

A minimal zero-sum sequence of length 5 over Z_p whose most repeated
element appears exactly twice can be rescaled so that the repeated
element is 1.  Either the rescaled entry sum is already p (index 1 on
the spot), or it is 2p; in the latter case the sequence is either
certified directly by the multiplier 2, or it is captured by the normal
form

    (1, 1, c, p - b, p - a)   with 2 + c = a + b and 2 < a <= b < c < p/2.

For a normal form, any pair (k, m) with

    kp/c <= m < kp/b,  gcd(m, p) = 1,  1 <= k <= b,  m*a < p

forces the rescaled entry sum at m to be exactly p, hence index 1.  The
scan for such a pair, and the bookkeeping constant k1 (the first k whose
interval [kp/c, kp/b) contains an integer), drive the verification
suites.  All interval tests are exact cross-multiplied comparisons.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .engine import is_minimal_zero_sum, norm
from .residues import ResidueSequence, is_prime, modular_inverse

REASON_NOT_LENGTH_5 = "not-length-5"
REASON_NOT_H2 = "not-h2"
REASON_NOT_MINIMAL = "not-minimal"
REASON_NOT_PRIME_ORDER = "not-prime-order"


def _ceil_div(num: int, den: int) -> int:
    return -(-num // den)


@dataclass(frozen=True)
class NormalForm:
    """Parameters (p, a, b, c) abbreviating (1, 1, c, p-b, p-a) over Z_p."""

    p: int
    a: int
    b: int
    c: int

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if self.a <= 2:
            raise ValueError(f"2 < a violated: a = {self.a}")
        if self.a > self.b:
            raise ValueError(f"a <= b violated: a = {self.a}, b = {self.b}")
        if self.b >= self.c:
            raise ValueError(f"b < c violated: b = {self.b}, c = {self.c}")
        if 2 * self.c >= self.p:
            raise ValueError(f"c < p/2 violated: c = {self.c}, p = {self.p}")
        if self.a + self.b != self.c + 2:
            raise ValueError(f"2 + c = a + b violated: 2 + {self.c} != {self.a} + {self.b}")

    def to_sequence(self) -> ResidueSequence:
        """The sequence (1, 1, c, p-b, p-a) this form abbreviates."""
        return ResidueSequence.of((1, 1, self.c, self.p - self.b, self.p - self.a), self.p)

    def is_exceptional(self) -> bool:
        """True for a = 3 and c = (p-1)/2, the unique index-2 shape for p >= 31."""
        return self.a == 3 and 2 * self.c == self.p - 1


@dataclass(frozen=True)
class DirectCertificate:
    """A unit with rescaled entry sum exactly p, certifying index 1 outright."""

    multiplier: int
    norm: int


@dataclass(frozen=True)
class Normalized:
    form: NormalForm


@dataclass(frozen=True)
class NotApplicable:
    reason: str


ReductionOutcome = DirectCertificate | Normalized | NotApplicable


def _checked_direct(sequence: ResidueSequence, multiplier: int, p: int) -> DirectCertificate:
    value = norm(sequence, multiplier)
    if value != p:
        raise RuntimeError(
            f"direct certificate m = {multiplier} for {sequence} gives norm {value},"
            f" expected {p}; this is a bug"
        )
    return DirectCertificate(multiplier, value)


def reduce_sequence(sequence: ResidueSequence) -> ReductionOutcome:
    """Route a sequence to a direct index-1 certificate or its normal form.

    Applies only to minimal zero-sum sequences of length 5 over a prime
    order whose most repeated element appears exactly twice; anything
    else comes back as NotApplicable with a reason tag.  The repeated
    element (the smallest one, if two elements are doubled) is rescaled
    to 1 first, and certificate multipliers are composed with that
    rescaling unit, so they are valid against the input sequence as
    given.
    """
    order = sequence.order
    p = order.n
    if not order.is_prime:
        return NotApplicable(REASON_NOT_PRIME_ORDER)
    if len(sequence) != 5:
        return NotApplicable(REASON_NOT_LENGTH_5)
    if not is_minimal_zero_sum(sequence):
        return NotApplicable(REASON_NOT_MINIMAL)
    counts = Counter(sequence.entries)
    if max(counts.values()) != 2:
        return NotApplicable(REASON_NOT_H2)
    repeated = min(e for e, k in counts.items() if k == 2)
    unit = modular_inverse(repeated, p)
    rescaled = sequence.scale(unit)
    total = rescaled.entry_sum()
    if total == p:
        return _checked_direct(sequence, unit, p)
    if total != 2 * p:
        raise RuntimeError(
            f"rescaled sum {total} for {sequence} is neither p nor 2p; this is a bug"
        )
    x1, x2, x3 = rescaled.entries[2:]
    if 2 * x1 > p:
        # All three of x1, x2, x3 exceed p/2, so doubling drops the sum to p.
        return _checked_direct(sequence, (2 * unit) % p, p)
    return Normalized(NormalForm(p, p - x3, p - x2, x1))


@dataclass(frozen=True)
class WitnessResult:
    """Outcome of the witness scan over a normal form.

    found is the first admissible (k, m) pair in scan order, or None when
    the whole search space is empty.  k1 is the smallest k whose interval
    [kp/c, kp/b) contains an integer, and m1 is the smallest such integer;
    both always exist, with k1 <= b.
    """

    found: tuple[int, int] | None
    k1: int
    m1: int


def find_witness(form: NormalForm) -> WitnessResult:
    """Scan k = 1..b ascending, and m ascending inside [kp/c, kp/b).

    Returns the first pair also satisfying gcd(m, p) = 1 and m*a < p.
    Whenever a pair is found, the rescaled entry sum at m is recomputed
    and must equal p; a mismatch is a hard internal error since it would
    falsify the implementation.
    """
    p, a, b, c = form.p, form.a, form.b, form.c
    found: tuple[int, int] | None = None
    k1 = 0
    m1 = 0
    for k in range(1, b + 1):
        kp = k * p
        m = _ceil_div(kp, c)
        if m * b >= kp:
            continue  # the interval holds no integer
        if k1 == 0:
            k1, m1 = k, m
        while m * b < kp:
            if m * a < p and math.gcd(m, p) == 1:
                found = (k, m)
                break
            m += 1
        if found is not None:
            break
    if k1 == 0:
        raise RuntimeError(f"no interval up to k = b contains an integer for {form}; this is a bug")
    if (k1 - 1) * p * (a - 2) >= b * c:
        raise RuntimeError(f"interval below k1 = {k1} has width >= 1 for {form}; this is a bug")
    if found is not None:
        value = norm(form.to_sequence(), found[1])
        if value != p:
            raise RuntimeError(
                f"witness {found} for {form} gives norm {value}, expected {p}; this is a bug"
            )
    return WitnessResult(found, k1, m1)


def k1_width_bound(form: NormalForm, k1: int) -> bool:
    """True iff the interval just below k1 is narrower than 1.

    Exactly the statement (k1-1) * p * (a-2) < b * c; it holds for the k1
    computed by find_witness on every normal form.
    """
    return (k1 - 1) * form.p * (form.a - 2) < form.b * form.c


def interval_width(form: NormalForm, k: int) -> Fraction:
    """Exact width k*p*(a-2) / (b*c) of the interval [kp/c, kp/b)."""
    return Fraction(k * form.p * (form.a - 2), form.b * form.c)


# The four fixed shapes with a division-based witness: (a, b, c) mapped to
# the divisor D and the exclusive prime threshold.  Writing p = D*m + t
# with 1 <= t <= D-1 makes m a unit with rescaled entry sum exactly p.
CLOSED_FORM_CASES: dict[tuple[int, int, int], tuple[int, int]] = {
    (4, 6, 8): (6, 17),
    (4, 7, 9): (7, 19),
    (3, 4, 5): (4, 15),
    (3, 5, 6): (5, 24),
}


def closed_form_witness(case: tuple[int, int, int], p: int) -> tuple[int, int]:
    """Division-based witness (m, t) with p = D*m + t for the four fixed shapes.

    Rejects primes at or below the case threshold.  The rescaled entry sum
    at m is recomputed and must equal p before returning.
    """
    if case not in CLOSED_FORM_CASES:
        raise ValueError(f"unsupported case {case}; expected one of {sorted(CLOSED_FORM_CASES)}")
    divisor, threshold = CLOSED_FORM_CASES[case]
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if p <= threshold:
        raise ValueError(f"case {case} requires p > {threshold}, got p = {p}")
    m, t = divmod(p, divisor)
    a, b, c = case
    value = norm(ResidueSequence.of((1, 1, c, p - b, p - a), p), m)
    if value != p:
        raise RuntimeError(
            f"closed-form witness m = {m} for {case} at p = {p} gives norm {value}; this is a bug"
        )
    return m, t
