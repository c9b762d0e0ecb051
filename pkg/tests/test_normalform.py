"""Reduction to normal form, witness search, and closed-form multipliers."""

import math
import random
from fractions import Fraction

import pytest

from zsi import (
    CLOSED_FORM_CASES,
    DirectCertificate,
    NormalForm,
    Normalized,
    NotApplicable,
    ResidueSequence,
    closed_form_witness,
    find_witness,
    index_certificate,
    interval_width,
    is_minimal_zero_sum,
    k1_width_bound,
    norm,
    primes_between,
    reduce_sequence,
)

from oracles import oracle_index


@pytest.mark.parametrize(
    "p,a,b,c,message",
    [
        (32, 3, 4, 5, "not prime"),
        (31, 3, 4, 6, "2 + c = a + b"),
        (31, 2, 5, 5, "2 < a"),
        (31, 5, 4, 7, "a <= b"),
        (31, 5, 5, 5, "b < c"),
        (31, 9, 10, 17, "c < p/2"),
    ],
)
def test_normal_form_validation_names_the_inequality(p, a, b, c, message):
    with pytest.raises(ValueError, match=message.replace("+", r"\+").replace("/", "/")):
        NormalForm(p, a, b, c)


def test_normal_form_to_sequence():
    form = NormalForm(31, 7, 9, 14)
    assert form.to_sequence().entries == (1, 1, 14, 22, 24)
    assert NormalForm(31, 3, 14, 15).is_exceptional()
    assert not NormalForm(31, 7, 9, 14).is_exceptional()


def test_reduce_examples():
    assert reduce_sequence(ResidueSequence.of((1, 1, 2, 3, 4), 11)) == DirectCertificate(1, 11)
    assert reduce_sequence(ResidueSequence.of((1, 1, 19, 20, 21), 31)) == DirectCertificate(2, 31)
    assert reduce_sequence(ResidueSequence.of((1, 1, 14, 22, 24), 31)) == Normalized(
        NormalForm(31, 7, 9, 14)
    )
    assert reduce_sequence(ResidueSequence.of((1, 1, 15, 17, 28), 31)) == Normalized(
        NormalForm(31, 3, 14, 15)
    )


def test_reduce_not_applicable_reasons():
    assert reduce_sequence(ResidueSequence.of((1, 1, 2, 3, 3), 10)) == NotApplicable("not-prime-order")
    assert reduce_sequence(ResidueSequence.of((1, 1, 2, 7), 11)) == NotApplicable("not-length-5")
    assert reduce_sequence(ResidueSequence.of((1, 10, 2, 3, 6), 11)) == NotApplicable("not-minimal")
    # minimal zero-sum with all entries distinct
    assert reduce_sequence(ResidueSequence.of((1, 3, 4, 5, 9), 11)) == NotApplicable("not-h2")
    # triple repeat
    assert reduce_sequence(ResidueSequence.of((1, 1, 1, 4, 4), 11)) == NotApplicable("not-h2")


def test_reduce_composes_the_rescaling_unit():
    # (1,1,2,3,4) over Z_11 scaled by 3 keeps orbit data but moves the
    # repeated element to 3; the returned multiplier must still certify the
    # input sequence as given.
    seq = ResidueSequence.of((1, 1, 2, 3, 4), 11).scale(3)
    assert seq.entries == (1, 3, 3, 6, 9)
    outcome = reduce_sequence(seq)
    assert isinstance(outcome, DirectCertificate)
    assert norm(seq, outcome.multiplier) == outcome.norm == 11


def test_reduce_with_two_doubled_elements():
    # Both 1 and 7 are doubled; the smaller repeated element is rescaled
    # to 1, which here is the identity, and the sum is already p.
    assert reduce_sequence(ResidueSequence.of((1, 1, 3, 7, 7), 19)) == DirectCertificate(1, 19)
    # Both 1 and 9 doubled with sum 2p; a = b is allowed by the shape.
    assert reduce_sequence(ResidueSequence.of((1, 1, 6, 9, 9), 13)) == Normalized(
        NormalForm(13, 4, 4, 6)
    )


def test_reduce_roundtrips_normal_forms():
    rng = random.Random(61)
    seen = 0
    primes = primes_between(11, 199)
    while seen < 200:
        p = primes[rng.randrange(len(primes))]
        half = (p - 1) // 2
        a = rng.randint(3, half)
        b = rng.randint(a, half)
        c = a + b - 2
        if c <= b or 2 * c >= p:
            continue
        form = NormalForm(p, a, b, c)
        if not is_minimal_zero_sum(form.to_sequence()):
            continue
        seen += 1
        assert reduce_sequence(form.to_sequence()) == Normalized(form)


def test_find_witness_examples():
    result = find_witness(NormalForm(31, 7, 9, 14))
    assert result.found == (1, 3)
    assert (result.k1, result.m1) == (1, 3)

    result = find_witness(NormalForm(31, 3, 4, 5))
    assert result.found == (1, 7)

    result = find_witness(NormalForm(31, 3, 14, 15))
    assert result.found is None
    assert (result.k1, result.m1) == (5, 11)


def test_find_witness_soundness_and_k1_properties():
    rng = random.Random(67)
    primes = primes_between(11, 199)
    for _ in range(400):
        p = primes[rng.randrange(len(primes))]
        half = (p - 1) // 2
        a = rng.randint(3, half)
        b = rng.randint(a, half)
        c = a + b - 2
        if c <= b or 2 * c >= p:
            continue
        form = NormalForm(p, a, b, c)
        result = find_witness(form)
        # k1 is the first k whose interval [kp/c, kp/b) holds an integer.
        assert 1 <= result.k1 <= b
        for k in range(1, result.k1):
            assert -(-k * p // c) * b >= k * p
        m1 = result.m1
        assert m1 * c >= result.k1 * p and m1 * b < result.k1 * p
        assert m1 == -(-result.k1 * p // c)
        assert k1_width_bound(form, result.k1)
        if result.found is not None:
            k, m = result.found
            assert 1 <= k <= b
            assert k * p <= m * c and m * b < k * p
            assert m * a < p and math.gcd(m, p) == 1
            assert norm(form.to_sequence(), m) == p
            assert oracle_index(form.to_sequence().entries, p)[0] == p


def test_interval_width_exact_fraction():
    form = NormalForm(31, 3, 14, 15)
    assert interval_width(form, 4) == Fraction(124, 210)
    assert interval_width(form, 4) < 1
    assert k1_width_bound(form, 5)
    assert k1_width_bound(NormalForm(31, 7, 9, 14), 1)


def test_closed_form_examples():
    assert closed_form_witness((3, 4, 5), 31) == (7, 3)
    assert norm(ResidueSequence.of((1, 1, 5, 27, 28), 31), 7) == 31

    assert closed_form_witness((4, 6, 8), 19) == (3, 1)
    assert norm(ResidueSequence.of((1, 1, 8, 13, 15), 19), 3) == 19

    assert closed_form_witness((3, 5, 6), 29) == (5, 4)
    assert norm(ResidueSequence.of((1, 1, 6, 24, 26), 29), 5) == 29


def test_closed_form_rejects_bad_input():
    with pytest.raises(ValueError):
        closed_form_witness((4, 6, 8), 17)  # at the threshold, not above it
    with pytest.raises(ValueError):
        closed_form_witness((3, 4, 5), 15)
    with pytest.raises(ValueError):
        closed_form_witness((3, 4, 5), 33)  # not prime
    with pytest.raises(ValueError):
        closed_form_witness((3, 4, 6), 31)  # not a tabulated shape


def test_closed_form_division_identity():
    for case, (divisor, threshold) in CLOSED_FORM_CASES.items():
        for p in primes_between(threshold + 1, 200):
            m, t = closed_form_witness(case, p)
            assert p == divisor * m + t
            assert 1 <= t <= divisor - 1
            assert math.gcd(m, p) == 1


def test_certified_forms_have_index_one():
    # A found witness pins the brute-force index at exactly 1.
    for p, a, b, c in [(31, 7, 9, 14), (31, 3, 4, 5), (61, 3, 17, 18), (101, 5, 20, 23)]:
        form = NormalForm(p, a, b, c)
        result = find_witness(form)
        if result.found is not None:
            assert index_certificate(form.to_sequence()).index_value == 1
