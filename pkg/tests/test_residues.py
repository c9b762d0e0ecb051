"""Residue arithmetic, units, and the sequence type."""

import random

import pytest

from zsi import (
    CyclicOrder,
    ResidueSequence,
    least_positive_residue,
    modular_inverse,
    scale,
    units,
)
from zsi.residues import MAX_LENGTH, MAX_ORDER, is_prime

from oracles import oracle_totient


@pytest.mark.parametrize(
    "x,n,expected",
    [
        (7, 5, 2),
        (10, 5, 5),
        (-3, 5, 2),
        (0, 7, 7),
        (1, 1, 1),
        (31, 31, 31),
    ],
)
def test_least_positive_residue_examples(x, n, expected):
    assert least_positive_residue(x, n) == expected


def test_least_positive_residue_properties():
    rng = random.Random(7)
    for _ in range(2000):
        n = rng.randint(1, 500)
        x = rng.randint(-10**6, 10**6)
        r = least_positive_residue(x, n)
        assert 1 <= r <= n
        assert (r - x) % n == 0


def test_least_positive_residue_rejects_bad_modulus():
    with pytest.raises(ValueError):
        least_positive_residue(3, 0)


def test_units_examples():
    assert units(5) == [1, 2, 3, 4]
    assert units(6) == [1, 5]
    assert units(31) == list(range(1, 31))
    assert units(2) == [1]


def test_units_count_is_totient():
    for n in range(2, 201):
        assert len(units(n)) == oracle_totient(n)


def test_units_rejects_small_order():
    with pytest.raises(ValueError):
        units(1)


def test_modular_inverse():
    rng = random.Random(11)
    for _ in range(500):
        n = rng.randint(2, 400)
        us = units(n)
        m = us[rng.randrange(len(us))]
        assert (m * modular_inverse(m, n)) % n == 1
    with pytest.raises(ValueError):
        modular_inverse(2, 6)


def test_cyclic_order_primality_flag():
    sieve = [True] * 201
    sieve[0] = sieve[1] = False
    for i in range(2, 201):
        if sieve[i]:
            for j in range(2 * i, 201, i):
                sieve[j] = False
    for n in range(2, 201):
        assert CyclicOrder(n).is_prime == sieve[n]
        assert is_prime(n) == sieve[n]


def test_cyclic_order_validation():
    with pytest.raises(ValueError):
        CyclicOrder(1)
    with pytest.raises(ValueError):
        CyclicOrder(MAX_ORDER + 1)
    assert CyclicOrder(MAX_ORDER).n == MAX_ORDER


def test_sequence_sorted_and_equal():
    a = ResidueSequence.of((28, 1, 17, 1, 15), 31)
    b = ResidueSequence.of((1, 1, 15, 17, 28), 31)
    assert a == b
    assert a.entries == (1, 1, 15, 17, 28)
    assert len(a) == 5
    assert list(a) == [1, 1, 15, 17, 28]
    assert a.entry_sum() == 62
    assert a != ResidueSequence.of((1, 1, 15, 17, 28), 37)


def test_sequence_zero_element_is_order():
    seq = ResidueSequence.of((5, 3), 5)
    assert seq.entries == (3, 5)
    with pytest.raises(ValueError):
        ResidueSequence.of((0, 3), 5)
    with pytest.raises(ValueError):
        ResidueSequence.of((6,), 5)


def test_sequence_needs_entries_and_caps_length():
    with pytest.raises(ValueError):
        ResidueSequence.of((), 5)
    with pytest.raises(ValueError):
        ResidueSequence.of([1] * (MAX_LENGTH + 1), 5)
    assert len(ResidueSequence.of([1] * MAX_LENGTH, 5)) == MAX_LENGTH


def test_scale_examples():
    s = ResidueSequence.of((1, 1, 15, 17, 28), 31)
    assert s.scale(2).entries == (2, 2, 3, 25, 30)
    assert s.scale(1) == s
    t = ResidueSequence.of((1, 1, 14, 22, 24), 31)
    assert t.scale(3).entries == (3, 3, 4, 10, 11)
    assert scale(t, 3) == t.scale(3)


def test_scale_composition():
    rng = random.Random(23)
    for _ in range(500):
        n = rng.randint(2, 200)
        seq = ResidueSequence.of([rng.randint(1, n) for _ in range(rng.randint(1, 6))], n)
        m1 = rng.randint(-50, 50)
        m2 = rng.randint(-50, 50)
        assert seq.scale(m1).scale(m2) == seq.scale(m1 * m2)


def test_scale_by_unit_is_bijective():
    rng = random.Random(29)
    for _ in range(500):
        n = rng.randint(2, 200)
        seq = ResidueSequence.of([rng.randint(1, n) for _ in range(rng.randint(1, 6))], n)
        us = units(n)
        m = us[rng.randrange(len(us))]
        assert seq.scale(m).scale(modular_inverse(m, n)) == seq
        assert len(seq.scale(m)) == len(seq)
