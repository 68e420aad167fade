"""Word-level behavior: shifts, distances, periods, canonical forms, classes."""

import itertools

import numpy as np
import pytest

from cyclocode import (
    DimensionMismatch,
    autocorrelation_distance,
    canonical_rotation,
    class_of,
    cyclic_shift,
    enumerate_classes,
    hamming_distance,
    min_cyclic_autodistance,
    period,
    weight,
    word,
    word_from_text,
    word_to_text,
)


def rotations(t):
    return [t[i:] + t[:i] for i in range(len(t))]


def brute_distance(a, b):
    return sum(x != y for x, y in zip(a, b))


def all_words(n, q):
    return itertools.product(range(q), repeat=n)


# ---------------------------------------------------------------- construction


def test_word_construction_and_validation():
    x = word((0, 2, 1, 1), 3)
    assert x.symbols == (0, 2, 1, 1)
    assert x.n == 4 and x.q == 3
    with pytest.raises(ValueError):
        word((), 2)
    with pytest.raises(ValueError):
        word((0, 2), 2)  # symbol out of range
    with pytest.raises(ValueError):
        word((0, 1), 1)  # alphabet too small


def test_text_forms():
    assert word_to_text(word("00101", 2)) == "00101"
    assert word_from_text("00101", 2).symbols == (0, 0, 1, 0, 1)
    # q > 10 switches to comma-separated digits
    big = word((0, 11, 3), 12)
    assert word_to_text(big) == "0,11,3"
    assert word_from_text("0,11,3", 12) == big
    with pytest.raises(ValueError):
        word_from_text("021", 2)
    with pytest.raises(ValueError):
        word_from_text("0,x,1", 12)


def test_text_round_trip_exhaustive_small():
    for n, q in [(4, 2), (3, 3), (2, 11)]:
        for symbols in all_words(n, q):
            x = word(symbols, q)
            assert word_from_text(word_to_text(x), q) == x


# ----------------------------------------------------------------------- shift


def test_cyclic_shift_examples():
    x = word((0, 1, 2), 3)
    assert cyclic_shift(x, 1).symbols == (1, 2, 0)
    assert cyclic_shift(x, 0) == x
    assert cyclic_shift(x, 3) == x  # i = n wraps to the identity
    assert cyclic_shift(x, -1).symbols == (2, 0, 1)  # reduced mod n


def test_shift_group_law_exhaustive():
    for n, q in [(5, 2), (4, 3)]:
        for symbols in all_words(n, q):
            x = word(symbols, q)
            for i in range(n):
                for j in range(n):
                    assert cyclic_shift(cyclic_shift(x, i), j) == cyclic_shift(
                        x, (i + j) % n
                    )


# -------------------------------------------------------------------- distance


def test_hamming_distance_examples():
    x = word((0, 1, 1), 2)
    assert hamming_distance(x, x) == 0
    assert hamming_distance(x, word((1, 1, 0), 2)) == 2
    with pytest.raises(DimensionMismatch):
        hamming_distance(x, word((0, 1), 2))
    with pytest.raises(DimensionMismatch):
        hamming_distance(x, word((0, 1, 1), 3))


def test_hamming_distance_independent_scan():
    rng = np.random.default_rng(20240811)
    for _ in range(200):
        n = int(rng.integers(1, 12))
        q = int(rng.integers(2, 6))
        a = tuple(int(v) for v in rng.integers(0, q, n))
        b = tuple(int(v) for v in rng.integers(0, q, n))
        assert hamming_distance(word(a, q), word(b, q)) == brute_distance(a, b)


def test_distance_is_a_metric():
    # exhaustive triples on a small space, then random larger ones
    words3 = [word(s, 2) for s in all_words(3, 2)]
    for x in words3:
        for y in words3:
            d = hamming_distance(x, y)
            assert d == hamming_distance(y, x)
            assert (d == 0) == (x == y)
            for z in words3:
                assert d <= hamming_distance(x, z) + hamming_distance(z, y)
    rng = np.random.default_rng(7)
    for _ in range(100):
        n, q = 9, 3
        x, y, z = (word(tuple(int(v) for v in rng.integers(0, q, n)), q) for _ in range(3))
        assert hamming_distance(x, y) <= hamming_distance(x, z) + hamming_distance(z, y)


def test_shift_invariance_of_distance():
    for symbols_x in all_words(5, 2):
        for symbols_y in all_words(5, 2):
            x, y = word(symbols_x, 2), word(symbols_y, 2)
            d = hamming_distance(x, y)
            for k in range(5):
                assert hamming_distance(cyclic_shift(x, k), cyclic_shift(y, k)) == d


# ---------------------------------------------------------------------- weight


def test_weight_examples():
    assert weight(word((0, 0, 0, 0), 2)) == 0
    assert weight(word((0, 1, 1, 0), 2)) == 2
    assert weight(word((0, 2, 1), 3)) == 2
    zero = word((0,) * 6, 2)
    for symbols in all_words(6, 2):
        x = word(symbols, 2)
        assert weight(x) == hamming_distance(x, zero)


# ---------------------------------------------------------------------- period


def test_period_examples():
    assert period(word((0,) * 6, 2)) == 1
    assert period(word((0, 1, 0, 1), 2)) == 2
    assert period(word((0, 0, 1), 2)) == 3


def test_period_properties_exhaustive():
    for n in range(1, 9):
        for symbols in all_words(n, 2):
            x = word(symbols, 2)
            p = period(x)
            assert n % p == 0
            assert cyclic_shift(x, p) == x
            assert len(set(rotations(symbols))) == p


# ------------------------------------------------------------ auto-distance


def test_min_autodistance_examples():
    assert min_cyclic_autodistance(word((0,) * 5, 2)) == 0
    assert min_cyclic_autodistance(word((0, 1), 2)) == 2
    assert min_cyclic_autodistance(word((0, 0, 1), 2)) == 2
    with pytest.raises(ValueError):
        min_cyclic_autodistance(word((0,), 2))


def test_autodistance_zero_iff_nontrivial_period():
    for n in range(2, 11):
        for symbols in all_words(n, 2):
            x = word(symbols, 2)
            assert (min_cyclic_autodistance(x) == 0) == (period(x) < n)


def test_autocorrelation_distance_examples():
    zero = word((0,) * 4, 2)
    for i in range(1, 4):
        assert autocorrelation_distance(zero, i) == 0
    assert autocorrelation_distance(word((0, 1), 2), 1) == 2
    with pytest.raises(ValueError):
        autocorrelation_distance(word((0, 1, 0), 2), 0)
    with pytest.raises(ValueError):
        autocorrelation_distance(word((0, 1, 0), 2), 3)


def test_kronecker_identity_exhaustive():
    # the delta-function form must agree with the direct distance computation
    for q, max_n in [(2, 10), (3, 7)]:
        for n in range(2, max_n + 1):
            for symbols in all_words(n, q):
                x = word(symbols, q)
                for i in range(1, n):
                    assert autocorrelation_distance(x, i) == hamming_distance(
                        x, cyclic_shift(x, i)
                    )


def test_kronecker_identity_sampled_large():
    rng = np.random.default_rng(99)
    for _ in range(60):
        n = int(rng.integers(8, 11))
        symbols = tuple(int(v) for v in rng.integers(0, 3, n))
        x = word(symbols, 3)
        for i in range(1, n):
            assert autocorrelation_distance(x, i) == hamming_distance(x, cyclic_shift(x, i))


# ---------------------------------------------------------------- canonical


def test_canonical_rotation_examples():
    assert canonical_rotation(word((1, 0, 0), 2)).symbols == (0, 0, 1)
    x = word((0, 0, 1), 2)
    assert canonical_rotation(x) == x  # already minimal


def test_canonical_rotation_exhaustive():
    for n, q in [(8, 2), (5, 3)]:
        for symbols in all_words(n, q):
            x = word(symbols, q)
            expected = word(min(rotations(symbols)), q)
            got = canonical_rotation(x)
            assert got == expected
            # every rotation maps to the same canonical form
            for i in range(n):
                assert canonical_rotation(cyclic_shift(x, i)) == expected


# ------------------------------------------------------------------- classes


def test_class_of_examples():
    c = class_of(word((0, 1, 1), 2))
    assert c.n_distinct == 3
    assert c.representative.symbols == (0, 1, 1)
    c2 = class_of(word((0, 1, 0, 1), 2))
    assert c2.n_distinct == 2
    assert c2.auto_distance == 0
    x = word((1, 2, 0, 1), 3)
    for i in range(4):
        assert class_of(cyclic_shift(x, i)) == class_of(x)


def test_enumerate_classes_examples():
    reps = [word_to_text(c.representative) for c in enumerate_classes(3, 2, full_period_only=True)]
    assert reps == ["001", "011"]
    reps2 = [word_to_text(c.representative) for c in enumerate_classes(2, 2, full_period_only=True)]
    assert reps2 == ["01"]
    ones = list(enumerate_classes(1, 2, full_period_only=True))
    assert len(ones) == 2 and all(c.n_distinct == 1 for c in ones)


def test_enumerate_classes_against_brute_force():
    for n, q in [(1, 2), (2, 2), (5, 2), (8, 2), (3, 3), (5, 3)]:
        brute = {}
        for symbols in all_words(n, q):
            rep = min(rotations(symbols))
            brute.setdefault(rep, set()).add(symbols)
        classes = list(enumerate_classes(n, q))
        reps = [c.representative.symbols for c in classes]
        assert reps == sorted(brute)  # each class once, ascending canonical order
        # partition property: class sizes sum to the whole space
        assert sum(c.n_distinct for c in classes) == q**n
        for c in classes:
            assert c.n_distinct == len(brute[c.representative.symbols])


def test_enumerate_classes_filters_against_brute_force():
    for n, q in [(4, 2), (6, 2), (4, 3)]:
        full = [c for c in enumerate_classes(n, q) if c.n_distinct == n]
        assert [c.representative for c in enumerate_classes(n, q, full_period_only=True)] == [
            c.representative for c in full
        ]
        for threshold in range(n + 1):
            expect = [c.representative for c in full if c.auto_distance >= threshold]
            got = [
                c.representative
                for c in enumerate_classes(
                    n, q, full_period_only=True, min_auto_distance=threshold
                )
            ]
            assert got == expect
    for w in range(5):
        expect = [
            c.representative
            for c in enumerate_classes(4, 2)
            if weight(c.representative) == w
        ]
        got = [c.representative for c in enumerate_classes(4, 2, weight_exactly=w)]
        assert got == expect


def test_enumerate_classes_weight_filter_requires_binary():
    with pytest.raises(Exception):
        list(enumerate_classes(4, 3, weight_exactly=2))
