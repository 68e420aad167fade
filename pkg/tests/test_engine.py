"""The packed bit-field kernels must agree with the word-level reference ops."""

import itertools

import numpy as np
import pytest

from cyclocode import (
    CapacityError,
    ball_volume,
    canonical_rotation,
    cyclic_shift,
    enumerate_classes,
    hamming_distance,
    min_cyclic_autodistance,
    word,
)
from cyclocode.engine import (
    bits_per_symbol,
    class_distance_matrix,
    class_distance_row,
    class_system,
    codec_for,
    edit_positions,
    error_patterns,
    min_autodistance_packed,
    packable,
    sorted_membership,
    weight_slice_digits,
    word_digit_chunks,
)


def all_words(n, q):
    return list(itertools.product(range(q), repeat=n))


def digit_matrix(n, q):
    return np.array(all_words(n, q), dtype=np.uint8)


def brute_class_distance(a, b):
    n = len(a)
    return min(
        sum(x != y for x, y in zip(a, b[i:] + b[:i])) for i in range(n)
    )


def test_bits_per_symbol_steps():
    expected = {2: 1, 3: 2, 4: 2, 5: 4, 16: 4, 17: 8, 100: 8, 256: 8}
    for q, b in expected.items():
        assert bits_per_symbol(q) == b


def test_packable_boundary():
    assert packable(64, 2)
    assert not packable(65, 2)
    assert packable(32, 3)
    assert not packable(33, 3)
    assert packable(16, 16)
    assert packable(8, 256)
    assert not packable(9, 256)


def test_pack_unpack_round_trip_and_lex_order():
    for n, q in [(5, 2), (4, 3), (3, 5), (2, 17)]:
        codec = codec_for(n, q)
        digits = digit_matrix(n, q)
        packed = codec.pack(digits)
        assert np.array_equal(codec.unpack(packed), digits)
        # numeric order of packed values is exactly lexicographic word order
        assert np.array_equal(np.sort(packed), packed)
        assert len(np.unique(packed)) == q**n


def test_rotate_matches_cyclic_shift():
    for n, q in [(5, 2), (4, 3), (3, 4)]:
        codec = codec_for(n, q)
        digits = digit_matrix(n, q)
        packed = codec.pack(digits)
        words = [word(tuple(row), q) for row in digits.tolist()]
        for i in range(n):
            rotated = codec.unpack(codec.rotate(packed, i))
            for row, x in zip(rotated.tolist(), words):
                assert tuple(row) == cyclic_shift(x, i).symbols
        allrot = codec.all_rotations(packed)
        assert allrot.shape == (len(words), n)
        for i in range(n):
            assert np.array_equal(allrot[:, i], codec.rotate(packed, i))


def test_distance_matches_reference():
    for n, q in [(5, 2), (3, 3)]:
        codec = codec_for(n, q)
        digits = digit_matrix(n, q)
        packed = codec.pack(digits)
        words = [word(tuple(row), q) for row in digits.tolist()]
        got = codec.distance(packed[:, None], packed[None, :])
        for a, x in enumerate(words):
            for b, y in enumerate(words):
                assert got[a, b] == hamming_distance(x, y)


def test_canonical_matches_word_level():
    for n, q in [(7, 2), (4, 3)]:
        codec = codec_for(n, q)
        digits = digit_matrix(n, q)
        packed = codec.pack(digits)
        canon = codec.unpack(codec.canonical(packed))
        for row, canon_row in zip(digits.tolist(), canon.tolist()):
            assert tuple(canon_row) == canonical_rotation(word(tuple(row), q)).symbols


def test_min_autodistance_packed_matches_word_level():
    for n, q in [(6, 2), (8, 2), (4, 3)]:
        codec = codec_for(n, q)
        digits = digit_matrix(n, q)
        packed = codec.pack(digits)
        auto = min_autodistance_packed(codec, packed)
        for value, row in zip(auto.tolist(), digits.tolist()):
            assert value == min_cyclic_autodistance(word(tuple(row), q))


def test_word_digit_chunks_cover_space_in_order():
    for n, q, chunk in [(3, 3, 7), (4, 2, 5)]:
        flat = []
        for start, block in word_digit_chunks(n, q, chunk=chunk):
            assert start == len(flat)
            assert 1 <= len(block) <= chunk
            flat.extend(tuple(r) for r in block.tolist())
        assert flat == all_words(n, q)


def test_weight_slice_digits_matches_brute():
    for n, w in [(6, 3), (7, 2), (5, 0), (5, 5)]:
        got = [tuple(r) for r in weight_slice_digits(n, w).tolist()]
        expect = [s for s in all_words(n, 2) if sum(s) == w]
        assert sorted(got) == expect
        assert len(set(got)) == len(got)


def test_class_system_matches_enumerate_classes():
    for n, q, w in [(6, 2, None), (5, 3, None), (7, 2, 3)]:
        system = class_system(n, q, w)
        codec = codec_for(n, q)
        classes = list(
            enumerate_classes(n, q, full_period_only=True, weight_exactly=w)
        )
        assert system.count == len(classes)
        reps = [tuple(r) for r in system.reps_digits.tolist()]
        assert reps == [c.representative.symbols for c in classes]
        assert [int(a) for a in system.auto_distance] == [c.auto_distance for c in classes]
        assert np.array_equal(system.reps_packed, codec.pack(system.reps_digits))
        # rotations[k] holds the whole orbit of rep k
        for k, c in enumerate(classes):
            orbit = {
                cyclic_shift(c.representative, i).symbols for i in range(n)
            }
            got_orbit = {
                tuple(r) for r in codec.unpack(system.rotations[k]).tolist()
            }
            assert got_orbit == orbit


def test_error_patterns_count_matches_ball_volume():
    for n, q, radius in [(5, 2, 2), (4, 3, 2), (6, 2, 0), (3, 4, 3)]:
        patterns = list(error_patterns(n, q, radius))
        assert len(patterns) == ball_volume(n, q, radius) - 1
        assert len(set(patterns)) == len(patterns)
        for positions, deltas in patterns:
            assert 1 <= len(positions) <= radius
            assert len(positions) == len(deltas)
            assert all(0 <= p < n for p in positions)
            assert list(positions) == sorted(positions)
            assert all(1 <= d_ <= q - 1 for d_ in deltas)


def test_edit_positions_applies_symbol_deltas():
    for n, q in [(5, 2), (4, 3)]:
        codec = codec_for(n, q)
        digits = digit_matrix(n, q)
        packed = codec.pack(digits)
        for positions, deltas in error_patterns(n, q, 2):
            edited = codec.unpack(edit_positions(codec, packed, digits, positions, deltas))
            expect = digits.copy()
            for p, d_ in zip(positions, deltas):
                expect[:, p] = (expect[:, p] + d_) % q
            assert np.array_equal(edited, expect)


def test_edited_words_at_radius_r_have_distance_r():
    n, q = 6, 3
    codec = codec_for(n, q)
    digits = digit_matrix(n, q)[:50]
    packed = codec.pack(digits)
    for positions, deltas in error_patterns(n, q, 2):
        edited = edit_positions(codec, packed, digits, positions, deltas)
        dist = codec.distance(edited, packed)
        assert np.all(dist == len(positions))


def test_sorted_membership():
    table = np.array([2, 3, 5, 7, 11], dtype=np.uint64)
    queries = np.array([0, 2, 4, 5, 11, 12, 7, 7], dtype=np.uint64)
    got = sorted_membership(table, queries)
    assert got.tolist() == [False, True, False, True, True, False, True, True]
    assert sorted_membership(table, np.array([], dtype=np.uint64)).tolist() == []
    empty = np.array([], dtype=np.uint64)
    assert sorted_membership(empty, queries).tolist() == [False] * len(queries)


def test_class_distance_row_matches_brute():
    for n, q in [(6, 2), (5, 3)]:
        system = class_system(n, q)
        reps = [tuple(r) for r in system.reps_digits.tolist()]
        for a, rep_a in enumerate(reps):
            row = class_distance_row(system, int(system.reps_packed[a]))
            for b, rep_b in enumerate(reps):
                assert row[b] == brute_class_distance(rep_a, rep_b)


def test_class_distance_matrix_consistency():
    system = class_system(7, 2)
    matrix = class_distance_matrix(system)
    assert matrix.shape == (system.count, system.count)
    assert np.array_equal(matrix, matrix.T)
    assert np.all(np.diag(matrix) == 0)
    for a in range(system.count):
        assert np.array_equal(
            matrix[a], class_distance_row(system, int(system.reps_packed[a]))
        )
    with pytest.raises(CapacityError):
        class_distance_matrix(system, max_bytes=4)
