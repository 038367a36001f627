"""Pair enumeration tests, including a literal re-implementation of the
recursive A/B construction as an independent oracle."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relrarity.pairing import (
    PairClass,
    classify,
    class_of,
    decode,
    diagonal_index,
    encode,
    iter_class,
    iter_lower,
    iter_transpose_pairs,
    iter_upper,
    partner,
)


def naive_enumeration(count):
    """First `count` pairs by explicit anti-diagonal listing (oracle)."""
    out = []
    s = 2
    while len(out) < count:
        for i in range(1, s):
            out.append((i, s - i))
        s += 1
    return out[:count]


def recursion_ab(count):
    """Literal transcription of the recursive pairing that peels off the
    minimum unused off-diagonal position and its transpose, repeatedly.
    Returns the first `count` elements of A and of B in recursion order."""
    a_seq, b_seq = [], []
    used = set()
    k = 0
    while len(a_seq) < count:
        k += 1
        i, j = decode(k)
        if i == j or k in used:
            continue
        a_seq.append(k)
        mate = encode(j, i)
        b_seq.append(mate)
        used.add(k)
        used.add(mate)
    return a_seq, b_seq


class TestEncodeDecode:
    def test_origin(self):
        assert encode(1, 1) == 1

    def test_first_antidiagonal(self):
        assert encode(1, 2) == 2
        assert encode(2, 1) == 3

    def test_sixth_position(self):
        # oracle: sixth entry of the explicit anti-diagonal listing
        assert naive_enumeration(6)[5] == (3, 1)
        assert encode(3, 1) == 6

    def test_decode_examples(self):
        assert decode(1) == (1, 1)
        assert decode(5) == (2, 2)
        assert decode(10) == (4, 1)

    def test_matches_naive_enumeration(self):
        for k, pair in enumerate(naive_enumeration(500), start=1):
            assert decode(k) == pair
            assert encode(*pair) == k

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            encode(0, 1)
        with pytest.raises(ValueError):
            encode(1, 0)
        with pytest.raises(ValueError):
            decode(0)

    @given(st.integers(min_value=1, max_value=10**9))
    def test_roundtrip_hypothesis(self, k):
        assert encode(*decode(k)) == k

    def test_bijection_to_a_million(self):
        for k in range(1, 10**6 + 1):
            i, j = decode(k)
            s = i + j
            if (s - 2) * (s - 1) // 2 + i != k:
                pytest.fail(f"roundtrip broke at {k}")


class TestClassification:
    def test_diagonal(self):
        assert classify(1) == PairClass("R", 1)
        assert classify(5) == PairClass("R", 5)

    def test_first_offdiagonal_pair(self):
        assert classify(2) == PairClass("A", 3)
        assert classify(3) == PairClass("B", 2)

    def test_position_nine(self):
        # q_8 = (2, 3), q_9 = (3, 2): the recursion picks 8 into A, 9 into B
        assert decode(8) == (2, 3)
        assert decode(9) == (3, 2)
        assert classify(9) == PairClass("B", 8)

    def test_diagonal_index_formula(self):
        assert diagonal_index(1) == 1
        assert diagonal_index(2) == 5
        assert diagonal_index(3) == 13
        for i in range(1, 200):
            assert decode(diagonal_index(i)) == (i, i)

    def test_partner_involution_to_a_million(self):
        for k in range(1, 10**6 + 1, 7):
            assert partner(partner(k)) == k

    def test_partition(self):
        for k in range(1, 20001):
            c = classify(k)
            assert c.kind in ("R", "A", "B")
            if c.kind == "R":
                assert c.partner == k
            else:
                mate = classify(c.partner)
                assert mate.kind == ("B" if c.kind == "A" else "A")
                assert mate.partner == k

    def test_class_of_agrees(self):
        for k in range(1, 2000):
            assert class_of(k) == classify(k).kind


class TestClassIterators:
    def test_first_members(self):
        assert list(itertools.islice(iter_class("R"), 5)) == [1, 5, 13, 25, 41]
        assert list(itertools.islice(iter_class("A"), 6)) == [2, 4, 7, 8, 11, 12]
        assert list(itertools.islice(iter_class("B"), 6)) == [3, 6, 9, 10, 14, 15]

    def test_iterators_agree_with_classify(self):
        for kind, it in (("A", iter_lower()), ("B", iter_upper())):
            members = set(itertools.islice(it, 3000))
            limit = max(members)
            for k in range(1, limit + 1):
                assert (class_of(k) == kind) == (k in members)

    def test_recursion_fidelity(self):
        """The closed-form rule (A = positions with i < j, in ascending
        order, matched to transposes) reproduces the literal recursion."""
        a_rec, b_rec = recursion_ab(100)
        a_closed = list(itertools.islice(iter_lower(), 100))
        b_closed = [partner(m) for m in a_closed]
        assert a_rec == a_closed
        assert b_rec == b_closed

    def test_transpose_pair_listing(self):
        pairs = list(itertools.islice(iter_transpose_pairs(), 4))
        assert pairs == [(2, 3), (4, 6), (7, 10), (8, 9)]


@settings(max_examples=60)
@given(st.integers(min_value=1, max_value=5000), st.integers(min_value=1, max_value=5000))
def test_encode_order_respects_antidiagonals(i, j):
    k = encode(i, j)
    # every position on an earlier anti-diagonal precedes k
    assert decode(k) == (i, j)
    if i + j > 2:
        assert decode(k - 1)[0] + decode(k - 1)[1] <= i + j
