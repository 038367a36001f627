"""Canonical enumeration of ordered pairs over a countably infinite ground set.

The ground set is X = {x_1, x_2, ...}. Ordered pairs (x_i, x_j) are listed in
anti-diagonal order: ascending by i + j, and within one anti-diagonal ascending
by i. Positions are 1-based, so

    q_1 = (x_1, x_1), q_2 = (x_1, x_2), q_3 = (x_2, x_1), q_4 = (x_1, x_3), ...

This particular order is a deliberate choice: the transpose of a pair lies on
the same anti-diagonal, so the index of (x_j, x_i) is computable from the index
of (x_i, x_j) in O(1).

The positions split into three infinite classes:

    R  diagonal positions, q_k = (x_i, x_i)
    A  off-diagonal positions with i < j (the first-seen direction)
    B  their transposes, i > j

Every index set and partial coding elsewhere in the package is expressed
relative to this fixed enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Iterator


@dataclass(frozen=True)
class PairClass:
    """Classification of an enumeration position: kind 'R', 'A' or 'B' plus
    the position of the transposed pair (itself for diagonal positions)."""

    kind: str
    partner: int


def _check_positive(value: int, name: str) -> None:
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")


def encode(i: int, j: int) -> int:
    """Position of the pair (x_i, x_j), 1-based."""
    _check_positive(i, "i")
    _check_positive(j, "j")
    s = i + j
    return (s - 2) * (s - 1) // 2 + i


def decode(k: int) -> tuple[int, int]:
    """Inverse of encode, via the integer triangular root."""
    _check_positive(k, "k")
    t = k - 1
    n = (isqrt(8 * t + 1) - 1) // 2
    i = k - n * (n + 1) // 2
    j = n + 2 - i
    return i, j


def diagonal_index(i: int) -> int:
    """Position of (x_i, x_i); equals 2*i*i - 2*i + 1."""
    _check_positive(i, "i")
    return 2 * i * i - 2 * i + 1


def partner(k: int) -> int:
    """Position of the transposed pair; fixed point on the diagonal."""
    i, j = decode(k)
    if i == j:
        return k
    return encode(j, i)


def classify(k: int) -> PairClass:
    """Class of position k together with its transpose position.

    Off-diagonal k belongs to A exactly when its pair (x_i, x_j) has i < j;
    under the anti-diagonal order this coincides with "k is the smaller of
    the two positions listing {x_i, x_j} in both orders".
    """
    i, j = decode(k)
    if i == j:
        return PairClass("R", k)
    kind = "A" if i < j else "B"
    return PairClass(kind, encode(j, i))


def class_of(k: int) -> str:
    """Just the class letter of position k."""
    i, j = decode(k)
    if i == j:
        return "R"
    return "A" if i < j else "B"


def iter_diagonal() -> Iterator[int]:
    """All diagonal positions, ascending: 1, 5, 13, 25, ..."""
    i = 1
    while True:
        yield 2 * i * i - 2 * i + 1
        i += 1


def iter_lower() -> Iterator[int]:
    """All A positions (i < j), ascending: 2, 4, 7, 8, 11, 12, ..."""
    s = 3
    while True:
        base = (s - 2) * (s - 1) // 2
        for i in range(1, (s - 1) // 2 + 1):
            yield base + i
        s += 1


def iter_upper() -> Iterator[int]:
    """All B positions (i > j), ascending: 3, 6, 9, 10, 14, 15, ..."""
    s = 3
    while True:
        base = (s - 2) * (s - 1) // 2
        for i in range(s // 2 + 1, s):
            yield base + i
        s += 1


def iter_class(kind: str) -> Iterator[int]:
    if kind == "R":
        return iter_diagonal()
    if kind == "A":
        return iter_lower()
    if kind == "B":
        return iter_upper()
    raise ValueError(f"unknown pair class {kind!r}")


def iter_transpose_pairs() -> Iterator[tuple[int, int]]:
    """Matched (A position, B position) pairs, ascending by the A position.

    This realizes the pairing of each off-diagonal position with its
    transpose: (2, 3), (4, 6), (7, 10), (8, 9), ...
    """
    for m in iter_lower():
        yield m, partner(m)
