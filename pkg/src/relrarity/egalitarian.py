"""Finite utility streams over a countable value set, with the equity and
efficiency predicates that induce forced pair values.

The ground set here is X = Y^N: length-N streams of exact rationals drawn
from a countable Y inside [0, 1], either the unit fractions {1/n} or all
rationals in [0, 1]. Streams are enumerated by a fixed bijection with the
positive integers (exponent tuples listed by ascending sum, then
lexicographically), so every pair position k of the global enumeration
denotes a concrete ordered pair of streams.

Three binary predicates on streams matter:

  * anonymity equivalence: the streams agree up to one transposition of two
    coordinates (taken literally, including the identity; transitivity of
    the relation is NOT assumed),
  * strict Pareto dominance: coordinatewise <= with at least one strict
    coordinate,
  * strong-equity improvement: a two-coordinate redistribution that strictly
    reduces inequality, all other coordinates equal.

Each predicate yields index sets of pair positions whose coding value is
forced (to 1 or to 0) by the corresponding property of a relation; those
sets are exported as PredicateSets with analytic infinitude certificates.
All arithmetic is exact rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd

from .index_algebra import PredicateSet, register_predicate_set
from .pairing import decode

VALUE_SETS = ("unit_fractions", "rationals_01")


def anon_equiv(s: tuple, t: tuple) -> bool:
    """Streams equal up to one transposition of two coordinates.

    The coordinate pair may be equal, so the relation is reflexive; it is
    symmetric by inspection; it is not transitive in general.
    """
    if len(s) != len(t):
        raise ValueError("streams of different length")
    if s == t:
        return True
    n = len(s)
    for i in range(n):
        for j in range(i + 1, n):
            if s[i] == t[j] and s[j] == t[i]:
                if all(s[k] == t[k] for k in range(n) if k != i and k != j):
                    return True
    return False


def pareto_less(s: tuple, t: tuple) -> bool:
    """s is strictly Pareto-dominated by t."""
    if len(s) != len(t):
        raise ValueError("streams of different length")
    return all(a <= b for a, b in zip(s, t)) and any(a < b for a, b in zip(s, t))


def strong_equity_less(s: tuple, t: tuple) -> bool:
    """t redistributes between two coordinates of s, strictly shrinking the
    gap: s[i] < t[i] < t[j] < s[j] with every other coordinate equal."""
    if len(s) != len(t):
        raise ValueError("streams of different length")
    n = len(s)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if s[i] < t[i] < t[j] < s[j]:
                if all(s[k] == t[k] for k in range(n) if k != i and k != j):
                    return True
    return False


def _reduced_fractions_01():
    """0, 1, then reduced p/q for q = 2, 3, ... ascending by (q, p)."""
    yield Fraction(0)
    yield Fraction(1)
    q = 2
    while True:
        for p in range(1, q):
            if gcd(p, q) == 1:
                yield Fraction(p, q)
        q += 1


@dataclass
class StreamSpace:
    """Y^N with a fixed bijection between positive integers and streams."""

    length: int
    value_set: str = "unit_fractions"
    _values: list = field(default_factory=list, repr=False)
    _streams: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.length < 1:
            raise ValueError("stream length must be >= 1")
        if self.value_set not in VALUE_SETS:
            raise ValueError(f"unknown value set {self.value_set!r}")

    # -- the value enumeration Y ------------------------------------------

    def value(self, n: int) -> Fraction:
        if n < 1:
            raise ValueError("value rank must be >= 1")
        if self.value_set == "unit_fractions":
            return Fraction(1, n)
        while len(self._values) < n:
            gen = _reduced_fractions_01()
            self._values = [next(gen) for _ in range(max(n, 2 * len(self._values) + 8))]
        return self._values[n - 1]

    def value_rank(self, v: Fraction) -> int:
        if self.value_set == "unit_fractions":
            if v.numerator != 1 or v <= 0:
                raise ValueError(f"{v} is not a unit fraction")
            return v.denominator
        n = 1
        while True:
            if self.value(n) == v:
                return n
            if n > 10**6:
                raise ValueError(f"{v} not found in enumeration")
            n += 1

    # -- the stream enumeration Y^N ---------------------------------------
    #
    # Streams correspond to tuples of positive value ranks (a_1, ..., a_N),
    # listed by ascending rank sum and lexicographically within one sum.
    # Positive N-tuples with sum <= s number comb(s, N).

    def _unrank_tuple(self, n: int) -> tuple[int, ...]:
        big = self.length
        s = big
        while comb(s, big) < n:
            s += 1
        r = n - comb(s - 1, big)
        parts = []
        remaining = s
        for pos in range(big - 1):
            a = 1
            while True:
                completions = comb(remaining - a - 1, big - pos - 2)
                if r <= completions:
                    break
                r -= completions
                a += 1
            parts.append(a)
            remaining -= a
        parts.append(remaining)
        return tuple(parts)

    def _rank_tuple(self, parts: tuple[int, ...]) -> int:
        big = self.length
        s = sum(parts)
        r = 0
        remaining = s
        for pos in range(big - 1):
            for a in range(1, parts[pos]):
                r += comb(remaining - a - 1, big - pos - 2)
            remaining -= parts[pos]
        return comb(s - 1, big) + r + 1

    def stream(self, n: int) -> tuple[Fraction, ...]:
        """The n-th stream, 1-based."""
        got = self._streams.get(n)
        if got is None:
            got = tuple(self.value(a) for a in self._unrank_tuple(n))
            self._streams[n] = got
        return got

    def stream_rank(self, stream) -> int:
        if len(stream) != self.length:
            raise ValueError("stream has wrong length")
        return self._rank_tuple(tuple(self.value_rank(v) for v in stream))

    def pair_streams(self, k: int) -> tuple[tuple, tuple]:
        """The ordered stream pair denoted by global pair position k."""
        i, j = decode(k)
        return self.stream(i), self.stream(j)

    # -- induced index sets ------------------------------------------------

    def _predicate_id(self, name: str) -> str:
        return f"{self.value_set}/N{self.length}/{name}"

    def config_obj(self) -> dict:
        return {"stream_length": self.length, "value_set": self.value_set}

    def agreement_set(self) -> PredicateSet:
        """Positions (s, t) with s and t anonymity-equivalent. Closed under
        transposition of the pair and contains every diagonal position."""
        coinf_cert = (
            "pairs of streams differing in exactly one coordinate are never a "
            "transposition, and there are infinitely many of them"
            if self.length >= 2
            else "pairs of distinct length-1 streams are never equivalent, and "
            "there are infinitely many of them"
        )
        return register_predicate_set(PredicateSet(
            set_id=self._predicate_id("anonymous_forced1"),
            membership=lambda k: anon_equiv(*self.pair_streams(k)),
            description="stream pairs equal up to one transposition",
            certified_infinite=True,
            certified_coinfinite=True,
            certificate="every diagonal position (s, s) qualifies via the "
            "identity transposition, giving infinitely many members; " + coinf_cert,
        ))

    def _dominance_sets(self, name, less, exists_cert):
        """Forced-1 / forced-0 / comparable sets for a strict dominance
        predicate `less`: position k = (s, t) is forced to 1 when t is
        dominated by s (the dominating stream is preferred), forced to 0 in
        the reversed situation."""
        possible = bool(exists_cert)
        f1_id = self._predicate_id(f"{name}_forced1")
        f0_id = self._predicate_id(f"{name}_forced0")
        cmp_id = self._predicate_id(f"{name}_comparable")

        def forced1(k):
            s, t = self.pair_streams(k)
            return less(t, s)

        def forced0(k):
            s, t = self.pair_streams(k)
            return less(s, t)

        f1 = PredicateSet(
            set_id=f1_id,
            membership=forced1,
            description=f"pairs whose second stream is {name}-dominated by the first",
            certified_infinite=possible,
            certified_coinfinite=True,
            certificate=(exists_cert + "; " if exists_cert else "")
            + "diagonal positions are never strictly comparable, so the "
            "complement is infinite",
            known_subset_of=frozenset({cmp_id}),
            known_disjoint_from=frozenset({f0_id}),
        )
        f0 = PredicateSet(
            set_id=f0_id,
            membership=forced0,
            description=f"pairs whose first stream is {name}-dominated by the second",
            certified_infinite=possible,
            certified_coinfinite=True,
            certificate=(exists_cert + "; " if exists_cert else "")
            + "diagonal positions are never strictly comparable, so the "
            "complement is infinite",
            known_subset_of=frozenset({cmp_id}),
            known_disjoint_from=frozenset({f1_id}),
        )
        both = PredicateSet(
            set_id=cmp_id,
            membership=lambda k: f1.member(k) or f0.member(k),
            description=f"pairs strictly comparable under {name} dominance",
            certified_infinite=possible,
            certified_coinfinite=True,
            certificate=(exists_cert + "; " if exists_cert else "")
            + "diagonal positions are never strictly comparable, so the "
            "complement is infinite",
        )
        for ps in (f1, f0, both):
            register_predicate_set(ps)
        return f1, f0, both

    def pareto_sets(self):
        cert = (
            "lowering one coordinate of any stream to a smaller value of Y "
            "yields a strictly dominated stream; Y is infinite, so "
            "infinitely many comparable pairs exist"
        )
        return self._dominance_sets("pareto", pareto_less, cert)

    def strong_equity_sets(self):
        if self.length >= 2:
            cert = (
                "fix any values c on the other coordinates; streams with "
                "coordinate values (1/5, 1/2) and (1/4, 1/3) at two fixed "
                "positions satisfy 1/5 < 1/4 < 1/3 < 1/2, and c ranges over "
                "an infinite set"
            )
        else:
            cert = ""  # two distinct coordinates are required; no such pairs
        return self._dominance_sets("strong_equity", strong_equity_less, cert)

    def induced_index_set(self, prop: str, direction: str) -> PredicateSet:
        """Forced-value index set of an egalitarian property.

        prop is 'anonymous', 'paretian' or 'strong_equity'; direction is
        'forced1' or 'forced0'. Anonymity forces no zeros, so its forced0
        set is empty (and says so)."""
        if direction not in ("forced1", "forced0"):
            raise ValueError(f"unknown direction {direction!r}")
        if prop == "anonymous":
            if direction == "forced1":
                return self.agreement_set()
            return register_predicate_set(PredicateSet(
                set_id=self._predicate_id("anonymous_forced0"),
                membership=lambda k: False,
                description="anonymity forces no coding value to 0",
                certified_coinfinite=True,
                certificate="the set is empty by definition",
            ))
        if prop == "paretian":
            f1, f0, _ = self.pareto_sets()
        elif prop == "strong_equity":
            f1, f0, _ = self.strong_equity_sets()
        else:
            raise ValueError(f"unknown egalitarian property {prop!r}")
        return f1 if direction == "forced1" else f0


DEFAULT_SPACE_CONFIG = {"stream_length": 3, "value_set": "unit_fractions"}


def space_from_config(config: dict | None = None) -> StreamSpace:
    cfg = dict(DEFAULT_SPACE_CONFIG)
    if config:
        cfg.update({k: v for k, v in config.items() if v is not None})
    return StreamSpace(length=int(cfg["stream_length"]), value_set=cfg["value_set"])
