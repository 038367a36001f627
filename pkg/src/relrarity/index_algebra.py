"""Symbolic, decidable subsets of the pair-position naturals.

Two representations are provided.

AtomSet combines whole classes from the R/A/B partition with finite
corrections: the represented set is (union of atoms, plus a finite set,
minus a finite set). Membership, Boolean operations, emptiness, infinitude
and co-infinitude are all decided exactly, which is what validating
collection membership of cylinders requires.

PredicateSet wraps an arbitrary decidable membership predicate. Infinitude
of such a set is undecidable in general, so a PredicateSet only carries
infinitude or co-infinitude *claims* when accompanied by a written analytic
certificate; enumeration is scan-bounded and reports exhaustion loudly
instead of guessing.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .pairing import class_of, iter_class

ATOM_NAMES = ("R", "A", "B")


class ScanExhausted(Exception):
    """A bounded predicate scan ended before enough members were found."""

    def __init__(self, found: list[int], requested: int, bound: int):
        self.found = found
        self.requested = requested
        self.bound = bound
        super().__init__(
            f"found {len(found)} of {requested} requested members "
            f"within scan bound {bound}"
        )


@dataclass(frozen=True)
class AtomSet:
    """(union of atoms | plus) \\ minus, kept in normal form:
    plus is disjoint from the atom union, minus is contained in it."""

    atoms: frozenset[str]
    plus: frozenset[int]
    minus: frozenset[int]

    @staticmethod
    def make(atoms=(), plus=(), minus=()) -> "AtomSet":
        atom_set = frozenset(atoms)
        for a in atom_set:
            if a not in ATOM_NAMES:
                raise ValueError(f"unknown atom {a!r}")
        plus_raw = frozenset(plus)
        minus_raw = frozenset(minus)
        for k in itertools.chain(plus_raw, minus_raw):
            if not isinstance(k, int) or k < 1:
                raise ValueError(f"index {k!r} is not a positive integer")
        # semantics of raw input: (atom union | plus_raw) \ minus_raw
        plus_n = frozenset(
            k for k in plus_raw if class_of(k) not in atom_set and k not in minus_raw
        )
        minus_n = frozenset(k for k in minus_raw if class_of(k) in atom_set)
        return AtomSet(atom_set, plus_n, minus_n)

    @staticmethod
    def empty() -> "AtomSet":
        return AtomSet.make()

    @staticmethod
    def finite(indices) -> "AtomSet":
        return AtomSet.make(plus=indices)

    @staticmethod
    def full() -> "AtomSet":
        return AtomSet.make(atoms=ATOM_NAMES)

    def member(self, k: int) -> bool:
        if k in self.minus:
            return False
        return k in self.plus or class_of(k) in self.atoms

    def is_infinite(self) -> bool:
        return bool(self.atoms)

    def is_coinfinite(self) -> bool:
        return self.atoms != frozenset(ATOM_NAMES)

    def is_finite(self) -> bool:
        return not self.atoms

    def is_empty(self) -> bool:
        return not self.atoms and not self.plus

    def finite_members(self) -> list[int]:
        """All members of a finite set, ascending."""
        if not self.is_finite():
            raise ValueError("set is infinite")
        return sorted(self.plus)

    def corrections(self) -> frozenset[int]:
        """Indices where this set deviates from its pure atom union."""
        return self.plus | self.minus

    def _from_overrides(self, atoms: frozenset[str], want: dict[int, bool]) -> "AtomSet":
        plus, minus = set(), set()
        for k, w in want.items():
            default = class_of(k) in atoms
            if w and not default:
                plus.add(k)
            elif not w and default:
                minus.add(k)
        return AtomSet(atoms, frozenset(plus), frozenset(minus))

    def _combine(self, other: "AtomSet", atoms: frozenset[str], op) -> "AtomSet":
        support = self.corrections() | other.corrections()
        want = {k: op(self.member(k), other.member(k)) for k in support}
        return self._from_overrides(atoms, want)

    def union(self, other: "AtomSet") -> "AtomSet":
        return self._combine(other, self.atoms | other.atoms, lambda a, b: a or b)

    def intersect(self, other: "AtomSet") -> "AtomSet":
        return self._combine(other, self.atoms & other.atoms, lambda a, b: a and b)

    def complement(self) -> "AtomSet":
        return AtomSet(frozenset(ATOM_NAMES) - self.atoms, self.minus, self.plus)

    def difference(self, other: "AtomSet") -> "AtomSet":
        return self.intersect(other.complement())

    def subset_of(self, other: "AtomSet") -> bool:
        return self.difference(other).is_empty()

    def disjoint_from(self, other: "AtomSet") -> bool:
        return self.intersect(other).is_empty()

    def iter_members(self) -> Iterator[int]:
        """All members, ascending. Infinite iterator for infinite sets."""
        streams = [iter_class(a) for a in sorted(self.atoms)]
        if self.plus:
            streams.append(iter(sorted(self.plus)))
        for k in heapq.merge(*streams):
            if k not in self.minus:
                yield k

    def first_n(self, n: int) -> list[int]:
        """The n smallest members; fewer if the whole set is smaller."""
        if n < 0:
            raise ValueError("n must be >= 0")
        return list(itertools.islice(self.iter_members(), n))

    def smallest(self) -> int | None:
        got = self.first_n(1)
        return got[0] if got else None

    def members_up_to(self, limit: int) -> list[int]:
        out = []
        for k in self.iter_members():
            if k > limit:
                break
            out.append(k)
        return out

    def describe(self) -> str:
        parts = []
        if self.atoms:
            parts.append("|".join(sorted(self.atoms)))
        if self.plus:
            parts.append(f"+{sorted(self.plus)}")
        if self.minus:
            parts.append(f"-{sorted(self.minus)}")
        return " ".join(parts) if parts else "(empty)"

    def to_obj(self) -> dict:
        return {
            "kind": "atoms",
            "atoms": sorted(self.atoms),
            "plus": sorted(self.plus),
            "minus": sorted(self.minus),
        }


@dataclass
class PredicateSet:
    """A decidable index set given by a predicate, with scan-bounded
    enumeration and analytically certified (co-)infinitude flags."""

    set_id: str
    membership: Callable[[int], bool]
    description: str = ""
    certified_infinite: bool = False
    certified_coinfinite: bool = False
    certificate: str = ""
    scan_bound: int = 1_000_000
    known_subset_of: frozenset[str] = frozenset()
    known_disjoint_from: frozenset[str] = frozenset()
    _memo: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if (self.certified_infinite or self.certified_coinfinite) and not self.certificate.strip():
            raise ValueError(
                "certified flags require a non-empty certificate describing "
                "the analytic argument"
            )

    def member(self, k: int) -> bool:
        got = self._memo.get(k)
        if got is None:
            got = bool(self.membership(k))
            self._memo[k] = got
        return got

    def is_infinite(self) -> bool:
        return self.certified_infinite

    def is_coinfinite(self) -> bool:
        return self.certified_coinfinite

    def iter_members(self, bound: int | None = None) -> Iterator[int]:
        limit = self.scan_bound if bound is None else bound
        for k in range(1, limit + 1):
            if self.member(k):
                yield k

    def first_n(self, n: int, bound: int | None = None) -> list[int]:
        if n < 0:
            raise ValueError("n must be >= 0")
        limit = self.scan_bound if bound is None else bound
        out = list(itertools.islice(self.iter_members(limit), n))
        if len(out) < n:
            raise ScanExhausted(out, n, limit)
        return out

    def describe(self) -> str:
        return self.description or self.set_id

    def to_obj(self) -> dict:
        return {"kind": "predicate", "predicate_id": self.set_id}


IndexSet = AtomSet | PredicateSet

# Deserialization needs to find predicate sets by id; stream-space
# constructors register theirs here.
PREDICATE_REGISTRY: dict[str, PredicateSet] = {}


def register_predicate_set(ps: PredicateSet) -> PredicateSet:
    PREDICATE_REGISTRY[ps.set_id] = ps
    return ps


def lookup_predicate_set(set_id: str) -> PredicateSet:
    try:
        return PREDICATE_REGISTRY[set_id]
    except KeyError:
        raise KeyError(
            f"predicate set {set_id!r} is not registered; construct the "
            "stream space it belongs to first"
        ) from None


def index_set_from_obj(obj: dict) -> IndexSet:
    kind = obj.get("kind")
    if kind == "atoms":
        return AtomSet.make(obj["atoms"], obj["plus"], obj["minus"])
    if kind == "predicate":
        return lookup_predicate_set(obj["predicate_id"])
    raise ValueError(f"unknown index-set kind {kind!r}")


def index_member(s: IndexSet, k: int) -> bool:
    return s.member(k)


def index_first_n(s: IndexSet, n: int) -> list[int]:
    return s.first_n(n)


def _set_id(s: IndexSet) -> str | None:
    return s.set_id if isinstance(s, PredicateSet) else None


def index_subset(a: IndexSet, b: IndexSet, scan: int = 0) -> bool | None:
    """Exact subset verdict where decidable, None where unknown.

    AtomSet pairs are decided in the algebra. PredicateSet relations fall
    back to identity, the declared analytic facts, cardinality (an infinite
    set never fits in a finite one), and finally a counterexample scan:
    finding a member of `a` outside `b` is an exact "no".
    """
    if a is b:
        return True
    if isinstance(a, AtomSet) and isinstance(b, AtomSet):
        return a.subset_of(b)
    ida, idb = _set_id(a), _set_id(b)
    if ida is not None and ida == idb:
        return True
    if isinstance(a, PredicateSet) and idb is not None and idb in a.known_subset_of:
        return True
    if isinstance(a, PredicateSet) and a.certified_infinite:
        if isinstance(b, AtomSet) and b.is_finite():
            return False
    if scan > 0:
        members = a.iter_members(scan) if isinstance(a, PredicateSet) else (
            k for k in a.iter_members() if k <= scan
        )
        for k in members:
            if not b.member(k):
                return False
    return None


def index_disjoint(a: IndexSet, b: IndexSet, scan: int = 0) -> bool | None:
    """Exact disjointness verdict where decidable, None where unknown."""
    if isinstance(a, AtomSet) and isinstance(b, AtomSet):
        return a.disjoint_from(b)
    ida, idb = _set_id(a), _set_id(b)
    if ida is not None and ida == idb:
        return a.is_empty() if isinstance(a, AtomSet) else None
    if isinstance(a, PredicateSet) and idb is not None and idb in a.known_disjoint_from:
        return True
    if isinstance(b, PredicateSet) and ida is not None and ida in b.known_disjoint_from:
        return True
    if scan > 0:
        members = a.iter_members(scan) if isinstance(a, PredicateSet) else (
            k for k in a.iter_members() if k <= scan
        )
        for k in members:
            if b.member(k):
                return False
    return None
