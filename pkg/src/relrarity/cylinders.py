"""Partial codings and their basic open sets.

A partial coding f assigns 0/1 values on an index set: value 1 on `ones`,
value 0 on the rest of `domain`, undefined elsewhere. Its cylinder N_f is
the set of all infinite 0/1 sequences extending f. Cylinders are tagged
with the collection whose membership conditions they satisfy:

    cantor (gamma)       finite domain
    ellentuck (epsilon)  domain and complement infinite, finitely many 1s
    doughnut (delta)     domain and complement infinite

The collections are nested: every cantor cylinder is an ellentuck cylinder
and every ellentuck cylinder is a doughnut cylinder.

Validation is structural and exact: "finitely many 1s" means `ones` must be
a finite explicit set, never a scan result, and predicate-backed domains are
accepted for the infinite collections only when they carry (co-)infinitude
certificates. A cylinder may also be tagged as relative to a property p, in
which case it denotes the intersection of N_f with the coding set of p;
checking that the intersection is non-empty requires the constraint engine
and lives there (see property_engine.validate_relative).
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, replace

from .index_algebra import (
    AtomSet,
    IndexSet,
    PredicateSet,
    index_set_from_obj,
)

GAMMA = "gamma"
EPSILON = "epsilon"
DELTA = "delta"
COLLECTIONS = (GAMMA, EPSILON, DELTA)


class NotInCollection(Exception):
    """A partial coding failed a collection's membership conditions."""


@dataclass(frozen=True)
class PartialCoding:
    domain: IndexSet
    ones: IndexSet
    description: str = ""

    def status(self, k: int) -> int | None:
        """Decided value at index k, or None when k is free."""
        if not self.domain.member(k):
            return None
        return 1 if self.ones.member(k) else 0

    def is_symbolic(self) -> bool:
        """True when both parts live in the exact atom algebra."""
        return isinstance(self.domain, AtomSet) and isinstance(self.ones, AtomSet)

    def decided_zeros(self) -> AtomSet:
        """Exact set of indices decided 0 (symbolic codings only)."""
        if not self.is_symbolic():
            raise ValueError("decided zeros are symbolic only for atom-algebra codings")
        return self.domain.difference(self.ones)

    def corrections(self) -> frozenset[int]:
        """Finite indices where the coding deviates from its atom-level
        shape; used to separate generic from exceptional transpose pairs."""
        if not self.is_symbolic():
            raise ValueError("corrections are defined for atom-algebra codings")
        return self.domain.corrections() | self.ones.corrections()

    def extend(self, assignments: dict[int, int], note: str = "") -> "PartialCoding":
        """Decide finitely many extra indices. Requires an atom-algebra
        coding; refuses to overwrite an already decided index."""
        if not self.is_symbolic():
            raise ValueError("only atom-algebra codings can be extended")
        for k, v in assignments.items():
            if v not in (0, 1):
                raise ValueError(f"value at {k} must be 0 or 1")
            if self.domain.member(k):
                raise ValueError(f"index {k} is already decided")
        new_domain = self.domain.union(AtomSet.finite(assignments))
        new_one_indices = {k for k, v in assignments.items() if v == 1}
        new_ones = self.ones.union(AtomSet.finite(new_one_indices)) if new_one_indices else self.ones
        desc = self.description
        if note:
            desc = f"{desc}; {note}" if desc else note
        return PartialCoding(new_domain, new_ones, desc)


@dataclass(frozen=True)
class Cylinder:
    coding: PartialCoding
    collection: str
    relative_to: str | None = None

    def status(self, k: int) -> int | None:
        return self.coding.status(k)

    def with_relative(self, prop: str | None) -> "Cylinder":
        return replace(self, relative_to=prop)


def _check_ones_inside_domain(coding: PartialCoding, sample_bound: int = 2000) -> None:
    dom, ones = coding.domain, coding.ones
    if isinstance(dom, AtomSet) and isinstance(ones, AtomSet):
        extra = ones.difference(dom)
        if not extra.is_empty():
            raise NotInCollection(
                f"ones stick out of the domain at {extra.first_n(3)}"
            )
        return
    if ones is dom:
        return
    if isinstance(ones, PredicateSet) and isinstance(dom, PredicateSet) and ones.set_id == dom.set_id:
        return
    if isinstance(ones, PredicateSet) and ones.set_id in getattr(dom, "known_subset_of", ()):  # pragma: no cover
        return
    if isinstance(ones, PredicateSet) and isinstance(dom, PredicateSet) and dom.set_id in ones.known_subset_of:
        return
    # predicate-backed parts: sampled containment check
    members = (
        ones.iter_members(sample_bound)
        if isinstance(ones, PredicateSet)
        else (k for k in ones.iter_members() if k <= sample_bound)
    )
    for k in members:
        if not dom.member(k):
            raise NotInCollection(f"ones stick out of the domain at index {k}")


def _finite_ones(coding: PartialCoding) -> bool:
    ones = coding.ones
    if isinstance(ones, AtomSet):
        return ones.is_finite()
    return False


def _infinitude(side: IndexSet, what: str) -> bool:
    if isinstance(side, AtomSet):
        return side.is_infinite() if what == "set" else side.is_coinfinite()
    return side.is_infinite() if what == "set" else side.is_coinfinite()


def validate(coding: PartialCoding, collection: str,
             relative_to: str | None = None) -> Cylinder:
    """Tag a partial coding with a collection, or raise NotInCollection
    naming the violated condition. Relative non-emptiness is checked
    separately by the constraint engine."""
    if collection not in COLLECTIONS:
        raise ValueError(f"unknown collection {collection!r}")
    _check_ones_inside_domain(coding)
    dom = coding.domain
    if collection == GAMMA:
        if isinstance(dom, PredicateSet):
            raise NotInCollection(
                "cantor collection requires a finite explicit domain; a "
                "predicate-backed domain cannot be certified finite"
            )
        if not dom.is_finite():
            raise NotInCollection("cantor collection requires a finite domain")
        return Cylinder(coding, GAMMA, relative_to)
    if isinstance(dom, PredicateSet) and not (dom.certified_infinite and dom.certified_coinfinite):
        raise NotInCollection(
            f"domain {dom.set_id!r} lacks an infinitude or co-infinitude "
            "certificate; refusing to validate it into an infinite collection"
        )
    if not _infinitude(dom, "set"):
        raise NotInCollection(f"{collection} requires an infinite domain")
    if not _infinitude(dom, "complement"):
        raise NotInCollection(f"{collection} requires an infinite complement")
    if collection == EPSILON and not _finite_ones(coding):
        raise NotInCollection(
            "ellentuck collection requires finitely many decided 1s, given "
            "as a finite explicit set"
        )
    return Cylinder(coding, collection, relative_to)


def validates_as(coding: PartialCoding, collection: str) -> bool:
    try:
        validate(coding, collection)
        return True
    except NotInCollection:
        return False


def refines(g: Cylinder, f: Cylinder, sample_bound: int = 2000) -> bool:
    """True when N_g is contained in N_f: g decides everything f decides,
    with the same values. Exact on atom-algebra codings; predicate-backed
    codings are compared on a documented sampled prefix."""
    if g.relative_to != f.relative_to:
        raise ValueError("cylinders relative to different coding sets")
    fd, gd = f.coding.domain, g.coding.domain
    if isinstance(fd, AtomSet) and isinstance(gd, AtomSet):
        if not fd.subset_of(gd):
            return False
        if isinstance(f.coding.ones, AtomSet) and isinstance(g.coding.ones, AtomSet):
            # agreement on dom(f): the 1s of f are 1s of g, and nothing
            # decided 0 by f is a 1 of g
            if not f.coding.ones.subset_of(g.coding.ones):
                return False
            return f.coding.decided_zeros().intersect(g.coding.ones).is_empty()
    members = (
        fd.iter_members(sample_bound)
        if isinstance(fd, PredicateSet)
        else (k for k in fd.iter_members() if k <= sample_bound)
    )
    for k in members:
        if g.status(k) != f.status(k):
            return False
    return True


def sample_extension(c: Cylinder, prefix_len: int, seed: int) -> list[int]:
    """Deterministic pseudo-random prefix of a member of N_f.

    Decided positions carry their forced values; free positions are filled
    from a generator seeded by (seed, prefix_len), in ascending index
    order. The same (seed, prefix_len) always yields the same word.
    """
    if prefix_len < 1:
        raise ValueError("prefix_len must be >= 1")
    rng = random.Random(f"{seed}|{prefix_len}")
    word = []
    for k in range(1, prefix_len + 1):
        st = c.status(k)
        word.append(rng.randrange(2) if st is None else st)
    return word


# -- serialization ----------------------------------------------------------


def coding_to_obj(coding: PartialCoding) -> dict:
    return {
        "domain": coding.domain.to_obj(),
        "ones": coding.ones.to_obj(),
        "description": coding.description,
    }


def coding_from_obj(obj: dict) -> PartialCoding:
    return PartialCoding(
        domain=index_set_from_obj(obj["domain"]),
        ones=index_set_from_obj(obj["ones"]),
        description=obj.get("description", ""),
    )


def cylinder_to_obj(c: Cylinder) -> dict:
    out = coding_to_obj(c.coding)
    out["collection"] = c.collection
    out["relative_to"] = c.relative_to
    return out


def cylinder_from_obj(obj: dict) -> Cylinder:
    coding = coding_from_obj(obj)
    return validate(coding, obj["collection"], obj.get("relative_to"))


def cylinder_json(c: Cylinder) -> str:
    return json.dumps(cylinder_to_obj(c), sort_keys=True, separators=(",", ":"))
