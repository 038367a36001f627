"""Compilation of relation properties into constraints over pair positions,
and exact verdicts on cylinders.

Every supported property factors through three constraint shapes:

  * unary rules: a fixed value (0 or 1) forced on every position of a
    support index set (reflexivity forces 1 on the diagonal positions,
    Pareto efficiency forces 1 on dominance positions and 0 on their
    transposes, ...);
  * transpose-pair rules: one of equal / not-both-one / at-least-one,
    imposed on every matched (A position, B position) pair;
  * horn clauses: the transitivity family, (a,b) and (b,c) decided in
    forces (a,c) in, enumerable to any bound.

A finite word is checked directly. For a cylinder the engine reasons about
decided values only:

  * forced-disjoint means some constraint is already violated by decided
    values; the verdict carries the violated constraint. For unary and
    pair rules over atom-algebra codings this is a complete decision
    procedure (generic behaviour per atom plus finitely many exceptional
    positions); elsewhere violations are searched within a bound and any
    hit is still exact.
  * forced-subset means every constraint is satisfied under all
    assignments of the free positions. Unary and pair rules are decided
    exactly on atom-algebra codings and through declared analytic facts on
    predicate-backed ones. The horn family is only ever declared forced by
    the whitelisted structural rule "all off-diagonal positions decided 0";
    everything else stays undetermined, which is the honest answer.

Relative cylinders (N_f intersected with the coding set of a property q)
are assessed by checking disjointness against the full constraint system
and forcedness against the residual system of p minus q.

All reasoning is exact; no floating point is involved anywhere.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .cylinders import Cylinder, NotInCollection
from .egalitarian import StreamSpace
from .index_algebra import (
    AtomSet,
    IndexSet,
    PredicateSet,
    index_disjoint,
    index_subset,
)
from .pairing import class_of, decode, encode, iter_transpose_pairs, partner

# -- property identifiers ----------------------------------------------------

REFLEXIVE = "reflexive"
IRREFLEXIVE = "irreflexive"
COMPLETE = "complete"
TRANSITIVE = "transitive"
SYMMETRIC = "symmetric"
ASYMMETRIC = "asymmetric"
ANTISYMMETRIC = "antisymmetric"
QUASI_ORDER = "quasi_order"
PARTIAL_ORDER = "partial_order"
EQUIVALENCE = "equivalence"
LINEAR_ORDER = "linear_order"
ANONYMOUS = "anonymous"
PARETIAN = "paretian"
STRONG_EQUITY = "strong_equity"

BASIC_PROPERTIES = (
    REFLEXIVE, IRREFLEXIVE, COMPLETE, TRANSITIVE, SYMMETRIC, ASYMMETRIC,
    ANTISYMMETRIC, QUASI_ORDER, PARTIAL_ORDER, EQUIVALENCE, LINEAR_ORDER,
)
EGALITARIAN_PROPERTIES = (ANONYMOUS, PARETIAN, STRONG_EQUITY)
ALL_PROPERTIES = BASIC_PROPERTIES + EGALITARIAN_PROPERTIES

EQUAL = "equal"
NOT_BOTH_ONE = "not_both_one"
AT_LEAST_ONE = "at_least_one"

FORCED_SUBSET = "forced_subset"
FORCED_DISJOINT = "forced_disjoint"
UNDETERMINED = "undetermined"

DEFAULT_BOUND = 2000

_R_SET = AtomSet.make(atoms={"R"})
_OFFDIAG = AtomSet.make(atoms={"A", "B"})


class MissingStreamSpace(Exception):
    """An egalitarian property was compiled without a stream space."""


def check_property(p: str) -> str:
    if p not in ALL_PROPERTIES:
        raise ValueError(f"unknown property {p!r}")
    return p


@dataclass(frozen=True)
class UnaryRule:
    value: int
    support: IndexSet
    label: str

    def support_key(self):
        if isinstance(self.support, PredicateSet):
            return ("predicate", self.support.set_id, self.value)
        return ("atoms", self.support, self.value)


@dataclass(frozen=True)
class ConstraintSystem:
    prop: str
    unary: tuple[UnaryRule, ...]
    pair_rules: tuple[str, ...]
    horn: bool


@dataclass(frozen=True)
class ConstraintRef:
    """A concrete constraint instance, by kind and participating positions."""

    kind: str
    indices: tuple[int, ...]
    detail: str = ""

    def to_obj(self) -> dict:
        return {"kind": self.kind, "indices": list(self.indices), "detail": self.detail}

    @staticmethod
    def from_obj(obj) -> "ConstraintRef | None":
        if obj is None:
            return None
        return ConstraintRef(obj["kind"], tuple(obj["indices"]), obj.get("detail", ""))


@dataclass(frozen=True)
class Verdict:
    kind: str
    witness: ConstraintRef | None = None
    bound: int | None = None

    def to_obj(self) -> dict:
        return {
            "verdict": self.kind,
            "witness_constraint": self.witness.to_obj() if self.witness else None,
            "bound": self.bound,
        }

    @staticmethod
    def from_obj(obj) -> "Verdict":
        return Verdict(
            obj["verdict"],
            ConstraintRef.from_obj(obj.get("witness_constraint")),
            obj.get("bound"),
        )


@dataclass(frozen=True)
class WordVerdict:
    ok: bool
    violation: ConstraintRef | None
    bound: int


def compile_property(p: str, space: StreamSpace | None = None) -> ConstraintSystem:
    """Constraint system of a property; egalitarian properties need the
    stream space that grounds their forced-value index sets."""
    check_property(p)
    if p in EGALITARIAN_PROPERTIES:
        if space is None:
            raise MissingStreamSpace(
                f"{p} needs a stream-space configuration to fix its index sets"
            )
        rules = [UnaryRule(1, space.induced_index_set(p, "forced1"), f"{p} forces 1")]
        if p in (PARETIAN, STRONG_EQUITY):
            rules.append(UnaryRule(0, space.induced_index_set(p, "forced0"), f"{p} forces 0"))
        return ConstraintSystem(p, tuple(rules), (), False)

    unary: list[UnaryRule] = []
    pair_rules: list[str] = []
    horn = False
    if p in (REFLEXIVE, COMPLETE, QUASI_ORDER, PARTIAL_ORDER, EQUIVALENCE, LINEAR_ORDER):
        unary.append(UnaryRule(1, _R_SET, "diagonal forced 1"))
    if p in (IRREFLEXIVE, ASYMMETRIC):
        unary.append(UnaryRule(0, _R_SET, "diagonal forced 0"))
    if p in (SYMMETRIC, EQUIVALENCE):
        pair_rules.append(EQUAL)
    if p in (ASYMMETRIC, ANTISYMMETRIC, PARTIAL_ORDER, LINEAR_ORDER):
        pair_rules.append(NOT_BOTH_ONE)
    if p in (COMPLETE, LINEAR_ORDER):
        pair_rules.append(AT_LEAST_ONE)
    if p in (TRANSITIVE, QUASI_ORDER, PARTIAL_ORDER, EQUIVALENCE, LINEAR_ORDER):
        horn = True
    return ConstraintSystem(p, tuple(unary), tuple(pair_rules), horn)


def residual_system(p: str, q: str, space: StreamSpace | None = None) -> ConstraintSystem:
    """Constraints of p not already imposed by q; what remains to be forced
    on a cylinder that is taken relative to the coding set of q."""
    sys_p = compile_property(p, space)
    sys_q = compile_property(q, space)
    q_unary = {r.support_key() for r in sys_q.unary}
    return ConstraintSystem(
        prop=f"{p} given {q}",
        unary=tuple(r for r in sys_p.unary if r.support_key() not in q_unary),
        pair_rules=tuple(r for r in sys_p.pair_rules if r not in sys_q.pair_rules),
        horn=sys_p.horn and not sys_q.horn,
    )


# -- bounded constraint enumeration -----------------------------------------


def _element_limit(bound: int) -> int:
    # element e occurs in some position <= bound iff (e-1)e/2 + 1 <= bound
    e = 1
    while e * (e + 1) // 2 + 1 <= bound:
        e += 1
    return e


@lru_cache(maxsize=64)
def pairs_up_to(bound: int, elements_up_to: int | None = None) -> tuple[tuple[int, int], ...]:
    """Transpose pairs with both positions <= bound, ascending by the A
    position, optionally restricted to pairs over the first few elements."""
    out = []
    for m, mp in iter_transpose_pairs():
        if m > bound:
            break
        if mp > bound:
            continue
        if elements_up_to is not None:
            i, j = decode(m)
            if i > elements_up_to or j > elements_up_to:
                continue
        out.append((m, mp))
    return tuple(out)


@lru_cache(maxsize=64)
def triples_up_to(bound: int, elements_up_to: int | None = None) -> tuple[tuple[int, int, int], ...]:
    """Horn instances (k1, k2, k3) with all positions <= bound, in
    lexicographic order of the element triple; instances whose conclusion
    coincides with a premise are skipped (they can never be violated)."""
    emax = _element_limit(bound)
    if elements_up_to is not None:
        emax = min(emax, elements_up_to)
    out = []
    for a in range(1, emax + 1):
        for b in range(1, emax + 1):
            k1 = encode(a, b)
            if k1 > bound:
                continue
            for c in range(1, emax + 1):
                k2 = encode(b, c)
                k3 = encode(a, c)
                if k2 > bound or k3 > bound:
                    continue
                if k3 == k1 or k3 == k2:
                    continue
                out.append((k1, k2, k3))
    return tuple(out)


def _support_members(support: IndexSet, bound: int):
    if isinstance(support, PredicateSet):
        return support.iter_members(bound)
    return iter(support.members_up_to(bound))


# -- word verdicts ------------------------------------------------------------


def verdict_on_word(word, p_or_system, bound: int | None = None,
                    elements_up_to: int | None = None,
                    space: StreamSpace | None = None) -> WordVerdict:
    """Check a finite 0/1 word (1-based positions) against a property.

    All unary constraints with position <= bound, all pair rules with both
    positions <= bound and all horn instances with all three positions
    <= bound are evaluated; `elements_up_to` additionally restricts the
    constraints to pairs over the first few ground elements, which is what
    embedded finite relations need. Constraints are scanned in a fixed
    order (unary rules ascending, then pairs, then horn instances), so the
    reported violation is deterministic.
    """
    system = p_or_system if isinstance(p_or_system, ConstraintSystem) else \
        compile_property(p_or_system, space)
    if bound is None:
        bound = len(word)
    if bound > len(word):
        raise ValueError("bound exceeds word length")

    def value(k: int) -> int:
        return word[k - 1]

    for rule in system.unary:
        for k in _support_members(rule.support, bound):
            if elements_up_to is not None:
                i, j = decode(k)
                if i > elements_up_to or j > elements_up_to:
                    continue
            if value(k) != rule.value:
                return WordVerdict(False, ConstraintRef("unary", (k,), rule.label), bound)
    if system.pair_rules:
        for m, mp in pairs_up_to(bound, elements_up_to):
            va, vb = value(m), value(mp)
            for rule in system.pair_rules:
                if rule == EQUAL and va != vb:
                    return WordVerdict(False, ConstraintRef("pair", (m, mp), EQUAL), bound)
                if rule == NOT_BOTH_ONE and va == 1 and vb == 1:
                    return WordVerdict(False, ConstraintRef("pair", (m, mp), NOT_BOTH_ONE), bound)
                if rule == AT_LEAST_ONE and va == 0 and vb == 0:
                    return WordVerdict(False, ConstraintRef("pair", (m, mp), AT_LEAST_ONE), bound)
    if system.horn:
        for k1, k2, k3 in triples_up_to(bound, elements_up_to):
            if value(k1) == 1 and value(k2) == 1 and value(k3) == 0:
                return WordVerdict(False, ConstraintRef("horn", (k1, k2, k3)), bound)
    return WordVerdict(True, None, bound)


# -- cylinder verdicts --------------------------------------------------------

_VIOLATED = "violated"
_FORCED = "forced"
_OPEN = "open"


def _eval_pair(rule: str, sa, sb) -> str:
    if rule == EQUAL:
        if sa is not None and sb is not None:
            return _FORCED if sa == sb else _VIOLATED
        return _OPEN
    if rule == NOT_BOTH_ONE:
        if sa == 1 and sb == 1:
            return _VIOLATED
        if sa == 0 or sb == 0:
            return _FORCED
        return _OPEN
    if rule == AT_LEAST_ONE:
        if sa == 0 and sb == 0:
            return _VIOLATED
        if sa == 1 or sb == 1:
            return _FORCED
        return _OPEN
    raise ValueError(f"unknown pair rule {rule!r}")


def _first_generic_pair(excluded: frozenset[int]) -> tuple[int, int]:
    for m, mp in iter_transpose_pairs():
        if m not in excluded and mp not in excluded:
            return m, mp
    raise AssertionError("unreachable: finitely many excluded positions")


def _exception_pairs(c: Cylinder) -> list[tuple[int, int]]:
    seen = set()
    for k in c.coding.corrections():
        if class_of(k) == "R":
            continue
        m = min(k, partner(k))
        seen.add((m, partner(m)))
    return sorted(seen)


def _assess_pair_rule(c: Cylinder, rule: str, bound: int):
    """(state, ref) for one pair rule on a cylinder: complete decision for
    atom-algebra codings, bounded violation search otherwise."""
    if c.coding.is_symbolic():
        dom, ones = c.coding.domain, c.coding.ones
        corrections = c.coding.corrections()

        def generic_status(atom: str):
            if atom not in dom.atoms:
                return None
            return 1 if atom in ones.atoms else 0

        ga, gb = generic_status("A"), generic_status("B")
        generic_state = _eval_pair(rule, ga, gb)
        candidates = []  # (m, state, (m, mp))
        if generic_state != _FORCED:
            m, mp = _first_generic_pair(frozenset(corrections))
            candidates.append((m, generic_state, (m, mp)))
        for m, mp in _exception_pairs(c):
            state = _eval_pair(rule, c.status(m), c.status(mp))
            if state != _FORCED:
                candidates.append((m, state, (m, mp)))
        violated = [x for x in candidates if x[1] == _VIOLATED]
        if violated:
            m, _, pair = min(violated)
            return _VIOLATED, ConstraintRef("pair", pair, rule)
        if candidates:
            m, _, pair = min(candidates)
            return _OPEN, ConstraintRef("pair", pair, rule)
        return _FORCED, None
    # predicate-backed coding: violations found within the bound are exact,
    # forcedness cannot be certified
    for m, mp in pairs_up_to(bound):
        state = _eval_pair(rule, c.status(m), c.status(mp))
        if state == _VIOLATED:
            return _VIOLATED, ConstraintRef("pair", (m, mp), rule)
    return _OPEN, ConstraintRef("pair", (), f"{rule} undetermined for predicate-backed coding")


def _assess_unary_rule(c: Cylinder, rule: UnaryRule, bound: int):
    support = rule.support
    if c.coding.is_symbolic() and isinstance(support, AtomSet):
        dec1 = c.coding.ones
        dec0 = c.coding.decided_zeros()
        bad = support.intersect(dec1 if rule.value == 0 else dec0)
        if not bad.is_empty():
            return _VIOLATED, ConstraintRef("unary", (bad.smallest(),), rule.label)
        target = dec1 if rule.value == 1 else dec0
        missing = support.difference(target)
        if missing.is_empty():
            return _FORCED, None
        return _OPEN, ConstraintRef("unary", (missing.smallest(),), rule.label)

    # exact containment facts first (identity of predicate sets, declared
    # analytic inclusions, infinite-versus-finite cardinality)
    dom, ones = c.coding.domain, c.coding.ones
    if rule.value == 1:
        forced = index_subset(support, ones)
    else:
        inside = index_subset(support, dom)
        apart = index_disjoint(support, ones)
        forced = True if (inside is True and apart is True) else (
            False if (inside is False or apart is False) else None
        )
    blocker = None
    for k in _support_members(support, bound):
        st = c.status(k)
        if st is not None and st != rule.value:
            return _VIOLATED, ConstraintRef("unary", (k,), rule.label)
        if st is None and blocker is None:
            blocker = ConstraintRef("unary", (k,), rule.label)
            if forced is not True:
                break
    if forced is True:
        return _FORCED, None
    if blocker is not None:
        return _OPEN, blocker
    return _OPEN, ConstraintRef("unary", (), f"{rule.label}: undetermined within bound {bound}")


def _assess_horn(c: Cylinder, bound: int):
    symbolic = c.coding.is_symbolic()
    if symbolic and c.coding.ones.is_finite():
        ones = c.coding.ones.finite_members()
        for k1 in ones:
            a, b = decode(k1)
            for k2 in ones:
                b2, d = decode(k2)
                if b2 != b:
                    continue
                k3 = encode(a, d)
                if k3 in (k1, k2):
                    continue
                if c.status(k3) == 0:
                    return _VIOLATED, ConstraintRef("horn", (k1, k2, k3))
    else:
        no_zeros = symbolic and c.coding.decided_zeros().is_empty()
        if not no_zeros:
            for k1, k2, k3 in triples_up_to(bound):
                if c.status(k1) == 1 and c.status(k2) == 1 and c.status(k3) == 0:
                    return _VIOLATED, ConstraintRef("horn", (k1, k2, k3))
    if symbolic and _OFFDIAG.subset_of(c.coding.decided_zeros()):
        # with every off-diagonal position decided 0 no clause premise over
        # distinct elements can ever fire
        return _FORCED, None
    for k1, k2, k3 in triples_up_to(bound):
        if c.status(k1) in (1, None) and c.status(k2) in (1, None) and c.status(k3) in (0, None):
            return _OPEN, ConstraintRef(
                "horn", (k1, k2, k3),
                "free positions admit an assignment violating this clause")
    return _OPEN, ConstraintRef("horn", (), f"undetermined within bound {bound}")


def _assess(c: Cylinder, system: ConstraintSystem, bound: int):
    """(verdict, blockers): the verdict over one constraint system plus the
    open constraints that prevent a forced-subset claim."""
    blockers: list[ConstraintRef] = []
    states: list[str] = []

    def note(state, ref):
        states.append(state)
        if state == _OPEN and ref is not None:
            blockers.append(ref)
        return state == _VIOLATED and ref is not None

    for rule in system.unary:
        state, ref = _assess_unary_rule(c, rule, bound)
        if note(state, ref):
            return Verdict(FORCED_DISJOINT, ref, bound), blockers
    for rule in system.pair_rules:
        state, ref = _assess_pair_rule(c, rule, bound)
        if note(state, ref):
            return Verdict(FORCED_DISJOINT, ref, bound), blockers
    if system.horn:
        state, ref = _assess_horn(c, bound)
        if note(state, ref):
            return Verdict(FORCED_DISJOINT, ref, bound), blockers
    if all(s == _FORCED for s in states):
        return Verdict(FORCED_SUBSET, None, bound), blockers
    return Verdict(UNDETERMINED, None, bound), blockers


def cylinder_verdict(c: Cylinder, p: str, bound: int = DEFAULT_BOUND,
                     space: StreamSpace | None = None) -> Verdict:
    """Exact relation of the cylinder to the coding set of p.

    For a relative cylinder the verdict is about N_f intersected with the
    coding set it is relative to: disjointness may be witnessed by any
    constraint of p, forcedness only needs the constraints of p that its
    base coding set does not already impose.
    """
    verdict, _ = assess_cylinder(c, p, bound, space)
    return verdict


def assess_cylinder(c: Cylinder, p: str, bound: int = DEFAULT_BOUND,
                    space: StreamSpace | None = None):
    """cylinder_verdict plus the blocking constraints of the forced-subset
    check; the blockers drive the exploration reports."""
    full = compile_property(p, space)
    verdict, blockers = _assess(c, full, bound)
    if verdict.kind != UNDETERMINED or c.relative_to is None:
        return verdict, blockers
    if c.relative_to == p:
        # N_f intersected with the coding set of p sits inside it trivially
        return Verdict(FORCED_SUBSET, None, bound), []
    residual = residual_system(p, c.relative_to, space)
    res_verdict, res_blockers = _assess(c, residual, bound)
    if res_verdict.kind == FORCED_SUBSET:
        return res_verdict, []
    return Verdict(UNDETERMINED, None, bound), res_blockers


# -- relative non-emptiness ---------------------------------------------------

_RELATIVE_SUPPORTED = (TRANSITIVE, QUASI_ORDER)


def validate_relative(c: Cylinder, space: StreamSpace | None = None) -> None:
    """Certify that a relative cylinder denotes a non-empty set, i.e. that
    some member of the base coding set extends the partial coding.

    Decided exactly for codings with finitely many 1s relative to the
    transitive or quasi-order coding sets: the transitive closure of the
    decided-1 pairs is the least obligation any extension carries, so the
    coding is consistent exactly when that closure avoids every decided-0
    position (and, for quasi-orders, no diagonal position is decided 0).
    """
    if c.relative_to is None:
        return
    q = c.relative_to
    if q not in _RELATIVE_SUPPORTED:
        raise NotInCollection(
            f"non-emptiness relative to {q!r} has no decision procedure here"
        )
    if not c.coding.is_symbolic() or not c.coding.ones.is_finite():
        raise NotInCollection(
            "relative non-emptiness is only certified for atom-algebra "
            "codings with finitely many decided 1s"
        )
    if q == QUASI_ORDER:
        zero_diag = c.coding.decided_zeros().intersect(_R_SET)
        if not zero_diag.is_empty():
            raise NotInCollection(
                f"diagonal position {zero_diag.smallest()} is decided 0; no "
                "quasi-order extends this coding"
            )
    edges = {decode(k) for k in c.coding.ones.finite_members()}
    closure = set(edges)
    changed = True
    while changed:
        changed = False
        for a, b in list(closure):
            for b2, d in list(closure):
                if b2 == b and (a, d) not in closure:
                    closure.add((a, d))
                    changed = True
    for a, b in sorted(closure):
        k = encode(a, b)
        if c.status(k) == 0:
            raise NotInCollection(
                f"the transitive closure of the decided-1 pairs forces "
                f"position {k} to 1, but it is decided 0"
            )
