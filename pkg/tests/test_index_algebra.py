"""Index-set algebra tests: exact membership, infinitude reasoning, and
agreement with naive per-index classification."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relrarity.index_algebra import (
    AtomSet,
    PredicateSet,
    ScanExhausted,
    index_disjoint,
    index_subset,
)
from relrarity.pairing import class_of, diagonal_index

atoms_strategy = st.frozensets(st.sampled_from(["R", "A", "B"]))
indices_strategy = st.frozensets(st.integers(min_value=1, max_value=200), max_size=6)


def naive_member(s: AtomSet, k: int) -> bool:
    base = class_of(k) in s.atoms or k in s.plus
    return base and k not in s.minus


class TestAtomSetBasics:
    def test_member_examples(self):
        assert AtomSet.make(atoms={"R"}).member(5)  # 5 is the 2nd diagonal
        assert not AtomSet.make(atoms={"A", "B"}).member(1)
        assert not AtomSet.make(atoms={"A"}, minus={2}).member(2)

    def test_infinitude_examples(self):
        ab = AtomSet.make(atoms={"A", "B"})
        assert ab.is_infinite() and ab.is_coinfinite()
        fin = AtomSet.make(plus={1, 2, 3})
        assert not fin.is_infinite()
        assert fin.is_coinfinite()
        everything = AtomSet.full()
        assert everything.is_infinite() and not everything.is_coinfinite()

    def test_ops_examples(self):
        r = AtomSet.make(atoms={"R"})
        assert r.complement() == AtomSet.make(atoms={"A", "B"})
        assert AtomSet.make(atoms={"B"}).union(r) == AtomSet.make(atoms={"B", "R"})
        assert AtomSet.make(atoms={"A", "B"}).intersect(r).is_empty()

    def test_first_n_examples(self):
        assert AtomSet.make(atoms={"R"}).first_n(3) == [1, 5, 13]
        assert AtomSet.make(atoms={"A"}).first_n(2) == [2, 4]
        assert AtomSet.empty().first_n(5) == []

    def test_normal_form(self):
        s = AtomSet.make(atoms={"R"}, plus={1, 2}, minus={5, 2})
        # 1 is diagonal: redundant in plus; 2 is off-diagonal but also
        # subtracted; 5 is a genuine diagonal removal
        assert s.plus == frozenset()
        assert s.minus == frozenset({5})
        assert not s.member(2)
        assert not s.member(5)
        assert s.member(1)

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            AtomSet.make(atoms={"Q"})
        with pytest.raises(ValueError):
            AtomSet.make(plus={0})

    def test_finite_members(self):
        assert AtomSet.finite({9, 2, 4}).finite_members() == [2, 4, 9]
        with pytest.raises(ValueError):
            AtomSet.make(atoms={"A"}).finite_members()


def random_atomset(rng):
    atoms = rng.sample(["R", "A", "B"], rng.randrange(4))
    plus = {rng.randrange(1, 300) for _ in range(rng.randrange(4))}
    minus = {rng.randrange(1, 300) for _ in range(rng.randrange(4))}
    return AtomSet.make(atoms, plus, minus)


class TestAlgebraSoundness:
    def test_member_agrees_with_classify(self):
        rng = random.Random(7)
        sets = [random_atomset(rng) for _ in range(25)]
        for s in sets:
            for k in range(1, 10**5 + 1, 97):
                assert s.member(k) == naive_member(s, k)
            for k in sorted(s.corrections()):
                assert s.member(k) == naive_member(s, k)

    def test_ops_agree_pointwise(self):
        rng = random.Random(11)
        for _ in range(40):
            a, b = random_atomset(rng), random_atomset(rng)
            u, i, c = a.union(b), a.intersect(b), a.complement()
            probe = set(range(1, 400)) | a.corrections() | b.corrections()
            for k in probe:
                assert u.member(k) == (a.member(k) or b.member(k))
                assert i.member(k) == (a.member(k) and b.member(k))
                assert c.member(k) == (not a.member(k))

    def test_infinitude_soundness(self):
        rng = random.Random(13)
        for _ in range(12):
            s = random_atomset(rng)
            if s.is_infinite():
                got = s.first_n(10**4)
                assert len(got) == 10**4
                assert got == sorted(got)
            else:
                members = s.first_n(10**4)
                assert members == s.finite_members()

    def test_enumeration_matches_membership(self):
        rng = random.Random(17)
        for _ in range(15):
            s = random_atomset(rng)
            listed = set(s.members_up_to(500))
            for k in range(1, 501):
                assert (k in listed) == s.member(k)


@settings(max_examples=80)
@given(atoms_strategy, indices_strategy, indices_strategy,
       atoms_strategy, indices_strategy, indices_strategy)
def test_de_morgan_on_prefixes(at1, p1, m1, at2, p2, m2):
    a = AtomSet.make(at1, p1, m1)
    b = AtomSet.make(at2, p2, m2)
    lhs = a.union(b).complement()
    rhs = a.complement().intersect(b.complement())
    probe = list(range(1, 120)) + sorted(a.corrections() | b.corrections())
    for k in probe:
        assert lhs.member(k) == rhs.member(k)
    assert lhs == rhs


class TestSubsetDisjoint:
    def test_exact_on_atoms(self):
        a = AtomSet.make(atoms={"A"})
        ab = AtomSet.make(atoms={"A", "B"})
        assert index_subset(a, ab) is True
        assert index_subset(ab, a) is False
        assert index_disjoint(a, AtomSet.make(atoms={"R"})) is True

    def test_with_corrections(self):
        a = AtomSet.make(atoms={"A"}, minus={2})
        assert index_subset(a, AtomSet.make(atoms={"A"})) is True
        b = AtomSet.make(atoms={"A"}, plus={1})
        assert index_subset(b, AtomSet.make(atoms={"A"})) is False


class TestPredicateSet:
    def make_diagonal_predicate(self):
        return PredicateSet(
            set_id="test/diagonal",
            membership=lambda k: class_of(k) == "R",
            description="diagonal positions",
            certified_infinite=True,
            certified_coinfinite=True,
            certificate="one diagonal position for every ground element; "
            "off-diagonal positions are also unbounded",
        )

    def test_membership_and_first_n(self):
        ps = self.make_diagonal_predicate()
        assert ps.first_n(4) == [1, 5, 13, 25]
        assert ps.member(diagonal_index(9))
        assert not ps.member(2)

    def test_scan_exhaustion_is_loud(self):
        small = PredicateSet(
            set_id="test/tiny",
            membership=lambda k: k in (3, 8),
            scan_bound=100,
        )
        with pytest.raises(ScanExhausted) as exc:
            small.first_n(5)
        assert exc.value.found == [3, 8]
        assert exc.value.bound == 100

    def test_certificate_required_for_flags(self):
        with pytest.raises(ValueError):
            PredicateSet(set_id="test/bad", membership=lambda k: True,
                         certified_infinite=True)

    def test_identity_subset(self):
        ps = self.make_diagonal_predicate()
        assert index_subset(ps, ps) is True

    def test_infinite_never_inside_finite(self):
        ps = self.make_diagonal_predicate()
        assert index_subset(ps, AtomSet.finite({1, 5})) is False

    def test_counterexample_scan(self):
        ps = self.make_diagonal_predicate()
        assert index_subset(ps, AtomSet.make(atoms={"A"}), scan=50) is False
        assert index_disjoint(ps, AtomSet.make(atoms={"R"}), scan=50) is False
