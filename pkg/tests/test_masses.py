"""Mass functions, transforms, and Dempster combination."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from beliefkit import (
    BeliefTable,
    FrameMismatchError,
    MassValidationError,
    NotABeliefFunctionError,
    TableTooLargeError,
    TotalConflictError,
    belief,
    belief_table,
    categorical_mass,
    dempster_combine,
    make_frame,
    make_mass,
    mass_from_belief,
    plausibility,
    subset_from_names,
    subsets_of,
    vacuous_mass,
)
from conftest import (
    coot_mass_entries,
    conditioning_oracle,
    masses,
    naive_belief,
    naive_plausibility,
    random_mass,
    letters_frame,
)

COOT_NAMES = ["HB", "HG", "MB", "MG", "SB", "SG", "DB", "DG"]


@pytest.fixture
def coot_frame_and_mass():
    frame = make_frame(COOT_NAMES)
    return frame, make_mass(frame, coot_mass_entries(frame))


class TestMakeMass:
    def test_vacuous(self):
        f = make_frame(["a", "b"])
        m = make_mass(f, {f.full(): Fraction(1)})
        assert m.weight(f.full()) == 1
        assert m == vacuous_mass(f)

    def test_coot_entries_sum_to_one(self, coot_frame_and_mass):
        frame, m = coot_frame_and_mass
        assert len(m.focal) == 16
        assert sum(m.focal.values()) == 1

    def test_mass_on_empty_set(self):
        f = make_frame(["a"])
        with pytest.raises(MassValidationError, match="empty set"):
            make_mass(f, {f.empty(): Fraction(1, 2), f.full(): Fraction(1, 2)})

    def test_nonpositive_weight(self):
        f = make_frame(["a", "b"])
        with pytest.raises(MassValidationError, match="not positive"):
            make_mass(f, {f.full(): Fraction(3, 2), f.subset(["a"]): Fraction(-1, 2)})
        with pytest.raises(MassValidationError, match="not positive"):
            make_mass(f, {f.full(): Fraction(1), f.subset(["a"]): Fraction(0)})

    def test_sum_not_one_rejected_not_renormalized(self):
        f = make_frame(["a"])
        with pytest.raises(MassValidationError, match="sum to 1"):
            make_mass(f, {f.full(): Fraction(1, 2)})

    def test_float_weights_rejected(self):
        f = make_frame(["a"])
        with pytest.raises(MassValidationError, match="exact"):
            make_mass(f, {f.full(): 1.0})

    def test_frame_mismatch(self):
        f = make_frame(["a"])
        g = make_frame(["b"])
        with pytest.raises(FrameMismatchError):
            make_mass(f, {g.full(): Fraction(1)})


class TestCategorical:
    def test_full_frame_is_vacuous(self):
        f = make_frame(["a", "b"])
        assert categorical_mass(f, f.full()) == vacuous_mass(f)

    def test_coot_label(self):
        f = make_frame(COOT_NAMES)
        label = subset_from_names(f, {"HB", "HG", "MB", "MG", "SB", "DB"})
        m = categorical_mass(f, label)
        assert m.weight(label) == 1
        assert len(m.focal) == 1

    def test_empty_label(self):
        f = make_frame(["a"])
        with pytest.raises(MassValidationError):
            categorical_mass(f, f.empty())


class TestBelief:
    def test_coot_pair(self, coot_frame_and_mass):
        frame, m = coot_frame_and_mass
        assert belief(m, subset_from_names(frame, {"HB", "HG"})) == Fraction(202, 717)

    def test_full_frame_is_one(self, coot_frame_and_mass):
        frame, m = coot_frame_and_mass
        assert belief(m, frame.full()) == 1

    def test_coot_triple_subset_sum(self, coot_frame_and_mass):
        # brute-force subset-sum oracle value, not the published table entry
        frame, m = coot_frame_and_mass
        a = subset_from_names(frame, {"HB", "SB", "HG"})
        assert belief(m, a) == Fraction(296, 717)
        assert naive_belief(m, a) == Fraction(296, 717)

    def test_frame_mismatch(self, coot_frame_and_mass):
        _, m = coot_frame_and_mass
        with pytest.raises(FrameMismatchError):
            belief(m, make_frame(["a"]).full())


class TestPlausibility:
    def test_full_frame(self, coot_frame_and_mass):
        frame, m = coot_frame_and_mass
        assert plausibility(m, frame.full()) == 1

    def test_two_focal_example(self):
        f = make_frame(["a", "b"])
        m = make_mass(
            f, {f.subset(["a"]): Fraction(1, 2), f.full(): Fraction(1, 2)}
        )
        assert plausibility(m, f.subset(["b"])) == Fraction(1, 2)

    def test_coot_duality_both_routes(self, coot_frame_and_mass):
        frame, m = coot_frame_and_mass
        a = subset_from_names(frame, {"SB"})
        lhs = plausibility(m, a)
        rhs = 1 - belief(m, a.complement())
        assert lhs == rhs == Fraction(149, 717)

    @given(masses())
    def test_duality_everywhere(self, m):
        frame = m.frame
        for a in subsets_of(frame.full()):
            assert plausibility(m, a) == 1 - belief(m, a.complement())
            assert plausibility(m, a) == naive_plausibility(m, a)


class TestOrderProperties:
    @given(masses(), st.data())
    def test_monotone_and_dominated(self, m, data):
        top = (1 << m.frame.size) - 1
        amask = data.draw(st.integers(0, top))
        bmask = amask | data.draw(st.integers(0, top))
        a = m.frame.subset_from_mask(amask)
        b = m.frame.subset_from_mask(bmask)
        assert belief(m, a) <= belief(m, b)
        assert belief(m, a) <= plausibility(m, a)


class TestBeliefTable:
    def test_vacuous(self):
        f = make_frame(["a", "b"])
        t = belief_table(vacuous_mass(f))
        for a in subsets_of(f.full()):
            assert t.value(a) == (1 if a.is_full() else 0)

    def test_coot_consistent_rows(self, coot_frame_and_mass):
        frame, m = coot_frame_and_mass
        t = belief_table(m)
        assert t.value(subset_from_names(frame, {"HB"})) == Fraction(20, 717)
        assert t.value(subset_from_names(frame, {"HB", "HG"})) == Fraction(202, 717)
        assert t.value(subset_from_names(frame, {"MB", "MG"})) == Fraction(317, 717)
        assert t.value(subset_from_names(frame, {"MB", "SB"})) == Fraction(175, 717)

    @given(masses())
    @settings(max_examples=60)
    def test_matches_per_query_belief(self, m):
        t = belief_table(m)
        for a in subsets_of(m.frame.full()):
            assert t.value(a) == belief(m, a)
            assert t.value(a) == naive_belief(m, a)

    def test_too_large_for_dense(self):
        f = letters_frame(21)
        with pytest.raises(TableTooLargeError):
            belief_table(vacuous_mass(f))


class TestMoebiusRoundTrip:
    def test_vacuous_and_categorical(self):
        f = make_frame(["a", "b", "c"])
        for m in (vacuous_mass(f), categorical_mass(f, f.subset(["a", "c"]))):
            assert mass_from_belief(belief_table(m)) == m

    def test_coot_round_trip(self, coot_frame_and_mass):
        _, m = coot_frame_and_mass
        assert mass_from_belief(belief_table(m)) == m

    @given(masses())
    def test_random_round_trip(self, m):
        assert mass_from_belief(belief_table(m)) == m

    def test_rejects_non_belief_tables(self):
        f = make_frame(["a", "b"])
        # supermodular-violating table: positive on both singletons and 1 on
        # the frame, but the pair {a,b} gets less than the singleton sum
        bad = BeliefTable(
            f,
            (Fraction(0), Fraction(3, 4), Fraction(3, 4), Fraction(1)),
        )
        with pytest.raises(NotABeliefFunctionError, match="negative"):
            mass_from_belief(bad)

    def test_rejects_empty_set_support(self):
        f = make_frame(["a"])
        with pytest.raises(NotABeliefFunctionError):
            BeliefTable(f, (Fraction(1, 2), Fraction(1)))


class TestDempsterCombine:
    def test_categorical_overlap(self):
        f = make_frame(["a", "b", "c"])
        m, k = dempster_combine(
            categorical_mass(f, f.subset(["a", "b"])),
            categorical_mass(f, f.subset(["b", "c"])),
        )
        assert m == categorical_mass(f, f.subset(["b"]))
        assert k == 0

    def test_partial_conflict(self):
        f = make_frame(["a", "b"])
        m1 = make_mass(f, {f.subset(["a"]): Fraction(1, 2), f.full(): Fraction(1, 2)})
        m, k = dempster_combine(m1, categorical_mass(f, f.subset(["b"])))
        assert m == categorical_mass(f, f.subset(["b"]))
        assert k == Fraction(1, 2)

    def test_total_conflict(self):
        f = make_frame(["a", "b"])
        with pytest.raises(TotalConflictError, match="total conflict"):
            dempster_combine(
                categorical_mass(f, f.subset(["a"])),
                categorical_mass(f, f.subset(["b"])),
            )

    def test_frame_mismatch(self):
        m1 = vacuous_mass(make_frame(["a"]))
        m2 = vacuous_mass(make_frame(["b"]))
        with pytest.raises(FrameMismatchError):
            dempster_combine(m1, m2)

    @given(masses(), st.randoms(use_true_random=False))
    def test_commutative(self, m1, rng):
        m2 = random_mass(random.Random(rng.randint(0, 10**9)), m1.frame)
        try:
            left = dempster_combine(m1, m2)
        except TotalConflictError:
            with pytest.raises(TotalConflictError):
                dempster_combine(m2, m1)
            return
        assert left == dempster_combine(m2, m1)

    @given(masses())
    def test_vacuous_identity(self, m):
        combined, k = dempster_combine(m, vacuous_mass(m.frame))
        assert combined == m
        assert k == 0

    def test_associative_conflict_free(self):
        rng = random.Random(1234)
        f = letters_frame(4)
        anchored = [m for m in range(1, 16) if m & 1]  # all contain element 0
        for _ in range(200):
            ms = []
            for _ in range(3):
                k = rng.randint(1, 4)
                chosen = rng.sample(anchored, k)
                weights = [rng.randint(1, 9) for _ in range(k)]
                total = sum(weights)
                ms.append(
                    make_mass(
                        f,
                        {
                            f.subset_from_mask(m): Fraction(w, total)
                            for m, w in zip(chosen, weights)
                        },
                    )
                )
            m1, m2, m3 = ms
            left, _ = dempster_combine(dempster_combine(m1, m2)[0], m3)
            right, _ = dempster_combine(m1, dempster_combine(m2, m3)[0])
            assert left == right

    @given(masses(min_frame=2), st.data())
    def test_categorical_equals_direct_conditioning(self, m, data):
        top = (1 << m.frame.size) - 1
        label = m.frame.subset_from_mask(data.draw(st.integers(1, top)))
        expected, expected_k = conditioning_oracle(m, label)
        if expected is None:
            with pytest.raises(TotalConflictError):
                dempster_combine(m, categorical_mass(m.frame, label))
            return
        combined, k = dempster_combine(m, categorical_mass(m.frame, label))
        assert combined == expected
        assert k == expected_k
