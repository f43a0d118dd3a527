"""Verification reports and golden fixtures."""

from __future__ import annotations

import json
import random
from fractions import Fraction
from types import MappingProxyType

import pytest

from beliefkit import (
    COOT_DENOMINATOR,
    COOT_TABLE,
    EmptyPopulationError,
    LabelingProcessSpec,
    MassFunction,
    Population,
    PopulationRecord,
    coot_fixture,
    coot_frame,
    coot_label,
    coot_unlabeled_standin,
    effective_response,
    estimate_mass,
    make_frame,
    make_mass,
    subset_from_names,
    synthesize_population,
    verify_coot_printed_table,
    verify_general_relabel,
    verify_mte_axioms,
    verify_simple_relabel,
)
from conftest import coot_mass_entries, letters_frame, random_population


class TestCootFixture:
    def test_size_and_labels(self):
        pop = coot_fixture()
        assert len(pop) == 717
        label = coot_label(pop.frame)
        assert all(r.label == label for r in pop.records)
        assert all(not effective_response(r).is_empty() for r in pop.records)

    def test_estimate_matches_published_masses(self):
        pop = coot_fixture()
        m = estimate_mass(pop)
        expected = coot_mass_entries(pop.frame)
        assert dict(m.focal) == expected

    def test_class_multiset(self):
        pop = coot_fixture()
        counts: dict = {}
        for r in pop.records:
            eff = effective_response(r)
            counts[eff.names()] = counts.get(eff.names(), 0) + 1
        assert counts == {names: count for names, count, _ in COOT_TABLE}

    def test_deterministic(self):
        a, b = coot_fixture(), coot_fixture()
        assert a == b
        assert [r.object_id for r in a.records][:2] == ["bottle-0001", "bottle-0002"]


class TestCootStandin:
    def test_size_and_unlabeled(self):
        pop = coot_unlabeled_standin()
        assert len(pop) == 717
        assert all(r.label.is_full() for r in pop.records)

    def test_some_classes_meet_label_some_do_not(self):
        pop = coot_unlabeled_standin()
        label = coot_label(pop.frame)
        classes = {effective_response(r) for r in pop.records}
        assert any(c.intersects(label) for c in classes)
        assert any(not c.intersects(label) for c in classes)


class TestVerifyAxioms:
    def test_fixture_passes(self):
        report = verify_mte_axioms(coot_fixture())
        assert report.overall
        assert {c.status for c in report.checks} == {"PASS"}

    def test_synthesized_passes(self):
        f = letters_frame(3)
        m = make_mass(
            f,
            {
                f.subset(["e0"]): Fraction(2, 5),
                f.subset(["e1", "e2"]): Fraction(3, 5),
            },
        )
        report = verify_mte_axioms(synthesize_population(m, 40))
        assert report.overall

    def test_tampered_estimator_fails_with_values(self):
        pop = coot_fixture()

        def tampered(p):
            m = estimate_mass(p)
            focal = dict(m.focal)
            (first, w), *_ = sorted(focal.items(), key=lambda kv: kv[0].mask)
            focal[first] = w / 2  # sums to less than 1 and breaks Bel
            return MassFunction(m.frame, MappingProxyType(focal))

        report = verify_mte_axioms(pop, mass_estimator=tampered)
        assert not report.overall
        failed = [c for c in report.checks if c.status == "FAIL"]
        assert failed
        sums = [c for c in failed if c.name == "mass-sums-to-one"]
        assert sums and sums[0].lhs != "" and sums[0].rhs == "1"
        bel = [c for c in failed if c.name == "belief-direct-vs-mass"]
        assert bel and bel[0].lhs != "" and bel[0].rhs != ""

    def test_empty_population(self):
        with pytest.raises(EmptyPopulationError):
            verify_mte_axioms(Population(letters_frame(2), ()))


class TestVerifySimpleRelabel:
    def test_standin_with_coot_label(self):
        report = verify_simple_relabel(coot_unlabeled_standin(), coot_label())
        assert report.overall

    def test_full_frame_label_trivial(self):
        pop = coot_unlabeled_standin()
        report = verify_simple_relabel(pop, pop.frame.full())
        assert report.overall

    def test_matched_total_conflict(self):
        f = make_frame(["a", "b"])
        pop = Population(f, (PopulationRecord("r", f.subset(["a"]), f.full()),))
        report = verify_simple_relabel(pop, f.subset(["b"]))
        assert report.overall
        assert report.checks[0].name == "relabel-total-conflict-matched"

    def test_randomized_instances_always_pass(self):
        rng = random.Random(777)
        for _ in range(150):
            f = letters_frame(rng.randint(2, 6))
            pop = random_population(rng, f, max_size=120)
            label = f.subset_from_mask(rng.randint(1, (1 << f.size) - 1))
            assert verify_simple_relabel(pop, label).overall


class TestVerifyGeneralRelabel:
    def test_point_mass_on_full_frame_zero_tolerance(self):
        pop = coot_unlabeled_standin()
        spec = LabelingProcessSpec((pop.frame.full(),), (Fraction(1),))
        report = verify_general_relabel(pop, spec, trials=3, seed=0, tolerance=0.0)
        assert report.overall

    def test_single_label_constant_across_trials(self):
        pop = coot_unlabeled_standin()
        label = coot_label(pop.frame)
        spec = LabelingProcessSpec((label,), (Fraction(1),))
        report = verify_general_relabel(pop, spec, trials=5, seed=3, tolerance=1e-12)
        assert report.overall

    def test_two_expert_split_small(self):
        pop = coot_unlabeled_standin()
        spec = LabelingProcessSpec(
            (coot_label(pop.frame), pop.frame.full()),
            (Fraction(7, 10), Fraction(3, 10)),
        )
        report = verify_general_relabel(pop, spec, trials=300, seed=42, tolerance=0.01)
        assert report.overall
        exact = report.checks[0]
        assert exact.name == "expected-weights-match-combination"
        assert exact.status == "PASS"

    def test_matched_degenerate_outcome(self):
        f = make_frame(["a", "b"])
        pop = Population(f, (PopulationRecord("r", f.subset(["a"]), f.full()),))
        spec = LabelingProcessSpec((f.subset(["b"]),), (Fraction(1),))
        report = verify_general_relabel(pop, spec, trials=4, seed=0)
        assert report.overall
        assert all("degenerate" in c.detail or "conflict" in c.rhs for c in report.checks)

    def test_all_trials_empty_raises_when_combination_defined(self):
        # one record, survival probability 1/10 per trial: find a seed where
        # a handful of trials all kill it
        f = make_frame(["a", "b"])
        pop = Population(f, (PopulationRecord("r", f.subset(["a"]), f.full()),))
        spec = LabelingProcessSpec(
            (f.subset(["a"]), f.subset(["b"])), (Fraction(1, 10), Fraction(9, 10))
        )
        chosen = None
        for seed in range(200):
            try:
                report = verify_general_relabel(pop, spec, trials=2, seed=seed)
            except EmptyPopulationError:
                chosen = seed
                break
        assert chosen is not None, "no seed produced all-empty trials"
        with pytest.raises(EmptyPopulationError):
            verify_general_relabel(pop, spec, trials=2, seed=chosen)

    def test_trials_must_be_positive(self):
        pop = coot_unlabeled_standin()
        spec = LabelingProcessSpec((pop.frame.full(),), (Fraction(1),))
        with pytest.raises(Exception):
            verify_general_relabel(pop, spec, trials=0, seed=0)


class TestPrintedTableAudit:
    def test_passes_and_reports_divergences(self):
        report = verify_coot_printed_table()
        assert report.overall
        divergent = [c for c in report.checks if c.name == "bel-divergent-rows"]
        assert len(divergent) == 1
        assert "printed 184/717" in divergent[0].detail
        assert "296/717" in divergent[0].detail


class TestReportSerialization:
    def test_doc_and_text(self):
        report = verify_coot_printed_table()
        doc = report.to_doc()
        assert doc["overall"] is True
        assert {c["status"] for c in doc["checks"]} == {"PASS"}
        json.dumps(doc)  # serializable
        text = report.format_text()
        assert "overall: PASS" in text

    def test_fail_carries_both_values(self):
        def broken(p):
            m = estimate_mass(p)
            focal = dict(m.focal)
            (first, w), *_ = sorted(focal.items(), key=lambda kv: kv[0].mask)
            focal[first] = w / 2
            return MassFunction(m.frame, MappingProxyType(focal))

        report = verify_mte_axioms(coot_fixture(), mass_estimator=broken)
        doc = report.to_doc()
        fails = [c for c in doc["checks"] if c["status"] == "FAIL"]
        assert fails
        for c in fails:
            assert c["lhs"] != "" and c["rhs"] != ""
