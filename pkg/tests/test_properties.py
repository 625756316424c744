import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from properties.group_properties import (
    GP_IDS,
    GpReport,
    Stage,
    Verdict,
    check_all,
    check_gp,
    first_violation,
    set_leq,
    set_less,
    witness_violates,
)
from properties.random_frameworks import (
    RandomFrameworkSpec,
    generate_framework,
    generate_trial,
    in_construction_image,
    trial_rng,
)
from properties.search import counterexample_search, gp_summary, prune, staged
from qbaf.framework import DEFAULT_ID, Variant, build_qbafc, structural_violations
from qbaf.semantics import compute_strengths, postprocess
from utils.helpers import ConfigError

from .generators import random_document, random_model

PRE_VIOLATED = [2, 3, 4, 5, 7, 8, 10, 11]
POST_VIOLATED = [10, 11]


@pytest.fixture(scope="module")
def summary():
    return gp_summary(RandomFrameworkSpec(), 1000)


class TestSetComparison:
    S = {"a": 1, "b": 2, "c": 3, "d": 2}

    def test_leq(self):
        assert set_leq([], ["a"], self.S)
        assert set_leq(["a", "b"], ["c", "d"], self.S)
        assert not set_leq(["c"], ["a", "b"], self.S)
        assert not set_leq(["a", "b"], ["c"], self.S)

    def test_less(self):
        assert set_less(["a"], ["a", "b"], self.S)
        assert set_less(["b"], ["c"], self.S)
        assert not set_less(["b"], ["d"], self.S)
        assert not set_less([], [], self.S)

    @settings(max_examples=200, deadline=None)
    @given(st.lists(st.integers(-5, 5), max_size=6), st.lists(st.integers(-5, 5), max_size=6))
    def test_less_is_irreflexive_and_asymmetric(self, xs, ys):
        s = {f"x{i}": v for i, v in enumerate(xs)}
        s.update({f"y{i}": v for i, v in enumerate(ys)})
        P, Q = [f"x{i}" for i in range(len(xs))], [f"y{i}" for i in range(len(ys))]
        assert not set_less(P, P, s)
        assert not (set_less(P, Q, s) and set_less(Q, P, s))


class TestRunningExample:
    def test_balance_holds_for_unrelated_arguments(self, running_model, running_doc):
        fw = build_qbafc(running_model, running_doc, Variant.TOP_DOWN)
        report = check_gp(fw, compute_strengths(fw), 1)
        assert (report.holds, report.violated, report.vacuous) == (2, 0, 3)
        assert report.verdict is Verdict.HOLDS
        assert report.stage is Stage.PRE

    def test_post_stage_reads_flipped_base_scores(self, running_model, running_doc):
        fw = build_qbafc(running_model, running_doc, Variant.BOTTOM_UP)
        fw_post, s_post = postprocess(fw, compute_strengths(fw))
        reports = check_all(fw_post, s_post)
        assert set(reports) == set(GP_IDS)
        assert all(r.stage is Stage.POST for r in reports.values())
        # tau'(delta) = -0.1 < sigma'(delta) = 0.3 with supporter a3
        assert reports[5].violated == 0

    def test_unknown_property(self, running_model, running_doc):
        fw = build_qbafc(running_model, running_doc)
        with pytest.raises(ValueError):
            check_gp(fw, compute_strengths(fw), 12)


class TestModelFrameworks:
    def test_first_nine_hold_after_post_processing(self):
        """Frameworks built from a model satisfy GP1-GP9 once post-processed, in both variants."""
        rng = random.Random(23)
        for _ in range(500):
            model = random_model(rng, max_patterns=6)
            doc = random_document(rng)
            for variant in Variant:
                fw = build_qbafc(model, doc, variant)
                fw_post, s_post = postprocess(fw, compute_strengths(fw))
                for gp in range(1, 10):
                    assert first_violation(fw_post, s_post, gp) is None, (variant, gp, model.to_dict(), doc.id)


class TestRandomFrameworks:
    def test_seeded(self):
        spec = RandomFrameworkSpec()
        assert generate_trial(spec, 5) == generate_trial(spec, 5)
        assert trial_rng(spec, 1).random() == trial_rng(spec, 1).random()
        assert generate_trial(spec, 5) != generate_trial(RandomFrameworkSpec(seed=14), 5)

    def test_shape(self):
        spec = RandomFrameworkSpec(min_arguments=2, max_arguments=6)
        for trial in range(300):
            fw = generate_trial(spec, trial)
            assert 3 <= len(fw.arguments) <= 7
            assert structural_violations(fw) == []
            assert in_construction_image(fw)
            assert all(Fraction(1, 16) <= v <= Fraction(1, 2) for v in fw.base_score.values())

    def test_empty_framework(self):
        fw = generate_framework(RandomFrameworkSpec(min_arguments=0, max_arguments=0), random.Random(0))
        assert fw.ids == [DEFAULT_ID]
        assert check_gp(fw, compute_strengths(fw), 1).holds == 1

    @pytest.mark.parametrize(
        "spec",
        [
            RandomFrameworkSpec(min_arguments=-1),
            RandomFrameworkSpec(min_arguments=5, max_arguments=4),
            RandomFrameworkSpec(edge_density=1.5),
            RandomFrameworkSpec(score_denominator=0),
        ],
    )
    def test_invalid_generator_settings(self, spec):
        with pytest.raises(ConfigError):
            spec.validate()


class TestSummary:
    def test_no_trials_is_all_vacuous(self):
        summary = gp_summary(RandomFrameworkSpec(), 0)
        assert all(summary.verdict(stage, gp) is Verdict.VACUOUS for stage in Stage for gp in GP_IDS)
        assert set(summary.table().values.ravel()) == {"–"}

    def test_negative_trials(self):
        with pytest.raises(ValueError):
            gp_summary(RandomFrameworkSpec(), -1)

    def test_pre_stage_violations(self, summary):
        assert summary.violated(Stage.PRE) == PRE_VIOLATED

    def test_post_stage_violations(self, summary):
        assert summary.violated(Stage.POST) == POST_VIOLATED

    def test_never_violated_properties_hold(self, summary):
        for stage in Stage:
            for gp in (1, 6, 9):
                assert summary.verdict(stage, gp) is Verdict.HOLDS

    def test_table(self, summary):
        table = summary.table()
        assert list(table.columns) == [f"GP{gp}" for gp in GP_IDS]
        assert list(table.index) == ["⟨QBAFc, σ⟩", "⟨QBAFc′, σ⟩"]
        assert table.loc["⟨QBAFc′, σ⟩", "GP10"] == "✗"
        assert table.loc["⟨QBAFc′, σ⟩", "GP7"] == "✓"

    def test_witnesses_are_bounded_and_real(self, summary):
        report = summary.reports[(Stage.POST, 10)]
        assert 1 <= len(report.witnesses) <= 5
        assert report.violated >= len(report.witnesses)
        assert summary.to_dict()["stages"]["post"]["GP10"]["verdict"] == "violated"

    def test_merge_requires_same_property(self):
        with pytest.raises(ValueError):
            GpReport(1, Stage.PRE).merge(GpReport(2, Stage.PRE))


class TestCounterexampleSearch:
    def test_balance_has_no_counterexample(self):
        assert counterexample_search(1, Stage.POST, RandomFrameworkSpec(), 200) is None

    @pytest.mark.parametrize("gp, stage", [(10, Stage.POST), (2, Stage.PRE)])
    def test_found_and_pruned(self, gp, stage):
        found = counterexample_search(gp, stage, RandomFrameworkSpec(), 10_000)
        assert found is not None
        assert found.witness.gp == gp
        assert found.staged_framework.post_processed == (stage is Stage.POST)
        assert witness_violates(found.staged_framework, found.strengths, found.witness)
        assert in_construction_image(found.framework)
        assert found.framework == prune(found.framework, gp, stage)
        assert len(found.framework.arguments) <= len(generate_trial(RandomFrameworkSpec(), found.trial).arguments)

    def test_pruned_framework_is_minimal(self):
        found = counterexample_search(2, Stage.PRE, RandomFrameworkSpec(), 10_000)
        # an attacker with negative strength needs an attacker of its own
        assert len(found.framework.arguments) >= 3
        staged_fw, s = staged(found.framework, Stage.PRE)
        assert first_violation(staged_fw, s, 2) is not None

    def test_invalid_arguments(self):
        with pytest.raises(ValueError):
            counterexample_search(0, Stage.PRE, RandomFrameworkSpec(), 10)
        with pytest.raises(ValueError):
            counterexample_search(2, Stage.PRE, RandomFrameworkSpec(), 0)

    def test_stale_witness(self):
        found = counterexample_search(2, Stage.PRE, RandomFrameworkSpec(), 10_000)
        fw = generate_trial(RandomFrameworkSpec(min_arguments=0, max_arguments=0), 0)
        assert not witness_violates(fw, compute_strengths(fw), found.witness)
