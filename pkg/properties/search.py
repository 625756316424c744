import logging
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import pandas as pd

from qbaf.framework import DEFAULT_ID, Qbafc, structural_violations
from qbaf.semantics import StrengthMap, compute_strengths, postprocess

from .group_properties import GP_IDS, GpReport, Stage, Verdict, Witness, check_gp, first_violation
from .random_frameworks import RandomFrameworkSpec, generate_trial, in_construction_image

logger = logging.getLogger(__name__)

STAGE_ROWS = {Stage.PRE: "⟨QBAFc, σ⟩", Stage.POST: "⟨QBAFc′, σ⟩"}
VERDICT_MARKS = {Verdict.HOLDS: "✓", Verdict.VIOLATED: "✗", Verdict.VACUOUS: "–"}


def staged(fw: Qbafc, stage: Stage) -> Tuple[Qbafc, StrengthMap]:
    """Strengths of a pre-stage framework, or its post-processed counterpart."""
    s = compute_strengths(fw)
    if stage is Stage.POST:
        return postprocess(fw, s)
    return fw, s


@dataclass
class GpSummary:
    trials: int
    reports: Dict[Tuple[Stage, int], GpReport]

    def verdict(self, stage: Stage, gp: int) -> Verdict:
        return self.reports[(stage, gp)].verdict

    def violated(self, stage: Stage):
        return sorted(gp for gp in GP_IDS if self.verdict(stage, gp) is Verdict.VIOLATED)

    def table(self) -> pd.DataFrame:
        rows = {
            STAGE_ROWS[stage]: [VERDICT_MARKS[self.verdict(stage, gp)] for gp in GP_IDS]
            for stage in Stage
        }
        return pd.DataFrame.from_dict(rows, orient="index", columns=[f"GP{gp}" for gp in GP_IDS])

    def to_text(self) -> str:
        return self.table().to_string() + "\n"

    def to_dict(self) -> Dict:
        return {
            "trials": self.trials,
            "stages": {
                stage.value: {
                    f"GP{gp}": self.reports[(stage, gp)].to_dict() for gp in GP_IDS
                }
                for stage in Stage
            },
        }


def gp_summary(spec: RandomFrameworkSpec, trials: int) -> GpSummary:
    """Check every property on ``trials`` seeded random frameworks and their post-processed forms."""
    spec.validate()
    if trials < 0:
        raise ValueError(f"trials must be non-negative, got {trials}")
    reports = {(stage, gp): GpReport(gp, stage) for stage in Stage for gp in GP_IDS}
    for trial in range(trials):
        fw = generate_trial(spec, trial)
        for stage in Stage:
            staged_fw, s = staged(fw, stage)
            for gp in GP_IDS:
                reports[(stage, gp)].merge(check_gp(staged_fw, s, gp))
    summary = GpSummary(trials, reports)
    logger.info(
        "Checked %d trial(s): pre-stage violations %s, post-stage violations %s",
        trials, summary.violated(Stage.PRE), summary.violated(Stage.POST),
    )
    return summary


@dataclass(frozen=True)
class Counterexample:
    framework: Qbafc
    staged_framework: Qbafc
    strengths: StrengthMap
    witness: Witness
    trial: int


def _without_argument(fw: Qbafc, victim: str) -> Qbafc:
    keep = tuple(a for a in fw.arguments if a.id != victim)
    return Qbafc(
        keep,
        frozenset(e for e in fw.attacks if victim not in e),
        frozenset(e for e in fw.supports if victim not in e),
        {a.id: fw.base_score[a.id] for a in keep},
        {a.id: fw.supported_class[a.id] for a in keep},
        fw.variant,
    )


def _without_edge(fw: Qbafc, edge) -> Qbafc:
    return Qbafc(
        fw.arguments, fw.attacks - {edge}, fw.supports - {edge},
        fw.base_score, fw.supported_class, fw.variant,
    )


def _prune_candidates(fw: Qbafc):
    for a in fw.ids:
        if a != DEFAULT_ID:
            yield _without_argument(fw, a)
    for src, dst, _ in fw.edges():
        yield _without_edge(fw, (src, dst))


def _still_violates(fw: Qbafc, gp: int, stage: Stage) -> Optional[Witness]:
    if structural_violations(fw) or not in_construction_image(fw):
        return None
    staged_fw, s = staged(fw, stage)
    return first_violation(staged_fw, s, gp)


def prune(fw: Qbafc, gp: int, stage: Stage) -> Qbafc:
    """Drop arguments and relations while the framework stays well formed and still violates ``gp``."""
    changed = True
    while changed:
        changed = False
        for candidate in _prune_candidates(fw):
            if _still_violates(candidate, gp, stage) is not None:
                fw = candidate
                changed = True
                break
    return fw


def counterexample_search(gp: int, stage: Stage, spec: RandomFrameworkSpec, budget: int) -> Optional[Counterexample]:
    """Randomized search for a framework violating ``gp`` at ``stage``, pruned to a minimal one."""
    spec.validate()
    stage = Stage(stage)
    if gp not in GP_IDS:
        raise ValueError(f"unknown group property GP{gp}; expected 1..11")
    if budget <= 0:
        raise ValueError(f"budget must be positive, got {budget}")
    for trial in range(budget):
        fw = generate_trial(spec, trial)
        staged_fw, s = staged(fw, stage)
        if first_violation(staged_fw, s, gp) is None:
            continue
        small = prune(fw, gp, stage)
        staged_fw, s = staged(small, stage)
        witness = first_violation(staged_fw, s, gp)
        logger.info(
            "GP%d %s-stage counterexample at trial %d, pruned to %d argument(s)",
            gp, stage.value, trial, len(small.arguments),
        )
        return Counterexample(small, staged_fw, s, witness, trial)
    logger.info("No GP%d %s-stage counterexample within %d trial(s)", gp, stage.value, budget)
    return None
