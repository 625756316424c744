"""How many supporters an argument needs to keep a positive strength against all its attackers."""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Optional

import pandas as pd

from qbaf.framework import DEFAULT_ID, Qbafc
from qbaf.semantics import StrengthMap

logger = logging.getLogger(__name__)


class TargetKind(str, Enum):
    DEFAULT = "default"
    INTERMEDIATE = "intermediate"


class FlipFilter(str, Enum):
    ALL = "all"
    FLIPPED = "flipped"
    NOT_FLIPPED = "not_flipped"


@dataclass(frozen=True)
class SufficiencyResult:
    argument: str
    min_k: Optional[int]

    @property
    def reachable(self) -> bool:
        return self.min_k is not None


@dataclass(frozen=True)
class SufficiencyCase:
    """A pre-stage framework with its post-processed counterpart and strengths."""

    pre: Qbafc
    post: Qbafc
    strengths: StrengthMap

    def flipped(self, arg_id: str) -> bool:
        return self.pre.supported_class[arg_id] != self.post.supported_class[arg_id]


def sufficiency_min_k(target: str, fw: Qbafc, s: StrengthMap) -> SufficiencyResult:
    """Smallest number of supporters that, with every attacker counted, leaves a positive strength.

    Supporter contributions are non-negative after post-processing, so taking
    them largest first is optimal. ``min_k`` is None when even all of them fall short.
    """
    if target not in fw:
        raise KeyError(f"argument {target!r} is not in the framework")
    value = fw.base_score[target] - sum(s[b] / fw.out_degree(b) for b in sorted(fw.attackers_of(target)))
    if value > 0:
        return SufficiencyResult(target, 0)
    contributions = sorted((s[b] / fw.out_degree(b) for b in fw.supporters_of(target)), reverse=True)
    for k, share in enumerate(contributions, start=1):
        value = value + share
        if value > 0:
            return SufficiencyResult(target, k)
    return SufficiencyResult(target, None)


def _targets(case: SufficiencyCase, kind: TargetKind) -> List[str]:
    if kind is TargetKind.DEFAULT:
        return [DEFAULT_ID]
    fw = case.post
    return [a for a in fw.ids if a != DEFAULT_ID and (fw.attackers_of(a) or fw.supporters_of(a))]


def _keep(case: SufficiencyCase, arg_id: str, flip_filter: FlipFilter) -> bool:
    if flip_filter is FlipFilter.ALL:
        return True
    return case.flipped(arg_id) == (flip_filter is FlipFilter.FLIPPED)


def sufficiency_curve(
    cases: Iterable[SufficiencyCase],
    target_kind: TargetKind = TargetKind.DEFAULT,
    flip_filter: FlipFilter = FlipFilter.ALL,
) -> pd.DataFrame:
    """Percentage of qualifying arguments whose minimal k is at most k, for k = 0..max supporters.

    The denominator is the filtered set of arguments.
    """
    target_kind, flip_filter = TargetKind(target_kind), FlipFilter(flip_filter)
    results: List[Optional[int]] = []
    max_k = 0
    for case in cases:
        for arg_id in _targets(case, target_kind):
            if not _keep(case, arg_id, flip_filter):
                continue
            results.append(sufficiency_min_k(arg_id, case.post, case.strengths).min_k)
            max_k = max(max_k, len(case.post.supporters_of(arg_id)))
    if not results:
        return pd.DataFrame(columns=["k", "percentage"])
    unreachable = sum(1 for r in results if r is None)
    if unreachable:
        logger.warning("%d of %d target(s) are never sufficiently supported", unreachable, len(results))
    rows = [
        {"k": k, "percentage": 100.0 * sum(1 for r in results if r is not None and r <= k) / len(results)}
        for k in range(max_k + 1)
    ]
    return pd.DataFrame(rows, columns=["k", "percentage"])
