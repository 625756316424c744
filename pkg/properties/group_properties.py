"""Dialectical group properties GP1-GP11 checked on a framework and its strengths.

GP1-GP5 quantify over single arguments, GP6-GP11 over ordered pairs of distinct
arguments. Each property is an antecedent and a consequent; an instance whose
antecedent is false counts as vacuous.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Tuple

from qbaf.framework import Qbafc
from qbaf.semantics import StrengthMap

logger = logging.getLogger(__name__)

GP_IDS = tuple(range(1, 12))
MAX_WITNESSES = 5


class Stage(str, Enum):
    PRE = "pre"
    POST = "post"

    @classmethod
    def of(cls, fw: Qbafc) -> "Stage":
        return cls.POST if fw.post_processed else cls.PRE


class Verdict(str, Enum):
    HOLDS = "holds"
    VIOLATED = "violated"
    VACUOUS = "vacuous"


def set_leq(P: Iterable[str], Q: Iterable[str], s: StrengthMap) -> bool:
    """Whether an injection f: P -> Q exists with s[a] <= s[f(a)] for every a in P."""
    left = sorted((s[a] for a in P), reverse=True)
    right = sorted((s[b] for b in Q), reverse=True)
    if len(left) > len(right):
        return False
    return all(x <= y for x, y in zip(left, right))


def set_less(P: Iterable[str], Q: Iterable[str], s: StrengthMap) -> bool:
    P, Q = frozenset(P), frozenset(Q)
    return set_leq(P, Q, s) and not set_leq(Q, P, s)


@dataclass(frozen=True)
class _View:
    """Everything a property reads about one argument."""

    id: str
    attackers: FrozenSet[str]
    supporters: FrozenSet[str]
    tau: object
    sigma: object


def _view(fw: Qbafc, s: StrengthMap, a: str) -> _View:
    return _View(a, fw.attackers_of(a), fw.supporters_of(a), fw.base_score[a], s[a])


Single = Tuple[Callable[[_View], bool], Callable[[_View], bool]]
Pair = Tuple[Callable[[_View, _View, StrengthMap], bool], Callable[[_View, _View], bool]]

_SINGLE: Dict[int, Single] = {
    1: (lambda a: not a.attackers and not a.supporters, lambda a: a.sigma == a.tau),
    2: (lambda a: bool(a.attackers) and not a.supporters, lambda a: a.sigma < a.tau),
    3: (lambda a: not a.attackers and bool(a.supporters), lambda a: a.sigma > a.tau),
    4: (lambda a: a.sigma < a.tau, lambda a: bool(a.attackers)),
    5: (lambda a: a.sigma > a.tau, lambda a: bool(a.supporters)),
}

_PAIR: Dict[int, Pair] = {
    6: (
        lambda a, b, s: a.attackers == b.attackers and a.supporters == b.supporters and a.tau == b.tau,
        lambda a, b: a.sigma == b.sigma,
    ),
    7: (
        lambda a, b, s: a.attackers < b.attackers and a.supporters == b.supporters and a.tau == b.tau,
        lambda a, b: a.sigma > b.sigma,
    ),
    8: (
        lambda a, b, s: a.attackers == b.attackers and a.supporters < b.supporters and a.tau == b.tau,
        lambda a, b: a.sigma < b.sigma,
    ),
    9: (
        lambda a, b, s: a.attackers == b.attackers and a.supporters == b.supporters and a.tau < b.tau,
        lambda a, b: a.sigma < b.sigma,
    ),
    10: (
        lambda a, b, s: a.supporters == b.supporters and a.tau == b.tau
        and set_less(a.attackers, b.attackers, s),
        lambda a, b: a.sigma > b.sigma,
    ),
    11: (
        lambda a, b, s: a.attackers == b.attackers and a.tau == b.tau
        and set_less(a.supporters, b.supporters, s),
        lambda a, b: a.sigma < b.sigma,
    ),
}


@dataclass(frozen=True)
class Witness:
    gp: int
    stage: Stage
    arguments: Tuple[str, ...]
    tau: Tuple[str, ...]
    sigma: Tuple[str, ...]
    attackers: Tuple[Tuple[str, ...], ...]
    supporters: Tuple[Tuple[str, ...], ...]

    def to_dict(self) -> Dict:
        return {
            "gp": self.gp,
            "stage": self.stage.value,
            "arguments": list(self.arguments),
            "tau": list(self.tau),
            "sigma": list(self.sigma),
            "attackers": [list(x) for x in self.attackers],
            "supporters": [list(x) for x in self.supporters],
        }


def _witness(gp: int, stage: Stage, views: Tuple[_View, ...]) -> Witness:
    return Witness(
        gp,
        stage,
        tuple(v.id for v in views),
        tuple(str(v.tau) for v in views),
        tuple(str(v.sigma) for v in views),
        tuple(tuple(sorted(v.attackers)) for v in views),
        tuple(tuple(sorted(v.supporters)) for v in views),
    )


@dataclass
class GpReport:
    gp: int
    stage: Stage
    holds: int = 0
    violated: int = 0
    vacuous: int = 0
    witnesses: List[Witness] = field(default_factory=list)

    @property
    def verdict(self) -> Verdict:
        if self.violated:
            return Verdict.VIOLATED
        return Verdict.HOLDS if self.holds else Verdict.VACUOUS

    def merge(self, other: "GpReport") -> "GpReport":
        if (other.gp, other.stage) != (self.gp, self.stage):
            raise ValueError("cannot merge reports of different properties or stages")
        self.holds += other.holds
        self.violated += other.violated
        self.vacuous += other.vacuous
        room = MAX_WITNESSES - len(self.witnesses)
        self.witnesses.extend(other.witnesses[:max(room, 0)])
        return self

    def to_dict(self) -> Dict:
        return {
            "gp": self.gp,
            "stage": self.stage.value,
            "verdict": self.verdict.value,
            "holds": self.holds,
            "violated": self.violated,
            "vacuous": self.vacuous,
            "witnesses": [w.to_dict() for w in self.witnesses],
        }


def _require_gp(gp: int) -> None:
    if gp not in GP_IDS:
        raise ValueError(f"unknown group property GP{gp}; expected 1..11")


def _instances(fw: Qbafc, s: StrengthMap, gp: int):
    views = [_view(fw, s, a) for a in fw.ids]
    if gp in _SINGLE:
        for v in views:
            yield (v,)
    else:
        for a in views:
            for b in views:
                if a.id != b.id:
                    yield (a, b)


def _evaluate(gp: int, views: Tuple[_View, ...], s: StrengthMap) -> Verdict:
    if gp in _SINGLE:
        antecedent, consequent = _SINGLE[gp]
        if not antecedent(views[0]):
            return Verdict.VACUOUS
        return Verdict.HOLDS if consequent(views[0]) else Verdict.VIOLATED
    antecedent, consequent = _PAIR[gp]
    a, b = views
    if not antecedent(a, b, s):
        return Verdict.VACUOUS
    return Verdict.HOLDS if consequent(a, b) else Verdict.VIOLATED


def check_gp(fw: Qbafc, s: StrengthMap, gp: int, max_witnesses: int = MAX_WITNESSES) -> GpReport:
    """Evaluate one property on every argument (GP1-5) or ordered pair (GP6-11).

    The base score read is the framework's own, so post-processed frameworks are
    checked against their possibly negative flipped base scores.
    """
    _require_gp(gp)
    report = GpReport(gp, Stage.of(fw))
    for views in _instances(fw, s, gp):
        verdict = _evaluate(gp, views, s)
        if verdict is Verdict.HOLDS:
            report.holds += 1
        elif verdict is Verdict.VACUOUS:
            report.vacuous += 1
        else:
            report.violated += 1
            if len(report.witnesses) < max_witnesses:
                report.witnesses.append(_witness(gp, report.stage, views))
    return report


def check_all(fw: Qbafc, s: StrengthMap) -> Dict[int, GpReport]:
    return {gp: check_gp(fw, s, gp) for gp in GP_IDS}


def witness_violates(fw: Qbafc, s: StrengthMap, witness: Witness) -> bool:
    """Re-evaluate a witness against a framework; True when it is still a violation."""
    _require_gp(witness.gp)
    if any(a not in fw for a in witness.arguments):
        return False
    views = tuple(_view(fw, s, a) for a in witness.arguments)
    return _evaluate(witness.gp, views, s) is Verdict.VIOLATED


def first_violation(fw: Qbafc, s: StrengthMap, gp: int) -> Optional[Witness]:
    report = check_gp(fw, s, gp, max_witnesses=1)
    return report.witnesses[0] if report.witnesses else None
