"""Logistic-regression strength semantics, post-processing and inferred prediction."""
import logging
from numbers import Real
from typing import Dict, Tuple

import networkx as nx

from plr.model import predicted_class, sigmoid
from utils.helpers import FrameworkCycleError

from .framework import DEFAULT_ID, Qbafc

logger = logging.getLogger(__name__)

StrengthMap = Dict[str, Real]


def evaluation_order(fw: Qbafc):
    """Topological order of the framework graph, ties broken by argument id."""
    try:
        return list(nx.lexicographical_topological_sort(fw.graph()))
    except nx.NetworkXUnfeasible as e:
        raise FrameworkCycleError("framework relations contain a cycle") from e


def compute_strengths(fw: Qbafc) -> StrengthMap:
    """sigma(a) = tau(a) + sum of supporters' sigma(b)/nu(b) - sum of attackers' sigma(b)/nu(b).

    nu(b) is b's out-degree in ``fw``. Arithmetic follows the type of the base
    scores, so Fraction inputs give exact strengths.
    """
    strengths: StrengthMap = {}
    for a in evaluation_order(fw):
        value = fw.base_score[a]
        for b in sorted(fw.supporters_of(a) | fw.attackers_of(a)):
            share = strengths[b] / fw.out_degree(b)
            value = value + share if b in fw.supporters_of(a) else value - share
        strengths[a] = value
    return strengths


def postprocess(fw: Qbafc, s: StrengthMap) -> Tuple[Qbafc, StrengthMap]:
    """Flip arguments with negative strength to the other class and relabel relations.

    Relations leaving an argument of strength exactly zero are dropped. The
    returned strengths are recomputed on the new framework and equal |s|.
    """
    if fw.post_processed:
        raise ValueError("framework is already post-processed")
    base_score = dict(fw.base_score)
    supported_class = dict(fw.supported_class)
    for a in fw.ids:
        if s[a] < 0:
            base_score[a] = -fw.base_score[a]
            supported_class[a] = 1 - fw.supported_class[a]

    attacks, supports = set(), set()
    for src, dst in fw.attacks | fw.supports:
        if s[src] == 0:
            continue
        if supported_class[src] == supported_class[dst]:
            supports.add((src, dst))
        else:
            attacks.add((src, dst))

    flipped = Qbafc(
        fw.arguments, frozenset(attacks), frozenset(supports),
        base_score, supported_class, fw.variant, post_processed=True,
    )
    return flipped, compute_strengths(flipped)


def inferred_prediction(fw: Qbafc, s: StrengthMap) -> Tuple[int, float]:
    """(predicted class, probability of that class) read off the default argument."""
    sigma = s[DEFAULT_ID]
    c = fw.supported_class[DEFAULT_ID]
    p_c = sigmoid(float(sigma))
    p_one = p_c if c == 1 else 1.0 - p_c
    if sigma == 0:
        return 1, 0.5
    if fw.post_processed:
        return c, p_c
    y_hat = c if sigma > 0 else 1 - c
    return y_hat, p_one if y_hat == 1 else 1.0 - p_one


def agrees_with_model(fw: Qbafc, s: StrengthMap, probability_one: float, tolerance: float = 1e-9) -> bool:
    y_hat, p = inferred_prediction(fw, s)
    expected = probability_one if y_hat == 1 else 1.0 - probability_one
    return y_hat == predicted_class(probability_one) and abs(p - expected) <= tolerance
