"""Argumentative explanations read off a post-processed framework.

Shallow explanations list the default argument's strongest supporters and
attackers; deep explanations unfold each of them into the tree of its own
supporters and attackers.
"""
import logging
from typing import List, Tuple

from corpus.types import Document
from plr.model import PlrModel
from qbaf.framework import DEFAULT_ID, Qbafc, Variant, build_qbafc
from qbaf.semantics import StrengthMap, compute_strengths, inferred_prediction, postprocess

from .base_explainer import BaseExplainer, build_item
from .explanation import DeepNode, Explanation, ExplanationItem, Method, Polarity
from .flx_explainer import FlxExplainer

logger = logging.getLogger(__name__)


def _require_post_processed(fw: Qbafc) -> None:
    if not fw.post_processed:
        raise ValueError("argumentative explanations need a post-processed framework")


def _item(fw: Qbafc, s: StrengthMap, doc: Document, arg_id: str, polarity: Polarity) -> ExplanationItem:
    argument = fw.argument(arg_id)
    return build_item(
        doc, arg_id, argument.pattern, s[arg_id], fw.base_score[arg_id], fw.supported_class[arg_id], polarity,
    )


def _ranked(ids, s: StrengthMap) -> List[str]:
    return sorted(ids, key=lambda a: (-s[a], a))


def ranked_neighbours(fw: Qbafc, s: StrengthMap, target: str) -> Tuple[List[str], List[str]]:
    """(supporters, attackers) of ``target``, each strongest first, ties by id."""
    return _ranked(fw.supporters_of(target), s), _ranked(fw.attackers_of(target), s)


def shallow_axplr(
    fw: Qbafc, s: StrengthMap, doc: Document, k: int, include_attackers: bool = True
) -> List[ExplanationItem]:
    """Up to k supporters of the default argument, then up to k attackers."""
    _require_post_processed(fw)
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    supporters, attackers = ranked_neighbours(fw, s, DEFAULT_ID)
    items = [_item(fw, s, doc, a, Polarity.SUPPORTER) for a in supporters[:k]]
    if include_attackers:
        items += [_item(fw, s, doc, a, Polarity.ATTACKER) for a in attackers[:k]]
    return items


def _unfold(fw: Qbafc, s: StrengthMap, doc: Document, item: ExplanationItem) -> DeepNode:
    supporters, attackers = ranked_neighbours(fw, s, item.argument_id)
    children = [_unfold(fw, s, doc, _item(fw, s, doc, a, Polarity.SUPPORTER)) for a in supporters]
    children += [_unfold(fw, s, doc, _item(fw, s, doc, a, Polarity.ATTACKER)) for a in attackers]
    return DeepNode(item, tuple(children))


def deep_axplr(fw: Qbafc, s: StrengthMap, doc: Document, k: int) -> List[DeepNode]:
    """Shallow items as roots, each unfolded down to arguments without relations.

    An argument related to several parents appears once under each of them.
    """
    return [_unfold(fw, s, doc, item) for item in shallow_axplr(fw, s, doc, k)]


class AxplrExplainer(BaseExplainer):
    def __init__(
        self,
        model: PlrModel,
        method: Method = Method.SHALLOW,
        variant: Variant = Variant.BOTTOM_UP,
        k: int = 5,
        include_attackers: bool = True,
        **kwargs,
    ):
        super().__init__("axplr_explainer", model, **kwargs)
        self.method = Method(method)
        if self.method is Method.FLX:
            raise ValueError("flat explanations are produced by FlxExplainer")
        if k < 0:
            raise ValueError(f"k must be non-negative, got {k}")
        self.variant = Variant(variant)
        self.k = k
        self.include_attackers = include_attackers

    def frameworks(self, doc: Document):
        """(pre-stage framework, its strengths, post-processed framework, its strengths)."""
        fw = build_qbafc(self.model, doc, self.variant)
        s = compute_strengths(fw)
        fw_post, s_post = postprocess(fw, s)
        return fw, s, fw_post, s_post

    def explain(self, doc: Document) -> Explanation:
        _, _, fw, s = self.frameworks(doc)
        y_hat, probability = inferred_prediction(fw, s)
        deep: Tuple[DeepNode, ...] = ()
        if self.method is Method.DEEP:
            deep = tuple(deep_axplr(fw, s, doc, self.k))
            items = [node.item for node in deep]
        else:
            items = shallow_axplr(fw, s, doc, self.k, self.include_attackers)
        logger.debug("Explained %s with %d top-level item(s)", doc.id, len(items))
        return Explanation(
            doc.id,
            tuple(doc.surfaces),
            y_hat,
            probability,
            self.method,
            self.variant.value,
            tuple(items),
            deep,
            samples=self.samples_for(items),
        )


def make_explainer(model: PlrModel, method, variant=Variant.BOTTOM_UP, k: int = 5, **kwargs) -> BaseExplainer:
    method = Method(method)
    if method is Method.FLX:
        return FlxExplainer(model, k, **kwargs)
    return AxplrExplainer(model, method, variant, k, **kwargs)
