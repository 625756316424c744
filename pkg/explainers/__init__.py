from .explanation import (
    DeepNode,
    Explanation,
    ExplanationItem,
    Method,
    Polarity,
    explanation_from_dict,
    explanation_to_dict,
)
from .base_explainer import BaseExplainer, build_item
from .flx_explainer import FlxExplainer
from .axplr import AxplrExplainer, deep_axplr, make_explainer, shallow_axplr
from .scoring import adjusted_base_score, adjusted_score, token_highlights
from .rendering import FORMATS, render

__all__ = [
    "DeepNode",
    "Explanation",
    "ExplanationItem",
    "Method",
    "Polarity",
    "explanation_from_dict",
    "explanation_to_dict",
    "BaseExplainer",
    "build_item",
    "FlxExplainer",
    "AxplrExplainer",
    "deep_axplr",
    "make_explainer",
    "shallow_axplr",
    "adjusted_base_score",
    "adjusted_score",
    "token_highlights",
    "FORMATS",
    "render",
]
