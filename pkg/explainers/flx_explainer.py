from corpus.types import Document
from plr.flx import flx_for_class
from plr.model import extract_features, predict_proba, predicted_class
from qbaf.framework import argument_id

from .base_explainer import BaseExplainer, build_item
from .explanation import Explanation, Method, Polarity


class FlxExplainer(BaseExplainer):
    """Flat explanation: the k matched patterns with the largest signed contribution."""

    def __init__(self, model, k: int = 5, **kwargs):
        super().__init__("flx_explainer", model, **kwargs)
        if k < 0:
            raise ValueError(f"k must be non-negative, got {k}")
        self.k = k

    def explain(self, doc: Document) -> Explanation:
        f = extract_features(self.model, doc)
        p_one = predict_proba(self.model, f)
        y_hat = predicted_class(p_one)
        items = []
        for entry in flx_for_class(self.model, doc, y_hat, self.k, f):
            weight = self.model.weights[entry.pattern_index]
            items.append(
                build_item(
                    doc,
                    argument_id(entry.pattern_index),
                    self.model.patterns[entry.pattern_index],
                    abs(entry.contribution),
                    abs(weight),
                    1 if weight >= 0 else 0,
                    Polarity.SUPPORTER if entry.contribution > 0 else Polarity.ATTACKER,
                )
            )
        return Explanation(
            doc.id,
            tuple(doc.surfaces),
            y_hat,
            p_one if y_hat == 1 else 1.0 - p_one,
            Method.FLX,
            None,
            tuple(items),
            samples=self.samples_for(items),
        )
