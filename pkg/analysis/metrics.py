"""Binary classification metrics: accuracy, per-class and micro/macro precision, recall and F1."""
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np
import pandas as pd

logger = logging.getLogger(__name__)

CLASSES = (0, 1)


@dataclass(frozen=True)
class ClassScores:
    precision: float
    recall: float
    f1: float
    support: int
    tp: int
    fp: int
    fn: int


@dataclass(frozen=True)
class Metrics:
    accuracy: float
    per_class: Dict[int, ClassScores]
    micro_precision: float
    micro_recall: float
    micro_f1: float
    macro_precision: float
    macro_recall: float
    macro_f1: float
    average_class_f1: float
    count: int
    flags: Tuple[str, ...] = field(default_factory=tuple)

    def to_frame(self) -> pd.DataFrame:
        rows = {
            f"class {c}": [s.precision, s.recall, s.f1, s.support] for c, s in sorted(self.per_class.items())
        }
        rows["micro"] = [self.micro_precision, self.micro_recall, self.micro_f1, self.count]
        rows["macro"] = [self.macro_precision, self.macro_recall, self.macro_f1, self.count]
        return pd.DataFrame.from_dict(rows, orient="index", columns=["precision", "recall", "f1", "support"])

    def to_text(self) -> str:
        lines = [
            f"accuracy: {self.accuracy:.4f} ({self.count} document(s))",
            f"average class F1: {self.average_class_f1:.4f}",
            self.to_frame().to_string(float_format=lambda v: f"{v:.4f}"),
        ]
        if self.flags:
            lines.append("zero denominators: " + ", ".join(self.flags))
        return "\n".join(lines) + "\n"

    def to_dict(self) -> Dict:
        return {
            "accuracy": self.accuracy,
            "count": self.count,
            "per_class": {
                str(c): {
                    "precision": s.precision, "recall": s.recall, "f1": s.f1,
                    "support": s.support, "tp": s.tp, "fp": s.fp, "fn": s.fn,
                }
                for c, s in sorted(self.per_class.items())
            },
            "micro": {"precision": self.micro_precision, "recall": self.micro_recall, "f1": self.micro_f1},
            "macro": {"precision": self.macro_precision, "recall": self.macro_recall, "f1": self.macro_f1},
            "average_class_f1": self.average_class_f1,
            "flags": list(self.flags),
        }


def _ratio(num: float, den: float, name: str, flags: List[str]) -> float:
    if den == 0:
        flags.append(name)
        return 0.0
    return num / den


def _harmonic(p: float, r: float, name: str, flags: List[str]) -> float:
    return _ratio(2 * p * r, p + r, name, flags)


def metrics(pairs: Iterable[Tuple[int, int]]) -> Metrics:
    """Scores for (true label, predicted label) pairs; zero denominators give 0 and a flag."""
    pairs = list(pairs)
    if not pairs:
        raise ValueError("metrics need at least one (true, predicted) pair")
    for y, y_hat in pairs:
        if y not in CLASSES or y_hat not in CLASSES:
            raise ValueError(f"labels must be 0 or 1, got ({y!r}, {y_hat!r})")

    flags: List[str] = []
    per_class = {}
    for c in CLASSES:
        tp = sum(1 for y, y_hat in pairs if y == c and y_hat == c)
        fp = sum(1 for y, y_hat in pairs if y != c and y_hat == c)
        fn = sum(1 for y, y_hat in pairs if y == c and y_hat != c)
        p = _ratio(tp, tp + fp, f"precision_{c}", flags)
        r = _ratio(tp, tp + fn, f"recall_{c}", flags)
        per_class[c] = ClassScores(p, r, _harmonic(p, r, f"f1_{c}", flags), tp + fn, tp, fp, fn)

    tp = sum(s.tp for s in per_class.values())
    fp = sum(s.fp for s in per_class.values())
    fn = sum(s.fn for s in per_class.values())
    micro_p = _ratio(tp, tp + fp, "micro_precision", flags)
    micro_r = _ratio(tp, tp + fn, "micro_recall", flags)
    macro_p = sum(s.precision for s in per_class.values()) / len(CLASSES)
    macro_r = sum(s.recall for s in per_class.values()) / len(CLASSES)
    if flags:
        logger.warning("Zero denominators in metrics: %s", ", ".join(flags))
    return Metrics(
        accuracy=sum(1 for y, y_hat in pairs if y == y_hat) / len(pairs),
        per_class=per_class,
        micro_precision=micro_p,
        micro_recall=micro_r,
        micro_f1=_harmonic(micro_p, micro_r, "micro_f1", flags),
        macro_precision=macro_p,
        macro_recall=macro_r,
        macro_f1=_harmonic(macro_p, macro_r, "macro_f1", flags),
        average_class_f1=sum(s.f1 for s in per_class.values()) / len(CLASSES),
        count=len(pairs),
        flags=tuple(flags),
    )


def pearson(xs: Sequence[float], ys: Sequence[float]) -> float:
    if len(xs) != len(ys):
        raise ValueError(f"pearson needs equal lengths, got {len(xs)} and {len(ys)}")
    if len(xs) < 2:
        raise ValueError("pearson needs at least two points")
    x = np.asarray(xs, dtype=np.float64)
    y = np.asarray(ys, dtype=np.float64)
    if np.std(x) == 0 or np.std(y) == 0:
        raise ValueError("pearson is undefined when either side has zero variance")
    return float(np.clip(np.corrcoef(x, y)[0, 1], -1.0, 1.0))
