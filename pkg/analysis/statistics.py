import logging
from dataclasses import asdict, dataclass
from enum import Enum
from typing import Dict, Iterable, Tuple

import pandas as pd

from qbaf.framework import DEFAULT_ID, Qbafc

logger = logging.getLogger(__name__)

MEASURES = {
    "arguments": "|A|",
    "positive_arguments": "|A+|",
    "negative_arguments": "|A-|",
    "relations": "|R|",
    "relations_without_default": "|R\\δ|",
    "attacks": "|R-|",
    "supports": "|R+|",
}


class ConfusionCell(str, Enum):
    TP = "TP"
    TN = "TN"
    FP = "FP"
    FN = "FN"

    @classmethod
    def of(cls, true_label: int, predicted: int) -> "ConfusionCell":
        if predicted == 1:
            return cls.TP if true_label == 1 else cls.FP
        return cls.TN if true_label == 0 else cls.FN


GROUPS = ("All",) + tuple(c.value for c in ConfusionCell)


@dataclass(frozen=True)
class FrameworkStats:
    arguments: int
    positive_arguments: int
    negative_arguments: int
    relations: int
    relations_without_default: int
    attacks: int
    supports: int

    def as_dict(self) -> Dict[str, int]:
        return asdict(self)


def framework_stats(fw: Qbafc) -> FrameworkStats:
    positive = sum(1 for a in fw.ids if fw.supported_class[a] == 1)
    edges = fw.attacks | fw.supports
    return FrameworkStats(
        arguments=len(fw.ids),
        positive_arguments=positive,
        negative_arguments=len(fw.ids) - positive,
        relations=len(edges),
        relations_without_default=sum(1 for _, dst in edges if dst != DEFAULT_ID),
        attacks=len(fw.attacks),
        supports=len(fw.supports),
    )


def aggregate_stats(records: Iterable[Tuple[FrameworkStats, int, int]]) -> pd.DataFrame:
    """Mean and sample SD of every measure, overall and per confusion cell.

    ``records`` holds (stats, true label, predicted label). Rows are measures,
    columns a (group, statistic) MultiIndex; groups without members are absent.
    """
    rows = [{**s.as_dict(), "cell": ConfusionCell.of(y, y_hat).value} for s, y, y_hat in records]
    if not rows:
        return pd.DataFrame()
    df = pd.DataFrame(rows)
    measures = list(MEASURES)
    columns = {}
    for group in GROUPS:
        members = df if group == "All" else df[df["cell"] == group]
        if members.empty:
            continue
        columns[(group, "mean")] = members[measures].mean()
        sd = members[measures].std(ddof=1) if len(members) > 1 else pd.Series(0.0, index=measures)
        columns[(group, "sd")] = sd
        columns[(group, "n")] = pd.Series(len(members), index=measures)
    table = pd.DataFrame(columns)
    table.columns = pd.MultiIndex.from_tuples(table.columns, names=["group", "statistic"])
    table.index = [MEASURES[m] for m in measures]
    return table


def format_stats_table(table: pd.DataFrame) -> pd.DataFrame:
    """'mean ± sd' strings per (measure, group)."""
    if table.empty:
        return pd.DataFrame()
    groups = [g for g in GROUPS if (g, "mean") in table.columns]
    return pd.DataFrame(
        {
            f"{g} (n={int(table[(g, 'n')].iloc[0])})": [
                f"{m:.2f} ± {s:.2f}" for m, s in zip(table[(g, "mean")], table[(g, "sd")])
            ]
            for g in groups
        },
        index=table.index,
    )
