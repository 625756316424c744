from .group_properties import (
    GP_IDS,
    GpReport,
    Stage,
    Verdict,
    Witness,
    check_all,
    check_gp,
    set_leq,
    set_less,
    witness_violates,
)
from .random_frameworks import RandomFrameworkSpec, generate_framework, generate_trial, in_construction_image
from .search import Counterexample, GpSummary, counterexample_search, gp_summary, prune, staged

__all__ = [
    "GP_IDS",
    "GpReport",
    "Stage",
    "Verdict",
    "Witness",
    "check_all",
    "check_gp",
    "set_leq",
    "set_less",
    "witness_violates",
    "RandomFrameworkSpec",
    "generate_framework",
    "generate_trial",
    "in_construction_image",
    "Counterexample",
    "GpSummary",
    "counterexample_search",
    "gp_summary",
    "prune",
    "staged",
]
