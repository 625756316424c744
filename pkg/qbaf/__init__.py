from .framework import (
    DEFAULT_ID,
    Argument,
    Qbafc,
    Variant,
    argument_id,
    build_qbafc,
    structural_violations,
    validate,
)
from .semantics import StrengthMap, compute_strengths, inferred_prediction, postprocess
from .export import framework_from_dict, framework_to_dict, load_framework, save_framework, to_dot

__all__ = [
    "DEFAULT_ID",
    "Argument",
    "Qbafc",
    "Variant",
    "argument_id",
    "build_qbafc",
    "structural_violations",
    "validate",
    "StrengthMap",
    "compute_strengths",
    "inferred_prediction",
    "postprocess",
    "framework_from_dict",
    "framework_to_dict",
    "load_framework",
    "save_framework",
    "to_dot",
]
