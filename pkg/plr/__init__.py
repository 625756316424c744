from .model import (
    PlrModel,
    extract_features,
    load_model,
    predict,
    predict_proba,
    predicted_class,
    save_model,
    sigmoid,
)
from .training import TrainingConfig, TrainingResult, train, training_accuracy
from .flx import FlxItem, flx, flx_for_class

__all__ = [
    "PlrModel",
    "extract_features",
    "load_model",
    "predict",
    "predict_proba",
    "predicted_class",
    "save_model",
    "sigmoid",
    "TrainingConfig",
    "TrainingResult",
    "train",
    "training_accuracy",
    "FlxItem",
    "flx",
    "flx_for_class",
]
