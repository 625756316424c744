import logging
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np

from corpus.types import Dataset
from patterns.pattern import Pattern, check_unique
from utils.helpers import DEFAULT_SEED, ConfigError

from .model import PlrModel, feature_matrix, predict

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TrainingConfig:
    learning_rate: float = 0.5
    l2_lambda: float = 0.001
    epochs: int = 500
    seed: int = DEFAULT_SEED
    log_every: int = 100

    def validate(self) -> None:
        if not self.learning_rate > 0:
            raise ConfigError(f"learning_rate must be positive, got {self.learning_rate}")
        if self.l2_lambda < 0:
            raise ConfigError(f"l2_lambda must be non-negative, got {self.l2_lambda}")
        if self.epochs < 0:
            raise ConfigError(f"epochs must be non-negative, got {self.epochs}")


@dataclass(frozen=True)
class TrainingResult:
    model: PlrModel
    loss: float
    history: List[float] = field(default_factory=list)


def loss_and_gradient(
    w: np.ndarray, b: float, X: np.ndarray, y: np.ndarray, l2_lambda: float
) -> Tuple[float, np.ndarray, float]:
    """Mean binary cross-entropy plus (l2/2)*||w||^2; the bias is not regularized."""
    n = X.shape[0]
    z = X @ w + b
    # log(1 + e^z) - y*z is the cross-entropy of sigmoid(z) written in logits
    loss = float(np.mean(np.logaddexp(0.0, z) - y * z)) + 0.5 * l2_lambda * float(w @ w)
    residual = _stable_sigmoid(z) - y
    grad_w = X.T @ residual / n + l2_lambda * w
    grad_b = float(np.sum(residual) / n)
    return loss, grad_w, grad_b


def _stable_sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z, dtype=np.float64)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def train(data: Dataset, patterns: Sequence[Pattern], hyper: TrainingConfig) -> TrainingResult:
    """Full-batch gradient descent from zero weights; deterministic for fixed inputs."""
    hyper.validate()
    data.require_both_classes()
    patterns = tuple(patterns)
    check_unique(patterns)

    scaffold = PlrModel(patterns, tuple(0.0 for _ in patterns), 0.0)
    docs = list(data)
    X = np.asarray(feature_matrix(scaffold, docs), dtype=np.float64).reshape(len(docs), len(patterns))
    y = np.asarray([d.label for d in docs], dtype=np.float64)

    w = np.zeros(len(patterns), dtype=np.float64)
    b = 0.0
    history: List[float] = []
    loss, grad_w, grad_b = loss_and_gradient(w, b, X, y, hyper.l2_lambda)
    for epoch in range(1, hyper.epochs + 1):
        w = w - hyper.learning_rate * grad_w
        b = b - hyper.learning_rate * grad_b
        loss, grad_w, grad_b = loss_and_gradient(w, b, X, y, hyper.l2_lambda)
        history.append(loss)
        if hyper.log_every and epoch % hyper.log_every == 0:
            logger.info("epoch %d/%d loss %.6f", epoch, hyper.epochs, loss)

    meta = {
        "learning_rate": hyper.learning_rate,
        "l2_lambda": hyper.l2_lambda,
        "epochs": hyper.epochs,
        "seed": hyper.seed,
        "documents": len(docs),
        "final_loss": loss,
    }
    model = PlrModel(patterns, tuple(float(v) for v in w), float(b), meta)
    logger.info("Trained model on %d document(s), final loss %.6f", len(docs), loss)
    return TrainingResult(model, loss, history)


def training_accuracy(model: PlrModel, data: Dataset) -> float:
    docs = list(data)
    if not docs:
        return 0.0
    correct = sum(1 for d in docs if predict(model, d)[0] == d.label)
    return correct / len(docs)
