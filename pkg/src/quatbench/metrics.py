"""Evaluation metrics and learning curves for binary classifiers.

Eight quantities summarize each model: precision, recall, F1-score, and
accuracy on the raw {0, 1} labels, plus four regression-style losses (MAE,
MSE, HMAE, HMSE) on a numeric encoding of the labels.  The H-variants divide
each residual by the true value and are undefined at zero, so class ids
{0, 1} are encoded as values {1, 2} before the loss computation.  Under that
encoding every per-sample absolute error is 0 or 1, which forces mse == mae
exactly and bounds hmae within [mae/2, mae].

The positive class is fixed to 1 in every report.  Zero-denominator
precision or recall is reported as 0 rather than NaN so reports stay total.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .data import Dataset, SplitDataset
from .errors import (
    ConfigError,
    EmptyInput,
    InvalidFraction,
    LengthMismatch,
    ZeroTrueValue,
)

METRIC_COLUMNS = (
    "Precision",
    "Recall",
    "F1-score",
    "Accuracy",
    "MSE",
    "MAE",
    "HMAE",
    "HMSE",
)


def _label_pair(predicted, truth):
    pred = np.asarray(predicted).ravel()
    true = np.asarray(truth).ravel()
    if pred.shape != true.shape:
        raise LengthMismatch(
            f"predicted has {pred.shape[0]} entries, truth has {true.shape[0]}"
        )
    if pred.size == 0:
        raise EmptyInput("at least one labelled sample is required")
    return pred, true


def confusion_counts(predicted, truth, positive: int = 1) -> tuple[int, int, int, int]:
    """Exact (TP, FP, FN, TN) counts for the given positive class."""
    pred, true = _label_pair(predicted, truth)
    pred_pos = pred == positive
    true_pos = true == positive
    tp = int(np.count_nonzero(pred_pos & true_pos))
    fp = int(np.count_nonzero(pred_pos & ~true_pos))
    fn = int(np.count_nonzero(~pred_pos & true_pos))
    tn = pred.size - tp - fp - fn
    return tp, fp, fn, tn


def precision_recall_f1(tp: int, fp: int, fn: int) -> tuple[float, float, float]:
    """Precision, recall, and their harmonic mean; 0 on a zero denominator."""
    if min(tp, fp, fn) < 0:
        raise ValueError("confusion counts must be non-negative")
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f1 = 2.0 * precision * recall / (precision + recall) if precision + recall else 0.0
    return precision, recall, f1


def accuracy(predicted, truth) -> float:
    """Fraction of exact label matches."""
    pred, true = _label_pair(predicted, truth)
    return int(np.count_nonzero(pred == true)) / pred.size


def loss_metrics(predicted_values, true_values) -> tuple[float, float, float, float]:
    """(mae, mse, hmae, hmse) between predicted and true numeric values.

    MAE and MSE average |error| and error**2; the H-variants average
    |1 - predicted/true| and its square, so every true value must be nonzero.
    """
    v = np.asarray(predicted_values, dtype=float).ravel()
    rv = np.asarray(true_values, dtype=float).ravel()
    if v.shape != rv.shape:
        raise LengthMismatch(f"{v.shape[0]} predictions vs {rv.shape[0]} true values")
    if v.size == 0:
        raise EmptyInput("at least one value pair is required")
    if np.any(rv == 0.0):
        raise ZeroTrueValue("H-metrics divide by the true value; 0 is not allowed")
    diff = v - rv
    rel = 1.0 - v / rv
    mae = float(np.mean(np.abs(diff)))
    mse = float(np.mean(diff * diff))
    hmae = float(np.mean(np.abs(rel)))
    hmse = float(np.mean(rel * rel))
    return mae, mse, hmae, hmse


@dataclass(frozen=True)
class MetricsReport:
    """The eight per-model evaluation quantities."""

    precision: float
    recall: float
    f1: float
    accuracy: float
    mse: float
    mae: float
    hmae: float
    hmse: float
    positive_class: int = 1
    n_test: int = 0

    def __post_init__(self):
        for name in ("precision", "recall", "f1", "accuracy"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")
        for name in ("mse", "mae", "hmae", "hmse"):
            if getattr(self, name) < 0.0:
                raise ValueError(f"{name} must be non-negative")

    def csv_cells(self) -> list[str]:
        """The eight metric values in table column order, as repr strings."""
        return [
            repr(float(getattr(self, name)))
            for name in ("precision", "recall", "f1", "accuracy",
                         "mse", "mae", "hmae", "hmse")
        ]

    def to_dict(self) -> dict:
        return {
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "accuracy": self.accuracy,
            "mse": self.mse,
            "mae": self.mae,
            "hmae": self.hmae,
            "hmse": self.hmse,
            "positive_class": self.positive_class,
            "n_test": self.n_test,
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "MetricsReport":
        return cls(**payload)


def encode_labels(labels) -> np.ndarray:
    """Map class ids {0, 1} to numeric values {1, 2} for the loss metrics."""
    return np.asarray(labels, dtype=float) + 1.0


def evaluate_model(model, features, labels) -> MetricsReport:
    """Score a fitted model on a test set, positive class 1."""
    true = np.asarray(labels)
    if true.size == 0:
        raise EmptyInput("cannot evaluate on an empty test set")
    pred = model.predict(features)
    tp, fp, fn, _ = confusion_counts(pred, true, positive=1)
    precision, recall, f1 = precision_recall_f1(tp, fp, fn)
    acc = accuracy(pred, true)
    mae, mse, hmae, hmse = loss_metrics(encode_labels(pred), encode_labels(true))
    return MetricsReport(
        precision=precision,
        recall=recall,
        f1=f1,
        accuracy=acc,
        mse=mse,
        mae=mae,
        hmae=hmae,
        hmse=hmse,
        positive_class=1,
        n_test=int(true.size),
    )


@dataclass(frozen=True)
class LearningCurvePoint:
    """Train/eval accuracy at one training-set size."""

    train_size: int
    train_score: float
    eval_score: float

    def __post_init__(self):
        if self.train_size < 1:
            raise ValueError("train_size must be positive")
        for name in ("train_score", "eval_score"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")


def _check_fractions(fractions: Sequence[float]) -> list[float]:
    fracs = [float(f) for f in fractions]
    if not fracs:
        raise InvalidFraction("at least one learning-curve fraction is required")
    for f in fracs:
        if not 0.0 < f <= 1.0:
            raise InvalidFraction(f"fractions must lie in (0, 1], got {f}")
    for a, b in zip(fracs, fracs[1:]):
        if b <= a:
            raise InvalidFraction("fractions must be strictly increasing")
    return fracs


def learning_curve(
    trainer: Callable,
    dataset: Dataset,
    split: SplitDataset,
    fractions: Sequence[float],
    eval_split: str = "test",
) -> list[LearningCurvePoint]:
    """Accuracy at growing training-set sizes.

    For each fraction f the trainer is fitted on the first ceil(f * n_train)
    training rows (the split order is already a seeded shuffle) and scored on
    that subset and on the requested evaluation split.  Fractions that round
    to a size already covered are dropped so sizes stay strictly increasing.
    """
    fracs = _check_fractions(fractions)
    if eval_split == "test":
        eval_idx = split.test
    elif eval_split == "validation":
        eval_idx = split.validation
    else:
        raise ConfigError(f"eval_split must be 'test' or 'validation', got {eval_split!r}")
    if len(eval_idx) == 0:
        raise EmptyInput(f"the {eval_split} split is empty")
    eval_X = dataset.features[eval_idx]
    eval_y = dataset.labels[eval_idx]

    points: list[LearningCurvePoint] = []
    n_train = len(split.train)
    for f in fracs:
        size = math.ceil(f * n_train)
        if points and size == points[-1].train_size:
            continue
        subset = split.train[:size]
        X = dataset.features[subset]
        y = dataset.labels[subset]
        model = trainer(X, y)
        points.append(
            LearningCurvePoint(
                train_size=size,
                train_score=accuracy(model.predict(X), y),
                eval_score=accuracy(model.predict(eval_X), eval_y),
            )
        )
    return points
