"""Five from-scratch binary classifiers behind one fit/predict contract.

Every model maps labels {0, 1}; decision_scores are positive exactly for
predicted class 1, with score 0 falling to class 0. Training is full-batch
and deterministic: identical data and hyperparameters reproduce identical
parameters bit for bit. Models serialize to tagged dicts (see
model_to_dict / model_from_dict) for audit and re-scoring.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    ConfigError,
    DegenerateData,
    InvalidK,
    SingularScatter,
    WidthMismatch,
)


@dataclass(frozen=True)
class SvmConfig:
    reg_lambda: float = 0.01
    iterations: int = 2000
    initial_rate: float = 0.1


@dataclass(frozen=True)
class LogisticConfig:
    learning_rate: float = 0.1
    iterations: int = 2000
    l2_strength: float = 1e-4


@dataclass(frozen=True)
class FldConfig:
    # effective ridge is ridge_factor * trace(S_W) / d; 0 requests none
    ridge_factor: float = 1e-8


@dataclass(frozen=True)
class NbConfig:
    var_smoothing: float = 1e-9


@dataclass(frozen=True)
class KnnConfig:
    k: int = 5


@dataclass(frozen=True)
class TrainConfig:
    """Hyperparameters for all five trainers; defaults reproduce the bench."""

    svm: SvmConfig = SvmConfig()
    logistic: LogisticConfig = LogisticConfig()
    fld: FldConfig = FldConfig()
    nb: NbConfig = NbConfig()
    knn: KnnConfig = KnnConfig()

    def validate(self) -> None:
        problems = []
        if self.svm.reg_lambda <= 0:
            problems.append("svm.reg_lambda must be > 0")
        if self.svm.iterations < 1:
            problems.append("svm.iterations must be >= 1")
        if self.svm.initial_rate <= 0:
            problems.append("svm.initial_rate must be > 0")
        if self.logistic.learning_rate <= 0:
            problems.append("logistic.learning_rate must be > 0")
        if self.logistic.iterations < 1:
            problems.append("logistic.iterations must be >= 1")
        if self.logistic.l2_strength <= 0:
            problems.append("logistic.l2_strength must be > 0")
        if self.fld.ridge_factor < 0:
            problems.append("fld.ridge_factor must be >= 0")
        if self.nb.var_smoothing <= 0:
            problems.append("nb.var_smoothing must be > 0")
        if self.knn.k < 1:
            problems.append("knn.k must be >= 1")
        if problems:
            raise ConfigError("; ".join(problems))


# ---------------------------------------------------------------------------
# shared plumbing


def _as_features(X, width: int | None = None) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    if X.ndim == 1 and X.size == 0:
        # bare [] means an empty batch of the expected width
        return X.reshape(0, width if width is not None else 0)
    if X.ndim != 2:
        raise ValueError(f"features must be a 2-d array, got shape {X.shape}")
    return X


def _check_width(X: np.ndarray, width: int) -> None:
    if X.shape[0] > 0 and X.shape[1] != width:
        raise WidthMismatch(f"model expects width {width}, got {X.shape[1]}")


def _training_arrays(X, y, min_per_class: int = 1) -> tuple[np.ndarray, np.ndarray]:
    X = _as_features(X)
    y = np.asarray(y, dtype=np.int64)
    if y.shape != (X.shape[0],):
        raise ValueError("labels must be one per training row")
    if not np.isfinite(X).all():
        raise ValueError("training features must be finite")
    if not np.isin(y, (0, 1)).all():
        raise ValueError("labels must be 0 or 1")
    for cls in (0, 1):
        count = int(np.sum(y == cls))
        if count < min_per_class:
            raise DegenerateData(
                f"need at least {min_per_class} sample(s) of class {cls}, got {count}"
            )
    return X, y


def sigmoid(z: np.ndarray) -> np.ndarray:
    """Numerically stable logistic function."""
    z = np.asarray(z, dtype=float)
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


# ---------------------------------------------------------------------------
# objectives (shared by the trainers and the finite-difference tests)


def _svm_loss_grad(weights, bias, X, y, reg_lambda):
    signs = 2.0 * y - 1.0
    margins = signs * (X @ weights + bias)
    hinge = np.maximum(0.0, 1.0 - margins)
    loss = 0.5 * reg_lambda * weights @ weights + hinge.mean()
    active = np.where(margins < 1.0, signs, 0.0)
    grad_w = reg_lambda * weights - X.T @ active / len(y)
    grad_b = -active.mean()
    return loss, grad_w, grad_b


def svm_objective(weights, bias, X, y, reg_lambda: float) -> float:
    """L2-regularized mean hinge loss: 0.5*lambda*|w|^2 + mean(max(0, 1 - s*f))."""
    return _svm_loss_grad(np.asarray(weights, float), bias, X, y, reg_lambda)[0]


def svm_subgradient(weights, bias, X, y, reg_lambda: float):
    """Subgradient of svm_objective; at margin exactly 1 the hinge term is 0."""
    _, gw, gb = _svm_loss_grad(np.asarray(weights, float), bias, X, y, reg_lambda)
    return gw, gb


def _logistic_loss_grad(weights, bias, X, y, l2_strength):
    z = X @ weights + bias
    # mean cross-entropy written as softplus(z) - y*z, stable for any z
    loss = np.mean(np.logaddexp(0.0, z) - y * z) + 0.5 * l2_strength * weights @ weights
    residual = sigmoid(z) - y
    grad_w = X.T @ residual / len(y) + l2_strength * weights
    grad_b = residual.mean()
    return loss, grad_w, grad_b


def logistic_objective(weights, bias, X, y, l2_strength: float) -> float:
    """L2-regularized mean cross-entropy of the sigmoid link."""
    return _logistic_loss_grad(np.asarray(weights, float), bias, X, y, l2_strength)[0]


def logistic_gradient(weights, bias, X, y, l2_strength: float):
    _, gw, gb = _logistic_loss_grad(np.asarray(weights, float), bias, X, y, l2_strength)
    return gw, gb


# ---------------------------------------------------------------------------
# models


class LinearSVM:
    """Soft-margin linear SVM trained by full-batch subgradient descent.

    Step t uses rate initial_rate / (1 + t); zero initialization. The loss
    of every iterate is kept in loss_history_.
    """

    kind = "svm"

    def __init__(self, reg_lambda: float = 0.01, iterations: int = 2000, initial_rate: float = 0.1):
        self.reg_lambda = reg_lambda
        self.iterations = iterations
        self.initial_rate = initial_rate
        self.weights = None
        self.bias = 0.0
        self.feature_width_ = None
        self.loss_history_ = []

    def fit(self, X, y):
        X, y = _training_arrays(X, y)
        w = np.zeros(X.shape[1])
        b = 0.0
        history = []
        for t in range(self.iterations):
            loss, grad_w, grad_b = _svm_loss_grad(w, b, X, y, self.reg_lambda)
            history.append(float(loss))
            rate = self.initial_rate / (1.0 + t)
            w = w - rate * grad_w
            b = b - rate * grad_b
        history.append(float(svm_objective(w, b, X, y, self.reg_lambda)))
        self.weights = w
        self.bias = float(b)
        self.feature_width_ = X.shape[1]
        self.loss_history_ = history
        return self

    def decision_scores(self, X) -> np.ndarray:
        X = _as_features(X, self.feature_width_)
        _check_width(X, self.feature_width_)
        return X @ self.weights + self.bias

    def predict(self, X) -> np.ndarray:
        return (self.decision_scores(X) > 0).astype(np.int64)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "weights": [float(v) for v in self.weights],
            "bias": self.bias,
            "reg_lambda": self.reg_lambda,
            "iterations": self.iterations,
            "initial_rate": self.initial_rate,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "LinearSVM":
        model = cls(d["reg_lambda"], d["iterations"], d["initial_rate"])
        model.weights = np.array(d["weights"], dtype=float)
        model.bias = float(d["bias"])
        model.feature_width_ = len(model.weights)
        return model


class LogisticRegression:
    """Binary logistic regression, full-batch gradient descent, zero init."""

    kind = "logistic"

    def __init__(self, learning_rate: float = 0.1, iterations: int = 2000, l2_strength: float = 1e-4):
        self.learning_rate = learning_rate
        self.iterations = iterations
        self.l2_strength = l2_strength
        self.weights = None
        self.bias = 0.0
        self.feature_width_ = None
        self.loss_history_ = []

    def fit(self, X, y):
        X, y = _training_arrays(X, y)
        w = np.zeros(X.shape[1])
        b = 0.0
        history = []
        for _ in range(self.iterations):
            loss, grad_w, grad_b = _logistic_loss_grad(w, b, X, y, self.l2_strength)
            history.append(float(loss))
            w = w - self.learning_rate * grad_w
            b = b - self.learning_rate * grad_b
        history.append(float(logistic_objective(w, b, X, y, self.l2_strength)))
        self.weights = w
        self.bias = float(b)
        self.feature_width_ = X.shape[1]
        self.loss_history_ = history
        return self

    def decision_scores(self, X) -> np.ndarray:
        X = _as_features(X, self.feature_width_)
        _check_width(X, self.feature_width_)
        return X @ self.weights + self.bias

    def predict_proba(self, X) -> np.ndarray:
        return sigmoid(self.decision_scores(X))

    def predict(self, X) -> np.ndarray:
        return (self.decision_scores(X) > 0).astype(np.int64)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "weights": [float(v) for v in self.weights],
            "bias": self.bias,
            "learning_rate": self.learning_rate,
            "iterations": self.iterations,
            "l2_strength": self.l2_strength,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "LogisticRegression":
        model = cls(d["learning_rate"], d["iterations"], d["l2_strength"])
        model.weights = np.array(d["weights"], dtype=float)
        model.bias = float(d["bias"])
        model.feature_width_ = len(model.weights)
        return model


class FisherDiscriminant:
    """Two-class Fisher projection with midpoint threshold.

    projection solves (S_W + ridge*I) w = mu1 - mu0 with S_W the pooled
    within-class scatter; ridge = ridge_factor * trace(S_W) / d. A zero
    ridge_factor requests the raw solve and raises SingularScatter when
    S_W has no inverse.
    """

    kind = "fld"

    def __init__(self, ridge_factor: float = 1e-8):
        self.ridge_factor = ridge_factor
        self.projection = None
        self.threshold = 0.0
        self.sign = 1
        self.feature_width_ = None

    def fit(self, X, y):
        X, y = _training_arrays(X, y, min_per_class=2)
        mu0 = X[y == 0].mean(axis=0)
        mu1 = X[y == 1].mean(axis=0)
        scatter = np.zeros((X.shape[1], X.shape[1]))
        for cls, mu in ((0, mu0), (1, mu1)):
            centered = X[y == cls] - mu
            scatter += centered.T @ centered
        ridge = self.ridge_factor * np.trace(scatter) / X.shape[1]
        if ridge == 0.0:
            singular_values = np.linalg.svd(scatter, compute_uv=False)
            if singular_values[0] == 0.0 or singular_values[-1] <= 1e-12 * singular_values[0]:
                raise SingularScatter(
                    "within-class scatter is singular; set ridge_factor > 0"
                )
        w = np.linalg.solve(scatter + ridge * np.eye(X.shape[1]), mu1 - mu0)
        self.projection = w
        self.threshold = float(w @ (mu0 + mu1) / 2.0)
        self.sign = 1 if w @ mu1 >= w @ mu0 else -1
        self.feature_width_ = X.shape[1]
        return self

    def decision_scores(self, X) -> np.ndarray:
        X = _as_features(X, self.feature_width_)
        _check_width(X, self.feature_width_)
        return self.sign * (X @ self.projection - self.threshold)

    def predict(self, X) -> np.ndarray:
        return (self.decision_scores(X) > 0).astype(np.int64)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "projection": [float(v) for v in self.projection],
            "threshold": self.threshold,
            "sign": self.sign,
            "ridge_factor": self.ridge_factor,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "FisherDiscriminant":
        model = cls(d["ridge_factor"])
        model.projection = np.array(d["projection"], dtype=float)
        model.threshold = float(d["threshold"])
        model.sign = int(d["sign"])
        model.feature_width_ = len(model.projection)
        return model


class GaussianNaiveBayes:
    """Gaussian Naive Bayes with a relative variance floor.

    Per-class, per-feature variances are floored at
    var_smoothing * max(per-feature variance of the whole training set),
    falling back to var_smoothing itself when every feature is constant.
    Posterior ties go to class 0.
    """

    kind = "nb"

    def __init__(self, var_smoothing: float = 1e-9):
        self.var_smoothing = var_smoothing
        self.priors = None
        self.means = None
        self.variances = None
        self.feature_width_ = None

    def fit(self, X, y):
        X, y = _training_arrays(X, y)
        counts = np.array([np.sum(y == 0), np.sum(y == 1)], dtype=float)
        self.priors = counts / len(y)
        self.means = np.stack([X[y == cls].mean(axis=0) for cls in (0, 1)])
        variances = np.stack([X[y == cls].var(axis=0) for cls in (0, 1)])
        global_max = X.var(axis=0).max()
        floor = self.var_smoothing * (global_max if global_max > 0 else 1.0)
        self.variances = np.maximum(variances, floor)
        self.feature_width_ = X.shape[1]
        return self

    def _log_posteriors(self, X: np.ndarray) -> np.ndarray:
        out = np.empty((X.shape[0], 2))
        for cls in (0, 1):
            mu = self.means[cls]
            var = self.variances[cls]
            log_density = -0.5 * (np.log(2.0 * np.pi * var) + (X - mu) ** 2 / var)
            out[:, cls] = np.log(self.priors[cls]) + log_density.sum(axis=1)
        return out

    def decision_scores(self, X) -> np.ndarray:
        X = _as_features(X, self.feature_width_)
        _check_width(X, self.feature_width_)
        lp = self._log_posteriors(X)
        return lp[:, 1] - lp[:, 0]

    def predict(self, X) -> np.ndarray:
        return (self.decision_scores(X) > 0).astype(np.int64)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "priors": [float(v) for v in self.priors],
            "means": [[float(v) for v in row] for row in self.means],
            "variances": [[float(v) for v in row] for row in self.variances],
            "var_smoothing": self.var_smoothing,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "GaussianNaiveBayes":
        model = cls(d["var_smoothing"])
        model.priors = np.array(d["priors"], dtype=float)
        model.means = np.array(d["means"], dtype=float)
        model.variances = np.array(d["variances"], dtype=float)
        model.feature_width_ = model.means.shape[1]
        return model


def _nearest_votes(train_X: np.ndarray, train_y: np.ndarray, query: np.ndarray, k: int):
    """Class votes among the k nearest rows; stable sort keeps the lower
    training index first on exact distance ties."""
    d2 = np.sum((train_X - query) ** 2, axis=1)
    nearest = np.argsort(d2, kind="stable")[:k]
    votes1 = int(np.sum(train_y[nearest]))
    return k - votes1, votes1


def knn_predict(train_X, train_y, query, k: int) -> int:
    """Majority label among the k Euclidean-nearest training points.

    Vote ties resolve to class 0.
    """
    train_X = _as_features(train_X)
    train_y = np.asarray(train_y, dtype=np.int64)
    if not 1 <= k <= len(train_X):
        raise InvalidK(f"k must be in 1..{len(train_X)}, got {k}")
    query = np.asarray(query, dtype=float)
    if query.shape != (train_X.shape[1],):
        raise WidthMismatch(
            f"query width {query.shape} does not match training width {train_X.shape[1]}"
        )
    votes0, votes1 = _nearest_votes(train_X, train_y, query, k)
    return 1 if votes1 > votes0 else 0


class KNearestNeighbors:
    """k-nearest-neighbor voting on stored training data."""

    kind = "knn"

    def __init__(self, k: int = 5):
        self.k = k
        self.train_features = None
        self.train_labels = None
        self.feature_width_ = None

    def fit(self, X, y):
        X = _as_features(X)
        y = np.asarray(y, dtype=np.int64)
        if y.shape != (X.shape[0],):
            raise ValueError("labels must be one per training row")
        if not 1 <= self.k <= len(X):
            raise InvalidK(f"k must be in 1..{len(X)}, got {self.k}")
        self.train_features = X.copy()
        self.train_labels = y.copy()
        self.feature_width_ = X.shape[1]
        return self

    def decision_scores(self, X) -> np.ndarray:
        X = _as_features(X, self.feature_width_)
        _check_width(X, self.feature_width_)
        scores = np.empty(X.shape[0])
        for i, query in enumerate(X):
            votes0, votes1 = _nearest_votes(self.train_features, self.train_labels, query, self.k)
            scores[i] = (votes1 - votes0) / self.k
        return scores

    def predict(self, X) -> np.ndarray:
        return (self.decision_scores(X) > 0).astype(np.int64)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "k": self.k,
            "train_features": [[float(v) for v in row] for row in self.train_features],
            "train_labels": [int(v) for v in self.train_labels],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "KNearestNeighbors":
        model = cls(d["k"])
        model.train_features = np.array(d["train_features"], dtype=float)
        model.train_labels = np.array(d["train_labels"], dtype=np.int64)
        model.feature_width_ = model.train_features.shape[1]
        return model


MODEL_KINDS = ("svm", "logistic", "fld", "nb", "knn")

_REGISTRY = {
    "svm": LinearSVM,
    "logistic": LogisticRegression,
    "fld": FisherDiscriminant,
    "nb": GaussianNaiveBayes,
    "knn": KNearestNeighbors,
}


def make_model(kind: str, config: TrainConfig):
    """Fresh unfitted model of the given kind with the config's settings."""
    if kind == "svm":
        c = config.svm
        return LinearSVM(c.reg_lambda, c.iterations, c.initial_rate)
    if kind == "logistic":
        c = config.logistic
        return LogisticRegression(c.learning_rate, c.iterations, c.l2_strength)
    if kind == "fld":
        return FisherDiscriminant(config.fld.ridge_factor)
    if kind == "nb":
        return GaussianNaiveBayes(config.nb.var_smoothing)
    if kind == "knn":
        return KNearestNeighbors(config.knn.k)
    raise ConfigError(f"unknown model kind {kind!r}")


def model_to_dict(model) -> dict:
    return model.to_dict()


def model_from_dict(d: dict):
    kind = d.get("kind")
    if kind not in _REGISTRY:
        raise ConfigError(f"unknown model kind {kind!r} in serialized model")
    return _REGISTRY[kind].from_dict(d)
