"""Seeded dataset generation, featurization, and splitting.

Randomness comes from three independent PCG64 streams, all derived from the
single experiment seed through SeedSequence spawn keys: one for quaternion
components, one for labels, one for the split shuffle. Labels therefore
carry no information about features, which pins the best achievable test
accuracy at 0.5 in expectation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import InvalidCount, InvalidFraction
from .quats import Quaternion, quat_to_rotation_matrix

FEATURE_STREAM = 0
LABEL_STREAM = 1
SHUFFLE_STREAM = 2

QUATERNION_WIDTH = 4
MATRIX_WIDTH = 9
REPRESENTATIONS = ("quaternion", "matrix")


def stream(seed: int, key: int) -> np.random.Generator:
    """Independent PCG64 generator for one sub-stream of a seed."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(key,))))


def generate_quaternions(n: int, seed: int) -> list[Quaternion]:
    """n quaternions with components i.i.d. uniform on [0, 1)."""
    if n < 1:
        raise InvalidCount(f"need at least one sample, got n={n}")
    vals = stream(seed, FEATURE_STREAM).random((n, 4))
    return [Quaternion(w, x, y, z) for w, x, y, z in vals]


def assign_labels(n: int, seed: int) -> np.ndarray:
    """n labels i.i.d. uniform over {0, 1}, independent of any features."""
    if n < 1:
        raise InvalidCount(f"need at least one label, got n={n}")
    return stream(seed, LABEL_STREAM).integers(0, 2, size=n, dtype=np.int64)


def featurize_quaternion(q: Quaternion) -> np.ndarray:
    """Components (w, x, y, z) as a length-4 feature vector."""
    return np.array(q.components())


def featurize_matrix(q: Quaternion) -> np.ndarray:
    """Row-major flattening of the rotation matrix of q (length 9)."""
    return quat_to_rotation_matrix(q).reshape(9)


FEATURIZERS = {
    "quaternion": (featurize_quaternion, QUATERNION_WIDTH),
    "matrix": (featurize_matrix, MATRIX_WIDTH),
}


@dataclass
class Dataset:
    """Feature matrix plus binary labels.

    seed is None for datasets read back from a CSV export, which does not
    carry it.
    """

    features: np.ndarray
    labels: np.ndarray
    feature_width: int
    seed: int | None

    def __post_init__(self):
        self.features = np.asarray(self.features, dtype=float)
        self.labels = np.asarray(self.labels, dtype=np.int64)
        if self.features.ndim != 2 or self.features.shape[1] != self.feature_width:
            raise ValueError(
                f"features must be (n, {self.feature_width}), got {self.features.shape}"
            )
        if self.labels.shape != (self.features.shape[0],):
            raise ValueError("labels must be one per feature row")
        if not np.isfinite(self.features).all():
            raise ValueError("features must be finite")
        if not np.isin(self.labels, (0, 1)).all():
            raise ValueError("labels must be 0 or 1")
        self.features.setflags(write=False)
        self.labels.setflags(write=False)

    def __len__(self) -> int:
        return self.features.shape[0]


def featurize(quaternions: list[Quaternion], representation: str) -> np.ndarray:
    if representation not in FEATURIZERS:
        raise ValueError(f"unknown representation {representation!r}")
    fn, width = FEATURIZERS[representation]
    out = np.empty((len(quaternions), width))
    for i, q in enumerate(quaternions):
        out[i] = fn(q)
    return out


def build_dataset(n: int, seed: int, representation: str = "quaternion") -> Dataset:
    """Generate quaternions and labels for one seed and featurize them."""
    quats = generate_quaternions(n, seed)
    labels = assign_labels(n, seed)
    features = featurize(quats, representation)
    return Dataset(features, labels, FEATURIZERS[representation][1], seed)


@dataclass
class SplitDataset:
    """Disjoint, exhaustive index partition of 0..n-1."""

    train: np.ndarray
    validation: np.ndarray
    test: np.ndarray
    seed: int
    test_fraction: float
    validation_fraction: float = 0.0

    def __post_init__(self):
        joined = np.concatenate([self.train, self.validation, self.test])
        n = len(joined)
        if not np.array_equal(np.sort(joined), np.arange(n)):
            raise ValueError("split indices must partition 0..n-1")


def split_indices(
    n: int, test_fraction: float, validation_fraction: float, seed: int
) -> SplitDataset:
    """Shuffle 0..n-1 with the seed's shuffle stream and partition it.

    |test| = round(test_fraction * n) and |validation| =
    round(validation_fraction * n); the remainder trains.
    """
    if not 0.0 < test_fraction < 1.0:
        raise InvalidFraction(f"test_fraction must be in (0, 1), got {test_fraction}")
    if not 0.0 <= validation_fraction < 1.0 - test_fraction:
        raise InvalidFraction(
            f"validation_fraction must be in [0, 1 - test_fraction), got {validation_fraction}"
        )
    perm = stream(seed, SHUFFLE_STREAM).permutation(n)
    n_test = round(test_fraction * n)
    n_val = round(validation_fraction * n)
    return SplitDataset(
        train=perm[n_test + n_val :],
        validation=perm[n_test : n_test + n_val],
        test=perm[:n_test],
        seed=seed,
        test_fraction=test_fraction,
        validation_fraction=validation_fraction,
    )


def split_dataset(
    dataset: Dataset, test_fraction: float, validation_fraction: float, seed: int
) -> SplitDataset:
    return split_indices(len(dataset), test_fraction, validation_fraction, seed)


# ---------------------------------------------------------------------------
# import / export


def dataset_to_csv(dataset: Dataset) -> str:
    header = ",".join([f"f{i}" for i in range(dataset.feature_width)] + ["label"])
    lines = [header]
    for row, label in zip(dataset.features, dataset.labels):
        lines.append(",".join([repr(float(v)) for v in row] + [str(int(label))]))
    return "\n".join(lines) + "\n"


def dataset_from_csv(text: str) -> Dataset:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty dataset CSV")
    header = lines[0].split(",")
    if header[-1] != "label" or any(h != f"f{i}" for i, h in enumerate(header[:-1])):
        raise ValueError(f"unexpected dataset CSV header: {lines[0]!r}")
    width = len(header) - 1
    features, labels = [], []
    for ln in lines[1:]:
        cells = ln.split(",")
        if len(cells) != width + 1:
            raise ValueError(f"row has {len(cells)} cells, expected {width + 1}")
        features.append([float(c) for c in cells[:-1]])
        labels.append(int(cells[-1]))
    return Dataset(np.array(features), np.array(labels), width, seed=None)


def dataset_to_json(dataset: Dataset) -> str:
    payload = {
        "feature_width": dataset.feature_width,
        "seed": dataset.seed,
        "features": [[float(v) for v in row] for row in dataset.features],
        "labels": [int(v) for v in dataset.labels],
    }
    return json.dumps(payload, indent=2) + "\n"


def dataset_from_json(text: str) -> Dataset:
    payload = json.loads(text)
    return Dataset(
        np.array(payload["features"], dtype=float).reshape(-1, payload["feature_width"]),
        np.array(payload["labels"]),
        payload["feature_width"],
        payload.get("seed"),
    )


def quaternions_from_features(features: np.ndarray) -> list[Quaternion]:
    """Rebuild Quaternion values from width-4 feature rows."""
    features = np.asarray(features, dtype=float)
    if features.ndim != 2 or features.shape[1] != QUATERNION_WIDTH:
        raise ValueError("expected width-4 quaternion features")
    return [Quaternion(w, x, y, z) for w, x, y, z in features]
