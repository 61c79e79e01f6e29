"""End-to-end benchmark: one seeded dataset, every (model, representation) cell.

A run draws one pool of random quaternions and one independent random label
vector, featurizes the same pool under each requested representation, and
trains every requested classifier on each feature set using one shared
train/validation/test index split.  Representation is therefore the only
factor that varies across a model's cells.

Everything downstream of the config is deterministic: rendered CSV/JSON uses
repr() floats (shortest round-trip form), so two runs from the same config
produce byte-identical artifacts.  Per-cell wall time is kept on the result
object for reporting but never written into the artifacts.  Cells touch only
immutable shared data, so they could run concurrently; they are executed
sequentially and assembled in a fixed order.
"""

from __future__ import annotations

import dataclasses
import json
import time
from dataclasses import dataclass, field
from pathlib import Path

from .classifiers import (
    FldConfig,
    KnnConfig,
    LogisticConfig,
    MODEL_KINDS,
    NbConfig,
    SvmConfig,
    TrainConfig,
    make_model,
    model_to_dict,
)
from .data import (
    Dataset,
    FEATURIZERS,
    assign_labels,
    build_dataset,
    dataset_to_csv,
    featurize,
    generate_quaternions,
    split_indices,
)
from .errors import ConfigError, InvalidFraction
from .metrics import (
    METRIC_COLUMNS,
    LearningCurvePoint,
    MetricsReport,
    evaluate_model,
    learning_curve,
)

MODEL_ORDER = MODEL_KINDS
MODEL_LABELS = {
    "svm": "SVM",
    "logistic": "Logistic Regression",
    "fld": "FLD",
    "nb": "Naive Bayes",
    "knn": "KNN",
}
REP_ORDER = ("quaternion", "matrix")
TABLE_COLUMNS = ("Model", "Representation") + METRIC_COLUMNS
DEFAULT_CURVE_FRACTIONS = (0.2, 0.4, 0.6, 0.8, 1.0)


@dataclass(frozen=True)
class ExperimentConfig:
    """Every knob of a run; defaults reproduce the benchmark table."""

    n_samples: int = 1000
    seed: int = 42
    test_fraction: float = 0.2
    validation_fraction: float = 0.0
    models: tuple[str, ...] = MODEL_ORDER
    representations: tuple[str, ...] = REP_ORDER
    curve_fractions: tuple[float, ...] = DEFAULT_CURVE_FRACTIONS
    train: TrainConfig = TrainConfig()
    out: str | None = None

    def validate(self) -> None:
        if self.n_samples < 1:
            raise ConfigError(f"n_samples must be >= 1, got {self.n_samples}")
        if self.seed < 0:
            raise ConfigError(f"seed must be unsigned, got {self.seed}")
        if not 0.0 < self.test_fraction < 1.0:
            raise InvalidFraction(
                f"test_fraction must be in (0, 1), got {self.test_fraction}"
            )
        if not 0.0 <= self.validation_fraction < 1.0 - self.test_fraction:
            raise InvalidFraction(
                "validation_fraction must be in [0, 1 - test_fraction), "
                f"got {self.validation_fraction}"
            )
        if not self.models:
            raise ConfigError("at least one model is required")
        unknown = [m for m in self.models if m not in MODEL_KINDS]
        if unknown:
            raise ConfigError(f"unknown models: {unknown}; choose from {MODEL_KINDS}")
        if len(set(self.models)) != len(self.models):
            raise ConfigError("models must not repeat")
        if not self.representations:
            raise ConfigError("at least one representation is required")
        unknown = [r for r in self.representations if r not in FEATURIZERS]
        if unknown:
            raise ConfigError(
                f"unknown representations: {unknown}; choose from {REP_ORDER}"
            )
        if len(set(self.representations)) != len(self.representations):
            raise ConfigError("representations must not repeat")
        # an empty fraction vector means "skip learning curves"
        for f in self.curve_fractions:
            if not 0.0 < f <= 1.0:
                raise InvalidFraction(f"curve fractions must lie in (0, 1], got {f}")
        for a, b in zip(self.curve_fractions, self.curve_fractions[1:]):
            if b <= a:
                raise InvalidFraction("curve fractions must be strictly increasing")
        self.train.validate()

    def to_dict(self) -> dict:
        return {
            "n_samples": self.n_samples,
            "seed": self.seed,
            "test_fraction": self.test_fraction,
            "validation_fraction": self.validation_fraction,
            "models": list(self.models),
            "representations": list(self.representations),
            "curve_fractions": list(self.curve_fractions),
            "train": dataclasses.asdict(self.train),
            "out": self.out,
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "ExperimentConfig":
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = sorted(set(payload) - known)
        if unknown:
            raise ConfigError(f"unknown config fields: {unknown}")
        kwargs = dict(payload)
        if "train" in kwargs and not isinstance(kwargs["train"], TrainConfig):
            kwargs["train"] = _train_config_from_dict(kwargs["train"])
        for name in ("models", "representations", "curve_fractions"):
            if name in kwargs and kwargs[name] is not None:
                kwargs[name] = tuple(kwargs[name])
        try:
            return cls(**kwargs)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc


def _train_config_from_dict(payload: dict) -> TrainConfig:
    parts = {"svm": SvmConfig, "logistic": LogisticConfig, "fld": FldConfig,
             "nb": NbConfig, "knn": KnnConfig}
    unknown = sorted(set(payload) - set(parts))
    if unknown:
        raise ConfigError(f"unknown train config sections: {unknown}")
    kwargs = {}
    for name, part_cls in parts.items():
        if name in payload:
            try:
                kwargs[name] = part_cls(**payload[name])
            except TypeError as exc:
                raise ConfigError(f"bad {name} config: {exc}") from exc
    return TrainConfig(**kwargs)


@dataclass(frozen=True)
class CellResult:
    """One (model, representation) table row.

    wall_time_s and the serialized fitted parameters are informational and
    excluded from equality, so results parsed back from artifacts compare
    equal to the in-memory originals.
    """

    model: str
    representation: str
    report: MetricsReport
    curve: tuple[LearningCurvePoint, ...] = ()
    wall_time_s: float = field(default=0.0, compare=False)
    model_params: dict = field(default_factory=dict, compare=False, repr=False)


@dataclass(frozen=True)
class ExperimentResult:
    config: ExperimentConfig
    cells: tuple[CellResult, ...]

    def cell(self, model: str, representation: str) -> CellResult:
        for c in self.cells:
            if c.model == model and c.representation == representation:
                return c
        raise KeyError(f"no cell for ({model}, {representation})")


def run_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Train and score every requested (model, representation) cell."""
    cfg.validate()
    quats = generate_quaternions(cfg.n_samples, cfg.seed)
    labels = assign_labels(cfg.n_samples, cfg.seed)
    split = split_indices(
        cfg.n_samples, cfg.test_fraction, cfg.validation_fraction, cfg.seed
    )
    reps = tuple(r for r in REP_ORDER if r in cfg.representations)
    kinds = tuple(m for m in MODEL_ORDER if m in cfg.models)
    eval_split = "validation" if len(split.validation) else "test"

    cells = []
    for rep in reps:
        width = FEATURIZERS[rep][1]
        dataset = Dataset(featurize(quats, rep), labels, width, cfg.seed)
        train_X = dataset.features[split.train]
        train_y = dataset.labels[split.train]
        test_X = dataset.features[split.test]
        test_y = dataset.labels[split.test]
        for kind in kinds:
            started = time.perf_counter()
            model = make_model(kind, cfg.train).fit(train_X, train_y)
            report = evaluate_model(model, test_X, test_y)
            curve: tuple[LearningCurvePoint, ...] = ()
            if cfg.curve_fractions:
                trainer = lambda X, y, _kind=kind: make_model(_kind, cfg.train).fit(X, y)
                curve = tuple(
                    learning_curve(
                        trainer, dataset, split, cfg.curve_fractions, eval_split
                    )
                )
            cells.append(
                CellResult(
                    model=kind,
                    representation=rep,
                    report=report,
                    curve=curve,
                    wall_time_s=time.perf_counter() - started,
                    model_params=model_to_dict(model),
                )
            )
    return ExperimentResult(config=cfg, cells=tuple(cells))


# ---------------------------------------------------------------------------
# rendering and parsing


def render_table_csv(result: ExperimentResult) -> str:
    lines = [",".join(TABLE_COLUMNS)]
    for cell in result.cells:
        lines.append(
            ",".join([cell.model, cell.representation] + cell.report.csv_cells())
        )
    return "\n".join(lines) + "\n"


def render_table_json(result: ExperimentResult) -> str:
    payload = {
        "config": result.config.to_dict(),
        "rows": [
            {
                "model": cell.model,
                "representation": cell.representation,
                "metrics": cell.report.to_dict(),
                "curve": [
                    {
                        "train_size": p.train_size,
                        "train_score": p.train_score,
                        "eval_score": p.eval_score,
                    }
                    for p in cell.curve
                ],
            }
            for cell in result.cells
        ],
    }
    return json.dumps(payload, indent=2) + "\n"


def parse_result_json(text: str) -> ExperimentResult:
    payload = json.loads(text)
    cfg = ExperimentConfig.from_dict(payload["config"])
    cells = tuple(
        CellResult(
            model=row["model"],
            representation=row["representation"],
            report=MetricsReport.from_dict(row["metrics"]),
            curve=tuple(LearningCurvePoint(**p) for p in row["curve"]),
        )
        for row in payload["rows"]
    )
    return ExperimentResult(config=cfg, cells=cells)


def render_table_pretty(result: ExperimentResult) -> str:
    rows = [list(TABLE_COLUMNS)]
    for cell in result.cells:
        rows.append(
            [MODEL_LABELS[cell.model], cell.representation]
            + [f"{float(v):.6f}" for v in cell.report.csv_cells()]
        )
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = []
    for r in rows:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"


def render_curve_csv(cell: CellResult) -> str:
    lines = ["train_size,train_score,eval_score"]
    for p in cell.curve:
        lines.append(f"{p.train_size},{p.train_score!r},{p.eval_score!r}")
    return "\n".join(lines) + "\n"


def write_outputs(result: ExperimentResult, out_dir: str | Path) -> list[Path]:
    """Write every artifact of a run; returns the paths written."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    def emit(path: Path, text: str) -> None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
        written.append(path)

    emit(out / "table.csv", render_table_csv(result))
    emit(out / "table.json", render_table_json(result))
    emit(out / "config.json", json.dumps(result.config.to_dict(), indent=2) + "\n")
    # the quaternion export is canonical; matrix features are derivable from it
    dataset = build_dataset(result.config.n_samples, result.config.seed, "quaternion")
    emit(out / "dataset.csv", dataset_to_csv(dataset))
    for cell in result.cells:
        if cell.curve:
            emit(out / "curves" / f"{cell.model}_{cell.representation}.csv",
                 render_curve_csv(cell))
        if cell.model_params:
            emit(out / "models" / f"{cell.model}_{cell.representation}.json",
                 json.dumps(cell.model_params, indent=2) + "\n")
    return written
