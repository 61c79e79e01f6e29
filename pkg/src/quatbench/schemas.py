"""Request/response schemas for the benchmark service.

ExperimentRequest mirrors the ExperimentConfig JSON layout, so a config file
can be POSTed unchanged.  Responses carry everything a client needs to write
the run's artifacts locally: the config echo, per-row metrics and curves, and
the serialized fitted models.
"""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict

from .classifiers import MODEL_KINDS
from .experiment import (
    CellResult,
    DEFAULT_CURVE_FRACTIONS,
    ExperimentConfig,
    ExperimentResult,
    MODEL_ORDER,
    REP_ORDER,
)
from .metrics import LearningCurvePoint, MetricsReport


class SvmParams(BaseModel):
    model_config = ConfigDict(extra="forbid")
    reg_lambda: float = 0.01
    iterations: int = 2000
    initial_rate: float = 0.1


class LogisticParams(BaseModel):
    model_config = ConfigDict(extra="forbid")
    learning_rate: float = 0.1
    iterations: int = 2000
    l2_strength: float = 1e-4


class FldParams(BaseModel):
    model_config = ConfigDict(extra="forbid")
    ridge_factor: float = 1e-8


class NbParams(BaseModel):
    model_config = ConfigDict(extra="forbid")
    var_smoothing: float = 1e-9


class KnnParams(BaseModel):
    model_config = ConfigDict(extra="forbid")
    k: int = 5


class TrainParams(BaseModel):
    model_config = ConfigDict(extra="forbid")
    svm: SvmParams = SvmParams()
    logistic: LogisticParams = LogisticParams()
    fld: FldParams = FldParams()
    nb: NbParams = NbParams()
    knn: KnnParams = KnnParams()


class ExperimentRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    n_samples: int = 1000
    seed: int = 42
    test_fraction: float = 0.2
    validation_fraction: float = 0.0
    models: list[str] = list(MODEL_ORDER)
    representations: list[str] = list(REP_ORDER)
    curve_fractions: list[float] = list(DEFAULT_CURVE_FRACTIONS)
    train: TrainParams = TrainParams()
    out: str | None = None

    def to_config(self) -> ExperimentConfig:
        return ExperimentConfig.from_dict(self.model_dump())


class MetricsModel(BaseModel):
    precision: float
    recall: float
    f1: float
    accuracy: float
    mse: float
    mae: float
    hmae: float
    hmse: float
    positive_class: int
    n_test: int


class CurvePointModel(BaseModel):
    train_size: int
    train_score: float
    eval_score: float


class RowModel(BaseModel):
    model: str
    representation: str
    metrics: MetricsModel
    curve: list[CurvePointModel]
    wall_time_s: float
    model_params: dict


class ExperimentResponse(BaseModel):
    config: dict
    rows: list[RowModel]
    total_wall_time_s: float


class DatasetRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    n: int = 100
    seed: int = 42
    representation: str = "quaternion"


class DatasetResponse(BaseModel):
    csv: str
    n: int
    representation: str
    feature_width: int


class ScoreRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    model: dict
    dataset_csv: str


class ScoreResponse(BaseModel):
    model_kind: str
    metrics: MetricsModel
    n_scored: int


class HealthResponse(BaseModel):
    status: str
    version: str
    models: list[str] = list(MODEL_KINDS)


def response_from_result(result: ExperimentResult) -> ExperimentResponse:
    rows = [
        RowModel(
            model=cell.model,
            representation=cell.representation,
            metrics=MetricsModel(**cell.report.to_dict()),
            curve=[
                CurvePointModel(
                    train_size=p.train_size,
                    train_score=p.train_score,
                    eval_score=p.eval_score,
                )
                for p in cell.curve
            ],
            wall_time_s=cell.wall_time_s,
            model_params=cell.model_params,
        )
        for cell in result.cells
    ]
    return ExperimentResponse(
        config=result.config.to_dict(),
        rows=rows,
        total_wall_time_s=sum(cell.wall_time_s for cell in result.cells),
    )


def result_from_payload(payload: dict) -> ExperimentResult:
    """Rebuild an ExperimentResult from an /experiment response body."""
    cells = tuple(
        CellResult(
            model=row["model"],
            representation=row["representation"],
            report=MetricsReport.from_dict(row["metrics"]),
            curve=tuple(LearningCurvePoint(**p) for p in row["curve"]),
            wall_time_s=row.get("wall_time_s", 0.0),
            model_params=row.get("model_params", {}),
        )
        for row in payload["rows"]
    )
    return ExperimentResult(
        config=ExperimentConfig.from_dict(payload["config"]), cells=cells
    )
