"""HTTP service exposing the benchmark.

POST /experiment runs the full benchmark for a config and returns the table
rows, learning curves, and serialized models.  POST /dataset exports a seeded
dataset as CSV.  POST /score re-scores a serialized model against a dataset
CSV.  Domain errors surface as 400 responses carrying the error class name.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import __version__
from .classifiers import model_from_dict
from .data import build_dataset, dataset_from_csv, dataset_to_csv
from .errors import QuatbenchError
from .experiment import run_experiment
from .metrics import evaluate_model
from .schemas import (
    DatasetRequest,
    DatasetResponse,
    ExperimentRequest,
    ExperimentResponse,
    HealthResponse,
    MetricsModel,
    ScoreRequest,
    ScoreResponse,
    response_from_result,
)

app = FastAPI(title="quatbench", version=__version__)


@app.exception_handler(QuatbenchError)
async def domain_error_handler(request: Request, exc: QuatbenchError):
    return JSONResponse(
        status_code=400, content={"error": type(exc).__name__, "detail": str(exc)}
    )


@app.exception_handler(ValueError)
async def value_error_handler(request: Request, exc: ValueError):
    # malformed payloads (bad CSV, bad model dicts) are client errors
    return JSONResponse(
        status_code=400, content={"error": "ValueError", "detail": str(exc)}
    )


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)


@app.post("/experiment", response_model=ExperimentResponse)
def experiment(request: ExperimentRequest) -> ExperimentResponse:
    result = run_experiment(request.to_config())
    return response_from_result(result)


@app.post("/dataset", response_model=DatasetResponse)
def dataset(request: DatasetRequest) -> DatasetResponse:
    ds = build_dataset(request.n, request.seed, request.representation)
    return DatasetResponse(
        csv=dataset_to_csv(ds),
        n=len(ds),
        representation=request.representation,
        feature_width=ds.feature_width,
    )


@app.post("/score", response_model=ScoreResponse)
def score(request: ScoreRequest) -> ScoreResponse:
    model = model_from_dict(request.model)
    ds = dataset_from_csv(request.dataset_csv)
    report = evaluate_model(model, ds.features, ds.labels)
    return ScoreResponse(
        model_kind=model.kind,
        metrics=MetricsModel(**report.to_dict()),
        n_scored=len(ds),
    )
