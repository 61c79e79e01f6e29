"""Command-line client for the benchmark service.

Every subcommand talks HTTP to the service layer.  By default the app is
mounted in-process, so no server has to be running; --server points the same
commands at a remote instance started with `quatbench serve`.

Config precedence for `run`: dataclass defaults, then --config file fields,
then explicit flags.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys
from pathlib import Path

import httpx

from .app import app
from .errors import QuatbenchError
from .experiment import render_table_pretty, write_outputs
from .metrics import METRIC_COLUMNS
from .schemas import result_from_payload


class ServiceError(RuntimeError):
    """A request that did not produce a 200 response."""


def _post_in_process(path: str, payload: dict) -> httpx.Response:
    async def go():
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(
            transport=transport, base_url="http://quatbench"
        ) as client:
            return await client.post(path, json=payload)

    return asyncio.run(go())


def _format_error(resp: httpx.Response) -> str:
    try:
        body = resp.json()
    except ValueError:
        return f"service returned {resp.status_code}"
    if "error" in body:
        return f"{body['error']}: {body['detail']}"
    return f"service returned {resp.status_code}: {json.dumps(body)}"


def post(path: str, payload: dict, server: str | None) -> dict:
    try:
        if server:
            resp = httpx.post(server.rstrip("/") + path, json=payload, timeout=300.0)
        else:
            resp = _post_in_process(path, payload)
    except httpx.HTTPError as exc:
        raise ServiceError(f"cannot reach service: {exc}") from exc
    if resp.status_code != 200:
        raise ServiceError(_format_error(resp))
    return resp.json()


def cmd_run(args: argparse.Namespace) -> int:
    payload: dict = {}
    if args.config:
        payload = json.loads(Path(args.config).read_text())
        if not isinstance(payload, dict):
            raise ServiceError(f"config file {args.config} must hold a JSON object")
    overrides = {
        "n_samples": args.n,
        "seed": args.seed,
        "test_fraction": args.test_fraction,
        "validation_fraction": args.val_fraction,
        "models": args.models.split(",") if args.models else None,
        "representations": args.reps.split(",") if args.reps else None,
    }
    payload.update({k: v for k, v in overrides.items() if v is not None})
    # --out stays client-side: routing must not leak into the config echo

    body = post("/experiment", payload, args.server)
    result = result_from_payload(body)
    out_dir = args.out or result.config.out or "results"
    written = write_outputs(result, out_dir)
    print(render_table_pretty(result), end="")
    print(f"\nwrote {len(written)} files to {out_dir}")
    print(f"total training wall time: {body['total_wall_time_s']:.3f} s")
    return 0


def cmd_gen(args: argparse.Namespace) -> int:
    body = post(
        "/dataset",
        {"n": args.n, "seed": args.seed, "representation": args.rep},
        args.server,
    )
    if args.out:
        Path(args.out).write_text(body["csv"])
        print(
            f"wrote {body['n']} rows ({body['representation']}, "
            f"width {body['feature_width']}) to {args.out}"
        )
    else:
        print(body["csv"], end="")
    return 0


_METRIC_KEYS = ("precision", "recall", "f1", "accuracy", "mse", "mae", "hmae", "hmse")


def cmd_score(args: argparse.Namespace) -> int:
    model = json.loads(Path(args.model).read_text())
    dataset_csv = Path(args.data).read_text()
    body = post("/score", {"model": model, "dataset_csv": dataset_csv}, args.server)
    if args.json:
        print(json.dumps(body, indent=2))
        return 0
    print(f"model: {body['model_kind']}  samples: {body['n_scored']}")
    for column, key in zip(METRIC_COLUMNS, _METRIC_KEYS):
        print(f"{column:>9s}  {body['metrics'][key]!r}")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quatbench",
        description="Rotation-representation benchmark: quaternions vs matrices "
        "across five classifiers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run the benchmark and write all artifacts")
    run_p.add_argument("--config", help="JSON config file; flags override its fields")
    run_p.add_argument("--n", type=int, help="number of samples")
    run_p.add_argument("--seed", type=int, help="master RNG seed")
    run_p.add_argument("--test-fraction", type=float, dest="test_fraction")
    run_p.add_argument("--val-fraction", type=float, dest="val_fraction")
    run_p.add_argument("--models", help="comma-separated subset of svm,logistic,fld,nb,knn")
    run_p.add_argument("--reps", help="comma-separated subset of quaternion,matrix")
    run_p.add_argument("--out", help="output directory (default: results)")
    run_p.add_argument("--server", help="service base URL; default runs in-process")
    run_p.set_defaults(fn=cmd_run)

    gen_p = sub.add_parser("gen", help="export a seeded dataset as CSV")
    gen_p.add_argument("--n", type=int, default=100, help="number of samples")
    gen_p.add_argument("--seed", type=int, default=42, help="master RNG seed")
    gen_p.add_argument("--rep", default="quaternion",
                       help="representation: quaternion or matrix")
    gen_p.add_argument("--out", help="output file (default: stdout)")
    gen_p.add_argument("--server", help="service base URL; default runs in-process")
    gen_p.set_defaults(fn=cmd_gen)

    score_p = sub.add_parser("score", help="re-score a serialized model on a dataset CSV")
    score_p.add_argument("model", help="model JSON file (models/<model>_<rep>.json)")
    score_p.add_argument("data", help="dataset CSV file")
    score_p.add_argument("--json", action="store_true", help="print the raw response")
    score_p.add_argument("--server", help="service base URL; default runs in-process")
    score_p.set_defaults(fn=cmd_score)

    serve_p = sub.add_parser("serve", help="start the HTTP service")
    serve_p.add_argument("--host", default="127.0.0.1")
    serve_p.add_argument("--port", type=int, default=8000)
    serve_p.set_defaults(fn=cmd_serve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ServiceError, QuatbenchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(main())
