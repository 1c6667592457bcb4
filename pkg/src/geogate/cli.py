"""Command-line entry points: generate, calibrate, evaluate, serve, solve.

Exit codes: 1 for malformed inputs, 2 for infeasible generation targets,
3 for I/O failures.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .difficulty import (DifficultyModel, aggregate_pilot, default_surrogate,
                         fit_difficulty_model, read_pilot_csv)
from .difficulty.model import CalibrationPoint
from .evalkit import (metadata_from_index, read_eval_jsonl, report,
                      write_reliability_csv, write_report)
from .manifest import ManifestError
from .pipeline import SynthesisError, load_index, synthesize_batch
from .resources import FAMILY_TYPES, load_all_shipped

EXIT_PARSE = 1
EXIT_INFEASIBLE = 2
EXIT_IO = 3


def _fail(code: int, message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


@click.group()
def main() -> None:
    """Procedural spatial-reasoning challenges with certified answers."""


@main.command()
@click.option("--seed", type=int, required=True, help="Master seed.")
@click.option("--out", "out_dir", type=click.Path(path_type=Path),
              required=True, help="Dataset directory to create.")
@click.option("--family", "families", multiple=True,
              type=click.Choice(FAMILY_TYPES), help="Restrict to families.")
@click.option("--count", type=int, default=150, show_default=True,
              help="Instances per family.")
@click.option("--bins/--no-bins", default=False, show_default=True,
              help="Stratify difficulty bins using a model.")
@click.option("--model", "model_path", type=click.Path(path_type=Path),
              default=None, help="Fitted difficulty model (default: surrogate).")
def gen(seed: int, out_dir: Path, families: tuple[str, ...], count: int,
        bins: bool, model_path: Path | None) -> None:
    """Generate a certified challenge dataset."""
    if count < 1:
        _fail(EXIT_PARSE, "--count must be at least 1")
    counts = {f: count for f in (families or FAMILY_TYPES)}
    model = None
    if bins:
        if model_path is not None:
            try:
                model = DifficultyModel.load(model_path, load_all_shipped())
            except (OSError, json.JSONDecodeError) as exc:
                _fail(EXIT_IO, f"cannot read model: {exc}")
            except ValueError as exc:
                _fail(EXIT_PARSE, str(exc))
        else:
            model = default_surrogate()
    try:
        index = synthesize_batch(out_dir, seed, counts=counts, model=model)
    except SynthesisError as exc:
        _fail(EXIT_INFEASIBLE, str(exc))
    except ValueError as exc:
        _fail(EXIT_INFEASIBLE, str(exc))
    except OSError as exc:
        _fail(EXIT_IO, str(exc))
    click.echo(f"wrote {len(index['instances'])} instances to {out_dir}")


@main.command()
@click.option("--seed", type=int, required=True,
              help="Seed for any stochastic steps.")
@click.option("--pilot", "pilot_path", type=click.Path(path_type=Path),
              required=True, help="Pilot CSV of human responses.")
@click.option("--dataset", "dataset_dir", type=click.Path(path_type=Path),
              required=True, help="Dataset the pilot ran against.")
@click.option("--out", "out_path", type=click.Path(path_type=Path),
              required=True, help="Where to write the fitted model JSON.")
@click.option("--alpha", type=float, default=0.6, show_default=True,
              help="Blend weight on the response-time signal.")
@click.option("--min-per-family", type=int, default=20, show_default=True)
def calibrate(seed: int, pilot_path: Path, dataset_dir: Path, out_path: Path,
              alpha: float, min_per_family: int) -> None:
    """Fit the difficulty map from pilot data."""
    del seed  # the fit itself is deterministic; kept for interface symmetry
    try:
        records = read_pilot_csv(pilot_path)
        index = load_index(dataset_dir)
    except OSError as exc:
        _fail(EXIT_IO, str(exc))
    except ValueError as exc:
        _fail(EXIT_PARSE, str(exc))
    params_by_id = {}
    for row in index["instances"]:
        inst_file = (Path(dataset_dir) / "instances" / row["instance_id"]
                     / "instance.json")
        try:
            doc = json.loads(inst_file.read_text())
        except OSError as exc:
            _fail(EXIT_IO, str(exc))
        params_by_id[row["instance_id"]] = (doc["family"], doc["params"])
    points = []
    for iid, agg in aggregate_pilot(records).items():
        if iid not in params_by_id or agg["mean_log_time"] is None:
            continue
        family, values = params_by_id[iid]
        points.append(CalibrationPoint(family, values, agg["mean_log_time"],
                                       agg["success_rate"]))
    try:
        model = fit_difficulty_model(points, load_all_shipped(), alpha=alpha,
                                     min_per_family=min_per_family)
    except ValueError as exc:
        _fail(EXIT_INFEASIBLE, str(exc))
    try:
        model.save(out_path)
    except OSError as exc:
        _fail(EXIT_IO, str(exc))
    lo, hi = model.thresholds
    click.echo(f"fitted {len(model.fits)} families from {len(points)} points; "
               f"bin cuts at {lo:.3f} / {hi:.3f}")


@main.command("eval")
@click.option("--records", "records_path", type=click.Path(path_type=Path),
              required=True, help="JSONL of subject predictions.")
@click.option("--dataset", "dataset_dir", type=click.Path(path_type=Path),
              required=True)
@click.option("--out", "out_path", type=click.Path(path_type=Path),
              required=True, help="Report JSON destination.")
@click.option("--k", type=int, default=3, show_default=True)
@click.option("--reliability-csv", "csv_path",
              type=click.Path(path_type=Path), default=None,
              help="Also export coverage-vs-reliability rows per family.")
def eval_cmd(records_path: Path, dataset_dir: Path, out_path: Path, k: int,
             csv_path: Path | None) -> None:
    """Score an evaluation run against a dataset."""
    try:
        records = read_eval_jsonl(records_path)
        index = load_index(dataset_dir)
    except OSError as exc:
        _fail(EXIT_IO, str(exc))
    except ValueError as exc:
        _fail(EXIT_PARSE, str(exc))
    meta = metadata_from_index(index)
    answers = {iid: m.correct_label for iid, m in meta.items()}
    try:
        doc = report(records, answers, meta, k=k)
    except ValueError as exc:
        _fail(EXIT_PARSE, str(exc))
    try:
        write_report(out_path, doc)
        if csv_path is not None:
            write_reliability_csv(csv_path, doc["by_family"], k=k)
    except OSError as exc:
        _fail(EXIT_IO, str(exc))
    overall = doc["overall"]
    click.echo(f"pass@1 {overall['pass_at_1']:.3f}  "
               f"pass@{k} {overall[f'pass_at_{k}']:.3f}  "
               f"k-of-k {overall['k_of_k']:.3f}")


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host: str, port: int) -> None:
    """Run the challenge service (settings via GEOGATE_* env vars)."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=host, port=port)


@main.command()
@click.option("--url", required=True, help="Base URL of a running service.")
@click.option("--family", type=click.Choice(FAMILY_TYPES), default=None)
@click.option("--label", default=None,
              help="Answer non-interactively with this label.")
def solve(url: str, family: str | None, label: str | None) -> None:
    """Thin client: fetch one challenge and submit an answer."""
    import urllib.error
    import urllib.request

    def call(method: str, path: str, payload: dict) -> dict:
        req = urllib.request.Request(
            url.rstrip("/") + path, method=method,
            data=json.dumps(payload).encode(),
            headers={"Content-Type": "application/json"})
        try:
            with urllib.request.urlopen(req) as resp:
                return json.loads(resp.read())
        except urllib.error.HTTPError as exc:
            _fail(EXIT_IO, f"{path}: HTTP {exc.code} {exc.read().decode()}")
        except urllib.error.URLError as exc:
            _fail(EXIT_IO, f"cannot reach {url}: {exc.reason}")

    body = {}
    if family:
        body["family"] = family
    challenge = call("POST", "/v1/challenge", body)
    click.echo(challenge["prompt"])
    for cand in challenge["candidates"]:
        text = cand["text"] or cand["panel_svg_url"]
        click.echo(f"  [{cand['label']}] {text}")
    answer = label or click.prompt("answer")
    result = call("POST", f"/v1/challenge/{challenge['token']}/answer",
                  {"label": answer})
    verdict = "correct" if result["correct"] else \
        f"wrong (answer was {result['correct_label']})"
    click.echo(f"{verdict} in {result['response_time_s']}s")
    sys.exit(0 if result["correct"] else 1)


if __name__ == "__main__":
    main()
