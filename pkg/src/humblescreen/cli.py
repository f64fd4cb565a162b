"""Command-line interface: ingest, screen, experiment, export, serve.

Exit codes: 0 on success, 1 on operational failures (missing entities,
rejected ingest files, conflicts), 2 on usage errors (bad flags or
argument values).
"""

from __future__ import annotations

import functools
import sys
from importlib import resources
from pathlib import Path

import click

from .errors import ConflictError, IngestError, InvalidInputError, NotFoundError
from .experiments import (
    DEFAULT_SIGMA_GRID,
    NoiseSweepConfig,
    dominance_verdict,
    run_sweep,
    summarize,
    write_summary_csv,
    write_trials_csv,
)
from .metrics import format_report_row, report_from_json
from .ranksets import write_rank_set_csv
from .store import FileStore, IngestSummary, RunParameters
from .screening import screen

STORE_OPTION = click.option(
    "--store",
    "store_dir",
    type=click.Path(file_okay=False, path_type=Path),
    default=Path("humblescreen-store"),
    envvar="HUMBLESCREEN_STORE",
    show_default=True,
    help="Store directory (created on first write).",
)


def _translate_errors(fn):
    """Map library exceptions onto the CLI exit-code contract."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except IngestError as exc:
            click.echo(f"error: ingest rejected {exc.path}", err=True)
            for line_no, message in exc.errors:
                where = f"line {line_no}" if line_no is not None else "file"
                click.echo(f"  {where}: {message}", err=True)
            sys.exit(1)
        except (NotFoundError, ConflictError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)
        except InvalidInputError as exc:
            raise click.UsageError(str(exc)) from exc

    return wrapper


@click.group()
def main() -> None:
    """Uncertainty-aware candidate screening."""


@main.command("ingest")
@click.argument(
    "files", nargs=-1, type=click.Path(exists=True, dir_okay=False, path_type=Path)
)
@click.option(
    "--bundled",
    is_flag=True,
    help="Also ingest the packaged demo pool and jobs.",
)
@STORE_OPTION
@_translate_errors
def cmd_ingest(files: tuple[Path, ...], bundled: bool, store_dir: Path) -> None:
    """Load candidate and job records from JSONL files.

    Each line is classified by its fields: records with "features" are
    candidates, records with "requirements" are jobs. A file with any
    invalid line is rejected as a whole.
    """
    if not files and not bundled:
        raise click.UsageError("give at least one file or --bundled")
    store = FileStore(store_dir)
    total = IngestSummary()
    if bundled:
        fixture_root = resources.files("humblescreen") / "fixtures"
        for name in ("candidates.jsonl", "jobs.jsonl"):
            with resources.as_file(fixture_root / name) as path:
                summary = store.ingest_file(path)
            click.echo(f"bundled {name}: {_format_summary(summary)}")
            total += summary
    for path in files:
        summary = store.ingest_file(path)
        click.echo(f"{path}: {_format_summary(summary)}")
        total += summary
    click.echo(f"total: {_format_summary(total)}")


def _format_summary(s: IngestSummary) -> str:
    parts = []
    if s.candidates_added or s.candidates_updated:
        parts.append(
            f"{s.candidates_added} candidates added"
            + (f" ({s.candidates_updated} updated)" if s.candidates_updated else "")
        )
    if s.jobs_added or s.jobs_updated:
        parts.append(
            f"{s.jobs_added} jobs added"
            + (f" ({s.jobs_updated} updated)" if s.jobs_updated else "")
        )
    return ", ".join(parts) if parts else "nothing new"


@main.command("screen")
@click.argument("job_id")
@click.option("--samples", default=100, show_default=True, help="Masked score samples per candidate.")
@click.option("--mask-prob", default=0.5, show_default=True, help="Per-feature masking probability.")
@click.option("--draws", default=10000, show_default=True, help="Monte Carlo ranking draws.")
@click.option("--threshold", default=0.01, show_default=True, help="Support sparsification cutoff.")
@click.option("--k", default=50, show_default=True, help="Shortlist size for the report.")
@click.option("--rho", default=0.2, show_default=True, help="Fraction of shortlist slots for exploration.")
@click.option("--seed", default=0, show_default=True, help="Master seed.")
@STORE_OPTION
@_translate_errors
def cmd_screen(
    job_id: str,
    samples: int,
    mask_prob: float,
    draws: int,
    threshold: float,
    k: int,
    rho: float,
    seed: int,
    store_dir: Path,
) -> None:
    """Run (or reuse) a screening of the stored pool against JOB_ID.

    Output contains no timestamps, so identical stores and flags produce
    byte-identical output.
    """
    store = FileStore(store_dir)
    params = RunParameters(
        samples=samples,
        mask_prob=mask_prob,
        draws=draws,
        threshold=threshold,
        k=k,
        rho=rho,
        seed=seed,
    )
    run, _ = screen(store, job_id, params)
    job = store.get_job(job_id)
    report = run.results["report"]
    click.echo(f"run: {run.run_id}")
    click.echo(f"job: {job.id} ({job.title})")
    click.echo(f"pool: {run.results['n']} candidates")
    click.echo(
        "parameters: "
        f"samples={params.samples} mask_prob={params.mask_prob} "
        f"draws={params.draws} threshold={params.threshold} "
        f"k={params.k} rho={params.rho} seed={params.seed}"
    )
    click.echo(format_report_row(job.title, report_from_json(job.id, report)))


@main.command("experiment")
@click.option("--n", default=100, show_default=True, help="Synthetic pool size.")
@click.option("--trials", default=30, show_default=True, help="Trials per noise level.")
@click.option("--samples", default=50, show_default=True, help="Oracle queries per candidate per trial.")
@click.option("--draws", default=2000, show_default=True, help="Monte Carlo ranking draws per trial.")
@click.option("--seed", default=0, show_default=True, help="Master seed.")
@click.option(
    "--sigma-grid",
    default=",".join(str(s) for s in DEFAULT_SIGMA_GRID),
    show_default=True,
    help="Comma-separated noise levels.",
)
@click.option(
    "--out-dir",
    type=click.Path(file_okay=False, path_type=Path),
    default=Path("experiment-out"),
    show_default=True,
    help="Where trials.csv and summary.csv are written.",
)
@_translate_errors
def cmd_experiment(
    n: int,
    trials: int,
    samples: int,
    draws: int,
    seed: int,
    sigma_grid: str,
    out_dir: Path,
) -> None:
    """Run the synthetic noise sweep and write per-trial and summary CSVs."""
    try:
        grid = tuple(float(s) for s in sigma_grid.split(",") if s.strip())
    except ValueError:
        raise click.UsageError(f"bad --sigma-grid value: {sigma_grid!r}")
    config = NoiseSweepConfig(
        n=n, sigma_grid=grid, trials=trials, samples=samples, draws=draws
    )
    result = run_sweep(config, seed=seed)
    summaries = summarize(result)

    out_dir.mkdir(parents=True, exist_ok=True)
    with (out_dir / "trials.csv").open("w", newline="") as fh:
        write_trials_csv(result, fh)
    with (out_dir / "summary.csv").open("w", newline="") as fh:
        write_summary_csv(summaries, fh)

    click.echo(f"{'sigma':>6}  {'trials':>6}  {'det':>6}  {'humble':>6}  {'diff':>7}  {'pos':>5}")
    for s in summaries:
        click.echo(
            f"{s.sigma:6.2f}  {s.trials:6d}  {s.mean_deterministic:6.3f}  "
            f"{s.mean_humble:6.3f}  {s.mean_diff:+7.4f}  {s.positive_fraction:5.2f}"
        )
    if dominance_verdict(result):
        click.echo("dominance: expected-rank ordering wins or ties at every sigma > 0")
    else:
        click.echo("dominance: does not hold on this run")
    click.echo(f"wrote {out_dir / 'trials.csv'} and {out_dir / 'summary.csv'}")


@main.command("export-rankset")
@click.argument("run_id")
@click.option(
    "--threshold",
    default=None,
    type=float,
    help="Probability cutoff; defaults to the run's stored threshold.",
)
@click.option(
    "--out",
    type=click.Path(dir_okay=False, allow_dash=True, path_type=Path),
    default=Path("-"),
    show_default=True,
    help="Output CSV path, - for stdout.",
)
@STORE_OPTION
@_translate_errors
def cmd_export_rankset(
    run_id: str, threshold: float | None, out: Path, store_dir: Path
) -> None:
    """Export a stored run's rank supports as candidate_id,rank,probability."""
    if threshold is not None and not 0.0 <= threshold < 1.0:
        raise click.UsageError(f"threshold must lie in [0, 1), got {threshold}")
    store = FileStore(store_dir)
    run = store.load_run(run_id)
    cutoff = run.parameters.threshold if threshold is None else threshold
    cutoff = max(cutoff, run.parameters.threshold)

    triplets = (
        (stat["candidate_id"], rank, prob)
        for stat in run.results["stats"]
        for rank, prob in stat["support"]
        if prob >= cutoff
    )
    with click.open_file(str(out), "w") as fh:
        count = write_rank_set_csv(triplets, fh)
    if str(out) != "-":
        click.echo(f"wrote {count} records to {out}")


@main.command("report")
@click.argument("run_id")
@STORE_OPTION
@_translate_errors
def cmd_report(run_id: str, store_dir: Path) -> None:
    """Print the stored comparison row for a run."""
    store = FileStore(store_dir)
    run = store.load_run(run_id)
    job = store.get_job(run.job_id)
    report = run.results["report"]
    click.echo(format_report_row(job.title, report_from_json(run.job_id, report)))


@main.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
@click.option(
    "--static-dir",
    type=click.Path(file_okay=False, path_type=Path),
    default=None,
    help="Directory with a built web UI to serve at /.",
)
@STORE_OPTION
@_translate_errors
def cmd_serve(host: str, port: int, static_dir: Path | None, store_dir: Path) -> None:
    """Serve the HTTP API (and optionally a static UI) over the store."""
    import uvicorn

    from .service import create_app

    app = create_app(FileStore(store_dir), static_dir=static_dir)
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
