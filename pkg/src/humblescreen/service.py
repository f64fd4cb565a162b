"""HTTP API over a file store: jobs, screening runs, shortlists, reports.

The service is a thin layer; all computation lives in the library modules.
Every response is JSON except the optional static frontend mount.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any

from fastapi import FastAPI, Query, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .errors import ConflictError, InvalidInputError, NotFoundError
from .metrics import format_report_row, report_from_json
from .screening import Shortlist, compose_shortlist, screen
from .store import FileStore, RunParameters, ScreeningRun


class ScreenRequest(BaseModel):
    """Screening knobs; omitted fields fall back to the stock defaults."""

    samples: int = 100
    mask_prob: float = 0.5
    draws: int = 10000
    threshold: float = 0.01
    k: int = 50
    rho: float = 0.2
    seed: int = 0

    def to_parameters(self) -> RunParameters:
        return RunParameters(
            samples=self.samples,
            mask_prob=self.mask_prob,
            draws=self.draws,
            threshold=self.threshold,
            k=self.k,
            rho=self.rho,
            seed=self.seed,
        )


def run_summary(run: ScreeningRun) -> dict[str, Any]:
    return {
        "run_id": run.run_id,
        "job_id": run.job_id,
        "parameters": run.parameters.to_json(),
        "created_at": run.created_at,
        "status": run.status,
        "n": run.results["n"],
    }


def shortlist_json(shortlist: Shortlist) -> dict[str, Any]:
    def rows(entries) -> list[dict[str, Any]]:
        return [
            {
                "candidate_id": e.candidate_id,
                "label": e.label,
                "point_score": e.point_score,
                "expected_rank": e.expected_rank,
                "entropy": e.entropy,
                "variance": e.variance,
            }
            for e in entries
        ]

    return {
        "run_id": shortlist.run_id,
        "k": shortlist.k,
        "humble": shortlist.humble,
        "rho": shortlist.rho,
        "exploit": rows(shortlist.exploit),
        "explore": rows(shortlist.explore),
    }


def create_app(store: FileStore, static_dir: str | Path | None = None) -> FastAPI:
    """Build the API app over ``store``; optionally serve a static UI at /."""
    app = FastAPI(title="humblescreen", docs_url=None, redoc_url=None)

    @app.exception_handler(InvalidInputError)
    async def _bad_input(request: Request, exc: InvalidInputError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(NotFoundError)
    async def _not_found(request: Request, exc: NotFoundError) -> JSONResponse:
        return JSONResponse(status_code=404, content={"detail": str(exc)})

    @app.exception_handler(ConflictError)
    async def _conflict(request: Request, exc: ConflictError) -> JSONResponse:
        return JSONResponse(status_code=409, content={"detail": str(exc)})

    @app.get("/jobs")
    def get_jobs() -> dict[str, Any]:
        return {"jobs": store.list_jobs(), "candidates": len(store.candidates())}

    @app.get("/jobs/{job_id}")
    def get_job(job_id: str) -> dict[str, Any]:
        job = store.get_job(job_id)
        return {
            "id": job.id,
            "title": job.title,
            "description": job.description,
            "status": job.status,
            "requirements": dict(job.requirements),
            "runs": store.list_runs(job_id),
        }

    @app.post("/jobs/{job_id}/screen")
    def post_screen(job_id: str, request: ScreenRequest) -> dict[str, Any]:
        run, reused = screen(store, job_id, request.to_parameters())
        payload = run_summary(run)
        payload["reused"] = reused
        payload["report"] = run.results["report"]
        return payload

    @app.get("/runs/{run_id}")
    def get_run(run_id: str) -> dict[str, Any]:
        run = store.load_run(run_id)
        payload = run_summary(run)
        payload["report"] = run.results["report"]
        return payload

    @app.get("/runs/{run_id}/shortlist")
    def get_shortlist(
        run_id: str,
        k: int | None = Query(default=None),
        humble: bool = Query(default=True),
        rho: float | None = Query(default=None),
    ) -> dict[str, Any]:
        run = store.load_run(run_id)
        return shortlist_json(compose_shortlist(run, k=k, humble=humble, rho=rho))

    @app.get("/runs/{run_id}/rankset")
    def get_rankset(
        run_id: str, threshold: float | None = Query(default=None)
    ) -> dict[str, Any]:
        run = store.load_run(run_id)
        stored = run.parameters.threshold
        cutoff = stored if threshold is None else float(threshold)
        if not 0.0 <= cutoff < 1.0:
            raise InvalidInputError(f"threshold must lie in [0, 1), got {cutoff}")
        # Supports below the stored cutoff were never persisted, so an
        # effective cutoff can never be finer than the stored one.
        cutoff = max(cutoff, stored)
        return {
            "run_id": run.run_id,
            "draws": run.parameters.draws,
            "threshold": cutoff,
            "candidates": [
                {
                    "candidate_id": stat["candidate_id"],
                    "label": stat["label"],
                    "expected_rank": stat["expected_rank"],
                    "support": [
                        [rank, prob]
                        for rank, prob in stat["support"]
                        if prob >= cutoff
                    ],
                }
                for stat in run.results["stats"]
            ],
        }

    @app.get("/runs/{run_id}/report")
    def get_report(run_id: str) -> dict[str, Any]:
        run = store.load_run(run_id)
        job = store.get_job(run.job_id)
        report = run.results["report"]
        row = format_report_row(job.title, report_from_json(run.job_id, report))
        return {"run_id": run.run_id, "job_id": run.job_id, "title": job.title,
                **report, "row": row}

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app
