"""JSONL-backed store for candidate pools, jobs, and screening runs.

Each entity class lives in its own append-style JSONL file under the store
root: ``candidates.jsonl``, ``jobs.jsonl``, ``runs.jsonl``. Mutations take
an advisory file lock and rewrite the target file via a temp file and
atomic rename, so concurrent readers never observe a torn file. Runs are
immutable once saved; saving an identical run again is a no-op.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Iterable

from filelock import FileLock

from .errors import ConflictError, IngestError, InvalidInputError, NotFoundError
from .scoring import CandidateProfile, JobSpec

CANDIDATES_FILE = "candidates.jsonl"
JOBS_FILE = "jobs.jsonl"
RUNS_FILE = "runs.jsonl"


@dataclass(frozen=True)
class RunParameters:
    """Knobs a screening run was executed with."""

    samples: int = 100
    mask_prob: float = 0.5
    draws: int = 10000
    threshold: float = 0.01
    k: int = 50
    rho: float = 0.2
    seed: int = 0

    def __post_init__(self) -> None:
        if self.samples < 1:
            raise InvalidInputError("samples must be >= 1")
        if not 0.0 < self.mask_prob < 1.0:
            raise InvalidInputError("mask_prob must lie in (0, 1)")
        if self.draws < 1:
            raise InvalidInputError("draws must be >= 1")
        if not 0.0 <= self.threshold < 1.0:
            raise InvalidInputError("threshold must lie in [0, 1)")
        if self.k < 1:
            raise InvalidInputError("k must be >= 1")
        if not 0.0 <= self.rho <= 1.0:
            raise InvalidInputError("rho must lie in [0, 1]")

    def to_json(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "RunParameters":
        return cls(**data)


@dataclass(frozen=True)
class ScreeningRun:
    """A completed screening of one job against the stored pool."""

    run_id: str
    job_id: str
    parameters: RunParameters
    created_at: str
    status: str
    results: dict[str, Any]

    def to_json(self) -> dict[str, Any]:
        return {
            "run_id": self.run_id,
            "job_id": self.job_id,
            "parameters": self.parameters.to_json(),
            "created_at": self.created_at,
            "status": self.status,
            "results": self.results,
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "ScreeningRun":
        return cls(
            run_id=data["run_id"],
            job_id=data["job_id"],
            parameters=RunParameters.from_json(data["parameters"]),
            created_at=data["created_at"],
            status=data["status"],
            results=data["results"],
        )


@dataclass(frozen=True)
class IngestSummary:
    """Outcome of one ingest call."""

    candidates_added: int = 0
    candidates_updated: int = 0
    jobs_added: int = 0
    jobs_updated: int = 0

    def __add__(self, other: "IngestSummary") -> "IngestSummary":
        return IngestSummary(
            self.candidates_added + other.candidates_added,
            self.candidates_updated + other.candidates_updated,
            self.jobs_added + other.jobs_added,
            self.jobs_updated + other.jobs_updated,
        )


def utc_now() -> str:
    """Current time as an ISO-8601 UTC timestamp with second precision."""
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def candidate_to_json(profile: CandidateProfile) -> dict[str, Any]:
    return {"id": profile.id, "features": dict(profile.features), "label": profile.label}


def candidate_from_json(data: dict[str, Any]) -> CandidateProfile:
    if not isinstance(data, dict):
        raise InvalidInputError("candidate record must be an object")
    if not isinstance(data.get("id"), str) or not data["id"]:
        raise InvalidInputError("candidate record needs a non-empty string 'id'")
    features = data.get("features")
    if not isinstance(features, dict):
        raise InvalidInputError("candidate record needs a 'features' object")
    for name, value in features.items():
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise InvalidInputError(f"feature {name!r} must be a number")
    label = data.get("label")
    if label is not None and not isinstance(label, str):
        raise InvalidInputError("candidate 'label' must be a string when present")
    return CandidateProfile(id=data["id"], features=features, label=label)


def job_to_json(job: JobSpec) -> dict[str, Any]:
    return {
        "id": job.id,
        "title": job.title,
        "requirements": dict(job.requirements),
        "description": job.description,
        "status": job.status,
    }


def job_from_json(data: dict[str, Any]) -> JobSpec:
    if not isinstance(data, dict):
        raise InvalidInputError("job record must be an object")
    if not isinstance(data.get("id"), str) or not data["id"]:
        raise InvalidInputError("job record needs a non-empty string 'id'")
    if not isinstance(data.get("title"), str) or not data["title"]:
        raise InvalidInputError("job record needs a non-empty string 'title'")
    requirements = data.get("requirements")
    if not isinstance(requirements, dict) or not requirements:
        raise InvalidInputError("job record needs a non-empty 'requirements' object")
    for name, value in requirements.items():
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise InvalidInputError(f"requirement {name!r} must be a number")
    status = data.get("status", "open")
    if status not in ("open", "closed"):
        raise InvalidInputError(f"job status must be 'open' or 'closed', got {status!r}")
    return JobSpec(
        id=data["id"],
        title=data["title"],
        requirements=requirements,
        description=str(data.get("description", "")),
        status=status,
    )


def classify_record(data: dict[str, Any]) -> str:
    """Guess whether a parsed JSONL record is a candidate or a job.

    Candidates carry ``features``; jobs carry ``requirements`` (and a
    title). A record with both or neither is ambiguous.
    """
    has_features = isinstance(data, dict) and "features" in data
    has_requirements = isinstance(data, dict) and "requirements" in data
    if has_features and not has_requirements:
        return "candidate"
    if has_requirements and not has_features:
        return "job"
    raise InvalidInputError(
        "record must have exactly one of 'features' (candidate) or "
        "'requirements' (job)"
    )


class FileStore:
    """File-backed store rooted at a directory it creates on demand."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._lock = FileLock(str(self.root / ".store.lock"))

    # -- generic JSONL plumbing ------------------------------------------

    def _path(self, name: str) -> Path:
        return self.root / name

    def _read_records(self, name: str) -> list[dict[str, Any]]:
        path = self._path(name)
        if not path.exists():
            return []
        records = []
        with path.open("r", encoding="utf-8") as fh:
            for line_no, line in enumerate(fh, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    records.append(json.loads(line))
                except json.JSONDecodeError as exc:
                    raise IngestError(
                        str(path), [(line_no, f"invalid JSON: {exc.msg}")]
                    ) from None
        return records

    def _write_records(self, name: str, records: Iterable[dict[str, Any]]) -> None:
        """Replace a JSONL file atomically (temp file + rename)."""
        path = self._path(name)
        fd, tmp = tempfile.mkstemp(dir=str(self.root), suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                for record in records:
                    fh.write(json.dumps(record, sort_keys=True) + "\n")
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    # -- ingest ----------------------------------------------------------

    def ingest_pool(self, path: str | Path) -> IngestSummary:
        """Ingest a JSONL file of candidate profiles.

        All lines are validated before anything is written; any bad line
        fails the whole file with per-line messages. Re-ingesting an id
        replaces the stored record.
        """
        return self._ingest(path, expect="candidate")

    def ingest_jobs(self, path: str | Path) -> IngestSummary:
        """Ingest a JSONL file of job specs. Same all-or-nothing contract."""
        return self._ingest(path, expect="job")

    def ingest_file(self, path: str | Path) -> IngestSummary:
        """Ingest a JSONL file, classifying each record by its fields."""
        return self._ingest(path, expect=None)

    def _ingest(self, path: str | Path, expect: str | None) -> IngestSummary:
        path = Path(path)
        if not path.exists():
            raise IngestError(str(path), [(None, "file does not exist")])
        new_candidates: dict[str, CandidateProfile] = {}
        new_jobs: dict[str, JobSpec] = {}
        errors: list[tuple[int | None, str]] = []
        with path.open("r", encoding="utf-8") as fh:
            for line_no, line in enumerate(fh, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    data = json.loads(line)
                except json.JSONDecodeError as exc:
                    errors.append((line_no, f"invalid JSON: {exc.msg}"))
                    continue
                try:
                    kind = classify_record(data)
                    if expect is not None and kind != expect:
                        raise InvalidInputError(f"expected a {expect} record")
                    if kind == "candidate":
                        profile = candidate_from_json(data)
                        if profile.id in new_candidates:
                            raise InvalidInputError(
                                f"duplicate candidate id {profile.id!r} in file"
                            )
                        new_candidates[profile.id] = profile
                    else:
                        job = job_from_json(data)
                        if job.id in new_jobs:
                            raise InvalidInputError(
                                f"duplicate job id {job.id!r} in file"
                            )
                        new_jobs[job.id] = job
                except InvalidInputError as exc:
                    errors.append((line_no, str(exc)))
        if not errors and not new_candidates and not new_jobs:
            errors.append((None, "file contains no records"))
        if errors:
            raise IngestError(str(path), errors)

        with self._lock:
            summary = IngestSummary()
            if new_candidates:
                summary += self._upsert_candidates(new_candidates)
            if new_jobs:
                summary += self._upsert_jobs(new_jobs)
        return summary

    def _upsert_candidates(
        self, incoming: dict[str, CandidateProfile]
    ) -> IngestSummary:
        existing = {c.id: c for c in self._load_candidates()}
        added = sum(1 for cid in incoming if cid not in existing)
        existing.update(incoming)
        self._write_records(
            CANDIDATES_FILE,
            (candidate_to_json(existing[cid]) for cid in sorted(existing)),
        )
        return IngestSummary(
            candidates_added=added, candidates_updated=len(incoming) - added
        )

    def _upsert_jobs(self, incoming: dict[str, JobSpec]) -> IngestSummary:
        existing = {j.id: j for j in self._load_jobs()}
        added = sum(1 for jid in incoming if jid not in existing)
        existing.update(incoming)
        self._write_records(
            JOBS_FILE, (job_to_json(existing[jid]) for jid in sorted(existing))
        )
        return IngestSummary(jobs_added=added, jobs_updated=len(incoming) - added)

    # -- reads -----------------------------------------------------------

    def _load_candidates(self) -> list[CandidateProfile]:
        return [candidate_from_json(r) for r in self._read_records(CANDIDATES_FILE)]

    def _load_jobs(self) -> list[JobSpec]:
        return [job_from_json(r) for r in self._read_records(JOBS_FILE)]

    def candidates(self) -> list[CandidateProfile]:
        """All stored candidate profiles, ordered by id."""
        return sorted(self._load_candidates(), key=lambda c: c.id)

    def jobs(self) -> list[JobSpec]:
        """All stored jobs, ordered by id."""
        return sorted(self._load_jobs(), key=lambda j: j.id)

    def get_job(self, job_id: str) -> JobSpec:
        for job in self._load_jobs():
            if job.id == job_id:
                return job
        raise NotFoundError(f"no job with id {job_id!r}")

    def list_jobs(self) -> list[dict[str, Any]]:
        """Job summaries with per-job run counts, ordered by id."""
        run_counts: dict[str, int] = {}
        for record in self._read_records(RUNS_FILE):
            run_counts[record["job_id"]] = run_counts.get(record["job_id"], 0) + 1
        return [
            {
                "id": job.id,
                "title": job.title,
                "status": job.status,
                "description": job.description,
                "runs": run_counts.get(job.id, 0),
            }
            for job in self.jobs()
        ]

    # -- runs --------------------------------------------------------------

    def save_run(self, run: ScreeningRun) -> ScreeningRun:
        """Persist a run. Runs are immutable: re-saving the same run id is
        a no-op if the payload matches and a conflict otherwise."""
        with self._lock:
            records = self._read_records(RUNS_FILE)
            payload = run.to_json()
            for record in records:
                if record["run_id"] == run.run_id:
                    if _same_run(record, payload):
                        return ScreeningRun.from_json(record)
                    raise ConflictError(
                        f"run {run.run_id!r} already exists with different content"
                    )
            records.append(payload)
            self._write_records(RUNS_FILE, records)
        return run

    def load_run(self, run_id: str) -> ScreeningRun:
        for record in self._read_records(RUNS_FILE):
            if record["run_id"] == run_id:
                return ScreeningRun.from_json(record)
        raise NotFoundError(f"no run with id {run_id!r}")

    def try_load_run(self, run_id: str) -> ScreeningRun | None:
        try:
            return self.load_run(run_id)
        except NotFoundError:
            return None

    def list_runs(self, job_id: str | None = None) -> list[dict[str, Any]]:
        """Run summaries (no results payload), newest first."""
        summaries = []
        for record in self._read_records(RUNS_FILE):
            if job_id is not None and record["job_id"] != job_id:
                continue
            summaries.append(
                {
                    "run_id": record["run_id"],
                    "job_id": record["job_id"],
                    "parameters": record["parameters"],
                    "created_at": record["created_at"],
                    "status": record["status"],
                }
            )
        summaries.sort(key=lambda r: (r["created_at"], r["run_id"]), reverse=True)
        return summaries


def _same_run(a: dict[str, Any], b: dict[str, Any]) -> bool:
    """Equality modulo the wall-clock timestamp."""

    def strip(record: dict[str, Any]) -> dict[str, Any]:
        return {k: v for k, v in record.items() if k != "created_at"}

    return strip(a) == strip(b)
