"""End-to-end screening runs and shortlist composition.

A run scores the stored pool against one job, estimates the rank-set
matrix from masked-score distributions, and persists everything needed to
answer shortlist, rank-set, and report queries without recomputation.

Run ids are content hashes over the job, the pool, and the parameters, so
repeating a screen with unchanged inputs reuses the stored run instead of
duplicating it.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from typing import Any, Sequence

from .errors import InvalidInputError
from .metrics import compare
from .ranksets import estimate_rank_set, humble_order, rank_stats
from .scoring import CandidateProfile, JobSpec, ReferenceScorer, empirical_scores
from .store import FileStore, RunParameters, ScreeningRun, utc_now


@dataclass(frozen=True)
class ShortlistEntry:
    """One shortlist row. Uncertainty fields are None when the shortlist
    was composed without the rank-set view."""

    candidate_id: str
    label: str | None
    point_score: float
    expected_rank: float | None
    entropy: float | None
    variance: float | None


@dataclass(frozen=True)
class Shortlist:
    """Exploit rows fill the merit slots; explore rows fill the
    uncertainty slots (empty unless composed with ``humble=True``)."""

    run_id: str
    k: int
    humble: bool
    rho: float
    exploit: tuple[ShortlistEntry, ...]
    explore: tuple[ShortlistEntry, ...]


def run_id_for(
    job: JobSpec,
    profiles: Sequence[CandidateProfile],
    params: RunParameters,
) -> str:
    """Deterministic run id from the full screening input.

    Any change to the job requirements, the pool contents, or the
    parameters yields a different id; cosmetic changes (pool order,
    feature dict order) do not.
    """
    pool = sorted(
        (p.id, sorted(p.features.items()), p.label) for p in profiles
    )
    payload = json.dumps(
        {
            "job_id": job.id,
            "requirements": sorted(job.requirements.items()),
            "pool": pool,
            "parameters": params.to_json(),
        },
        sort_keys=True,
    ).encode()
    return "run-" + hashlib.blake2b(payload, digest_size=6).hexdigest()


def deterministic_ranking(
    profiles: Sequence[CandidateProfile], point_scores: dict[str, float]
) -> list[str]:
    """Point-score ordering, best first; score ties fall back to id."""
    return sorted(
        (p.id for p in profiles), key=lambda cid: (-point_scores[cid], cid)
    )


def execute_run(
    job: JobSpec,
    profiles: Sequence[CandidateProfile],
    params: RunParameters,
) -> ScreeningRun:
    """Score, estimate, and package one screening run (pure computation)."""
    if len(profiles) < 2:
        raise InvalidInputError("screening needs at least 2 candidates in the pool")
    if params.k > len(profiles):
        raise InvalidInputError(
            f"k={params.k} exceeds pool size {len(profiles)}"
        )
    dists = empirical_scores(
        job,
        profiles,
        ReferenceScorer(),
        samples=params.samples,
        mask_prob=params.mask_prob,
        seed=params.seed,
    )
    point_scores = {d.candidate_id: float(d.point_score) for d in dists}
    rs = estimate_rank_set(dists, draws=params.draws, seed=params.seed)
    stats = rank_stats(rs, threshold=params.threshold)
    stats_by_id = {s.candidate_id: s for s in stats}

    det_ranking = deterministic_ranking(profiles, point_scores)
    humble_ranking = humble_order(rs)
    report = compare(job.id, det_ranking, rs, k=params.k)

    labels = {p.id: p.label for p in profiles}
    results: dict[str, Any] = {
        "n": len(profiles),
        "deterministic_ranking": det_ranking,
        "humble_ranking": humble_ranking,
        "stats": [
            {
                "candidate_id": cid,
                "label": labels[cid],
                "point_score": point_scores[cid],
                "expected_rank": stats_by_id[cid].expected_rank,
                "entropy": stats_by_id[cid].entropy,
                "variance": stats_by_id[cid].variance,
                "support": [list(pair) for pair in stats_by_id[cid].support],
            }
            for cid in humble_ranking
        ],
        "report": {
            "k": report.k,
            "jaccard": report.jaccard,
            "rbo": report.rbo,
            "mean_entropy": report.mean_entropy,
            "deterministic_top": list(report.deterministic_top),
            "humble_top": list(report.humble_top),
        },
    }
    return ScreeningRun(
        run_id=run_id_for(job, profiles, params),
        job_id=job.id,
        parameters=params,
        created_at=utc_now(),
        status="complete",
        results=results,
    )


def screen(
    store: FileStore, job_id: str, params: RunParameters
) -> tuple[ScreeningRun, bool]:
    """Screen the stored pool against a stored job.

    Returns ``(run, reused)``; ``reused`` is True when an identical run
    already existed and was returned instead of recomputed.
    """
    job = store.get_job(job_id)
    profiles = store.candidates()
    run_id = run_id_for(job, profiles, params)
    existing = store.try_load_run(run_id)
    if existing is not None:
        return existing, True
    run = execute_run(job, profiles, params)
    return store.save_run(run), False


def compose_shortlist(
    run: ScreeningRun,
    k: int | None = None,
    humble: bool = True,
    rho: float | None = None,
) -> Shortlist:
    """Compose a shortlist of ``k`` slots from a stored run.

    With ``humble=True``, ``m = floor(rho * k)`` slots explore the
    highest-entropy candidates and the remaining ``k - m`` exploit the
    expected-rank order. With ``humble=False`` the shortlist is the plain
    point-score top ``k`` with no uncertainty fields; it depends only on
    the point scores, never on draws, samples, or seed.
    """
    k = run.parameters.k if k is None else int(k)
    rho = run.parameters.rho if rho is None else float(rho)
    n = run.results["n"]
    if not 1 <= k <= n:
        raise InvalidInputError(f"k must lie in [1, {n}], got {k}")
    if not 0.0 <= rho <= 1.0:
        raise InvalidInputError(f"rho must lie in [0, 1], got {rho}")

    stats_by_id = {s["candidate_id"]: s for s in run.results["stats"]}

    if not humble:
        exploit = tuple(
            _entry(stats_by_id[cid], with_uncertainty=False)
            for cid in run.results["deterministic_ranking"][:k]
        )
        return Shortlist(
            run_id=run.run_id,
            k=k,
            humble=False,
            rho=rho,
            exploit=exploit,
            explore=(),
        )

    m = math.floor(rho * k)
    exploit_ids = run.results["humble_ranking"][: k - m]
    taken = set(exploit_ids)
    entropy_order = sorted(
        stats_by_id, key=lambda cid: (-stats_by_id[cid]["entropy"], cid)
    )
    explore_ids = [cid for cid in entropy_order if cid not in taken][:m]
    return Shortlist(
        run_id=run.run_id,
        k=k,
        humble=True,
        rho=rho,
        exploit=tuple(
            _entry(stats_by_id[cid], with_uncertainty=True) for cid in exploit_ids
        ),
        explore=tuple(
            _entry(stats_by_id[cid], with_uncertainty=True) for cid in explore_ids
        ),
    )


def _entry(stat: dict[str, Any], with_uncertainty: bool) -> ShortlistEntry:
    return ShortlistEntry(
        candidate_id=stat["candidate_id"],
        label=stat.get("label"),
        point_score=stat["point_score"],
        expected_rank=stat["expected_rank"] if with_uncertainty else None,
        entropy=stat["entropy"] if with_uncertainty else None,
        variance=stat["variance"] if with_uncertainty else None,
    )
