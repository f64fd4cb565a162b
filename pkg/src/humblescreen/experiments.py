"""Noise-sweep experiment: does expected-rank ordering beat a point draw?

A synthetic pool with known ground truth is scored through a noisy oracle.
For each noise level the sweep runs paired trials: one noisy draw per
candidate gives the deterministic ranking, while the full set of draws
feeds the rank-set estimator whose expected-rank ordering is the
uncertainty-aware alternative. Both are compared against the true ordering
with rank-biased overlap. Averaged over trials, the expected-rank ordering
should recover the truth at least as well at every positive noise level.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import IO, Mapping

import numpy as np

from .errors import InvalidInputError
from .metrics import DEFAULT_PERSISTENCE, rbo
from .ranksets import EmpiricalScoreDistribution, estimate_rank_set, humble_order
from .rng import derive_seed
from .scoring import CandidateProfile, JobSpec, synthetic_oracle

DEFAULT_SIGMA_GRID = (0.0, 0.05, 0.1, 0.2, 0.4, 0.8, 1.6)

# The oracle ignores job content; a placeholder keeps the interface uniform.
_SWEEP_JOB = JobSpec(
    id="sweep", title="Synthetic noise sweep", requirements={"truth": 1.0}
)


@dataclass(frozen=True)
class NoiseSweepConfig:
    """Sweep shape: pool size, noise grid, and per-trial budgets."""

    n: int = 100
    sigma_grid: tuple[float, ...] = DEFAULT_SIGMA_GRID
    trials: int = 30
    samples: int = 50
    draws: int = 2000
    persistence: float = DEFAULT_PERSISTENCE

    def __post_init__(self) -> None:
        if self.n < 2:
            raise InvalidInputError("sweep needs at least 2 candidates")
        if self.trials < 1:
            raise InvalidInputError("sweep needs at least 1 trial")
        if self.samples < 1 or self.draws < 1:
            raise InvalidInputError("samples and draws must be >= 1")
        if any(s < 0 for s in self.sigma_grid):
            raise InvalidInputError("noise levels must be >= 0")


@dataclass(frozen=True)
class TrialResult:
    """Paired outcome of one trial at one noise level."""

    sigma: float
    trial: int
    rbo_deterministic: float
    rbo_humble: float

    @property
    def diff(self) -> float:
        return self.rbo_humble - self.rbo_deterministic


@dataclass(frozen=True)
class SigmaSummary:
    """Trial aggregates at one noise level."""

    sigma: float
    trials: int
    mean_deterministic: float
    mean_humble: float
    mean_diff: float
    positive_fraction: float


@dataclass(frozen=True)
class SweepResult:
    config: NoiseSweepConfig
    seed: int
    trials: tuple[TrialResult, ...]


def generate_truth(n: int) -> dict[str, float]:
    """Ground-truth scores: ids c1..cn, scores evenly spaced from 1 to 0.

    The true ranking is therefore c1, c2, ..., cn.
    """
    if n < 2:
        raise InvalidInputError("need at least 2 candidates")
    return {f"c{i + 1}": s for i, s in enumerate(np.linspace(1.0, 0.0, n))}


def run_trial(
    true_scores: Mapping[str, float],
    sigma: float,
    samples: int,
    draws: int,
    seed: int,
    persistence: float = DEFAULT_PERSISTENCE,
) -> tuple[float, float]:
    """One paired trial; returns (deterministic RBO, expected-rank RBO).

    The oracle is queried ``samples`` times per candidate. The first reply
    doubles as the single point score the deterministic ranking sorts by,
    so both orderings see exactly the same noise realization.
    """
    oracle = synthetic_oracle(true_scores, sigma, seed=seed)
    true_ranking = sorted(true_scores, key=lambda cid: (-true_scores[cid], cid))
    dists = []
    for cid in true_ranking:
        probe = CandidateProfile(id=cid, features={})
        scores = tuple(oracle.score(_SWEEP_JOB, probe) for _ in range(samples))
        dists.append(EmpiricalScoreDistribution(cid, scores, point_score=scores[0]))

    deterministic = sorted(dists, key=lambda d: (-d.samples[0], d.candidate_id))
    det_ranking = [d.candidate_id for d in deterministic]

    rs = estimate_rank_set(dists, draws=draws, seed=seed)
    humble_ranking = humble_order(rs)

    return (
        rbo(true_ranking, det_ranking, p=persistence),
        rbo(true_ranking, humble_ranking, p=persistence),
    )


def run_sweep(config: NoiseSweepConfig, seed: int = 0) -> SweepResult:
    """Run every (noise level, trial) cell with independently derived seeds."""
    true_scores = generate_truth(config.n)
    results = []
    for si, sigma in enumerate(config.sigma_grid):
        for t in range(config.trials):
            det, humble = run_trial(
                true_scores,
                sigma,
                samples=config.samples,
                draws=config.draws,
                seed=derive_seed(seed, "sweep", si, t),
                persistence=config.persistence,
            )
            results.append(
                TrialResult(
                    sigma=sigma, trial=t, rbo_deterministic=det, rbo_humble=humble
                )
            )
    return SweepResult(config=config, seed=seed, trials=tuple(results))


def summarize(result: SweepResult) -> tuple[SigmaSummary, ...]:
    """Per-noise-level means and the fraction of trials the humble order won."""
    out = []
    for sigma in result.config.sigma_grid:
        rows = [t for t in result.trials if t.sigma == sigma]
        diffs = np.array([t.diff for t in rows])
        out.append(
            SigmaSummary(
                sigma=sigma,
                trials=len(rows),
                mean_deterministic=float(
                    np.mean([t.rbo_deterministic for t in rows])
                ),
                mean_humble=float(np.mean([t.rbo_humble for t in rows])),
                mean_diff=float(np.mean(diffs)),
                positive_fraction=float(np.mean(diffs > 0)),
            )
        )
    return tuple(out)


def dominance_verdict(result: SweepResult) -> bool:
    """True iff the expected-rank ordering's mean RBO is at least the
    deterministic ordering's at every positive noise level."""
    return all(
        s.mean_humble >= s.mean_deterministic
        for s in summarize(result)
        if s.sigma > 0
    )


def write_trials_csv(result: SweepResult, out: IO[str]) -> int:
    """One row per trial; returns the row count."""
    writer = csv.writer(out)
    writer.writerow(["sigma", "trial", "rbo_deterministic", "rbo_humble", "diff"])
    for t in result.trials:
        writer.writerow(
            [t.sigma, t.trial, repr(t.rbo_deterministic), repr(t.rbo_humble), repr(t.diff)]
        )
    return len(result.trials)


def write_summary_csv(summaries: tuple[SigmaSummary, ...], out: IO[str]) -> int:
    """One row per noise level; returns the row count."""
    writer = csv.writer(out)
    writer.writerow(
        [
            "sigma",
            "trials",
            "mean_rbo_deterministic",
            "mean_rbo_humble",
            "mean_diff",
            "positive_fraction",
        ]
    )
    for s in summaries:
        writer.writerow(
            [
                s.sigma,
                s.trials,
                repr(s.mean_deterministic),
                repr(s.mean_humble),
                repr(s.mean_diff),
                repr(s.positive_fraction),
            ]
        )
    return len(summaries)
