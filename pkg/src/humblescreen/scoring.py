"""Candidate scoring and perturbation-based score distributions.

Scorers map a candidate profile to a relevance score for a job. The score
distribution for a candidate is produced the way local surrogate explainers
probe a model: perturb the input by randomly masking features, re-score
each perturbed copy, and keep the raw scores. Opaque scorers plug in
through the same interface, only score(job, profile) is required.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .errors import InvalidInputError
from .ranksets import EmpiricalScoreDistribution
from .rng import substream

DEFAULT_SAMPLES = 100
DEFAULT_MASK_PROB = 0.5


@dataclass(frozen=True)
class CandidateProfile:
    """A candidate as a non-negative feature vector (skill strengths)."""

    id: str
    features: Mapping[str, float]
    label: str | None = None

    def __post_init__(self) -> None:
        feats = {str(k): float(v) for k, v in self.features.items()}
        for name, value in feats.items():
            if value < 0:
                raise InvalidInputError(
                    f"candidate {self.id!r} has negative feature {name!r}"
                )
        object.__setattr__(self, "features", feats)


@dataclass(frozen=True)
class JobSpec:
    """A job with weighted feature requirements."""

    id: str
    title: str
    requirements: Mapping[str, float]
    description: str = ""
    status: str = "open"

    def __post_init__(self) -> None:
        reqs = {str(k): float(v) for k, v in self.requirements.items()}
        if not reqs:
            raise InvalidInputError(f"job {self.id!r} has no requirements")
        for name, weight in reqs.items():
            if weight <= 0:
                raise InvalidInputError(
                    f"job {self.id!r} requirement {name!r} must have positive weight"
                )
        object.__setattr__(self, "requirements", reqs)


class Scorer(ABC):
    """Anything that can assign a relevance score to a (job, candidate) pair."""

    #: one of "reference", "synthetic-oracle", "external"
    kind: str = "external"

    @abstractmethod
    def score(self, job: JobSpec, profile: CandidateProfile) -> float:
        raise NotImplementedError


class ReferenceScorer(Scorer):
    """Weighted mean of candidate features over the job's requirements.

    score = sum(weight_f * features[f]) / sum(weight_f), with missing
    features contributing 0. With features in [0, 1] the score stays in
    [0, 1], and masking a feature to 0 can never raise it.
    """

    kind = "reference"

    def score(self, job: JobSpec, profile: CandidateProfile) -> float:
        total_weight = sum(job.requirements.values())
        weighted = sum(
            weight * profile.features.get(feature, 0.0)
            for feature, weight in job.requirements.items()
        )
        return weighted / total_weight


class SyntheticOracle(Scorer):
    """Scorer with known ground truth plus Gaussian observation noise.

    Each call to :meth:`score` adds a fresh ``N(0, sigma^2)`` perturbation
    to the candidate's true score, drawn from a stream keyed by the oracle
    seed and candidate id. The call sequence per candidate is deterministic,
    so two oracles built with the same arguments produce identical score
    sequences.
    """

    kind = "synthetic-oracle"

    def __init__(self, true_scores: Mapping[str, float], sigma: float, seed: int = 0):
        if sigma < 0:
            raise InvalidInputError(f"sigma must be >= 0, got {sigma}")
        self.true_scores = {str(k): float(v) for k, v in true_scores.items()}
        self.sigma = float(sigma)
        self.seed = int(seed)
        self._streams: dict[str, np.random.Generator] = {}

    def score(self, job: JobSpec, profile: CandidateProfile) -> float:
        try:
            truth = self.true_scores[profile.id]
        except KeyError:
            raise InvalidInputError(
                f"no true score for candidate {profile.id!r}"
            ) from None
        if self.sigma == 0.0:
            return truth
        stream = self._streams.get(profile.id)
        if stream is None:
            stream = substream(self.seed, "oracle-noise", profile.id)
            self._streams[profile.id] = stream
        return truth + self.sigma * float(stream.standard_normal())


def synthetic_oracle(
    true_scores: Mapping[str, float], sigma: float, seed: int = 0
) -> SyntheticOracle:
    """Convenience factory for :class:`SyntheticOracle`."""
    return SyntheticOracle(true_scores, sigma, seed)


def perturb(
    profile: CandidateProfile,
    mask_prob: float,
    rng: np.random.Generator,
) -> CandidateProfile:
    """Mask each feature to 0 independently with probability ``mask_prob``.

    Feature names are visited in sorted order so the stream consumption,
    and therefore the result, does not depend on dict insertion order.
    """
    if not 0.0 < mask_prob < 1.0:
        raise InvalidInputError(f"mask_prob must lie in (0, 1), got {mask_prob}")
    names = sorted(profile.features)
    keep = rng.random(len(names)) >= mask_prob
    features = {
        name: (profile.features[name] if kept else 0.0)
        for name, kept in zip(names, keep)
    }
    return CandidateProfile(id=profile.id, features=features, label=profile.label)


def empirical_scores(
    job: JobSpec,
    profiles: Sequence[CandidateProfile],
    scorer: Scorer,
    samples: int = DEFAULT_SAMPLES,
    mask_prob: float = DEFAULT_MASK_PROB,
    seed: int = 0,
) -> list[EmpiricalScoreDistribution]:
    """Per-candidate score distributions from repeated feature masking.

    Sample ``t`` for a candidate is the scorer applied to an independently
    masked copy of the profile. Each candidate draws its masks from a
    stream keyed by ``(seed, candidate_id)``, so pool order does not
    affect any candidate's samples. The unperturbed score is kept as
    ``point_score`` alongside the samples.
    """
    if samples < 1:
        raise InvalidInputError(f"samples must be >= 1, got {samples}")
    ids = [p.id for p in profiles]
    if len(set(ids)) != len(ids):
        raise InvalidInputError("duplicate candidate ids in pool")
    out = []
    for profile in profiles:
        rng = substream(seed, "mask", profile.id)
        drawn = tuple(
            float(scorer.score(job, perturb(profile, mask_prob, rng)))
            for _ in range(samples)
        )
        out.append(
            EmpiricalScoreDistribution(
                candidate_id=profile.id,
                samples=drawn,
                point_score=float(scorer.score(job, profile)),
            )
        )
    return out
