"""Rank-probability estimation and per-candidate rank statistics.

A point-scored pool induces a single permutation of candidates. When each
candidate instead carries an empirical distribution of plausible scores,
the ranking becomes a random object. This module estimates, by Monte Carlo,
the probability that candidate ``i`` lands on rank ``j`` (rank 1 is best),
and derives the quantities used downstream: expected rank, rank entropy,
rank variance, sparse rank supports, and the uncertainty-aware ordering.

The estimated matrix is doubly stochastic by construction: every draw
assigns each candidate exactly one rank and each rank exactly one
candidate.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from functools import cached_property
from typing import IO, Iterable, Iterator, Sequence

import numpy as np

from .errors import InvalidInputError
from .rng import substream

# Draws sorted per batch; caps transient memory for large pools.
_CHUNK = 2048

DEFAULT_THRESHOLD = 0.01
DEFAULT_DRAWS = 10000


@dataclass(frozen=True)
class EmpiricalScoreDistribution:
    """Plausible scores for one candidate, in generation order.

    ``point_score`` optionally records the unperturbed score the
    distribution was sampled around; the estimator itself never uses it.
    """

    candidate_id: str
    samples: tuple[float, ...]
    point_score: float | None = None

    def __post_init__(self) -> None:
        samples = tuple(float(s) for s in self.samples)
        if not samples:
            raise InvalidInputError(
                f"candidate {self.candidate_id!r} has no score samples"
            )
        if not all(math.isfinite(s) for s in samples):
            raise InvalidInputError(
                f"candidate {self.candidate_id!r} has non-finite score samples"
            )
        object.__setattr__(self, "samples", samples)


class RankSet:
    """Estimated rank-probability matrix for a candidate pool.

    Entry ``(i, j)`` of :attr:`probs` is the probability that candidate
    ``candidate_ids[i]`` takes rank ``j + 1``. Rows are held sparsely
    (only ranks with nonzero probability); the dense matrix is materialized
    on first access and cached.
    """

    def __init__(
        self,
        candidate_ids: Sequence[str],
        row_ranks: Sequence[np.ndarray],
        row_probs: Sequence[np.ndarray],
        draws: int,
        seed: int,
    ):
        self.candidate_ids: tuple[str, ...] = tuple(candidate_ids)
        self._row_ranks = tuple(np.asarray(r, dtype=np.int64) for r in row_ranks)
        self._row_probs = tuple(np.asarray(p, dtype=np.float64) for p in row_probs)
        self.draws = int(draws)
        self.seed = int(seed)
        if not (len(self.candidate_ids) == len(self._row_ranks) == len(self._row_probs)):
            raise InvalidInputError("candidate ids and rows must align")
        self._index = {cid: i for i, cid in enumerate(self.candidate_ids)}

    @property
    def n(self) -> int:
        return len(self.candidate_ids)

    @cached_property
    def probs(self) -> np.ndarray:
        """Dense ``n x n`` probability matrix (built on demand)."""
        dense = np.zeros((self.n, self.n))
        for i, (ranks, probs) in enumerate(zip(self._row_ranks, self._row_probs)):
            dense[i, ranks - 1] = probs
        return dense

    def index_of(self, candidate_id: str) -> int:
        try:
            return self._index[candidate_id]
        except KeyError:
            raise InvalidInputError(f"unknown candidate id {candidate_id!r}") from None

    def support_arrays(self, i: int) -> tuple[np.ndarray, np.ndarray]:
        """Nonzero portion of row ``i`` as ``(ranks, probabilities)``.

        Ranks are 1-based and ascending.
        """
        self._check_index(i)
        return self._row_ranks[i], self._row_probs[i]

    def row(self, i: int) -> np.ndarray:
        """Dense probability row for candidate ``i``."""
        self._check_index(i)
        dense = np.zeros(self.n)
        dense[self._row_ranks[i] - 1] = self._row_probs[i]
        return dense

    def _check_index(self, i: int) -> None:
        if not isinstance(i, (int, np.integer)) or not 0 <= i < self.n:
            raise InvalidInputError(f"candidate index {i} out of range [0, {self.n})")

    @classmethod
    def from_probs(
        cls,
        candidate_ids: Sequence[str],
        probs: np.ndarray | Sequence[Sequence[float]],
        draws: int = 1,
        seed: int = 0,
    ) -> "RankSet":
        """Build a rank set from an explicit probability matrix.

        Each row must be a probability distribution over ranks. Mostly
        useful for tests and for reconstructing persisted rank sets.
        """
        matrix = np.asarray(probs, dtype=np.float64)
        n = len(candidate_ids)
        if matrix.shape != (n, n):
            raise InvalidInputError(
                f"expected a {n}x{n} matrix, got shape {matrix.shape}"
            )
        if np.any(matrix < 0) or np.any(matrix > 1):
            raise InvalidInputError("probabilities must lie in [0, 1]")
        if not np.allclose(matrix.sum(axis=1), 1.0, atol=1e-6):
            raise InvalidInputError("each row must sum to 1")
        row_ranks, row_probs = [], []
        for i in range(n):
            nz = np.flatnonzero(matrix[i])
            row_ranks.append(nz + 1)
            row_probs.append(matrix[i, nz])
        return cls(candidate_ids, row_ranks, row_probs, draws=draws, seed=seed)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RankSet):
            return NotImplemented
        return (
            self.candidate_ids == other.candidate_ids
            and self.draws == other.draws
            and self.seed == other.seed
            and all(
                np.array_equal(a, b)
                for a, b in zip(self._row_ranks, other._row_ranks)
            )
            and all(
                np.array_equal(a, b)
                for a, b in zip(self._row_probs, other._row_probs)
            )
        )

    def __repr__(self) -> str:
        return f"RankSet(n={self.n}, draws={self.draws}, seed={self.seed})"


@dataclass(frozen=True)
class RankStats:
    """Derived statistics for one candidate's rank distribution."""

    candidate_id: str
    expected_rank: float
    entropy: float
    variance: float
    support: tuple[tuple[int, float], ...]


def estimate_rank_set(
    dists: Sequence[EmpiricalScoreDistribution],
    draws: int = DEFAULT_DRAWS,
    seed: int = 0,
) -> RankSet:
    """Estimate rank probabilities by repeated joint sampling.

    Each of ``draws`` rounds selects one score uniformly at random from
    every candidate's empirical distribution, sorts the pool by sampled
    score descending (ties broken uniformly at random), and tallies the
    resulting ranks. Probabilities are tallies divided by ``draws``.

    All randomness for a candidate comes from a stream keyed by
    ``(seed, candidate_id)``, so reordering the input list permutes the
    result rows without changing them.
    """
    if len(dists) == 0:
        raise InvalidInputError("no score distributions given")
    if len(dists) < 2:
        raise InvalidInputError("need at least 2 candidates to rank")
    if draws < 1:
        raise InvalidInputError("draws must be >= 1")
    ids = [d.candidate_id for d in dists]
    if len(set(ids)) != len(ids):
        raise InvalidInputError("duplicate candidate ids in distribution list")

    n = len(dists)
    scores = np.empty((n, draws))
    tie_keys = np.empty((n, draws))
    for i, dist in enumerate(dists):
        rng = substream(seed, "rank-draws", dist.candidate_id)
        samples = np.asarray(dist.samples)
        picks = rng.integers(0, len(samples), size=draws)
        scores[i] = samples[picks]
        tie_keys[i] = rng.random(draws)

    counts = np.zeros(n * n, dtype=np.int64)
    rank_offsets = np.arange(n, dtype=np.int64)[:, None]
    for lo in range(0, draws, _CHUNK):
        block = slice(lo, min(lo + _CHUNK, draws))
        # order[r, d] = candidate holding rank r+1 in draw d
        order = np.lexsort((tie_keys[:, block], -scores[:, block]), axis=0)
        counts += np.bincount((order * n + rank_offsets).ravel(), minlength=n * n)
    counts = counts.reshape(n, n)

    inv = 1.0 / draws
    row_ranks, row_probs = [], []
    for i in range(n):
        nz = np.flatnonzero(counts[i])
        row_ranks.append(nz + 1)
        row_probs.append(counts[i, nz] * inv)
    return RankSet(ids, row_ranks, row_probs, draws=draws, seed=seed)


def expected_rank(rs: RankSet, i: int) -> float:
    """Mean rank of candidate ``i`` under its full rank distribution."""
    ranks, probs = rs.support_arrays(i)
    return float(probs @ ranks)


def rank_entropy(rs: RankSet, i: int) -> float:
    """Entropy (nats) of candidate ``i``'s rank distribution.

    Zero-probability ranks contribute nothing (0 * ln 0 = 0). The result
    lies in ``[0, ln n]``; adding 0.0 turns a degenerate row's -0.0 into 0.0.
    """
    _, probs = rs.support_arrays(i)
    return float(-(probs @ np.log(probs)) + 0.0)


def rank_variance(rs: RankSet, i: int) -> float:
    """Variance of candidate ``i``'s rank; tiny negative rounding is clamped."""
    ranks, probs = rs.support_arrays(i)
    mean = probs @ ranks
    var = probs @ (ranks.astype(np.float64) ** 2) - mean**2
    return float(max(var, 0.0))


def humble_order(rs: RankSet) -> list[str]:
    """Candidates sorted by expected rank ascending.

    Ties fall back to lower rank variance, then candidate id, so the
    ordering is deterministic.
    """
    keys = [
        (expected_rank(rs, i), rank_variance(rs, i), rs.candidate_ids[i], i)
        for i in range(rs.n)
    ]
    keys.sort()
    return [rs.candidate_ids[i] for _, _, _, i in keys]


def sparsify(
    rs: RankSet, threshold: float = DEFAULT_THRESHOLD
) -> list[list[tuple[int, float]]]:
    """Per-candidate ``(rank, probability)`` support lists at a cutoff.

    Entries with probability below ``threshold`` are dropped; the survivors
    are not renormalized. Statistics should always be computed on the full
    matrix, thresholding is a display and storage convenience.
    """
    if not 0.0 <= threshold < 1.0:
        raise InvalidInputError(f"threshold must lie in [0, 1), got {threshold}")
    out: list[list[tuple[int, float]]] = []
    for i in range(rs.n):
        ranks, probs = rs.support_arrays(i)
        keep = probs >= threshold if threshold > 0.0 else slice(None)
        out.append(
            list(zip(ranks[keep].tolist(), probs[keep].tolist()))
        )
    return out


def high_entropy_candidates(rs: RankSet, m: int) -> list[str]:
    """The ``m`` candidates whose rank is most uncertain, most-uncertain first."""
    if not 1 <= m <= rs.n:
        raise InvalidInputError(f"m must lie in [1, {rs.n}], got {m}")
    keys = sorted(
        ((-rank_entropy(rs, i), rs.candidate_ids[i]) for i in range(rs.n))
    )
    return [cid for _, cid in keys[:m]]


def rank_stats(rs: RankSet, threshold: float = DEFAULT_THRESHOLD) -> list[RankStats]:
    """Full per-candidate statistics, with supports sparsified at ``threshold``."""
    supports = sparsify(rs, threshold)
    return [
        RankStats(
            candidate_id=rs.candidate_ids[i],
            expected_rank=expected_rank(rs, i),
            entropy=rank_entropy(rs, i),
            variance=rank_variance(rs, i),
            support=tuple(supports[i]),
        )
        for i in range(rs.n)
    ]


def rank_set_triplets(
    rs: RankSet, threshold: float = DEFAULT_THRESHOLD
) -> Iterator[tuple[str, int, float]]:
    """Yield ``(candidate_id, rank, probability)`` records above the cutoff."""
    for cid, support in zip(rs.candidate_ids, sparsify(rs, threshold)):
        for rank, prob in support:
            yield cid, rank, prob


def write_rank_set_csv(
    triplets: Iterable[tuple[str, int, float]], out: IO[str]
) -> int:
    """Write triplet records with a header row; returns the record count."""
    writer = csv.writer(out)
    writer.writerow(["candidate_id", "rank", "probability"])
    count = 0
    for cid, rank, prob in triplets:
        writer.writerow([cid, rank, repr(float(prob))])
        count += 1
    return count
