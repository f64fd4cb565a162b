"""Brute-force reference implementations the fast code is tested against.

These are deliberately naive: full enumeration over joint sample choices,
exact tie handling by averaging over tied blocks, and a direct evaluation
of the overlap formula. They are only usable at toy sizes.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Sequence

import numpy as np


def exact_rank_probabilities(
    samples_per_candidate: Sequence[Sequence[float]],
) -> np.ndarray:
    """Exact rank-probability matrix by enumerating every joint outcome.

    Outcome probability is the product of per-candidate uniform choices.
    Candidates sharing a sampled score form a tied block spanning ranks
    ``r .. r+b-1``; uniform tie-breaking gives each member each of those
    ranks with probability ``1/b``.
    """
    n = len(samples_per_candidate)
    probs = [[Fraction(0) for _ in range(n)] for _ in range(n)]
    weight = Fraction(1)
    for samples in samples_per_candidate:
        weight /= len(samples)
    index_choices = [range(len(s)) for s in samples_per_candidate]
    for choice in itertools.product(*index_choices):
        scores = [
            samples_per_candidate[i][choice[i]] for i in range(n)
        ]
        # stable grouping: sort candidate indices by score descending
        by_score = sorted(range(n), key=lambda i: -scores[i])
        rank = 0
        while rank < n:
            block = [by_score[rank]]
            while (
                rank + len(block) < n
                and scores[by_score[rank + len(block)]] == scores[block[0]]
            ):
                block.append(by_score[rank + len(block)])
            share = weight / len(block)
            for member in block:
                for offset in range(len(block)):
                    probs[member][rank + offset] += share
            rank += len(block)
    return np.array([[float(p) for p in row] for row in probs])


def exact_expected_ranks(
    samples_per_candidate: Sequence[Sequence[float]],
) -> np.ndarray:
    """Expected ranks implied by :func:`exact_rank_probabilities`."""
    matrix = exact_rank_probabilities(samples_per_candidate)
    ranks = np.arange(1, matrix.shape[1] + 1)
    return matrix @ ranks


def direct_rbo(a: Sequence[str], b: Sequence[str], p: float, d: int) -> float:
    """Overlap formula evaluated literally with set intersections."""
    total = 0.0
    for t in range(1, d + 1):
        agreement = len(set(a[:t]) & set(b[:t])) / t
        total += p ** (t - 1) * agreement
    return total * (1 - p) / (1 - p**d)


def total_variation(p: np.ndarray, q: np.ndarray) -> float:
    """TV distance between two distributions over the same support."""
    return 0.5 * float(np.abs(np.asarray(p) - np.asarray(q)).sum())
