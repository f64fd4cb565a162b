"""Ranking-similarity metrics and screening comparison reports.

Rank-biased overlap (RBO) compares two rankings with top-weighted
emphasis; Jaccard overlap compares their top-k prefixes as sets. The
comparison report contrasts a deterministic point-score ordering with the
expected-rank ordering for the same pool.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidInputError
from .ranksets import RankSet, humble_order, rank_entropy

DEFAULT_PERSISTENCE = 0.9


def _check_ranking(name: str, ranking: Sequence[str]) -> None:
    if len(set(ranking)) != len(ranking):
        raise InvalidInputError(f"{name} ranking contains duplicate items")


def rbo(
    a: Sequence[str],
    b: Sequence[str],
    p: float = DEFAULT_PERSISTENCE,
    depth: int | None = None,
) -> float:
    """Truncated rank-biased overlap of two rankings.

    Averages prefix agreement ``|A_t & B_t| / t`` over depths ``t = 1..d``
    with geometrically decaying weights ``p^(t-1)``, normalized so the
    weights over the evaluated depths sum to 1:

        rbo = sum_t p^(t-1) * (|A_t & B_t| / t) * (1 - p) / (1 - p^d)

    ``d`` defaults to the shorter ranking's length. Identical prefixes give
    1.0; disjoint ones give 0.0. Smaller ``p`` concentrates weight near the
    top.
    """
    _check_ranking("first", a)
    _check_ranking("second", b)
    if not 0.0 < p < 1.0:
        raise InvalidInputError(f"persistence must lie in (0, 1), got {p}")
    d = min(len(a), len(b)) if depth is None else depth
    if d < 1 or d > min(len(a), len(b)):
        raise InvalidInputError(
            f"depth must lie in [1, {min(len(a), len(b))}], got {d}"
        )
    seen_a: set[str] = set()
    seen_b: set[str] = set()
    overlap = 0
    acc = 0.0
    for t in range(1, d + 1):
        item_a, item_b = a[t - 1], b[t - 1]
        if item_a == item_b:
            overlap += 1
        else:
            if item_a in seen_b:
                overlap += 1
            if item_b in seen_a:
                overlap += 1
            seen_a.add(item_a)
            seen_b.add(item_b)
        acc += p ** (t - 1) * (overlap / t)
    return acc * (1.0 - p) / (1.0 - p**d)


def jaccard_topk(a: Sequence[str], b: Sequence[str], k: int) -> float:
    """Jaccard similarity of the two top-``k`` prefix sets."""
    _check_ranking("first", a)
    _check_ranking("second", b)
    if not 1 <= k <= min(len(a), len(b)):
        raise InvalidInputError(
            f"k must lie in [1, {min(len(a), len(b))}], got {k}"
        )
    top_a, top_b = set(a[:k]), set(b[:k])
    return len(top_a & top_b) / len(top_a | top_b)


@dataclass(frozen=True)
class ComparisonReport:
    """How much an uncertainty-aware ordering disturbs the point ordering."""

    job_id: str
    k: int
    jaccard: float
    rbo: float
    mean_entropy: float
    deterministic_top: tuple[str, ...]
    humble_top: tuple[str, ...]


def report_from_json(job_id: str, data: dict) -> ComparisonReport:
    """Rebuild a report from its persisted dict form."""
    return ComparisonReport(
        job_id=job_id,
        k=int(data["k"]),
        jaccard=float(data["jaccard"]),
        rbo=float(data["rbo"]),
        mean_entropy=float(data["mean_entropy"]),
        deterministic_top=tuple(data["deterministic_top"]),
        humble_top=tuple(data["humble_top"]),
    )


def compare(
    job_id: str,
    deterministic_ranking: Sequence[str],
    rs: RankSet,
    k: int,
    p: float = DEFAULT_PERSISTENCE,
) -> ComparisonReport:
    """Contrast a point-score ranking against the expected-rank ranking.

    Jaccard and RBO are both evaluated at depth ``k``; mean entropy
    averages rank entropy over the whole pool, not just the top ``k``.
    """
    if set(deterministic_ranking) != set(rs.candidate_ids):
        raise InvalidInputError(
            "deterministic ranking and rank set cover different candidates"
        )
    order = humble_order(rs)
    if not 1 <= k <= rs.n:
        raise InvalidInputError(f"k must lie in [1, {rs.n}], got {k}")
    mean_entropy = float(
        np.mean([rank_entropy(rs, i) for i in range(rs.n)])
    )
    return ComparisonReport(
        job_id=job_id,
        k=k,
        jaccard=jaccard_topk(deterministic_ranking, order, k),
        rbo=rbo(deterministic_ranking, order, p=p, depth=k),
        mean_entropy=mean_entropy,
        deterministic_top=tuple(deterministic_ranking[:k]),
        humble_top=tuple(order[:k]),
    )


def format_report_row(title: str, report: ComparisonReport) -> str:
    """One summary line: title, Jaccard, RBO, mean entropy, 3 decimals each."""
    return (
        f"{title}  {report.jaccard:.3f}  {report.rbo:.3f}"
        f"  {report.mean_entropy:.3f}"
    )
