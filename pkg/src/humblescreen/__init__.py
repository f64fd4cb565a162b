"""Uncertainty-aware candidate screening.

Instead of committing to the single ordering a point score induces, the
library estimates how stable each candidate's rank is under score
uncertainty and exposes rankings, shortlists, and reports that account
for it.
"""

from .errors import ConflictError, IngestError, InvalidInputError, NotFoundError
from .metrics import ComparisonReport, compare, format_report_row, jaccard_topk, rbo
from .ranksets import (
    EmpiricalScoreDistribution,
    RankSet,
    RankStats,
    estimate_rank_set,
    expected_rank,
    high_entropy_candidates,
    humble_order,
    rank_entropy,
    rank_stats,
    rank_variance,
    sparsify,
)
from .scoring import (
    CandidateProfile,
    JobSpec,
    ReferenceScorer,
    Scorer,
    SyntheticOracle,
    empirical_scores,
    perturb,
    synthetic_oracle,
)
from .screening import Shortlist, ShortlistEntry, compose_shortlist, execute_run, screen
from .store import FileStore, RunParameters, ScreeningRun

__version__ = "0.1.0"

__all__ = [
    "CandidateProfile",
    "ComparisonReport",
    "ConflictError",
    "EmpiricalScoreDistribution",
    "FileStore",
    "IngestError",
    "InvalidInputError",
    "JobSpec",
    "NotFoundError",
    "RankSet",
    "RankStats",
    "ReferenceScorer",
    "RunParameters",
    "Scorer",
    "ScreeningRun",
    "Shortlist",
    "ShortlistEntry",
    "SyntheticOracle",
    "compare",
    "compose_shortlist",
    "empirical_scores",
    "estimate_rank_set",
    "execute_run",
    "expected_rank",
    "format_report_row",
    "high_entropy_candidates",
    "humble_order",
    "jaccard_topk",
    "perturb",
    "rank_entropy",
    "rank_stats",
    "rank_variance",
    "rbo",
    "screen",
    "sparsify",
    "synthetic_oracle",
    "__version__",
]
