"""Evaluation of predicted complexes against a benchmark catalog.

A benchmark is *derived* when some prediction overlaps it with Jaccard
at least ``j_min``; a prediction is *matched* when it covers some
derivable benchmark that way.  Precision is matched/predicted.  Recall
divides derived benchmarks by the k-protein-derivable ones by
default; the raw whole-catalog denominator is available via
``recall_denominator``.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .derivability import ComplexSet, DerivabilityReport
from .errors import ConfigError, UndefinedCorrelationError, UndefinedOverlapError
from .netgraph import Network

SCORE_FIELDS = ("ce", "cs", "es", "density")
RECALL_DENOMINATORS = ("derivable", "catalog")


@dataclass(frozen=True)
class MatchConfig:
    j_min: float = 0.50
    k: int = 4

    def __post_init__(self):
        if not (0.0 < self.j_min <= 1.0):
            raise ConfigError(f"j_min must be in (0, 1], got {self.j_min}")
        if self.k < 1:
            raise ConfigError(f"k must be >= 1, got {self.k}")


class PairMatch(NamedTuple):
    benchmark_id: str
    prediction_id: str
    jaccard: float


@dataclass(frozen=True)
class EvalReport:
    predicted_count: int
    matched_count: int
    derivable_count: int
    derived_count: int
    precision: float
    recall: float
    pair_matches: tuple[PairMatch, ...]
    j_min: float = 0.50
    k: int = 4
    recall_denominator: str = "derivable"


def jaccard(a: Iterable[str], b: Iterable[str]) -> float:
    """|a n b| / |a u b|; undefined (raises) when both sets are empty."""
    a, b = set(a), set(b)
    union = len(a | b)
    if union == 0:
        raise UndefinedOverlapError("jaccard of two empty sets is undefined")
    return len(a & b) / union


def evaluate(
    benchmarks: ComplexSet,
    predictions: ComplexSet,
    g: Network,
    config: MatchConfig | None = None,
    recall_denominator: str = "derivable",
) -> EvalReport:
    """Match every prediction against every k-protein-derivable benchmark.

    ``pair_matches`` lists each qualifying (benchmark, prediction) pair
    with its Jaccard value, in catalog order.
    """
    if config is None:
        config = MatchConfig()
    if recall_denominator not in RECALL_DENOMINATORS:
        raise ValueError(f"recall_denominator must be one of {RECALL_DENOMINATORS}")
    derivable = [b for b in benchmarks if len(b.members & g.nodes) >= config.k]
    pairs = []
    derived_ids = set()
    matched_ids = set()
    for b in derivable:
        for c in predictions:
            j = len(b.members & c.members) / len(b.members | c.members)
            if j >= config.j_min:
                pairs.append(PairMatch(b.id, c.id, j))
                derived_ids.add(b.id)
                matched_ids.add(c.id)
    predicted_count = len(predictions)
    derivable_count = len(derivable)
    denom = derivable_count if recall_denominator == "derivable" else len(benchmarks)
    return EvalReport(
        predicted_count=predicted_count,
        matched_count=len(matched_ids),
        derivable_count=derivable_count,
        derived_count=len(derived_ids),
        precision=len(matched_ids) / predicted_count if predicted_count else 0.0,
        recall=len(derived_ids) / denom if denom else 0.0,
        pair_matches=tuple(pairs),
        j_min=config.j_min,
        k=config.k,
        recall_denominator=recall_denominator,
    )


def correlate(report: DerivabilityReport, eval_report: EvalReport, score: str = "ce") -> float:
    """Pearson correlation between a derivability score and accuracy.

    For every k-protein-derivable benchmark in ``report``, pairs its
    chosen score ('ce', 'cs', 'es' or 'density') with the best Jaccard
    any prediction achieved on it (0 when unmatched) and correlates the
    two vectors.  Raises :class:`UndefinedCorrelationError` when fewer
    than two derivable benchmarks exist or either vector has zero
    variance.
    """
    if score not in SCORE_FIELDS:
        raise ValueError(f"score must be one of {SCORE_FIELDS}, got {score!r}")
    best: dict[str, float] = {}
    for pm in eval_report.pair_matches:
        if pm.jaccard > best.get(pm.benchmark_id, 0.0):
            best[pm.benchmark_id] = pm.jaccard
    xs, ys = [], []
    for rec in report.records:
        if rec.k_protein:
            xs.append(getattr(rec, score))
            ys.append(best.get(rec.complex_id, 0.0))
    if len(xs) < 2:
        raise UndefinedCorrelationError(
            f"need at least 2 derivable benchmarks, have {len(xs)}"
        )
    try:
        return statistics.correlation(xs, ys)
    except statistics.StatisticsError as exc:
        raise UndefinedCorrelationError(str(exc)) from None
