"""Dataset score profiles: per-metric aggregation over scored samples."""

from __future__ import annotations

import logging
import math
import statistics
from dataclasses import dataclass, field

from lineagekit.errors import EmptyInput, JudgeParseError, OutOfScale, PluginError
from lineagekit.scoring.judge import (
    RATING_MAX,
    RATING_MIN,
    JudgeMetric,
    run_judge,
    template_hash,
)
from lineagekit.scoring.samples import Sample

log = logging.getLogger(__name__)

SKIPPABLE = (JudgeParseError, PluginError, OutOfScale)


def score_length(sample: Sample) -> dict[str, int]:
    """Character and whitespace-token counts of the response text.
    str.split() collapses Unicode whitespace runs, so tokens are maximal
    non-whitespace spans."""
    return {
        "char_count": len(sample.response),
        "ws_token_count": len(sample.response.split()),
    }


class LengthScorer:
    """Native length metric over the response, in one of two units."""

    UNITS = {"chars": "char_count", "ws_tokens": "ws_token_count"}

    def __init__(self, unit: str = "chars"):
        if unit not in self.UNITS:
            raise ValueError(f"unit must be one of {sorted(self.UNITS)}")
        self.unit = unit
        self.name = f"length_{unit}"
        self.scale = None

    def score(self, sample: Sample) -> float:
        return float(score_length(sample)[self.UNITS[self.unit]])


class JudgeScorer:
    """One judge-rated metric bound to a judge client."""

    def __init__(self, metric: JudgeMetric | str, judge):
        self.metric = JudgeMetric(metric)
        self.judge = judge
        self.name = self.metric.value
        self.scale = (float(RATING_MIN), float(RATING_MAX))

    def score(self, sample: Sample) -> float:
        return float(run_judge(sample, self.metric, self.judge))


def nearest_rank(sorted_values: list[float], percentile: float) -> float:
    """Nearest-rank percentile: the value at rank ceil(p/100 * n),
    1-indexed, over an ascending-sorted list.

    Whole-number percentiles use integer arithmetic for the rank:
    ceil(10/100 * 1000) must be 100, but in binary floating point
    0.1 * 1000 is a hair above 100 and would round the rank up.
    """
    if not sorted_values:
        raise EmptyInput("percentile of no values")
    n = len(sorted_values)
    if float(percentile).is_integer():
        rank = -(-int(percentile) * n // 100)
    else:
        rank = math.ceil(percentile / 100 * n)
    return sorted_values[min(max(rank, 1), n) - 1]


@dataclass(frozen=True)
class MetricSummary:
    mean: float
    median: float
    p10: float
    p90: float
    count: int

    def to_dict(self) -> dict:
        return {
            "mean": self.mean, "median": self.median,
            "p10": self.p10, "p90": self.p90, "count": self.count,
        }

    @classmethod
    def from_dict(cls, data: dict) -> MetricSummary:
        return cls(mean=data["mean"], median=data["median"],
                   p10=data["p10"], p90=data["p90"], count=data["count"])


def summarize(values: list[float]) -> MetricSummary:
    ordered = sorted(values)
    return MetricSummary(
        mean=statistics.fmean(ordered),
        median=float(statistics.median(ordered)),
        p10=nearest_rank(ordered, 10),
        p90=nearest_rank(ordered, 90),
        count=len(ordered),
    )


@dataclass
class ScoreProfile:
    """Per-dataset fingerprint: one summary row per metric, optionally
    the full per-sample table, and the prompt-template hash the judge
    ratings were produced under."""

    dataset_id: str
    per_metric: dict[str, MetricSummary] = field(default_factory=dict)
    sample_scores: dict[str, dict[str, float]] | None = None
    template_hash: str = ""

    def to_dict(self) -> dict:
        return {
            "dataset_id": self.dataset_id,
            "template_hash": self.template_hash,
            "per_metric": {
                name: self.per_metric[name].to_dict()
                for name in sorted(self.per_metric)
            },
            "sample_scores": self.sample_scores,
        }

    @classmethod
    def from_dict(cls, data: dict) -> ScoreProfile:
        return cls(
            dataset_id=data["dataset_id"],
            per_metric={
                name: MetricSummary.from_dict(row)
                for name, row in data["per_metric"].items()
            },
            sample_scores=data.get("sample_scores"),
            template_hash=data.get("template_hash", ""),
        )


def score_dataset(
    samples: list[Sample],
    scorers: list,
    dataset_id: str = "",
    keep_sample_scores: bool = False,
) -> ScoreProfile:
    """Run every scorer over every sample and aggregate.

    Per-sample scorer failures (unparseable judge output, plugin crash,
    out-of-scale value) skip that sample for that metric; a metric whose
    every sample failed is omitted with a warning. Samples are processed
    in sample_id order so the reduction is deterministic regardless of
    input order.
    """
    if not samples:
        raise EmptyInput("score_dataset needs at least one sample")
    ordered = sorted(samples, key=lambda s: s.sample_id)

    per_metric: dict[str, MetricSummary] = {}
    tables: dict[str, dict[str, float]] = {}
    for scorer in scorers:
        values: dict[str, float] = {}
        for sample in ordered:
            try:
                values[sample.sample_id] = scorer.score(sample)
            except SKIPPABLE as exc:
                log.warning("metric %s skipped sample %s: %s",
                            scorer.name, sample.sample_id[:12], exc)
        if not values:
            log.warning("metric %s omitted: no sample scored", scorer.name)
            continue
        per_metric[scorer.name] = summarize(list(values.values()))
        tables[scorer.name] = dict(sorted(values.items()))

    return ScoreProfile(
        dataset_id=dataset_id,
        per_metric=per_metric,
        sample_scores=tables if keep_sample_scores else None,
        template_hash=template_hash(),
    )
