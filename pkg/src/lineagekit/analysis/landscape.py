"""Catalog landscape statistics: domain mix and quarterly time series."""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from statistics import fmean
from typing import Any, Callable, Iterable, Sequence

from lineagekit.analysis.records import format_quarter, parse_quarter, quarter_range
from lineagekit.errors import ConfigError, EmptyInput, QuarterParseError

MODES = ("count", "cumulative", "mean")


def _domain_key(item: Any) -> str:
    domain = getattr(item, "domain", item)
    return str(getattr(domain, "value", domain))


def domain_distribution(catalog: Iterable[Any]) -> dict[str, float]:
    """Percentage of the catalog per domain, rounded to one decimal.

    Accepts anything carrying a ``domain`` attribute (enum or string) or
    plain domain strings. Rounding means the total lands at 100 only
    within about 0.1; callers should not assert an exact sum.
    """
    counts: Counter[str] = Counter(_domain_key(item) for item in catalog)
    total = sum(counts.values())
    if total == 0:
        raise EmptyInput("domain_distribution needs a nonempty catalog")
    ordered = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return {domain: round(100.0 * count / total, 1) for domain, count in ordered}


@dataclass(frozen=True)
class TemporalPoint:
    """One quarter of a series. ``value`` is None for a gap quarter in
    mean mode, where an average over nothing has no defined value."""

    quarter: str
    value: float | int | None

    def to_dict(self) -> dict[str, Any]:
        return {"quarter": self.quarter, "value": self.value}


def _label_of(item: Any, index: int) -> str:
    for attr in ("dataset_id", "id", "name"):
        label = getattr(item, attr, None)
        if isinstance(label, str) and label:
            return label
    return f"record {index}"


def temporal_series(
    items: Iterable[Any],
    quarter_of: Callable[[Any], str],
    mode: str = "count",
    value_of: Callable[[Any], float] | None = None,
) -> list[TemporalPoint]:
    """Quarterly series over ``items``, gap quarters included.

    Modes: ``count`` (new items per quarter, gaps 0), ``cumulative``
    (running total of ``value_of``, gaps repeat the prior total) and
    ``mean`` (per-quarter average of ``value_of``, gaps None).
    """
    if mode not in MODES:
        raise ConfigError(f"unknown series mode {mode!r}; expected one of {MODES}")
    if mode != "count" and value_of is None:
        raise ConfigError(f"mode {mode!r} needs a value_of extractor")

    buckets: defaultdict[tuple[int, int], list[float]] = defaultdict(list)
    for index, item in enumerate(items):
        raw = quarter_of(item)
        try:
            key = parse_quarter(raw)
        except QuarterParseError as exc:
            raise QuarterParseError(f"{_label_of(item, index)}: {exc}") from exc
        buckets[key].append(1.0 if value_of is None else float(value_of(item)))
    if not buckets:
        raise EmptyInput("temporal_series needs at least one item")

    series: list[TemporalPoint] = []
    running = 0.0
    for key in quarter_range(format_quarter(*min(buckets)), format_quarter(*max(buckets))):
        values = buckets.get(parse_quarter(key), [])
        if mode == "count":
            point_value: float | int | None = len(values)
        elif mode == "cumulative":
            running += sum(values)
            point_value = running
        else:
            point_value = fmean(values) if values else None
        series.append(TemporalPoint(quarter=key, value=point_value))
    return series


def peak(series: Sequence[TemporalPoint]) -> TemporalPoint:
    """The earliest point carrying the series maximum; gap (None) points
    never win."""
    candidates = [point for point in series if point.value is not None]
    if not candidates:
        raise EmptyInput("peak needs at least one valued point")
    return max(candidates, key=lambda point: point.value)
