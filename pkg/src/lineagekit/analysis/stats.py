"""Efficiency and correlation primitives.

spearman returns None, not 0, when either side has zero rank variance:
an undefined correlation rendered as 0 would silently poison heatmaps
and averages downstream.
"""

from __future__ import annotations

import math

from lineagekit.errors import InsufficientData, ShapeError
from lineagekit.analysis.records import EvalRecord


def performance_delta(record: EvalRecord) -> float:
    """Fine-tuned score minus base score."""
    return record.require("sft_score") - record.require("base_score")


def data_efficiency(record: EvalRecord) -> float:
    """Performance gain per training sample."""
    return performance_delta(record) / record.require("dataset_size")


def average_ranks(values: list[float]) -> list[float]:
    """Fractional ranks, 1-based; ties share the mean of their span."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        shared = (i + j) / 2 + 1
        for k in range(i, j + 1):
            ranks[order[k]] = shared
        i = j + 1
    return ranks


def spearman(values_a: list[float], values_b: list[float]) -> float | None:
    """Rank correlation: Pearson over average ranks.

    Equals 1 - 6*sum(d^2)/(n(n^2-1)) whenever both sides are tie-free.
    Returns None when either rank vector has zero variance (undefined,
    deliberately distinct from 0).
    """
    if len(values_a) != len(values_b):
        raise ShapeError(
            f"length mismatch: {len(values_a)} vs {len(values_b)} values")
    n = len(values_a)
    if n < 2:
        raise InsufficientData(f"need at least 2 pairs, got {n}")
    ranks_a = average_ranks([float(v) for v in values_a])
    ranks_b = average_ranks([float(v) for v in values_b])
    mean_a = math.fsum(ranks_a) / n
    mean_b = math.fsum(ranks_b) / n
    centered_a = [r - mean_a for r in ranks_a]
    centered_b = [r - mean_b for r in ranks_b]
    var_a = math.fsum(c * c for c in centered_a)
    var_b = math.fsum(c * c for c in centered_b)
    if var_a == 0 or var_b == 0:
        return None
    cov = math.fsum(x * y for x, y in zip(centered_a, centered_b))
    rho = cov / math.sqrt(var_a * var_b)
    # float rounding can spill a hair past the mathematical bound
    return max(-1.0, min(1.0, rho))
