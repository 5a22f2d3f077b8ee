"""Quantitative analytics over catalog records and score profiles."""

from lineagekit.analysis.consistency import (
    CorrelationEntry,
    CorrelationReport,
    rank_consistency,
    rank_consistency_report,
    score_performance_correlation,
)
from lineagekit.analysis.landscape import (
    MODES,
    TemporalPoint,
    domain_distribution,
    peak,
    temporal_series,
)
from lineagekit.analysis.records import (
    EvalRecord,
    dump_eval_records,
    format_quarter,
    load_eval_records,
    next_quarter,
    parse_quarter,
    quarter_range,
)
from lineagekit.analysis.stats import (
    average_ranks,
    data_efficiency,
    performance_delta,
    spearman,
)
from lineagekit.analysis.tables import load_rank_table, rank_records

__all__ = [
    "CorrelationEntry",
    "CorrelationReport",
    "EvalRecord",
    "MODES",
    "TemporalPoint",
    "average_ranks",
    "data_efficiency",
    "domain_distribution",
    "dump_eval_records",
    "format_quarter",
    "load_eval_records",
    "load_rank_table",
    "next_quarter",
    "parse_quarter",
    "peak",
    "performance_delta",
    "quarter_range",
    "rank_consistency",
    "rank_consistency_report",
    "rank_records",
    "score_performance_correlation",
    "spearman",
    "temporal_series",
]
