"""Lineage construction: candidate validation, source extraction,
aggregation, the recursive trace, and review application."""

from lineagekit.tracer.aggregate import CONTRADICTION_MARGIN, aggregate_records
from lineagekit.tracer.extract import (
    HeuristicExtractor,
    JudgeExtractor,
    build_extractor,
)
from lineagekit.tracer.records import (
    AggregateResult,
    DiscardedRecord,
    ExtractionRecord,
    TraceConfig,
    TraceLogEntry,
    ValidationResult,
)
from lineagekit.tracer.review import (
    AuditEntry,
    ReviewDecision,
    ReviewOutcome,
    apply_review_decisions,
)
from lineagekit.tracer.trace import Tracer, TraceResult, extract_sources, validate_candidate

__all__ = [
    "AggregateResult",
    "AuditEntry",
    "CONTRADICTION_MARGIN",
    "DiscardedRecord",
    "ExtractionRecord",
    "HeuristicExtractor",
    "JudgeExtractor",
    "ReviewDecision",
    "ReviewOutcome",
    "TraceConfig",
    "TraceLogEntry",
    "TraceResult",
    "Tracer",
    "ValidationResult",
    "aggregate_records",
    "apply_review_decisions",
    "build_extractor",
    "extract_sources",
    "validate_candidate",
]
