"""Record types shared across the trace pipeline."""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import date

from lineagekit.graph import Relationship


@dataclass
class ExtractionRecord:
    """One claimed derivation pulled out of a resource context.

    evidence must be a verbatim substring of the (pruned) document named
    by origin_doc.
    """

    source_name_raw: str
    relationship: Relationship
    confidence: float
    evidence: str
    origin_doc: str

    def __post_init__(self):
        if isinstance(self.relationship, str) and not isinstance(self.relationship, Relationship):
            self.relationship = Relationship(self.relationship)
        if not 0.0 <= self.confidence <= 1.0:
            raise ValueError(f"confidence {self.confidence} outside [0,1]")


@dataclass
class TraceConfig:
    max_depth: int = 5
    max_branching: int = 8
    review_threshold: float = 0.6
    year_floor: int = 2020
    extractor: str = "heuristic"

    def __post_init__(self):
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")
        if self.max_branching < 1:
            raise ValueError("max_branching must be >= 1")
        if not 0.0 <= self.review_threshold <= 1.0:
            raise ValueError("review_threshold outside [0,1]")

    @property
    def floor_date(self) -> date:
        return date(self.year_floor, 1, 1)


@dataclass
class ValidationResult:
    valid: bool
    canonical_id: str | None = None
    released_at: date | None = None
    reason: str | None = None
    meta: dict = field(default_factory=dict)

    @classmethod
    def ok(cls, canonical_id: str, released_at: date | None, **meta) -> ValidationResult:
        return cls(valid=True, canonical_id=canonical_id, released_at=released_at, meta=meta)

    @classmethod
    def invalid(cls, reason: str) -> ValidationResult:
        return cls(valid=False, reason=reason)


@dataclass
class TraceLogEntry:
    step: int
    node: str
    action: str
    outcome: str

    def to_dict(self) -> dict:
        return {"step": self.step, "node": self.node, "action": self.action, "outcome": self.outcome}


@dataclass
class DiscardedRecord:
    source_name_raw: str
    reason: str

    def to_dict(self) -> dict:
        return {"source_name_raw": self.source_name_raw, "reason": self.reason}


@dataclass
class AggregateResult:
    edges: list = field(default_factory=list)
    flagged: list = field(default_factory=list)
    discarded: list[DiscardedRecord] = field(default_factory=list)
