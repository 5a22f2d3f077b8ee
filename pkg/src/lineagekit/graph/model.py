"""Node and edge model for the lineage graph.

A node is one post-training dataset, identified by its canonical hub id
(``owner/name``). A directed edge ``source -> target`` is a derivation
claim: the target dataset was (partially) built from the source dataset.
"""

from __future__ import annotations

import dataclasses
import re
from dataclasses import dataclass, field
from datetime import date, datetime
from enum import Enum

from lineagekit.errors import EdgeValidationError, MalformedId, NodeValidationError

# Candidate-validation floor: datasets released before this date are out of
# scope for the catalog and rejected at node construction.
RELEASE_FLOOR = date(2020, 1, 1)

_ID_RE = re.compile(r"^[^/\s]+/[^/\s]+$")


class Domain(str, Enum):
    MATH = "Math"
    CODE = "Code"
    GENERAL = "General"
    SCIENCE = "Science"
    MIXED = "Mixed"
    BENCHMARK = "Benchmark"
    UNKNOWN = "Unknown"


class Relationship(str, Enum):
    DISTILLATION = "distillation"
    FUSION = "fusion"
    REFORMULATION = "reformulation"
    REJECTION_SAMPLING = "rejection_sampling"
    SUBSET = "subset"
    AGGREGATION = "aggregation"
    UNKNOWN = "unknown"


class Provenance(str, Enum):
    EXTRACTED = "extracted"
    HUMAN_CONFIRMED = "human_confirmed"
    HUMAN_REJECTED_REPLACEMENT = "human_rejected_replacement"


class EdgeStatus(str, Enum):
    ACCEPTED = "accepted"
    FLAGGED = "flagged"
    REJECTED = "rejected"


def validate_dataset_id(raw: str) -> str:
    """Return ``raw`` if it is a canonical ``owner/name`` id, else raise.

    Both segments must be nonempty, contain no whitespace, and there must
    be exactly one separator.
    """
    if not isinstance(raw, str) or not _ID_RE.match(raw):
        raise MalformedId(f"not a canonical owner/name dataset id: {raw!r}")
    return raw


def canonicalize_id(
    raw: str,
    alias_table: dict[str, str] | None = None,
    known_ids: set[str] | None = None,
) -> str | None:
    """Resolve an informal dataset name to a canonical hub id.

    Resolution order: exact alias -> case-insensitive alias ->
    case-insensitive match against known canonical ids -> the name itself
    when it is already canonical ``owner/name`` form. Returns None when the
    name cannot be resolved (the "Unknown" value; never an exception).
    """
    name = raw.strip()
    if not name:
        return None
    if alias_table:
        if name in alias_table:
            return alias_table[name]
        lowered = name.lower()
        for key, value in alias_table.items():
            if key.lower() == lowered:
                return value
    if known_ids:
        if name in known_ids:
            return name
        lowered = name.lower()
        for kid in known_ids:
            if kid.lower() == lowered:
                return kid
    if _ID_RE.match(name):
        return name
    return None


def _parse_date(value) -> date | None:
    if value is None or isinstance(value, date) and not isinstance(value, datetime):
        return value
    if isinstance(value, datetime):
        return value.date()
    if isinstance(value, str):
        text = value.strip()
        if text.endswith("Z"):
            text = text[:-1] + "+00:00"
        try:
            return datetime.fromisoformat(text).date()
        except ValueError:
            return date.fromisoformat(text[:10])
    raise NodeValidationError(f"unparseable release date: {value!r}")


@dataclass
class DatasetNode:
    """One dataset in the catalog.

    ``released_at`` is the hub release date (UTC); when present it must be
    on or after the 2020-01-01 validation floor. ``domain=Benchmark`` nodes
    are eligible contamination sources.
    """

    id: str
    released_at: date | None = None
    domain: Domain = Domain.UNKNOWN
    display_name: str = ""
    download_count: int | None = None
    tags: list[str] = field(default_factory=list)

    def __post_init__(self):
        validate_dataset_id(self.id)
        self.released_at = _parse_date(self.released_at)
        if self.released_at is not None and self.released_at < RELEASE_FLOOR:
            raise NodeValidationError(
                f"{self.id}: released_at {self.released_at} precedes the "
                f"{RELEASE_FLOOR} validation floor"
            )
        if isinstance(self.domain, str) and not isinstance(self.domain, Domain):
            self.domain = Domain(self.domain)
        if not self.display_name:
            self.display_name = self.id.split("/", 1)[1]
        if self.download_count is not None and self.download_count < 0:
            raise NodeValidationError(f"{self.id}: negative download_count")

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "released_at": self.released_at.isoformat() if self.released_at else None,
            "domain": self.domain.value,
            "display_name": self.display_name,
            "download_count": self.download_count,
            "tags": list(self.tags),
        }

    @classmethod
    def from_dict(cls, data: dict) -> DatasetNode:
        return cls(
            id=data["id"],
            released_at=data.get("released_at"),
            domain=Domain(data.get("domain", "Unknown")),
            display_name=data.get("display_name", ""),
            download_count=data.get("download_count"),
            tags=list(data.get("tags", [])),
        )


@dataclass
class Evidence:
    """Verbatim text span supporting a derivation claim, plus where it
    came from."""

    text: str = ""
    locator: str = ""

    def to_dict(self) -> dict:
        return {"text": self.text, "locator": self.locator}

    @classmethod
    def from_dict(cls, data: dict) -> Evidence:
        return cls(text=data.get("text", ""), locator=data.get("locator", ""))


@dataclass
class LineageEdge:
    """One derivation claim ``source -> target``.

    ``flag_reason`` records why a flagged edge entered the review queue:
    "below_threshold" for the automatic confidence rule, "contradictory"
    when near-equal-confidence claims disagree on the relationship.
    ``timestamp_unverified`` marks edges accepted while an endpoint
    release date was unknown.
    """

    source: str
    target: str
    relationship: Relationship
    confidence: float
    evidence: Evidence = field(default_factory=Evidence)
    provenance: Provenance = Provenance.EXTRACTED
    status: EdgeStatus = EdgeStatus.ACCEPTED
    timestamp_unverified: bool = False
    flag_reason: str | None = None

    def __post_init__(self):
        validate_dataset_id(self.source)
        validate_dataset_id(self.target)
        if self.source == self.target:
            raise EdgeValidationError(f"self-loop on {self.source}")
        if isinstance(self.relationship, str) and not isinstance(self.relationship, Relationship):
            self.relationship = Relationship(self.relationship)
        if isinstance(self.provenance, str) and not isinstance(self.provenance, Provenance):
            self.provenance = Provenance(self.provenance)
        if isinstance(self.status, str) and not isinstance(self.status, EdgeStatus):
            self.status = EdgeStatus(self.status)
        if isinstance(self.evidence, dict):
            self.evidence = Evidence.from_dict(self.evidence)
        if not 0.0 <= self.confidence <= 1.0:
            raise EdgeValidationError(
                f"{self.source}->{self.target}: confidence {self.confidence} outside [0,1]"
            )
        if self.provenance is Provenance.EXTRACTED and not self.evidence.text:
            raise EdgeValidationError(
                f"{self.source}->{self.target}: extracted edge with empty evidence"
            )

    @property
    def key(self) -> tuple[str, str, str]:
        return (self.source, self.target, self.relationship.value)

    def copy(self) -> LineageEdge:
        return dataclasses.replace(self, evidence=dataclasses.replace(self.evidence))

    def to_dict(self) -> dict:
        return {
            "source": self.source,
            "target": self.target,
            "relationship": self.relationship.value,
            "confidence": self.confidence,
            "evidence": self.evidence.to_dict(),
            "provenance": self.provenance.value,
            "status": self.status.value,
            "timestamp_unverified": self.timestamp_unverified,
            "flag_reason": self.flag_reason,
        }

    @classmethod
    def from_dict(cls, data: dict) -> LineageEdge:
        return cls(
            source=data["source"],
            target=data["target"],
            relationship=Relationship(data["relationship"]),
            confidence=data["confidence"],
            evidence=Evidence.from_dict(data.get("evidence", {})),
            provenance=Provenance(data.get("provenance", "extracted")),
            status=EdgeStatus(data.get("status", "accepted")),
            timestamp_unverified=data.get("timestamp_unverified", False),
            flag_reason=data.get("flag_reason"),
        )


def edge_key(source: str, target: str, relationship: Relationship | str) -> tuple[str, str, str]:
    rel = relationship.value if isinstance(relationship, Relationship) else str(relationship)
    return (source, target, rel)
