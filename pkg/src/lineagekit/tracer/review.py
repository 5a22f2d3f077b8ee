"""Human review application: decisions over flagged edges, audited."""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime, timezone

from lineagekit.errors import InvalidState, NotFound
from lineagekit.graph import EdgeStatus, LineageGraph

VERDICTS = ("accept", "reject")


@dataclass
class ReviewDecision:
    edge_key: tuple[str, str, str]
    verdict: str
    reviewer: str
    note: str = ""

    def __post_init__(self):
        self.edge_key = tuple(self.edge_key)
        if self.verdict not in VERDICTS:
            raise InvalidState(f"unknown verdict {self.verdict!r}, expected accept or reject")


@dataclass
class AuditEntry:
    timestamp: str
    edge_key: tuple[str, str, str]
    verdict: str
    reviewer: str
    note: str
    result: str
    reason: str | None = None

    def to_dict(self) -> dict:
        return {
            "timestamp": self.timestamp,
            "edge_key": list(self.edge_key),
            "verdict": self.verdict,
            "reviewer": self.reviewer,
            "note": self.note,
            "result": self.result,
            "reason": self.reason,
        }


@dataclass
class ReviewOutcome:
    graph: LineageGraph
    audit_entries: list[AuditEntry] = field(default_factory=list)


def _utc_now() -> str:
    return datetime.now(timezone.utc).isoformat()


def apply_review_decisions(
    graph: LineageGraph,
    decisions: list[ReviewDecision],
    clock=_utc_now,
) -> ReviewOutcome:
    """Apply accept/reject verdicts to flagged edges, in order.

    An accept re-runs the acyclicity and timestamp checks; a violation
    converts the decision into a rejection whose audit entry records the
    override reason. One audit entry is emitted per decision, always.
    """
    entries: list[AuditEntry] = []
    for decision in decisions:
        key = decision.edge_key
        edge = graph.edge(*key)  # NotFound propagates for unknown keys
        if edge.status is not EdgeStatus.FLAGGED:
            raise InvalidState(
                f"decision on non-flagged edge {key} (status {edge.status.value})"
            )
        if decision.verdict == "accept":
            outcome = graph.accept_edge(key)
        else:
            outcome = graph.reject_edge(key)
        entries.append(
            AuditEntry(
                timestamp=clock(),
                edge_key=key,
                verdict=decision.verdict,
                reviewer=decision.reviewer,
                note=decision.note,
                result=outcome.action,
                reason=outcome.reason,
            )
        )
    return ReviewOutcome(graph=graph, audit_entries=entries)
