"""Aggregation and disambiguation of extraction records into edges."""

from __future__ import annotations

import logging

from lineagekit.graph import Evidence, LineageEdge, canonicalize_id
from lineagekit.tracer.records import AggregateResult, DiscardedRecord, ExtractionRecord

log = logging.getLogger(__name__)

# two claims about the same dataset pair with different relationships and
# confidences this close cannot be auto-resolved
CONTRADICTION_MARGIN = 0.1


def aggregate_records(
    records: list[ExtractionRecord],
    alias_table: dict[str, str],
    review_threshold: float,
    target_id: str,
    known_ids: set[str] | None = None,
) -> AggregateResult:
    """Canonicalize, deduplicate, and split records into edge lists.

    Duplicates (same source and relationship) merge by max confidence
    with evidence concatenated. Unresolvable names and self-references
    are discarded with reasons. Contradictory claims, same source pair
    but different relationship within a confidence margin of
    0.1, are flagged in both directions for human review even when
    above threshold.
    """
    result = AggregateResult()
    merged: dict[tuple[str, str], dict] = {}

    for record in records:
        canonical = canonicalize_id(record.source_name_raw, alias_table, known_ids)
        if canonical is None:
            result.discarded.append(
                DiscardedRecord(record.source_name_raw, "Uncanonicalizable")
            )
            continue
        if canonical == target_id:
            result.discarded.append(
                DiscardedRecord(record.source_name_raw, "SelfReference")
            )
            continue
        key = (canonical, record.relationship.value)
        slot = merged.get(key)
        if slot is None:
            merged[key] = {
                "confidence": record.confidence,
                "evidence": record.evidence,
                "locator": record.origin_doc,
            }
        else:
            if record.confidence > slot["confidence"]:
                slot["confidence"] = record.confidence
                slot["locator"] = record.origin_doc
            if record.evidence and record.evidence not in slot["evidence"]:
                slot["evidence"] = (slot["evidence"] + "\n" + record.evidence).strip("\n")

    # contradiction scan over merged claims per source
    by_source: dict[str, list[tuple[str, dict]]] = {}
    for (canonical, relationship), slot in merged.items():
        by_source.setdefault(canonical, []).append((relationship, slot))
    contradictory: set[tuple[str, str]] = set()
    for canonical, claims in by_source.items():
        for i, (rel_a, slot_a) in enumerate(claims):
            for rel_b, slot_b in claims[i + 1 :]:
                if abs(slot_a["confidence"] - slot_b["confidence"]) < CONTRADICTION_MARGIN:
                    contradictory.add((canonical, rel_a))
                    contradictory.add((canonical, rel_b))

    for (canonical, relationship), slot in sorted(merged.items()):
        edge = LineageEdge(
            source=canonical,
            target=target_id,
            relationship=relationship,
            confidence=slot["confidence"],
            evidence=Evidence(text=slot["evidence"], locator=slot["locator"]),
            status="flagged" if (canonical, relationship) in contradictory
            or slot["confidence"] < review_threshold else "accepted",
        )
        if (canonical, relationship) in contradictory:
            edge.flag_reason = "contradictory"
            result.flagged.append(edge)
        elif edge.confidence < review_threshold:
            edge.flag_reason = "below_threshold"
            result.flagged.append(edge)
        else:
            result.edges.append(edge)
    return result
