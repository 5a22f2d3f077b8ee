"""The recursive lineage construction pipeline.

Depth-first from each seed up its source chain: validate the candidate,
fetch and prune its resources, extract claimed sources, aggregate them
into edges, then push newly discovered sources for expansion. One
target's lineage completes before the next seed starts. Any single
node's failure is contained: logged, skipped, never fatal to the trace.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from lineagekit.errors import (
    EmptyContext,
    EmptyInput,
    ExtractorError,
    LineageError,
    ResourceNotFound,
    TransportError,
)
from lineagekit.graph import DatasetNode, LineageGraph
from lineagekit.sources import (
    ArxivClient,
    HubClient,
    WebClient,
    build_resource_context,
    discover_resources,
    prune,
)
from lineagekit.sources.docs import DocKind
from lineagekit.tracer.aggregate import aggregate_records
from lineagekit.tracer.records import TraceConfig, TraceLogEntry, ValidationResult

log = logging.getLogger(__name__)


@dataclass
class TraceResult:
    graph: LineageGraph
    review_queue: list
    log: list[TraceLogEntry] = field(default_factory=list)


def validate_candidate(hub: HubClient, raw_id: str, config: TraceConfig) -> ValidationResult:
    """Hub existence plus release-floor check. Transport failures
    propagate (they are retryable, not verdicts)."""
    resolved = hub.resolve_dataset(raw_id)
    if not resolved.exists:
        return ValidationResult.invalid("NotOnHub")
    if resolved.released_at is None:
        return ValidationResult.invalid("NoTimestamp")
    if resolved.released_at < config.floor_date:
        return ValidationResult.invalid("TooOld")
    return ValidationResult.ok(
        resolved.canonical_id or raw_id,
        resolved.released_at,
        downloads=resolved.downloads,
        tags=list(resolved.tags),
    )


def extract_sources(context, extractor, candidate_id: str):
    """Thin contract wrapper: extractor plugins are side-effect free
    callables from (context, candidate) to ExtractionRecord lists."""
    return extractor.extract(context, candidate_id)


class Tracer:
    def __init__(
        self,
        hub: HubClient,
        arxiv: ArxivClient,
        web: WebClient,
        extractor,
        config: TraceConfig | None = None,
        alias_table: dict[str, str] | None = None,
    ):
        self.hub = hub
        self.arxiv = arxiv
        self.web = web
        self.extractor = extractor
        self.config = config or TraceConfig()
        self.alias_table = dict(alias_table or {})

    # ------------------------------------------------------------------

    def trace(self, seeds: list[str]) -> TraceResult:
        if not seeds:
            raise EmptyInput("trace needs at least one seed dataset id")
        graph = LineageGraph(review_threshold=self.config.review_threshold)
        graph.set_aliases(self.alias_table)
        entries: list[TraceLogEntry] = []
        step = 0

        def note(node: str, action: str, outcome: str) -> None:
            nonlocal step
            step += 1
            entries.append(TraceLogEntry(step=step, node=node, action=action, outcome=outcome))

        visited: set[str] = set()
        for seed in seeds:
            stack: list[tuple[str, int]] = [(seed, 0)]
            while stack:
                raw_id, depth = stack.pop()
                expansions = self._expand(graph, raw_id, depth, visited, note)
                # deeper nodes are pushed in reverse canonical order so
                # they pop in canonical-id order
                for source_id in sorted(expansions, reverse=True):
                    stack.append((source_id, depth + 1))

        queue = graph.flagged_edges()
        return TraceResult(graph=graph, review_queue=queue, log=entries)

    # ------------------------------------------------------------------

    def _expand(self, graph, raw_id, depth, visited, note) -> list[str]:
        """Process one candidate; returns newly discovered source ids to
        push. Every failure is contained here."""
        try:
            validation = validate_candidate(self.hub, raw_id, self.config)
        except (TransportError, LineageError) as exc:
            note(raw_id, "validate", f"Error: {exc}")
            return []
        if not validation.valid:
            note(raw_id, "validate", validation.reason)
            return []
        canonical = validation.canonical_id
        if canonical in visited:
            note(canonical, "visit", "SkipVisited")
            return []
        visited.add(canonical)
        note(canonical, "validate", "Valid")

        graph.add_node(
            DatasetNode(
                id=canonical,
                released_at=validation.released_at,
                download_count=validation.meta.get("downloads"),
                tags=validation.meta.get("tags", []),
            )
        )

        if depth >= self.config.max_depth:
            note(canonical, "expand", "DepthLimit")
            return []

        context = self.gather_context(canonical, note)
        if context is None:
            return []

        try:
            records = extract_sources(context, self.extractor, canonical)
        except ExtractorError as exc:
            note(canonical, "extract", f"ExtractorError: {exc}")
            return []
        note(canonical, "extract", f"{len(records)} records")

        records = sorted(records, key=lambda r: (-r.confidence, r.source_name_raw))
        if len(records) > self.config.max_branching:
            note(canonical, "branch", f"BranchLimit: kept {self.config.max_branching} of {len(records)}")
            records = records[: self.config.max_branching]

        aggregated = aggregate_records(
            records,
            self.alias_table,
            self.config.review_threshold,
            canonical,
            known_ids=set(graph.nodes),
        )
        for discard in aggregated.discarded:
            note(canonical, "discard", f"{discard.reason}: {discard.source_name_raw}")

        to_push: list[str] = []
        for edge in sorted(aggregated.edges + aggregated.flagged, key=lambda e: e.key):
            try:
                source_validation = validate_candidate(self.hub, edge.source, self.config)
            except (TransportError, LineageError) as exc:
                note(edge.source, "validate", f"Error: {exc}")
                continue
            if not source_validation.valid:
                note(canonical, "discard", f"{source_validation.reason}: {edge.source}")
                continue
            graph.add_node(
                DatasetNode(
                    id=source_validation.canonical_id,
                    released_at=source_validation.released_at,
                    download_count=source_validation.meta.get("downloads"),
                    tags=source_validation.meta.get("tags", []),
                )
            )
            outcome = graph.add_edge(edge)
            detail = outcome.action if not outcome.reason else f"{outcome.action} ({outcome.reason})"
            note(canonical, "edge", f"{edge.source} -> {edge.target} [{edge.relationship.value}]: {detail}")
            to_push.append(edge.source)
        return to_push

    # ------------------------------------------------------------------

    def gather_context(self, canonical: str, note=None):
        """README plus discovered papers/blogs/repos, pruned and
        assembled; None when nothing could be fetched."""
        if note is None:
            def note(*_args):
                return None
        try:
            readme = self.hub.fetch_readme(canonical)
        except (ResourceNotFound, TransportError) as exc:
            note(canonical, "fetch", f"FetchFailed: {exc}")
            return None
        docs = [prune(readme)]
        for link in discover_resources(readme):
            try:
                if link.kind is DocKind.PAPER:
                    docs.append(prune(self.arxiv.fetch_paper(link.url)))
                else:
                    docs.append(prune(self.web.fetch_web(link.url)))
            except (ResourceNotFound, TransportError, LineageError) as exc:
                note(canonical, "fetch", f"ResourceSkipped: {link.url}: {exc}")
        try:
            context = build_resource_context(canonical, docs)
        except EmptyContext:
            note(canonical, "fetch", "EmptyContext")
            return None
        for dropped in context.dropped:
            note(canonical, "fetch", f"BudgetDropped: {dropped}")
        return context
