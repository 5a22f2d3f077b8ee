"""Mutable lineage graph: mutation rules, traversal, statistics,
contamination detection.

Mutations are serialized through a single owner (see the concurrency note
on :class:`LineageGraph`); every read operation works on plain Python
structures and is safe against a snapshot obtained via :meth:`copy`.
"""

from __future__ import annotations

import dataclasses
from collections import deque
from dataclasses import dataclass, field

from lineagekit.errors import (
    EdgeValidationError,
    EmptyGraph,
    NotFound,
)
from lineagekit.graph.model import (
    DatasetNode,
    EdgeStatus,
    Evidence,
    LineageEdge,
    Provenance,
    Relationship,
    canonicalize_id,
    edge_key,
)

# Default confidence threshold below which an extracted edge is routed to
# the human review queue.
DEFAULT_REVIEW_THRESHOLD = 0.6

# Node fields that participate in metadata merging on duplicate add_node.
_MERGEABLE_FIELDS = ("released_at", "domain", "display_name", "download_count")


@dataclass
class AddNodeResult:
    id: str
    created: bool
    conflicts: list[str] = field(default_factory=list)


@dataclass
class EdgeOutcome:
    """Result of one add_edge call.

    action is the final status name ("accepted", "flagged", "rejected");
    reason is a short machine-readable code for rejections ("SelfLoop",
    "TimestampOrder", "CycleDetected", ...). cycle lists the offending
    node sequence when reason is CycleDetected.
    """

    action: str
    edge: LineageEdge | None = None
    reason: str | None = None
    cycle: list[str] | None = None
    merged: bool = False

    @property
    def accepted(self) -> bool:
        return self.action == "accepted"


@dataclass
class DepthStats:
    avg_depth: float
    max_depth: int
    argmax: str


@dataclass
class GraphStats:
    node_count: int
    edge_count: int
    edges_per_node: float
    avg_depth: float
    max_depth: int
    top_degree_nodes: list[tuple[str, int]]


@dataclass
class ContaminationRecord:
    dataset: str
    benchmark: str
    path: list[str]

    def to_dict(self) -> dict:
        return {"dataset": self.dataset, "benchmark": self.benchmark, "path": list(self.path)}


@dataclass
class ContaminationReport:
    records: list[ContaminationRecord]
    benchmarks_checked: list[str]
    missing_benchmarks: list[str]

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def to_dict(self) -> dict:
        return {
            "records": [r.to_dict() for r in self.records],
            "benchmarks_checked": list(self.benchmarks_checked),
            "missing_benchmarks": list(self.missing_benchmarks),
        }


class LineageGraph:
    """Directed graph of dataset derivations.

    Edges point source -> derived. The accepted-edge subgraph is kept
    acyclic and timestamp-consistent at all times; extracted edges below
    the review threshold are stored as flagged and do not participate in
    either invariant until a human accepts them.

    Concurrency: single-writer / multiple-reader. All mutation goes
    through add_node / add_edge / the review primitives; readers that may
    race a writer should operate on :meth:`copy`.
    """

    def __init__(
        self,
        review_threshold: float = DEFAULT_REVIEW_THRESHOLD,
        auto_create_nodes: bool = False,
    ):
        if not 0.0 <= review_threshold <= 1.0:
            raise ValueError(f"review_threshold {review_threshold} outside [0,1]")
        self.review_threshold = review_threshold
        self.auto_create_nodes = auto_create_nodes
        self._nodes: dict[str, DatasetNode] = {}
        self._edges: dict[tuple[str, str, str], LineageEdge] = {}
        self._alias_table: dict[str, str] = {}
        # adjacency over accepted edges only, kept in sync by _link/_unlink
        self._out: dict[str, set[str]] = {}
        self._in: dict[str, set[str]] = {}
        self._depth_cache: dict[str, int] = {}

    # ------------------------------------------------------------------
    # views

    @property
    def nodes(self) -> dict[str, DatasetNode]:
        return self._nodes

    @property
    def edges(self) -> list[LineageEdge]:
        return [self._edges[k] for k in sorted(self._edges)]

    @property
    def alias_table(self) -> dict[str, str]:
        return self._alias_table

    def node(self, node_id: str) -> DatasetNode:
        try:
            return self._nodes[node_id]
        except KeyError:
            raise NotFound(f"unknown dataset: {node_id}") from None

    def edge(self, source: str, target: str, relationship: Relationship | str) -> LineageEdge:
        key = edge_key(source, target, relationship)
        try:
            return self._edges[key]
        except KeyError:
            raise NotFound(f"unknown edge: {key}") from None

    def accepted_edges(self) -> list[LineageEdge]:
        return [e for e in self.edges if e.status is EdgeStatus.ACCEPTED]

    def flagged_edges(self) -> list[LineageEdge]:
        return [e for e in self.edges if e.status is EdgeStatus.FLAGGED]

    def __contains__(self, node_id: str) -> bool:
        return node_id in self._nodes

    def __eq__(self, other) -> bool:
        if not isinstance(other, LineageGraph):
            return NotImplemented
        return (
            self._nodes == other._nodes
            and self._edges == other._edges
            and self._alias_table == other._alias_table
        )

    def copy(self) -> LineageGraph:
        dup = LineageGraph(self.review_threshold, self.auto_create_nodes)
        for node in self._nodes.values():
            dup._nodes[node.id] = dataclasses.replace(node, tags=list(node.tags))
        for key, e in self._edges.items():
            dup._edges[key] = e.copy()
        dup._alias_table = dict(self._alias_table)
        dup._rebuild_adjacency()
        return dup

    # ------------------------------------------------------------------
    # aliases

    def add_alias(self, raw: str, canonical: str) -> None:
        self._alias_table[raw] = canonical

    def set_aliases(self, table: dict[str, str]) -> None:
        self._alias_table = dict(table)

    def canonicalize(self, raw: str) -> str | None:
        return canonicalize_id(raw, self._alias_table, set(self._nodes))

    # ------------------------------------------------------------------
    # mutation

    def add_node(self, node: DatasetNode | None = None, **fields) -> AddNodeResult:
        """Insert or merge one dataset node.

        Re-adding an existing id merges metadata: fields that were unset
        get filled from the new record, fields set on both sides keep the
        first value and the disagreement is reported in ``conflicts``.
        """
        if node is None:
            node = DatasetNode(**fields)
        existing = self._nodes.get(node.id)
        if existing is None:
            self._nodes[node.id] = node
            self._out.setdefault(node.id, set())
            self._in.setdefault(node.id, set())
            self._depth_cache.clear()
            return AddNodeResult(id=node.id, created=True)

        conflicts: list[str] = []
        for name in _MERGEABLE_FIELDS:
            old = getattr(existing, name)
            new = getattr(node, name)
            # Unknown domain and the derived default display name behave
            # as "unset" for merging purposes.
            if name == "domain":
                old_unset = old is None or old == "Unknown"
                new_unset = new is None or new == "Unknown"
            elif name == "display_name":
                old_unset = old == existing.id.split("/", 1)[1]
                new_unset = new == node.id.split("/", 1)[1]
            else:
                old_unset = old is None
                new_unset = new is None
            if old_unset and not new_unset:
                setattr(existing, name, new)
            elif not old_unset and not new_unset and old != new:
                conflicts.append(name)
        for tag in node.tags:
            if tag not in existing.tags:
                existing.tags.append(tag)
        self._depth_cache.clear()
        return AddNodeResult(id=node.id, created=False, conflicts=conflicts)

    def add_edge(self, edge: LineageEdge | None = None, **fields) -> EdgeOutcome:
        """Record one derivation claim and return what happened to it.

        Keyword form builds the edge in place so that malformed claims
        (self-loops, out-of-range confidence, missing evidence) come back
        as rejection outcomes instead of exceptions.
        """
        if edge is None:
            try:
                edge = LineageEdge(**fields)
            except EdgeValidationError as exc:
                src, tgt = fields.get("source"), fields.get("target")
                reason = "SelfLoop" if src is not None and src == tgt else "InvalidEdge"
                return EdgeOutcome(action="rejected", reason=f"{reason}: {exc}")

        for endpoint in (edge.source, edge.target):
            if endpoint not in self._nodes:
                if not self.auto_create_nodes:
                    raise NotFound(f"unknown dataset: {endpoint} (edge endpoint)")
                self.add_node(DatasetNode(id=endpoint))

        src_date = self._nodes[edge.source].released_at
        tgt_date = self._nodes[edge.target].released_at
        if src_date is not None and tgt_date is not None and src_date > tgt_date:
            return EdgeOutcome(
                action="rejected",
                reason=f"TimestampOrder: {edge.source} ({src_date}) released after "
                f"{edge.target} ({tgt_date})",
            )
        edge.timestamp_unverified = src_date is None or tgt_date is None

        key = edge.key
        existing = self._edges.get(key)
        merged = False
        if existing is not None:
            if existing.provenance is not Provenance.EXTRACTED or existing.status is EdgeStatus.REJECTED:
                # human decisions are sticky: re-extracted claims never
                # overturn a reviewed edge
                return EdgeOutcome(action=existing.status.value, edge=existing, merged=False)
            merged = True
            if edge.confidence > existing.confidence:
                existing.confidence = edge.confidence
                if edge.evidence.locator:
                    existing.evidence.locator = edge.evidence.locator
            if edge.evidence.text and edge.evidence.text not in existing.evidence.text:
                joined = (existing.evidence.text + "\n" + edge.evidence.text).strip("\n")
                existing.evidence.text = joined
            existing.timestamp_unverified = edge.timestamp_unverified
            edge = existing

        if edge.provenance is Provenance.EXTRACTED:
            if edge.flag_reason == "contradictory":
                # relationship disagreement is resolved by review, not by
                # confidence
                edge.status = EdgeStatus.FLAGGED
            elif edge.confidence < self.review_threshold:
                edge.status = EdgeStatus.FLAGGED
                edge.flag_reason = edge.flag_reason or "below_threshold"
            else:
                edge.status = EdgeStatus.ACCEPTED
                if edge.flag_reason == "below_threshold":
                    edge.flag_reason = None
        elif edge.status is EdgeStatus.FLAGGED and edge.flag_reason is None:
            edge.flag_reason = "below_threshold"

        if edge.status is EdgeStatus.ACCEPTED:
            cycle = self._would_cycle(edge.source, edge.target)
            if cycle is not None:
                if merged:
                    # keep the pre-existing flagged edge rather than
                    # accepting a cycle-forming upgrade
                    edge.status = EdgeStatus.FLAGGED
                    edge.flag_reason = "cycle_on_accept"
                    return EdgeOutcome(
                        action="flagged", edge=edge,
                        reason="CycleDetected", cycle=cycle, merged=True,
                    )
                return EdgeOutcome(
                    action="rejected",
                    reason=f"CycleDetected: {' -> '.join(cycle)}",
                    cycle=cycle,
                )

        self._edges[key] = edge
        if edge.status is EdgeStatus.ACCEPTED:
            self._link(edge.source, edge.target)
        return EdgeOutcome(action=edge.status.value, edge=edge, merged=merged)

    # ------------------------------------------------------------------
    # review primitives

    def accept_edge(self, key: tuple[str, str, str]) -> EdgeOutcome:
        """Promote an edge to accepted (human decision), re-checking the
        acyclicity and timestamp invariants before it joins the graph."""
        edge = self._edges.get(key)
        if edge is None:
            raise NotFound(f"unknown edge: {key}")
        if edge.status is EdgeStatus.ACCEPTED:
            edge.provenance = Provenance.HUMAN_CONFIRMED
            return EdgeOutcome(action="accepted", edge=edge)

        src_date = self._nodes[edge.source].released_at
        tgt_date = self._nodes[edge.target].released_at
        if src_date is not None and tgt_date is not None and src_date > tgt_date:
            edge.status = EdgeStatus.REJECTED
            edge.provenance = Provenance.HUMAN_CONFIRMED
            edge.flag_reason = "timestamp_on_accept"
            return EdgeOutcome(
                action="rejected", edge=edge,
                reason=f"TimestampOrder: {edge.source} ({src_date}) released after "
                f"{edge.target} ({tgt_date})",
            )
        cycle = self._would_cycle(edge.source, edge.target)
        if cycle is not None:
            edge.status = EdgeStatus.REJECTED
            edge.provenance = Provenance.HUMAN_CONFIRMED
            edge.flag_reason = "cycle_on_accept"
            return EdgeOutcome(
                action="rejected", edge=edge,
                reason="CycleDetected", cycle=cycle,
            )
        edge.status = EdgeStatus.ACCEPTED
        edge.provenance = Provenance.HUMAN_CONFIRMED
        edge.flag_reason = None
        edge.timestamp_unverified = src_date is None or tgt_date is None
        self._link(edge.source, edge.target)
        return EdgeOutcome(action="accepted", edge=edge)

    def reject_edge(self, key: tuple[str, str, str]) -> EdgeOutcome:
        edge = self._edges.get(key)
        if edge is None:
            raise NotFound(f"unknown edge: {key}")
        was_accepted = edge.status is EdgeStatus.ACCEPTED
        edge.status = EdgeStatus.REJECTED
        edge.provenance = Provenance.HUMAN_CONFIRMED
        if was_accepted:
            self._unlink(edge.source, edge.target)
        return EdgeOutcome(action="rejected", edge=edge)

    def replace_edge(self, key: tuple[str, str, str], replacement: LineageEdge) -> EdgeOutcome:
        """Reject the reviewed edge and record the corrected claim in its
        place (provenance human_rejected_replacement)."""
        self.reject_edge(key)
        replacement.provenance = Provenance.HUMAN_REJECTED_REPLACEMENT
        replacement.status = EdgeStatus.ACCEPTED
        return self.add_edge(replacement)

    # ------------------------------------------------------------------
    # traversal

    def ancestors(self, node_id: str) -> set[str]:
        """Transitive upstream closure over accepted edges, excluding the
        query node."""
        self.node(node_id)
        return self._closure(node_id, self._in)

    def descendants(self, node_id: str) -> set[str]:
        """Transitive downstream closure over accepted edges, excluding
        the query node."""
        self.node(node_id)
        return self._closure(node_id, self._out)

    def depth(self, node_id: str) -> int:
        """Length of the longest accepted derivation chain ending at the
        node; 0 for nodes with no accepted incoming edge."""
        self.node(node_id)
        if node_id in self._depth_cache:
            return self._depth_cache[node_id]
        # iterative DFS so long chains don't hit the recursion limit
        stack = [node_id]
        while stack:
            current = stack[-1]
            if current in self._depth_cache:
                stack.pop()
                continue
            pending = [p for p in self._in.get(current, ()) if p not in self._depth_cache]
            if pending:
                stack.extend(pending)
                continue
            parents = self._in.get(current, ())
            self._depth_cache[current] = (
                1 + max(self._depth_cache[p] for p in parents) if parents else 0
            )
            stack.pop()
        return self._depth_cache[node_id]

    def depth_stats(self, node_ids=None) -> DepthStats:
        """Average and maximum depth over a node set (default: all
        nodes). argmax ties break to the lexicographically smallest id."""
        ids = sorted(node_ids) if node_ids is not None else sorted(self._nodes)
        if not ids:
            raise EmptyGraph("depth_stats over an empty node set")
        depths = {i: self.depth(i) for i in ids}
        argmax = min(ids, key=lambda i: (-depths[i], i))
        return DepthStats(
            avg_depth=sum(depths.values()) / len(ids),
            max_depth=depths[argmax],
            argmax=argmax,
        )

    def reuse_count(self, node_id: str) -> int:
        """Number of distinct datasets directly derived from this one via
        accepted edges (duplicate relationship labels count once)."""
        self.node(node_id)
        return len(self._out.get(node_id, ()))

    def graph_stats(self, node_ids=None, top_n: int = 10) -> GraphStats:
        """Headline statistics over the accepted subgraph.

        edges_per_node = accepted edge count / node count. Degree ranking
        uses total (in + out) accepted degree, ties broken
        lexicographically by id.
        """
        if not self._nodes:
            raise EmptyGraph("graph_stats on an empty graph")
        ids = sorted(node_ids) if node_ids is not None else sorted(self._nodes)
        id_set = set(ids)
        accepted = [
            e for e in self.accepted_edges() if e.source in id_set and e.target in id_set
        ]
        degree: dict[str, int] = {i: 0 for i in ids}
        for e in accepted:
            degree[e.source] += 1
            degree[e.target] += 1
        ranked = sorted(ids, key=lambda i: (-degree[i], i))[:top_n]
        dstats = self.depth_stats(ids)
        return GraphStats(
            node_count=len(ids),
            edge_count=len(accepted),
            edges_per_node=len(accepted) / len(ids),
            avg_depth=dstats.avg_depth,
            max_depth=dstats.max_depth,
            top_degree_nodes=[(i, degree[i]) for i in ranked],
        )

    def detect_contamination(self, benchmark_ids=None) -> ContaminationReport:
        """Trace benchmark leakage through the accepted subgraph.

        The effective benchmark set is the declared id list united with
        every node whose domain is Benchmark. For each non-benchmark node
        reachable downstream of a benchmark, one record per reaching
        benchmark is emitted with a shortest witnessing path (ties broken
        toward the lexicographically smallest path). Declared ids absent
        from the graph are reported, not fatal.
        """
        declared = sorted(set(benchmark_ids)) if benchmark_ids else []
        missing = [b for b in declared if b not in self._nodes]
        effective = {b for b in declared if b in self._nodes}
        effective.update(
            n.id for n in self._nodes.values() if n.domain.value == "Benchmark"
        )
        benchmarks = sorted(effective)

        records: list[ContaminationRecord] = []
        for bench in benchmarks:
            parent: dict[str, str] = {bench: ""}
            queue = deque([bench])
            while queue:
                current = queue.popleft()
                for nxt in sorted(self._out.get(current, ())):
                    if nxt not in parent:
                        parent[nxt] = current
                        queue.append(nxt)
            for reached in sorted(parent):
                if reached == bench or reached in effective:
                    continue
                path = [reached]
                while path[-1] != bench:
                    path.append(parent[path[-1]])
                records.append(
                    ContaminationRecord(dataset=reached, benchmark=bench, path=path[::-1])
                )
        records.sort(key=lambda r: (r.dataset, r.benchmark))
        return ContaminationReport(
            records=records, benchmarks_checked=benchmarks, missing_benchmarks=missing
        )

    # ------------------------------------------------------------------
    # internals

    def _closure(self, start: str, adjacency: dict[str, set[str]]) -> set[str]:
        seen: set[str] = set()
        queue = deque([start])
        while queue:
            for nxt in adjacency.get(queue.popleft(), ()):
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        seen.discard(start)
        return seen

    def _would_cycle(self, source: str, target: str) -> list[str] | None:
        """Shortest accepted path target -> source, or None. Adding
        source->target closes that path into a cycle."""
        if source == target:
            return [source]
        parent: dict[str, str] = {target: ""}
        queue = deque([target])
        while queue:
            current = queue.popleft()
            for nxt in sorted(self._out.get(current, ())):
                if nxt in parent:
                    continue
                parent[nxt] = current
                if nxt == source:
                    path = [source]
                    while path[-1] != target:
                        path.append(parent[path[-1]])
                    return path[::-1]
                queue.append(nxt)
        return None

    def _link(self, source: str, target: str) -> None:
        self._out.setdefault(source, set()).add(target)
        self._in.setdefault(target, set()).add(source)
        self._depth_cache.clear()

    def _unlink(self, source: str, target: str) -> None:
        # another accepted edge with a different relationship label may
        # still connect the pair
        still = any(
            e.status is EdgeStatus.ACCEPTED
            and e.source == source
            and e.target == target
            for e in self._edges.values()
        )
        if not still:
            self._out.get(source, set()).discard(target)
            self._in.get(target, set()).discard(source)
        self._depth_cache.clear()

    def _rebuild_adjacency(self) -> None:
        self._out = {i: set() for i in self._nodes}
        self._in = {i: set() for i in self._nodes}
        for e in self._edges.values():
            if e.status is EdgeStatus.ACCEPTED:
                self._out[e.source].add(e.target)
                self._in[e.target].add(e.source)
        self._depth_cache.clear()
