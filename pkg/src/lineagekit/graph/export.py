"""Serialization of lineage graphs.

Three formats: "graph-document" (JSON, round-trips losslessly), "dot"
(visualization), "edge-list" (TSV of accepted edges). All exports are
deterministic: identical graphs serialize to identical bytes.
"""

from __future__ import annotations

import json

from lineagekit import SCHEMA_VERSION
from lineagekit.errors import SchemaMismatch, UnsupportedFormat
from lineagekit.graph.graph import LineageGraph
from lineagekit.graph.model import DatasetNode, EdgeStatus, LineageEdge

FORMATS = ("graph-document", "dot", "edge-list")


def export_graph(graph: LineageGraph, format: str = "graph-document") -> bytes:
    if format == "graph-document":
        return _to_document_bytes(graph)
    if format == "dot":
        return _to_dot(graph)
    if format == "edge-list":
        return _to_edge_list(graph)
    raise UnsupportedFormat(f"unknown export format: {format!r} (expected one of {FORMATS})")


def graph_to_document(graph: LineageGraph) -> dict:
    return {
        "version": SCHEMA_VERSION,
        "review_threshold": graph.review_threshold,
        "nodes": [graph.nodes[i].to_dict() for i in sorted(graph.nodes)],
        "edges": [e.to_dict() for e in graph.edges],
        "aliases": {k: graph.alias_table[k] for k in sorted(graph.alias_table)},
    }


def _to_document_bytes(graph: LineageGraph) -> bytes:
    doc = graph_to_document(graph)
    return (json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n").encode("utf-8")


def import_graph(data: bytes | str | dict) -> LineageGraph:
    """Rebuild a graph from a graph-document.

    Statuses and provenance are restored verbatim (no re-validation of
    review decisions); a document written by a different schema version
    raises SchemaMismatch.
    """
    if isinstance(data, (bytes, bytearray)):
        data = data.decode("utf-8")
    if isinstance(data, str):
        data = json.loads(data)
    version = data.get("version")
    if version != SCHEMA_VERSION:
        raise SchemaMismatch(
            f"graph document version {version!r}, this build reads version {SCHEMA_VERSION}"
        )
    graph = LineageGraph(review_threshold=data.get("review_threshold", 0.6))
    for node_data in data.get("nodes", []):
        node = DatasetNode.from_dict(node_data)
        graph._nodes[node.id] = node
    for edge_data in data.get("edges", []):
        edge = LineageEdge.from_dict(edge_data)
        graph._edges[edge.key] = edge
    graph.set_aliases(data.get("aliases", {}))
    graph._rebuild_adjacency()
    return graph


def _quote(ident: str) -> str:
    return '"' + ident.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _to_dot(graph: LineageGraph) -> bytes:
    lines = ["digraph lineage {", "  rankdir=LR;"]
    for node_id in sorted(graph.nodes):
        node = graph.nodes[node_id]
        attrs = [f"label={_quote(node_id)}"]
        if node.domain.value == "Benchmark":
            attrs.append("shape=box")
        lines.append(f"  {_quote(node_id)} [{', '.join(attrs)}];")
    for edge in graph.edges:
        if edge.status is EdgeStatus.REJECTED:
            continue
        attrs = [f"label={_quote(edge.relationship.value)}"]
        if edge.status is EdgeStatus.FLAGGED:
            attrs.append("style=dashed")
        lines.append(
            f"  {_quote(edge.source)} -> {_quote(edge.target)} [{', '.join(attrs)}];"
        )
    lines.append("}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def _to_edge_list(graph: LineageGraph) -> bytes:
    rows = [
        f"{e.source}\t{e.target}\t{e.relationship.value}\t{e.confidence!r}"
        for e in graph.edges
        if e.status is EdgeStatus.ACCEPTED
    ]
    return ("\n".join(rows) + ("\n" if rows else "")).encode("utf-8")


def export_review_queue(graph: LineageGraph) -> bytes:
    """Flagged edges as a JSON work queue for the review loop."""
    doc = {
        "version": SCHEMA_VERSION,
        "queue": [e.to_dict() for e in graph.flagged_edges()],
    }
    return (json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n").encode("utf-8")
