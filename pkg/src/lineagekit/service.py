"""HTTP review service.

Exposes stored graphs, the flagged-edge queue, analysis reports, and
decision submission. Reads serve immutable snapshots loaded from the
store per request; decision writes are serialized through the store's
single-writer lock. Response shapes are published as JSON Schema files
under ``lineagekit/schemas/``.
"""

from __future__ import annotations

from typing import Literal

from fastapi import FastAPI, Response
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from lineagekit import SCHEMA_VERSION, __version__
from lineagekit.errors import (
    EmptyInput,
    InsufficientData,
    InvalidState,
    LineageError,
    NotFound,
    SchemaMismatch,
)
from lineagekit.graph import graph_to_document
from lineagekit.reports import KINDS, build_report
from lineagekit.store import Store, slugify
from lineagekit.tracer import ReviewDecision, apply_review_decisions


class DecisionRequest(BaseModel):
    """One reviewer verdict on a flagged edge, addressed by edge key."""

    source: str = Field(min_length=1)
    target: str = Field(min_length=1)
    relationship: str = Field(min_length=1)
    verdict: Literal["accept", "reject"]
    reviewer: str = Field(min_length=1)
    note: str = ""


def _error_response(status: int, exc: Exception) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"error": type(exc).__name__, "detail": str(exc)},
    )


_ERROR_STATUS = (
    (NotFound, 404),
    (InvalidState, 409),
    (SchemaMismatch, 500),
    (LineageError, 400),
)


def build_app(config) -> FastAPI:
    """Build the service over the store at ``config.store_root``."""
    app = FastAPI(title="lineage review service", version=__version__)

    def open_store() -> Store:
        # create=False: request handlers must never write anything,
        # not even a fresh store skeleton (the serve command makes one)
        return Store(config.store_root, holder="service", create=False)

    for exc_type, status in _ERROR_STATUS:
        def handler(request, exc, status=status):
            return _error_response(status, exc)
        app.add_exception_handler(exc_type, handler)

    @app.get("/api/health")
    def health():
        open_store()
        return {"status": "ok", "schema_version": SCHEMA_VERSION}

    @app.get("/api/graph/{name}")
    def get_graph(name: str):
        graph = open_store().load_graph(name)
        return graph_to_document(graph)

    @app.get("/api/graph/{name}/node/{node_id:path}")
    def get_node(name: str, node_id: str):
        store = open_store()
        graph = store.load_graph(name)
        if node_id not in graph:
            raise NotFound(f"unknown dataset: {node_id}")
        node = graph.node(node_id)
        try:
            scores = store.load_profile(slugify(node_id)).to_dict()
        except NotFound:
            scores = None
        paths = [
            record.path
            for record in graph.detect_contamination().records
            if record.dataset == node_id
        ]
        return {
            "node": node.to_dict(),
            "in_edges": [e.to_dict() for e in graph.edges if e.target == node_id],
            "out_edges": [e.to_dict() for e in graph.edges if e.source == node_id],
            "scores": scores,
            "contamination": {"flagged": bool(paths), "paths": paths},
        }

    @app.get("/api/queue/{name}")
    def get_queue(name: str):
        graph = open_store().load_graph(name)
        flagged = sorted(graph.flagged_edges(), key=lambda e: (e.confidence, e.key))
        return [e.to_dict() for e in flagged]

    @app.post("/api/queue/{name}/decision")
    def post_decision(name: str, body: DecisionRequest):
        store = open_store()
        decision = ReviewDecision(
            edge_key=(body.source, body.target, body.relationship),
            verdict=body.verdict,
            reviewer=body.reviewer,
            note=body.note,
        )
        with store.lock():
            graph = store.load_graph(name)
            outcome = apply_review_decisions(graph, [decision])
            store.save_graph(name, graph)
            store.save_queue(name, graph)
            entry = outcome.audit_entries[0]
            store.append_audit(entry.to_dict())
        edge = graph.edge(*decision.edge_key)
        return {
            "status": edge.status.value,
            "reason": entry.reason,
            "edge": edge.to_dict(),
            "submitted_at": entry.timestamp,
        }

    @app.get("/api/reports/{kind}")
    def get_report(kind: str):
        if kind not in KINDS:
            raise NotFound(f"unknown report kind {kind!r} (expected one of {KINDS})")
        store = open_store()
        records = [
            record
            for record_set in store.list_records()
            for record in store.load_records(record_set)
        ]
        if not records:
            return Response(status_code=204)
        try:
            return build_report(store, records, kind)
        except (EmptyInput, InsufficientData):
            return Response(status_code=204)

    return app
