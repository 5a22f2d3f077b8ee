"""Lineage graph core: data model, mutation rules, traversal, statistics,
contamination detection, and serialization."""

from lineagekit.graph.model import (
    Domain,
    Relationship,
    Provenance,
    EdgeStatus,
    DatasetNode,
    Evidence,
    LineageEdge,
    edge_key,
    validate_dataset_id,
    canonicalize_id,
)
from lineagekit.graph.graph import (
    LineageGraph,
    AddNodeResult,
    EdgeOutcome,
    DepthStats,
    GraphStats,
    ContaminationRecord,
    ContaminationReport,
)
from lineagekit.graph.export import (
    export_graph,
    graph_to_document,
    import_graph,
    export_review_queue,
)

__all__ = [
    "Domain",
    "Relationship",
    "Provenance",
    "EdgeStatus",
    "DatasetNode",
    "Evidence",
    "LineageEdge",
    "edge_key",
    "validate_dataset_id",
    "canonicalize_id",
    "LineageGraph",
    "AddNodeResult",
    "EdgeOutcome",
    "DepthStats",
    "GraphStats",
    "ContaminationRecord",
    "ContaminationReport",
    "export_graph",
    "graph_to_document",
    "import_graph",
    "export_review_queue",
]
