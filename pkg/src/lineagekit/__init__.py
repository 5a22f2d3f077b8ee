"""Toolkit for tracing, verifying, and analyzing the provenance of
post-training datasets.

Subpackages:
    graph       lineage graph model, traversal, statistics, contamination, export
    sources     hub/arXiv/web clients, document pruning, resource contexts
    tracer      recursive lineage construction and the human review loop
    scoring     per-sample and per-dataset quality scoring
    analysis    data efficiency, rank consistency, landscape statistics
    store       durable file-backed storage shared by the CLI and service
    service     HTTP review API consumed by the explorer UI
"""

SCHEMA_VERSION = 1

__version__ = "0.1.0"
