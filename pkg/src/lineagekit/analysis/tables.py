"""Packaged cross-model rank table and its EvalRecord view.

The package ships one reference table: per-domain dataset rankings under
two base models, with catalog sizes and release years. It feeds the
rank-consistency pipeline end to end without network access.
"""

from __future__ import annotations

import json
from importlib import resources
from typing import Any

from lineagekit.analysis.records import EvalRecord
from lineagekit.errors import NotFound, SchemaMismatch

_TABLE_RESOURCE = ("data", "cross_model_ranks.json")
_REQUIRED_KEYS = ("models", "domains", "datasets")


def load_rank_table() -> dict[str, Any]:
    """Parse the packaged rank table into its raw document form."""
    path = resources.files("lineagekit.analysis").joinpath(*_TABLE_RESOURCE)
    table = json.loads(path.read_text(encoding="utf-8"))
    missing = [key for key in _REQUIRED_KEYS if key not in table]
    if missing:
        raise SchemaMismatch(f"rank table missing keys: {missing}")
    return table


def rank_records(model: str, table: dict[str, Any] | None = None) -> list[EvalRecord]:
    """EvalRecords for one base model, one per (dataset, domain) pair.

    Ranks come straight from the table (1 = best); sizes ride along so
    efficiency math works on the same records.
    """
    if table is None:
        table = load_rank_table()
    models = list(table["models"])
    if model not in models:
        raise NotFound(f"model {model!r} not in rank table; has {models}")
    column = models.index(model)

    records: list[EvalRecord] = []
    for row in table["datasets"]:
        for domain in table["domains"]:
            ranks = row["ranks"].get(domain)
            if ranks is None:
                continue
            records.append(
                EvalRecord(
                    dataset_id=row["dataset"],
                    base_model=model,
                    domain=domain,
                    dataset_size=row.get("size"),
                    rank=ranks[column],
                )
            )
    return records
