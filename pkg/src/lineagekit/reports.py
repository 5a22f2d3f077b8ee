"""Analysis report documents.

One builder shared by the command line and the HTTP service so both
surfaces emit identical numbers for identical inputs. Every report is a
plain JSON-serializable dict with a "mode" discriminator.
"""

from __future__ import annotations

from lineagekit.analysis import (
    data_efficiency,
    domain_distribution,
    performance_delta,
    rank_consistency_report,
    score_performance_correlation,
    temporal_series,
)
from lineagekit.errors import ConfigError, EmptyInput

KINDS = ("efficiency", "consistency", "correlation", "temporal", "domains")


def build_report(store, records, kind: str) -> dict:
    """Build one analysis document over eval records.

    The store is consulted only for score profiles (correlation mode).
    Raises EmptyInput when the records cannot support the report and
    ConfigError when they are shaped wrong for it.
    """
    if kind == "efficiency":
        rows, skipped = [], 0
        for record in records:
            if None in (record.sft_score, record.base_score, record.dataset_size):
                skipped += 1
                continue
            rows.append({
                "dataset_id": record.dataset_id,
                "base_model": record.base_model,
                "delta": performance_delta(record),
                "dataset_size": record.dataset_size,
                "data_efficiency": data_efficiency(record),
            })
        if not rows:
            raise EmptyInput("no records carry both scores and a size")
        return {"mode": kind, "rows": rows, "skipped": skipped}

    if kind == "consistency":
        models = sorted({r.base_model for r in records})
        if len(models) != 2:
            raise ConfigError(
                f"consistency mode needs records for exactly 2 base models, got {models}")
        split = {m: [r for r in records if r.base_model == m] for m in models}
        report = rank_consistency_report(split[models[0]], split[models[1]])
        return {"mode": kind, "models": models, "domains": report.to_dict()}

    if kind == "correlation":
        profiles = [store.load_profile(p) for p in store.list_profiles()]
        if not profiles:
            raise EmptyInput("no score profiles in the store")
        matrix = score_performance_correlation(profiles, records)
        if not matrix:
            raise EmptyInput("no (metric, domain) cell joins 2 or more datasets")
        return {"mode": kind, "matrix": matrix}

    if kind == "temporal":
        dated = [r for r in records if r.released_quarter is not None]
        if not dated:
            raise EmptyInput("no records carry a released_quarter")
        series = temporal_series(dated, lambda r: r.released_quarter)
        return {"mode": kind, "series": [p.to_dict() for p in series],
                "skipped": len(records) - len(dated)}

    if kind == "domains":
        return {"mode": kind, "shares": domain_distribution(records)}

    raise ConfigError(f"unknown report kind {kind!r} (expected one of {KINDS})")
