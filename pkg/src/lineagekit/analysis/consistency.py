"""Cross-model rank consistency and score-vs-performance correlation."""

from __future__ import annotations

from dataclasses import dataclass, field

from lineagekit.errors import InsufficientData
from lineagekit.analysis.records import EvalRecord
from lineagekit.analysis.stats import spearman


@dataclass(frozen=True)
class CorrelationEntry:
    domain: str
    rho: float | None
    n: int
    method: str = "spearman"
    dropped: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "domain": self.domain, "rho": self.rho, "n": self.n,
            "method": self.method, "dropped": list(self.dropped),
        }


@dataclass
class CorrelationReport:
    entries: dict[str, CorrelationEntry] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {domain: self.entries[domain].to_dict()
                for domain in sorted(self.entries)}


def _domain_pairs(
    records_a: list[EvalRecord], records_b: list[EvalRecord], domain: str
) -> tuple[list[float], list[float], list[str], list[str]]:
    """Joined comparison values for one domain.

    Supplied ranks are used only when every shared pair carries them on
    both sides (mixing ranks with raw scores in one vector would be
    incoherent); rank direction (1 = best) is flipped so larger always
    means better. Without full rank coverage, pairs compare by score
    and pairs lacking scores are dropped and reported."""
    side_a = {r.dataset_id: r for r in records_a if r.domain == domain}
    side_b = {r.dataset_id: r for r in records_b if r.domain == domain}
    shared = sorted(set(side_a) & set(side_b))
    dropped = sorted(set(side_a) ^ set(side_b))

    ranked = all(side_a[d].rank is not None and side_b[d].rank is not None
                 for d in shared)
    values_a, values_b, joined = [], [], []
    for dataset_id in shared:
        rec_a, rec_b = side_a[dataset_id], side_b[dataset_id]
        if ranked:
            values_a.append(-float(rec_a.rank))
            values_b.append(-float(rec_b.rank))
        elif rec_a.sft_score is not None and rec_b.sft_score is not None:
            values_a.append(rec_a.sft_score)
            values_b.append(rec_b.sft_score)
        else:
            dropped.append(dataset_id)
            continue
        joined.append(dataset_id)
    return values_a, values_b, joined, sorted(dropped)


def rank_consistency(
    records_a: list[EvalRecord], records_b: list[EvalRecord], domain: str
) -> CorrelationEntry:
    """Spearman correlation of one domain's dataset ordering across two
    models, joined on dataset_id."""
    values_a, values_b, joined, dropped = _domain_pairs(records_a, records_b, domain)
    if len(joined) < 2:
        raise InsufficientData(
            f"domain {domain!r} has {len(joined)} comparable datasets, need 2")
    rho = spearman(values_a, values_b)
    return CorrelationEntry(domain=domain, rho=rho, n=len(joined),
                            dropped=tuple(dropped))


def rank_consistency_report(
    records_a: list[EvalRecord], records_b: list[EvalRecord],
    domains: list[str] | None = None,
) -> CorrelationReport:
    if domains is None:
        domains = sorted({r.domain for r in records_a} &
                         {r.domain for r in records_b})
    report = CorrelationReport()
    for domain in domains:
        report.entries[domain] = rank_consistency(records_a, records_b, domain)
    return report


def score_performance_correlation(
    profiles: list, records: list[EvalRecord], metrics: list[str] | None = None
) -> dict[str, dict[str, float | None]]:
    """Per (metric, domain) Spearman between per-dataset metric means
    and fine-tuned scores.

    Cells with fewer than 2 joined datasets are absent from the result;
    cells whose correlation is undefined (zero variance) hold None.
    """
    profile_by_id = {p.dataset_id: p for p in profiles}
    if metrics is None:
        metrics = sorted({name for p in profiles for name in p.per_metric})

    by_domain: dict[str, list[EvalRecord]] = {}
    for record in records:
        if record.sft_score is None:
            continue
        by_domain.setdefault(record.domain, []).append(record)

    matrix: dict[str, dict[str, float | None]] = {}
    for metric in metrics:
        row: dict[str, float | None] = {}
        for domain in sorted(by_domain):
            means, scores = [], []
            for record in by_domain[domain]:
                profile = profile_by_id.get(record.dataset_id)
                if profile is None or metric not in profile.per_metric:
                    continue
                means.append(profile.per_metric[metric].mean)
                scores.append(record.sft_score)
            if len(means) < 2:
                continue
            row[domain] = spearman(means, scores)
        if row:
            matrix[metric] = row
    return matrix
