"""Evaluation records and quarter handling.

An EvalRecord holds one dataset's outcome on one base model. Sources
differ in completeness (rank tables carry no raw scores, score tables
carry no ranks), so the numeric fields are optional; operations that
need a field raise MissingField naming it rather than imputing.
"""

from __future__ import annotations

import csv
import io
import math
import re
from dataclasses import dataclass

from lineagekit.errors import MissingField, QuarterParseError, SchemaMismatch

_QUARTER_RE = re.compile(r"^(\d{4})Q([1-4])$")


def parse_quarter(text: str) -> tuple[int, int]:
    """'2023Q1' -> (2023, 1)."""
    match = _QUARTER_RE.match(text or "")
    if not match:
        raise QuarterParseError(f"not a YYYYQn quarter: {text!r}")
    return int(match.group(1)), int(match.group(2))


def format_quarter(year: int, quarter: int) -> str:
    return f"{year}Q{quarter}"


def next_quarter(year: int, quarter: int) -> tuple[int, int]:
    if quarter == 4:
        return year + 1, 1
    return year, quarter + 1


def quarter_range(first: str, last: str) -> list[str]:
    """Every quarter from first to last inclusive."""
    start, end = parse_quarter(first), parse_quarter(last)
    if start > end:
        raise QuarterParseError(f"quarter range runs backwards: {first} > {last}")
    out = []
    current = start
    while current <= end:
        out.append(format_quarter(*current))
        current = next_quarter(*current)
    return out


def _check_finite(name: str, value: float | None) -> float | None:
    if value is None:
        return None
    value = float(value)
    if not math.isfinite(value):
        raise SchemaMismatch(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class EvalRecord:
    dataset_id: str
    base_model: str
    domain: str
    sft_score: float | None = None
    base_score: float | None = None
    dataset_size: int | None = None
    released_quarter: str | None = None
    rank: int | None = None

    def __post_init__(self):
        if not self.dataset_id:
            raise MissingField("EvalRecord needs a dataset_id")
        if not self.base_model:
            raise MissingField("EvalRecord needs a base_model")
        object.__setattr__(self, "sft_score", _check_finite("sft_score", self.sft_score))
        object.__setattr__(self, "base_score", _check_finite("base_score", self.base_score))
        if self.dataset_size is not None:
            size = int(self.dataset_size)
            if size < 1:
                raise SchemaMismatch(f"dataset_size must be >= 1, got {size}")
            object.__setattr__(self, "dataset_size", size)
        if self.released_quarter is not None:
            parse_quarter(self.released_quarter)
        if self.rank is not None:
            rank = int(self.rank)
            if rank < 1:
                raise SchemaMismatch(f"rank must be >= 1, got {rank}")
            object.__setattr__(self, "rank", rank)

    def require(self, field_name: str):
        value = getattr(self, field_name)
        if value is None:
            raise MissingField(
                f"record for {self.dataset_id} on {self.base_model} has no {field_name}"
            )
        return value


_COLUMNS = (
    "dataset_id", "base_model", "domain", "sft_score", "base_score",
    "dataset_size", "released_quarter", "rank",
)
_REQUIRED = ("dataset_id", "base_model", "domain")


def load_eval_records(text: str, delimiter: str = "\t") -> list[EvalRecord]:
    """Delimited table with a header row naming the EvalRecord fields.
    Optional columns may be absent or left empty per row."""
    reader = csv.DictReader(io.StringIO(text), delimiter=delimiter)
    if reader.fieldnames is None:
        raise SchemaMismatch("eval table has no header row")
    unknown = set(reader.fieldnames) - set(_COLUMNS)
    if unknown:
        raise SchemaMismatch(f"unknown eval table columns: {sorted(unknown)}")
    for column in _REQUIRED:
        if column not in reader.fieldnames:
            raise MissingField(f"eval table is missing the {column!r} column")

    records = []
    for row_no, row in enumerate(reader, start=2):
        def pick(column, cast):
            raw = row.get(column)
            if raw is None or raw == "":
                return None
            try:
                return cast(raw)
            except (TypeError, ValueError) as exc:
                raise SchemaMismatch(f"row {row_no}: bad {column}: {exc}")

        records.append(EvalRecord(
            dataset_id=row["dataset_id"],
            base_model=row["base_model"],
            domain=row["domain"],
            sft_score=pick("sft_score", float),
            base_score=pick("base_score", float),
            dataset_size=pick("dataset_size", int),
            released_quarter=pick("released_quarter", str),
            rank=pick("rank", int),
        ))
    return records


def dump_eval_records(records: list[EvalRecord], delimiter: str = "\t") -> str:
    """Inverse of load_eval_records: header row plus one line per record,
    absent optional fields left as empty cells."""
    lines = [delimiter.join(_COLUMNS)]
    for record in records:
        cells = []
        for column in _COLUMNS:
            value = getattr(record, column)
            cells.append("" if value is None else str(value))
        lines.append(delimiter.join(cells))
    return "\n".join(lines) + "\n"
