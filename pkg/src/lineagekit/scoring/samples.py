"""Sample records and the line-delimited input format."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from lineagekit.errors import MissingField, SchemaMismatch


def content_hash(instruction: str, response: str) -> str:
    digest = hashlib.sha256()
    digest.update(instruction.encode("utf-8"))
    # record separator keeps ("ab","c") and ("a","bc") distinct
    digest.update(b"\x1e")
    digest.update(response.encode("utf-8"))
    return digest.hexdigest()


@dataclass(frozen=True)
class Sample:
    """One instruction-response pair.

    The instruction is the Q text, the full pair is the QA text; metrics
    declare which of the two they rate. sample_id defaults to a content
    hash so identity survives reordering and re-parsing.
    """

    instruction: str
    response: str = ""
    sample_id: str = ""

    def __post_init__(self):
        if not self.instruction:
            raise MissingField("sample instruction must be nonempty")
        if not self.sample_id:
            object.__setattr__(
                self, "sample_id", content_hash(self.instruction, self.response)
            )

    @property
    def qa_text(self) -> str:
        return f"{self.instruction}\n\n{self.response}"


def load_samples(text: str) -> list[Sample]:
    """Parse line-delimited records with instruction and response fields.

    Blank lines are skipped. Both keys are required; the response value
    may be empty.
    """
    samples = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise SchemaMismatch(f"line {line_no} is not valid JSON: {exc}")
        if not isinstance(record, dict):
            raise SchemaMismatch(f"line {line_no} is not an object")
        for key in ("instruction", "response"):
            if key not in record:
                raise MissingField(f"line {line_no} is missing {key!r}")
        samples.append(
            Sample(instruction=record["instruction"], response=record["response"])
        )
    return samples
