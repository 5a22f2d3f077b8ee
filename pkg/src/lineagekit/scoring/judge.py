"""Judge-rated metrics: Q/QA prompt routing and rating parsing.

A judge client is anything with complete(prompt) -> str. Ratings are
integers 1 to 5; everything else the judge might say is parser input,
and unparseable output is a per-sample error, never fatal.
"""

from __future__ import annotations

import hashlib
import json
import re
from enum import Enum
from importlib import resources

from lineagekit.errors import JudgeParseError
from lineagekit.scoring.samples import Sample

RATING_MIN = 1
RATING_MAX = 5


class JudgeMetric(str, Enum):
    DIFFICULTY = "Difficulty"
    RELEVANCE = "Relevance"
    CLARITY_Q = "Clarity_Q"
    CLARITY_QA = "Clarity_QA"
    COHERENCE_Q = "Coherence_Q"
    COHERENCE_QA = "Coherence_QA"
    COMPLETENESS_Q = "Completeness_Q"
    COMPLETENESS_QA = "Completeness_QA"
    COMPLEXITY_Q = "Complexity_Q"
    COMPLEXITY_QA = "Complexity_QA"
    CORRECTNESS = "Correctness"
    MEANINGFULNESS_Q = "Meaningfulness_Q"
    MEANINGFULNESS_QA = "Meaningfulness_QA"

    @property
    def target(self) -> str:
        """Which text the judge sees. Suffixed metrics route by suffix;
        of the unsuffixed ones, Difficulty rates the question alone
        while Relevance and Correctness rate the response against it."""
        if self.value.endswith("_QA"):
            return "QA"
        if self in (JudgeMetric.RELEVANCE, JudgeMetric.CORRECTNESS):
            return "QA"
        return "Q"


def _read_template(name: str) -> str:
    return (
        resources.files("lineagekit.scoring")
        .joinpath("templates", name)
        .read_text(encoding="utf-8")
    )


_TEMPLATE_FILES = {"Q": "rate_q.txt", "QA": "rate_qa.txt"}
_TEMPLATES = {target: _read_template(name) for target, name in _TEMPLATE_FILES.items()}


def template_hash() -> str:
    """Fingerprint of the shipped prompt templates; profiles record it
    so ratings produced under different wordings never silently mix."""
    digest = hashlib.sha256()
    for target in sorted(_TEMPLATE_FILES):
        digest.update(target.encode("ascii"))
        digest.update(_TEMPLATES[target].encode("utf-8"))
    return digest.hexdigest()


def build_prompt(sample: Sample, metric: JudgeMetric) -> str:
    # plain replace, not str.format: sample text may contain braces
    prompt = _TEMPLATES[metric.target]
    prompt = prompt.replace("{metric}", metric.value)
    prompt = prompt.replace("{instruction}", sample.instruction)
    if metric.target == "QA":
        prompt = prompt.replace("{response}", sample.response)
    return prompt


_JSON_OBJECT_RE = re.compile(r"\{[^{}]*\}")
_LABELED_RE = re.compile(
    r"(?i)\b(?:score|rating|grade)\b\s*[:=\-]?\s*\**\s*(?<![\d.])([1-5])(?!\d|\.\d)"
)
_FRACTION_RE = re.compile(r"(?<![\d.])([1-5])\s*(?:/\s*5\b|out\s+of\s+5\b)")
_BARE_RE = re.compile(r"(?<![\d.])([1-5])(?!\d|\.\d)")
# "on a scale of 1-5" and friends are instructions echoed back, not answers
_SCALE_MENTION_RE = re.compile(r"[1-5]\s*(?:-|–|\bto\b)\s*[1-5]")


def parse_judge_rating(text: str) -> int:
    """Integer 1-5 from whatever shape the judge answered in.

    Tries, in order: a JSON object with a score/rating field, a labeled
    value ("Score: 4"), a fraction ("4/5"), and finally a standalone
    digit with scale mentions like "1-5" masked out.
    """
    for match in _JSON_OBJECT_RE.finditer(text):
        try:
            payload = json.loads(match.group(0))
        except json.JSONDecodeError:
            continue
        if not isinstance(payload, dict):
            continue
        for key in ("score", "rating", "grade"):
            value = payload.get(key)
            if isinstance(value, bool):
                continue
            if isinstance(value, int) and RATING_MIN <= value <= RATING_MAX:
                return value
            if isinstance(value, float) and value.is_integer() and \
                    RATING_MIN <= value <= RATING_MAX:
                return int(value)

    labeled = _LABELED_RE.search(text)
    if labeled:
        return int(labeled.group(1))
    fraction = _FRACTION_RE.search(text)
    if fraction:
        return int(fraction.group(1))

    masked = _SCALE_MENTION_RE.sub(lambda m: " " * len(m.group(0)), text)
    bare = _BARE_RE.search(masked)
    if bare:
        return int(bare.group(1))
    raise JudgeParseError(f"no 1-5 rating found in judge output: {text[:80]!r}")


def run_judge(sample: Sample, metric: JudgeMetric | str, judge) -> int:
    metric = JudgeMetric(metric)
    rating = parse_judge_rating(judge.complete(build_prompt(sample, metric)))
    return rating


class MockJudge:
    """Deterministic judge stand-in.

    With fixed set it always answers that rating; otherwise the rating
    is a stable hash of the prompt, so it is keyed by the exact content
    shown (and thereby by sample identity and metric).
    """

    def __init__(self, fixed: int | None = None):
        if fixed is not None and not RATING_MIN <= fixed <= RATING_MAX:
            raise ValueError(f"fixed rating {fixed} outside 1-5")
        self.fixed = fixed

    def complete(self, prompt: str) -> str:
        if self.fixed is not None:
            return f"Score: {self.fixed}"
        digest = hashlib.sha256(prompt.encode("utf-8")).hexdigest()
        return f"Score: {int(digest, 16) % 5 + 1}"
