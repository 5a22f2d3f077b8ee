"""Source extraction from resource contexts.

Two interchangeable extractors ship. The judge-backed one hands the
context to an external completion service and parses its structured
output; the heuristic one detects hub ids and known alias names near
relationship keywords and scores confidence by keyword proximity. Both
honor the same contract: side-effect free, records only for claimed
constituent sources, never for datasets that are merely evaluated
against or compared to.
"""

from __future__ import annotations

import json
import logging
import re

from lineagekit.errors import ConfigError, ExtractorError
from lineagekit.graph import Relationship
from lineagekit.sources.docs import ResourceContext, ResourceDoc
from lineagekit.tracer.records import ExtractionRecord

log = logging.getLogger(__name__)

# proximity window (chars) within which a relationship keyword can claim
# a dataset mention; also the confidence denominator
PROXIMITY_WINDOW = 300
MIN_CONFIDENCE = 0.15

# precedence order matters twice: earlier patterns claim their text so
# later ones cannot re-match inside them ("rejection sampling from" must
# not degrade to subset's "sampling from"), and ties in distance resolve
# to the earlier entry.
RELATIONSHIP_PATTERNS: list[tuple[Relationship, str]] = [
    (Relationship.REJECTION_SAMPLING, r"rejection[-\s]sampl\w*"),
    (Relationship.DISTILLATION, r"distill\w*"),
    (Relationship.REFORMULATION, r"reformulat\w*|rewrit\w*|rewrot\w*|rephras\w*"),
    (Relationship.FUSION, r"merg\w*|fus(?:e[sd]?|ing|ion)\b"),
    (Relationship.AGGREGATION, r"aggregat\w*|compil(?:e[sd]?|ing|ation)\b"),
    (Relationship.SUBSET, r"subset\w*|sampl\w*\s+(?:directly\s+)?from"),
    (
        Relationship.UNKNOWN,
        r"derived\s+from|based\s+on|built\s+(?:up)?on|built\s+from|"
        r"constructed\s+from|sourced\s+from|drawn\s+from",
    ),
]

# incidental-mention cues: a dataset named closer to one of these than to
# any relationship keyword is being evaluated against, not built from
EVALUATION_CUES = (
    r"evaluat\w*\s+(?:on|against|with)|eval\s+on|tested?\s+on|"
    r"benchmark\w*\s+(?:on|against)|compar\w*\s+(?:to|with|against)|"
    r"comparison\w*|baseline\w*|held[-\s]out|we\s+report|report\w*\s+(?:results|scores)|"
    r"measur\w*\s+on|scored?\s+on|performance\s+on"
)

# the name segment must end on a word character so sentence punctuation
# after an id ("built from org/data.") stays out of the match
_URL_RE = re.compile(r"https?://[^\s)\]>\"'`]+")
_HUB_URL_ID_RE = re.compile(
    r"https?://huggingface\.co/datasets/([\w.-]+/[\w.-]*\w)"
)
_BARE_ID_RE = re.compile(
    r"(?<![\w/.@-])([A-Za-z][\w.-]*/[A-Za-z0-9](?:[\w.-]*\w)?)(?![\w/])"
)


def _mask(text: str, start: int, end: int) -> str:
    return text[:start] + " " * (end - start) + text[end:]


def _find_mentions(
    text: str, alias_table: dict[str, str]
) -> tuple[list[tuple[str, int, int]], str]:
    """Dataset mentions as (raw name, start, end), bare hub ids plus
    alias names, longest aliases first so 'MATH' cannot fire inside
    'MATH-500'.

    Also returns the text with every URL and mention span blanked out.
    Keyword and cue scans must run on that copy: an id like
    'demo/math-distill' is a name, not a distillation claim."""
    mentions: list[tuple[str, int, int]] = []
    claimed: list[tuple[int, int]] = []

    def overlaps(start: int, end: int) -> bool:
        return any(s < end and start < e for s, e in claimed)

    # hub dataset URLs are mentions of the id they carry
    scan = text
    for match in _HUB_URL_ID_RE.finditer(text):
        mentions.append((match.group(1), match.start(1), match.end(1)))
        claimed.append((match.start(1), match.end(1)))
    # URLs are masked so paths like github.com/org/repo do not scan as
    # bare dataset ids (hub-id mentions above are already recorded)
    for match in _URL_RE.finditer(text):
        scan = _mask(scan, match.start(), match.end())

    for match in _BARE_ID_RE.finditer(scan):
        if not overlaps(match.start(1), match.end(1)):
            mentions.append((match.group(1), match.start(1), match.end(1)))
            claimed.append((match.start(1), match.end(1)))

    for alias in sorted(alias_table, key=lambda a: (-len(a), a)):
        pattern = re.compile(r"(?<![\w-])" + re.escape(alias) + r"(?![\w-])")
        for match in pattern.finditer(scan):
            if not overlaps(match.start(), match.end()):
                mentions.append((alias, match.start(), match.end()))
                claimed.append((match.start(), match.end()))

    for _, start, end in mentions:
        scan = _mask(scan, start, end)
    mentions.sort(key=lambda m: m[1])
    return mentions, scan


def _keyword_spans(text: str) -> list[tuple[int, int, int, Relationship]]:
    """(start, end, precedence, relationship) for every keyword hit;
    higher-precedence patterns claim their spans first."""
    spans: list[tuple[int, int, int, Relationship]] = []
    claimed: list[tuple[int, int]] = []
    lowered = text.lower()
    for precedence, (relationship, pattern) in enumerate(RELATIONSHIP_PATTERNS):
        for match in re.finditer(pattern, lowered):
            if any(s < match.end() and match.start() < e for s, e in claimed):
                continue
            spans.append((match.start(), match.end(), precedence, relationship))
            claimed.append((match.start(), match.end()))
    return spans


def _gap(a_start: int, a_end: int, b_start: int, b_end: int) -> int:
    if a_end <= b_start:
        return b_start - a_end
    if b_end <= a_start:
        return a_start - b_end
    return 0


def _sentence_slice(text: str, start: int, end: int) -> str:
    left = start
    while left > 0 and text[left - 1] != "\n":
        if text[left - 1] in ".!?" and left < len(text) and text[left] == " ":
            break
        left -= 1
    right = end
    while right < len(text) and text[right] != "\n":
        if text[right] in ".!?" and (right + 1 == len(text) or text[right + 1] in " \n"):
            right += 1
            break
        right += 1
    return text[left:right].strip()


class HeuristicExtractor:
    """Keyword-proximity extraction over pruned documents.

    For each dataset mention the nearest relationship keyword within the
    proximity window claims it; confidence decays linearly with the gap.
    A mention whose nearest cue is an evaluation phrase is treated as
    incidental and skipped.
    """

    name = "heuristic"

    def __init__(self, alias_table: dict[str, str] | None = None, window: int = PROXIMITY_WINDOW):
        self.alias_table = dict(alias_table or {})
        self.window = window
        self._eval_re = re.compile(EVALUATION_CUES)

    def extract(self, context: ResourceContext, candidate_id: str) -> list[ExtractionRecord]:
        best: dict[tuple[str, Relationship], ExtractionRecord] = {}
        for doc in context.docs:
            for record in self._extract_doc(doc, candidate_id):
                key = (record.source_name_raw, record.relationship)
                if key not in best or record.confidence > best[key].confidence:
                    best[key] = record
        return sorted(
            best.values(), key=lambda r: (-r.confidence, r.source_name_raw, r.relationship.value)
        )

    def _extract_doc(self, doc: ResourceDoc, candidate_id: str):
        text = doc.raw
        mentions, scan = _find_mentions(text, self.alias_table)
        keywords = _keyword_spans(scan)
        eval_spans = [(m.start(), m.end()) for m in self._eval_re.finditer(scan.lower())]
        for name, m_start, m_end in mentions:
            if name == candidate_id or name.lower() == candidate_id.lower():
                continue
            scored = [
                (_gap(k_start, k_end, m_start, m_end), precedence, k_start, k_end, rel)
                for k_start, k_end, precedence, rel in keywords
            ]
            scored = [s for s in scored if s[0] <= self.window]
            if not scored:
                continue
            gap, _, k_start, k_end, relationship = min(scored)
            eval_gaps = [
                _gap(e_start, e_end, m_start, m_end) for e_start, e_end in eval_spans
            ]
            if eval_gaps and min(eval_gaps) < gap:
                continue
            confidence = round(max(MIN_CONFIDENCE, 1.0 - gap / self.window), 4)
            evidence = _sentence_slice(text, min(m_start, k_start), max(m_end, k_end))
            yield ExtractionRecord(
                source_name_raw=name,
                relationship=relationship,
                confidence=confidence,
                evidence=evidence,
                origin_doc=doc.locator,
            )


JUDGE_PROMPT = """You map dataset derivations. Given the resource context for the \
dataset '{candidate}', list every dataset it was actually built from.

Exclude evaluation benchmarks, comparison baselines, and datasets that are \
merely mentioned without their data being integrated.

Answer with a JSON array only. Each element:
{{"source": "<owner/name or informal name>",
  "relationship": "distillation|fusion|reformulation|rejection_sampling|subset|aggregation|unknown",
  "confidence": <0..1>,
  "evidence": "<verbatim quote from the context>"}}

Context:
{context}
"""

_RELATIONSHIP_VALUES = {r.value for r in Relationship}


class JudgeExtractor:
    """Delegates extraction to an external completion service.

    The judge object needs one method, complete(prompt) -> str. Records
    that fail structural validation (unknown relationship, out-of-range
    confidence, evidence that is not a verbatim quote of a context
    document) are skipped and logged, never fatal.
    """

    name = "judge"

    def __init__(self, judge):
        self.judge = judge

    def extract(self, context: ResourceContext, candidate_id: str) -> list[ExtractionRecord]:
        prompt = JUDGE_PROMPT.format(candidate=candidate_id, context=context.text())
        try:
            response = self.judge.complete(prompt)
        except Exception as exc:
            raise ExtractorError(f"judge call failed for {candidate_id}: {exc}", candidate_id)
        items = self._parse_array(response, candidate_id)
        records = []
        for item in items:
            record = self._validate_item(item, context)
            if record is not None:
                records.append(record)
        return sorted(
            records, key=lambda r: (-r.confidence, r.source_name_raw, r.relationship.value)
        )

    def _parse_array(self, response: str, candidate_id: str) -> list:
        match = re.search(r"\[.*\]", response, re.DOTALL)
        if not match:
            log.warning("judge returned no JSON array for %s", candidate_id)
            return []
        try:
            parsed = json.loads(match.group(0))
        except json.JSONDecodeError as exc:
            log.warning("unparseable judge output for %s: %s", candidate_id, exc)
            return []
        return parsed if isinstance(parsed, list) else []

    def _validate_item(self, item, context: ResourceContext) -> ExtractionRecord | None:
        if not isinstance(item, dict):
            log.warning("skipping non-object judge record: %r", item)
            return None
        source = item.get("source")
        relationship = item.get("relationship")
        confidence = item.get("confidence")
        evidence = item.get("evidence", "")
        if not source or relationship not in _RELATIONSHIP_VALUES:
            log.warning("skipping malformed judge record: %r", item)
            return None
        if not isinstance(confidence, (int, float)) or not 0 <= confidence <= 1:
            log.warning("skipping judge record with bad confidence: %r", item)
            return None
        origin = next((d.locator for d in context.docs if evidence and evidence in d.raw), None)
        if origin is None:
            log.warning("skipping judge record with non-verbatim evidence: %r", source)
            return None
        return ExtractionRecord(
            source_name_raw=str(source),
            relationship=Relationship(relationship),
            confidence=round(float(confidence), 4),
            evidence=evidence,
            origin_doc=origin,
        )


def build_extractor(name: str, alias_table: dict[str, str] | None = None, judge=None):
    if name == "heuristic":
        return HeuristicExtractor(alias_table=alias_table)
    if name == "judge":
        if judge is None:
            raise ConfigError("judge extractor selected but no judge client configured")
        return JudgeExtractor(judge)
    raise ConfigError(f"unknown extractor: {name!r} (expected 'heuristic' or 'judge')")
