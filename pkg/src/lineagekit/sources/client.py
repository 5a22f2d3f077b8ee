"""Clients for the dataset hub, the paper archive, and plain web pages.

All network behavior lives behind a transport object so the whole stack
runs identically against recorded fixtures (offline) and the live
endpoints. Endpoint bases are constructor parameters; the config module
maps file/environment settings onto them.
"""

from __future__ import annotations

import json
import logging
import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from datetime import date, datetime
from urllib.parse import quote, urlsplit

from lineagekit.errors import BadLocator, ResourceNotFound
from lineagekit.sources.docs import DocKind, ResourceDoc, _classify
from lineagekit.sources.transport import FetchResult

log = logging.getLogger(__name__)

DEFAULT_HUB_BASE = "https://huggingface.co"
DEFAULT_ARXIV_BASE = "https://export.arxiv.org"

_ARXIV_ID_RE = re.compile(r"(\d{4}\.\d{4,5})(v\d+)?")
_ATOM_NS = "{http://www.w3.org/2005/Atom}"


@dataclass
class ResolveResult:
    exists: bool
    canonical_id: str | None = None
    released_at: date | None = None
    downloads: int | None = None
    tags: tuple[str, ...] = ()


def _parse_created(value: str | None) -> date | None:
    if not value:
        return None
    text = value.strip()
    if text.endswith("Z"):
        text = text[:-1] + "+00:00"
    try:
        return datetime.fromisoformat(text).date()
    except ValueError:
        try:
            return date.fromisoformat(text[:10])
        except ValueError:
            return None


class HubClient:
    """Metadata and README access for hub-hosted datasets."""

    def __init__(self, transport, base_url: str = DEFAULT_HUB_BASE):
        self.transport = transport
        self.base_url = base_url.rstrip("/")
        self._resolve_cache: dict[str, ResolveResult] = {}

    def metadata_locator(self, dataset_id: str) -> str:
        return f"{self.base_url}/api/datasets/{dataset_id}"

    def readme_locator(self, dataset_id: str) -> str:
        return f"{self.base_url}/datasets/{dataset_id}/raw/main/README.md"

    def resolve_dataset(self, dataset_id: str) -> ResolveResult:
        """Existence plus release timestamp from the hub metadata
        endpoint. A missing dataset is a value (exists=False); release
        dates are passed through unvalidated (floor checks belong to the
        tracer)."""
        if dataset_id in self._resolve_cache:
            return self._resolve_cache[dataset_id]
        result = self.transport.get(self.metadata_locator(dataset_id))
        if result.status == 404:
            resolved = ResolveResult(exists=False)
        else:
            meta = json.loads(result.body)
            resolved = ResolveResult(
                exists=True,
                canonical_id=meta.get("id", dataset_id),
                released_at=_parse_created(meta.get("createdAt")),
                downloads=meta.get("downloads"),
                tags=tuple(meta.get("tags", ())),
            )
        self._resolve_cache[dataset_id] = resolved
        return resolved

    def fetch_readme(self, dataset_id: str) -> ResourceDoc:
        locator = self.readme_locator(dataset_id)
        result = self.transport.get(locator)
        if result.status == 404:
            raise ResourceNotFound(f"no README recorded for {dataset_id}")
        return _to_doc(result, DocKind.README, locator)


class ArxivClient:
    """Paper lookup through the archive's Atom query API."""

    def __init__(self, transport, base_url: str = DEFAULT_ARXIV_BASE):
        self.transport = transport
        self.base_url = base_url.rstrip("/")

    def query_locator(self, ref: str) -> str:
        match = _ARXIV_ID_RE.search(ref)
        if match and ("arxiv" in ref.lower() or ref.strip() == match.group(0)):
            return f"{self.base_url}/api/query?id_list={match.group(1)}"
        quoted = quote(f'ti:"{ref.strip()}"', safe=':"')
        return f"{self.base_url}/api/query?search_query={quoted}&max_results=1"

    def fetch_paper(self, ref: str) -> ResourceDoc:
        """ref may be an abs/pdf URL, a bare article id, or a title."""
        locator = self.query_locator(ref)
        result = self.transport.get(locator)
        if result.status == 404:
            raise ResourceNotFound(f"archive query failed for {ref!r}")
        title, abstract = _parse_atom_entry(result.body)
        if title is None:
            raise ResourceNotFound(f"no archive match for {ref!r}")
        doc = _to_doc(result, DocKind.PAPER, locator)
        doc.raw = f"{title}\n\n{abstract}"
        return doc


def _parse_atom_entry(xml_text: str) -> tuple[str | None, str]:
    try:
        root = ET.fromstring(xml_text)
    except ET.ParseError:
        return None, ""
    entry = root.find(f"{_ATOM_NS}entry")
    if entry is None:
        return None, ""
    title = entry.findtext(f"{_ATOM_NS}title", default="").strip()
    summary = entry.findtext(f"{_ATOM_NS}summary", default="").strip()
    summary = re.sub(r"\s*\n\s*", " ", summary)
    return (title or None), summary


class WebClient:
    """Everything that is neither hub metadata nor a paper query."""

    def __init__(self, transport, size_cap: int = 2_000_000):
        self.transport = transport
        self.size_cap = size_cap

    def fetch_web(self, url: str) -> ResourceDoc:
        parts = urlsplit(url)
        if parts.scheme not in ("http", "https") or not parts.netloc:
            raise BadLocator(f"not a fetchable URL: {url!r}")
        result = self.transport.get(url)
        if result.status == 404:
            raise ResourceNotFound(f"404: {url}")
        kind = _classify(url) or DocKind.BLOG
        if kind is DocKind.PAPER:
            kind = DocKind.BLOG  # paper URLs go through ArxivClient
        doc = _to_doc(result, kind, url)
        if len(doc.raw) > self.size_cap:
            doc.raw = doc.raw[: self.size_cap]
            doc.truncated = True
        return doc


def _to_doc(result: FetchResult, kind: DocKind, locator: str) -> ResourceDoc:
    return ResourceDoc(
        kind=kind,
        locator=locator,
        raw=result.body,
        fetched_at=result.fetched_at,
        content_type=result.content_type,
    )
