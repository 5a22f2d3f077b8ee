"""Resource documents: pruning, link discovery, context assembly."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from html.parser import HTMLParser

from lineagekit.errors import EmptyContext

DEFAULT_CONTEXT_BUDGET = 60_000

# order in which document kinds appear in an assembled context
_KIND_ORDER = {"readme": 0, "paper": 1, "blog": 2, "repo_page": 2}


class DocKind(str, Enum):
    README = "readme"
    PAPER = "paper"
    BLOG = "blog"
    REPO_PAGE = "repo_page"


@dataclass
class ResourceDoc:
    kind: DocKind
    locator: str
    raw: str
    fetched_at: str = "1970-01-01T00:00:00+00:00"
    content_type: str = "text/plain"
    truncated: bool = False

    def __post_init__(self):
        if isinstance(self.kind, str) and not isinstance(self.kind, DocKind):
            self.kind = DocKind(self.kind)


@dataclass
class TypedLink:
    url: str
    kind: DocKind


@dataclass
class ResourceContext:
    dataset_id: str
    docs: list[ResourceDoc]
    total_chars: int
    dropped: list[str] = field(default_factory=list)

    def text(self) -> str:
        parts = [
            f"[{doc.kind.value}] {doc.locator}\n{doc.raw}"
            for doc in self.docs
        ]
        return "\n\n".join(parts)


# ----------------------------------------------------------------------
# pruning

_FENCE_RE = re.compile(r"^(```|~~~)")
_REFERENCE_HEADINGS = re.compile(
    r"^(#{1,6}\s+)?\s*(references|bibliography|acknowledge?ments?)\s*:?\s*$",
    re.IGNORECASE,
)
_ANY_HEADING = re.compile(r"^#{1,6}\s+\S")


class _TextExtractor(HTMLParser):
    SKIP = {"script", "style"}

    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.chunks: list[str] = []
        self._skip_depth = 0

    def handle_starttag(self, tag, attrs):
        if tag in self.SKIP:
            self._skip_depth += 1

    def handle_endtag(self, tag):
        if tag in self.SKIP and self._skip_depth:
            self._skip_depth -= 1

    def handle_data(self, data):
        if not self._skip_depth and data.strip():
            self.chunks.append(data.strip())


def _strip_fenced_code(text: str) -> str:
    kept: list[str] = []
    fence: str | None = None
    for line in text.splitlines():
        match = _FENCE_RE.match(line.strip())
        if match:
            marker = match.group(1)
            if fence is None:
                fence = marker
            elif marker == fence:
                fence = None
            continue
        if fence is None:
            kept.append(line)
    # an unclosed fence swallows everything after it, which still
    # satisfies the zero-delimiter guarantee
    return "\n".join(kept)


def _strip_markup(text: str) -> str:
    parser = _TextExtractor()
    parser.feed(text)
    parser.close()
    return "\n".join(parser.chunks) if parser.chunks else ""


def _drop_reference_sections(text: str) -> str:
    kept: list[str] = []
    dropping = False
    for line in text.splitlines():
        if _REFERENCE_HEADINGS.match(line.strip()):
            dropping = True
            continue
        if dropping and _ANY_HEADING.match(line):
            dropping = False
        if not dropping:
            kept.append(line)
    return "\n".join(kept)


def prune(doc: ResourceDoc) -> ResourceDoc:
    """Return a copy of the doc with kind-specific noise removed.

    readme: fenced code blocks out. blog / repo_page: markup stripped to
    text. paper: references / bibliography / acknowledgments sections
    dropped. Total for any input; never raises.
    """
    if doc.kind is DocKind.README:
        cleaned = _strip_fenced_code(doc.raw)
    elif doc.kind is DocKind.PAPER:
        cleaned = _drop_reference_sections(doc.raw)
    else:
        cleaned = _strip_markup(doc.raw) if "<" in doc.raw else doc.raw
    return ResourceDoc(
        kind=doc.kind,
        locator=doc.locator,
        raw=cleaned,
        fetched_at=doc.fetched_at,
        content_type=doc.content_type,
        truncated=doc.truncated,
    )


# ----------------------------------------------------------------------
# link discovery

_URL_RE = re.compile(r"https?://[^\s)\]>\"'`]+")
_ARXIV_HOSTS = ("arxiv.org",)
_REPO_HOSTS = ("github.com", "gitlab.com", "bitbucket.org")
_SKIP_HOSTS = (
    "huggingface.co",
    "img.shields.io",
    "shields.io",
    "opensource.org",
    "creativecommons.org",
)
_IMAGE_SUFFIXES = (".png", ".jpg", ".jpeg", ".gif", ".svg", ".webp")


def _classify(url: str) -> DocKind | None:
    host = re.sub(r"^https?://(www\.)?", "", url).split("/", 1)[0].lower()
    if any(host == h or host.endswith("." + h) for h in _SKIP_HOSTS):
        return None
    if url.lower().endswith(_IMAGE_SUFFIXES):
        return None
    if any(host == h or host.endswith("." + h) for h in _ARXIV_HOSTS):
        return DocKind.PAPER
    if any(host == h or host.endswith("." + h) for h in _REPO_HOSTS):
        return DocKind.REPO_PAGE
    return DocKind.BLOG


def discover_resources(doc: ResourceDoc) -> list[TypedLink]:
    """Pull external resource links out of a README, classified by host
    pattern, deduplicated, in document order."""
    links: list[TypedLink] = []
    seen: set[str] = set()
    for match in _URL_RE.finditer(doc.raw):
        url = match.group(0).rstrip(".,;:")
        if url in seen:
            continue
        seen.add(url)
        kind = _classify(url)
        if kind is not None:
            links.append(TypedLink(url=url, kind=kind))
    return links


# ----------------------------------------------------------------------
# context assembly

def build_resource_context(
    dataset_id: str,
    docs: list[ResourceDoc],
    budget: int = DEFAULT_CONTEXT_BUDGET,
) -> ResourceContext:
    """Assemble the per-dataset context: readme first, then papers, then
    blogs and repo pages; whole trailing docs are dropped once the
    character budget is hit (never a mid-document cut)."""
    if not docs:
        raise EmptyContext(f"{dataset_id}: no resource documents to assemble")
    ordered = sorted(
        range(len(docs)), key=lambda i: (_KIND_ORDER[docs[i].kind.value], i)
    )
    retained: list[ResourceDoc] = []
    dropped: list[str] = []
    total = 0
    over = False
    for i in ordered:
        doc = docs[i]
        if over or total + len(doc.raw) > budget:
            over = True
            dropped.append(doc.locator)
            continue
        retained.append(doc)
        total += len(doc.raw)
    return ResourceContext(
        dataset_id=dataset_id, docs=retained, total_chars=total, dropped=dropped
    )
