"""Resource acquisition: hub metadata, READMEs, papers, web pages, and
the pruning that turns them into a per-dataset resource context."""

from lineagekit.sources.client import (
    DEFAULT_ARXIV_BASE,
    DEFAULT_HUB_BASE,
    ArxivClient,
    HubClient,
    ResolveResult,
    WebClient,
)
from lineagekit.sources.docs import (
    DEFAULT_CONTEXT_BUDGET,
    DocKind,
    ResourceContext,
    ResourceDoc,
    TypedLink,
    build_resource_context,
    discover_resources,
    prune,
)
from lineagekit.sources.transport import (
    FetchResult,
    FixtureStore,
    HttpTransport,
    OfflineTransport,
    TokenBucket,
    locator_digest,
    locator_host,
)

__all__ = [
    "ArxivClient",
    "DEFAULT_ARXIV_BASE",
    "DEFAULT_CONTEXT_BUDGET",
    "DEFAULT_HUB_BASE",
    "DocKind",
    "FetchResult",
    "FixtureStore",
    "HttpTransport",
    "HubClient",
    "OfflineTransport",
    "ResolveResult",
    "ResourceContext",
    "ResourceDoc",
    "TokenBucket",
    "TypedLink",
    "WebClient",
    "build_resource_context",
    "discover_resources",
    "locator_digest",
    "locator_host",
    "prune",
]
