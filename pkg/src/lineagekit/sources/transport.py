"""Response storage and transports.

The recorded-response layout is shared by the offline fixture store and
the live cache: ``<root>/<host>/<sha256-of-locator>.body`` holds the
payload, ``.meta`` a small JSON sidecar (status, content type, fetch
time). Offline mode reads only from this layout; live mode writes every
response into it, so a run against the network leaves behind a replayable
store.
"""

from __future__ import annotations

import hashlib
import json
import logging
import time
from dataclasses import dataclass
from pathlib import Path
from urllib.parse import urlsplit

from lineagekit.errors import BadLocator, OfflineViolation, TransportError

log = logging.getLogger(__name__)

DEFAULT_TIMEOUT = 20.0
DEFAULT_RETRIES = 3
BACKOFF_BASE = 0.5


@dataclass
class FetchResult:
    body: str
    status: int = 200
    content_type: str = "text/plain"
    fetched_at: str = "1970-01-01T00:00:00+00:00"
    locator: str = ""


def locator_host(locator: str) -> str:
    parts = urlsplit(locator)
    if parts.scheme not in ("http", "https") or not parts.netloc:
        raise BadLocator(f"not an http(s) URL: {locator!r}")
    return parts.netloc


def locator_digest(locator: str) -> str:
    return hashlib.sha256(locator.encode("utf-8")).hexdigest()


class FixtureStore:
    """Directory of recorded responses keyed by host and locator hash."""

    def __init__(self, root: str | Path):
        self.root = Path(root)

    def _paths(self, locator: str) -> tuple[Path, Path]:
        base = self.root / locator_host(locator) / locator_digest(locator)
        return base.with_suffix(".body"), base.with_suffix(".meta")

    def load(self, locator: str) -> FetchResult | None:
        body_path, meta_path = self._paths(locator)
        if not body_path.exists():
            return None
        meta = {}
        if meta_path.exists():
            meta = json.loads(meta_path.read_text(encoding="utf-8"))
        return FetchResult(
            body=body_path.read_text(encoding="utf-8"),
            status=int(meta.get("status", 200)),
            content_type=meta.get("content_type", "text/plain"),
            fetched_at=meta.get("fetched_at", "1970-01-01T00:00:00+00:00"),
            locator=locator,
        )

    def save(self, locator: str, result: FetchResult) -> None:
        body_path, meta_path = self._paths(locator)
        body_path.parent.mkdir(parents=True, exist_ok=True)
        body_path.write_text(result.body, encoding="utf-8")
        meta_path.write_text(
            json.dumps(
                {
                    "url": locator,
                    "status": result.status,
                    "content_type": result.content_type,
                    "fetched_at": result.fetched_at,
                },
                indent=2,
                sort_keys=True,
            )
            + "\n",
            encoding="utf-8",
        )


class TokenBucket:
    """Per-host politeness limiter: `rate` requests per second with a
    small burst allowance."""

    def __init__(self, rate: float = 2.0, capacity: float = 4.0, clock=time.monotonic, sleep=time.sleep):
        self.rate = rate
        self.capacity = capacity
        self._clock = clock
        self._sleep = sleep
        self._tokens = capacity
        self._last = clock()

    def acquire(self) -> None:
        while True:
            now = self._clock()
            self._tokens = min(self.capacity, self._tokens + (now - self._last) * self.rate)
            self._last = now
            if self._tokens >= 1.0:
                self._tokens -= 1.0
                return
            self._sleep((1.0 - self._tokens) / self.rate)


class OfflineTransport:
    """Replays recorded responses; any locator without a recording is a
    hard transport failure, never a silent network fall-through."""

    def __init__(self, store: FixtureStore):
        self.store = store

    def get(self, locator: str) -> FetchResult:
        result = self.store.load(locator)
        if result is None:
            raise OfflineViolation(
                f"offline mode: no recorded response for {locator} "
                f"(looked under {self.store.root / locator_host(locator)})"
            )
        return result


class HttpTransport:
    """Live HTTP with bounded retries, exponential backoff, per-host rate
    limiting, and write-through caching into a FixtureStore."""

    def __init__(
        self,
        cache: FixtureStore | None = None,
        timeout: float = DEFAULT_TIMEOUT,
        retries: int = DEFAULT_RETRIES,
        rate: float = 2.0,
        sleep=time.sleep,
        client=None,
    ):
        self.cache = cache
        self.timeout = timeout
        self.retries = retries
        self.rate = rate
        self._sleep = sleep
        self._client = client
        self._buckets: dict[str, TokenBucket] = {}

    def _bucket(self, host: str) -> TokenBucket:
        if host not in self._buckets:
            self._buckets[host] = TokenBucket(rate=self.rate)
        return self._buckets[host]

    def _http_get(self, locator: str):
        if self._client is None:
            import httpx

            self._client = httpx.Client(timeout=self.timeout, follow_redirects=True)
        return self._client.get(locator)

    def get(self, locator: str) -> FetchResult:
        host = locator_host(locator)
        if self.cache is not None:
            hit = self.cache.load(locator)
            if hit is not None:
                return hit

        last_error: Exception | None = None
        for attempt in range(self.retries + 1):
            if attempt:
                delay = BACKOFF_BASE * 2 ** (attempt - 1)
                log.debug("retrying %s in %.1fs (attempt %d)", locator, delay, attempt)
                self._sleep(delay)
            self._bucket(host).acquire()
            try:
                response = self._http_get(locator)
            except Exception as exc:  # httpx transport errors
                last_error = exc
                continue
            if 500 <= response.status_code < 600:
                last_error = TransportError(f"{locator}: server error {response.status_code}")
                continue
            from datetime import datetime, timezone

            result = FetchResult(
                body=response.text,
                status=response.status_code,
                content_type=response.headers.get("content-type", "text/plain"),
                fetched_at=datetime.now(timezone.utc).isoformat(),
                locator=locator,
            )
            if self.cache is not None:
                self.cache.save(locator, result)
            return result
        raise TransportError(f"giving up on {locator} after {self.retries} retries: {last_error}")
