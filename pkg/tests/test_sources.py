"""Fixture store, transports, clients, pruning, and context assembly."""

from __future__ import annotations

import json
from datetime import date

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lineagekit.errors import BadLocator, EmptyContext, ResourceNotFound, TransportError
from lineagekit.sources import (
    ArxivClient,
    DocKind,
    FetchResult,
    FixtureStore,
    HttpTransport,
    HubClient,
    OfflineTransport,
    ResourceDoc,
    TokenBucket,
    WebClient,
    build_resource_context,
    discover_resources,
    locator_digest,
    prune,
)


def seed(store: FixtureStore, locator: str, body: str, status: int = 200, **meta):
    store.save(
        locator,
        FetchResult(
            body=body,
            status=status,
            content_type=meta.get("content_type", "text/plain"),
            fetched_at=meta.get("fetched_at", "2025-05-01T00:00:00+00:00"),
            locator=locator,
        ),
    )


class TestFixtureStore:
    def test_layout_is_host_slash_digest(self, tmp_path):
        store = FixtureStore(tmp_path)
        locator = "https://huggingface.co/api/datasets/openai/gsm8k"
        seed(store, locator, "{}")
        expected = tmp_path / "huggingface.co" / (locator_digest(locator) + ".body")
        assert expected.exists()
        assert (expected.with_suffix(".meta")).exists()

    def test_round_trip(self, tmp_path):
        store = FixtureStore(tmp_path)
        seed(store, "https://example.com/a", "hello", status=200)
        result = store.load("https://example.com/a")
        assert result.body == "hello" and result.status == 200

    def test_miss_returns_none(self, tmp_path):
        assert FixtureStore(tmp_path).load("https://example.com/nope") is None


class TestOfflineTransport:
    def test_miss_is_transport_error(self, tmp_path):
        transport = OfflineTransport(FixtureStore(tmp_path))
        with pytest.raises(TransportError):
            transport.get("https://example.com/unrecorded")

    def test_hit_replays(self, tmp_path):
        store = FixtureStore(tmp_path)
        seed(store, "https://example.com/doc", "recorded body")
        assert OfflineTransport(store).get("https://example.com/doc").body == "recorded body"


class TestTokenBucket:
    def test_burst_then_throttle(self):
        clock = [0.0]
        naps: list[float] = []

        def fake_sleep(s):
            naps.append(s)
            clock[0] += s

        bucket = TokenBucket(rate=2.0, capacity=2.0, clock=lambda: clock[0], sleep=fake_sleep)
        for _ in range(4):
            bucket.acquire()
        # two burst tokens free, two more had to wait ~0.5 s each
        assert len(naps) >= 2
        assert sum(naps) == pytest.approx(1.0, abs=0.01)


class FlakyClient:
    """Fails `failures` times, then returns a canned response."""

    def __init__(self, failures: int, body: str = "ok"):
        self.failures = failures
        self.body = body
        self.calls = 0

    def get(self, url):
        self.calls += 1
        if self.calls <= self.failures:
            raise ConnectionError("boom")

        class Response:
            status_code = 200
            text = self.body
            headers = {"content-type": "text/plain"}

        return Response()


class TestHttpTransport:
    def test_retries_then_succeeds(self):
        client = FlakyClient(failures=2)
        transport = HttpTransport(retries=3, sleep=lambda s: None, client=client)
        assert transport.get("https://example.com/x").body == "ok"
        assert client.calls == 3

    def test_gives_up_after_bounded_retries(self):
        client = FlakyClient(failures=99)
        transport = HttpTransport(retries=2, sleep=lambda s: None, client=client)
        with pytest.raises(TransportError):
            transport.get("https://example.com/x")
        assert client.calls == 3

    def test_write_through_cache(self, tmp_path):
        cache = FixtureStore(tmp_path)
        client = FlakyClient(failures=0, body="cached once")
        transport = HttpTransport(cache=cache, sleep=lambda s: None, client=client)
        transport.get("https://example.com/page")
        transport.get("https://example.com/page")
        assert client.calls == 1
        assert cache.load("https://example.com/page").body == "cached once"


class TestHubClient:
    def hub(self, tmp_path) -> HubClient:
        store = FixtureStore(tmp_path)
        client = HubClient(OfflineTransport(store))
        seed(
            store,
            client.metadata_locator("openai/gsm8k"),
            json.dumps({"id": "openai/gsm8k", "createdAt": "2021-10-01T00:00:00.000Z"}),
        )
        seed(store, client.metadata_locator("gone/nowhere"), "", status=404)
        seed(
            store,
            client.metadata_locator("old/corpus"),
            json.dumps({"id": "old/corpus", "createdAt": "2019-03-01T00:00:00.000Z"}),
        )
        seed(store, client.readme_locator("openai/gsm8k"), "# GSM8K\nGrade school math.")
        seed(store, client.readme_locator("gone/nowhere"), "", status=404)
        return client

    def test_resolve_existing(self, tmp_path):
        resolved = self.hub(tmp_path).resolve_dataset("openai/gsm8k")
        assert resolved.exists
        assert resolved.canonical_id == "openai/gsm8k"
        assert resolved.released_at == date(2021, 10, 1)

    def test_resolve_missing_is_a_value(self, tmp_path):
        resolved = self.hub(tmp_path).resolve_dataset("gone/nowhere")
        assert not resolved.exists

    def test_resolve_passes_old_dates_through(self, tmp_path):
        # floor validation is the tracer's job, not the client's
        resolved = self.hub(tmp_path).resolve_dataset("old/corpus")
        assert resolved.exists and resolved.released_at == date(2019, 3, 1)

    def test_fetch_readme(self, tmp_path):
        doc = self.hub(tmp_path).fetch_readme("openai/gsm8k")
        assert doc.kind is DocKind.README
        assert "Grade school math" in doc.raw

    def test_fetch_readme_404(self, tmp_path):
        with pytest.raises(ResourceNotFound):
            self.hub(tmp_path).fetch_readme("gone/nowhere")


ATOM = """<?xml version="1.0" encoding="UTF-8"?>
<feed xmlns="http://www.w3.org/2005/Atom">
  <entry>
    <title>Measuring Mathematical Problem Solving</title>
    <summary>We present a benchmark of competition mathematics
      problems for measuring model reasoning.</summary>
  </entry>
</feed>
"""

EMPTY_ATOM = """<?xml version="1.0" encoding="UTF-8"?>
<feed xmlns="http://www.w3.org/2005/Atom"></feed>
"""


class TestArxivClient:
    def test_query_locator_for_id(self, tmp_path):
        client = ArxivClient(OfflineTransport(FixtureStore(tmp_path)))
        locator = client.query_locator("https://arxiv.org/abs/2103.03874")
        assert locator.endswith("id_list=2103.03874")

    def test_fetch_by_title(self, tmp_path):
        store = FixtureStore(tmp_path)
        client = ArxivClient(OfflineTransport(store))
        locator = client.query_locator("Measuring Mathematical Problem Solving")
        seed(store, locator, ATOM, content_type="application/atom+xml")
        doc = client.fetch_paper("Measuring Mathematical Problem Solving")
        assert doc.kind is DocKind.PAPER
        assert doc.raw.startswith("Measuring Mathematical Problem Solving\n\n")
        assert "competition mathematics problems" in doc.raw

    def test_no_match_raises(self, tmp_path):
        store = FixtureStore(tmp_path)
        client = ArxivClient(OfflineTransport(store))
        locator = client.query_locator("Utterly Unknown Paper")
        seed(store, locator, EMPTY_ATOM)
        with pytest.raises(ResourceNotFound):
            client.fetch_paper("Utterly Unknown Paper")


class TestWebClient:
    def test_repo_page_kind(self, tmp_path):
        store = FixtureStore(tmp_path)
        seed(store, "https://github.com/openai/grade-school-math", "<h1>repo</h1>")
        doc = WebClient(OfflineTransport(store)).fetch_web(
            "https://github.com/openai/grade-school-math"
        )
        assert doc.kind is DocKind.REPO_PAGE

    def test_blog_kind(self, tmp_path):
        store = FixtureStore(tmp_path)
        seed(store, "https://example-blog.com/post", "<p>announcement</p>")
        doc = WebClient(OfflineTransport(store)).fetch_web("https://example-blog.com/post")
        assert doc.kind is DocKind.BLOG

    def test_malformed_url(self, tmp_path):
        with pytest.raises(BadLocator):
            WebClient(OfflineTransport(FixtureStore(tmp_path))).fetch_web("not a url")

    def test_size_cap_truncates_with_flag(self, tmp_path):
        store = FixtureStore(tmp_path)
        seed(store, "https://example.com/huge", "x" * 100)
        doc = WebClient(OfflineTransport(store), size_cap=10).fetch_web(
            "https://example.com/huge"
        )
        assert doc.truncated and len(doc.raw) == 10

    def test_404(self, tmp_path):
        store = FixtureStore(tmp_path)
        seed(store, "https://example.com/gone", "", status=404)
        with pytest.raises(ResourceNotFound):
            WebClient(OfflineTransport(store)).fetch_web("https://example.com/gone")


class TestDiscoverResources:
    def readme(self, body: str) -> ResourceDoc:
        return ResourceDoc(kind=DocKind.README, locator="fixture://readme", raw=body)

    def test_arxiv_and_repo(self):
        links = discover_resources(
            self.readme(
                "See the [paper](https://arxiv.org/abs/2103.03874) and the "
                "code at https://github.com/org/repo."
            )
        )
        assert [(l.kind.value, l.url) for l in links] == [
            ("paper", "https://arxiv.org/abs/2103.03874"),
            ("repo_page", "https://github.com/org/repo"),
        ]

    def test_no_links(self):
        assert discover_resources(self.readme("plain prose, nothing linked")) == []

    def test_duplicates_once(self):
        links = discover_resources(
            self.readme("https://arxiv.org/abs/2103.03874 and again "
                        "https://arxiv.org/abs/2103.03874")
        )
        assert len(links) == 1

    def test_hub_and_badge_links_skipped(self):
        links = discover_resources(
            self.readme(
                "https://huggingface.co/datasets/openai/gsm8k plus a badge "
                "https://img.shields.io/badge/x.svg and a blog "
                "https://team.example.org/announcing"
            )
        )
        assert [(l.kind.value, l.url) for l in links] == [
            ("blog", "https://team.example.org/announcing"),
        ]


class TestPrune:
    def test_readme_fence_removed_prose_intact(self):
        raw = (
            "Intro prose.\n"
            "```python\n"
            "print('noise')\n"
            "```\n"
            "Closing prose."
        )
        pruned = prune(ResourceDoc(kind=DocKind.README, locator="l", raw=raw))
        assert pruned.raw == "Intro prose.\nClosing prose."

    def test_identity_on_plain_text(self):
        doc = ResourceDoc(kind=DocKind.BLOG, locator="l", raw="no markup here")
        assert prune(doc).raw == "no markup here"

    def test_html_stripped(self):
        doc = ResourceDoc(kind=DocKind.BLOG, locator="l", raw="<p>hello</p>")
        assert prune(doc).raw == "hello"

    def test_script_and_style_dropped(self):
        doc = ResourceDoc(
            kind=DocKind.BLOG, locator="l",
            raw="<style>p{}</style><p>kept</p><script>var x=1;</script>",
        )
        assert prune(doc).raw == "kept"

    def test_paper_references_dropped(self):
        raw = (
            "# A Paper\nBody text.\n"
            "## References\n[1] Someone 2021.\n[2] Other 2022.\n"
            "## Appendix\nAppendix text."
        )
        pruned = prune(ResourceDoc(kind=DocKind.PAPER, locator="l", raw=raw))
        assert "Someone 2021" not in pruned.raw
        assert "Appendix text." in pruned.raw

    def test_unclosed_fence_swallowed(self):
        raw = "keep\n```\nnever closed"
        pruned = prune(ResourceDoc(kind=DocKind.README, locator="l", raw=raw))
        assert pruned.raw == "keep"

    @given(st.lists(st.sampled_from(["prose line", "```", "~~~", "code", "## head"]), max_size=30))
    def test_pruned_readme_never_contains_fence_delimiters(self, lines):
        doc = ResourceDoc(kind=DocKind.README, locator="l", raw="\n".join(lines))
        assert "```" not in prune(doc).raw
        assert "~~~" not in prune(doc).raw


class TestBuildResourceContext:
    def docs(self):
        return [
            ResourceDoc(kind=DocKind.BLOG, locator="https://b.example/post", raw="b" * 30),
            ResourceDoc(kind=DocKind.README, locator="hub://readme", raw="r" * 20),
            ResourceDoc(kind=DocKind.PAPER, locator="https://arxiv.example/q", raw="p" * 25),
        ]

    def test_all_retained_in_canonical_order(self):
        ctx = build_resource_context("demo/set", self.docs(), budget=1000)
        assert [d.kind.value for d in ctx.docs] == ["readme", "paper", "blog"]
        assert ctx.total_chars == 75
        assert ctx.dropped == []

    def test_budget_drops_whole_tail_docs(self):
        ctx = build_resource_context("demo/set", self.docs(), budget=50)
        assert [d.kind.value for d in ctx.docs] == ["readme", "paper"]
        assert ctx.total_chars == 45
        assert ctx.dropped == ["https://b.example/post"]

    def test_empty_docs_raise(self):
        with pytest.raises(EmptyContext):
            build_resource_context("demo/set", [], budget=100)

    def test_context_text_labels_docs(self):
        ctx = build_resource_context("demo/set", self.docs())
        text = ctx.text()
        assert text.index("[readme]") < text.index("[paper]") < text.index("[blog]")
