"""Runtime configuration shared by the CLI and the review service.

Precedence, lowest to highest: built-in defaults, config file, LINEAGE_*
environment variables, explicit flag overrides. Offline mode is a hard
wall: with it set, no live transport is ever constructed, and a fixture
miss surfaces as an error rather than a network fallback.
"""

from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass
from pathlib import Path

from lineagekit.errors import ConfigError
from lineagekit.sources.client import (
    DEFAULT_ARXIV_BASE,
    DEFAULT_HUB_BASE,
    ArxivClient,
    HubClient,
    WebClient,
)
from lineagekit.sources.transport import FixtureStore, HttpTransport, OfflineTransport
from lineagekit.tracer.extract import build_extractor
from lineagekit.tracer.trace import TraceConfig, Tracer

ENV_PREFIX = "LINEAGE_"
FORMATS = ("table", "doc", "dot")


@dataclass
class CliConfig:
    store_root: str = "lineage-store"
    offline: bool = False
    fixture_root: str | None = None
    hub_base: str = DEFAULT_HUB_BASE
    arxiv_base: str = DEFAULT_ARXIV_BASE
    threshold: float = 0.6
    max_depth: int = 5
    max_branching: int = 8
    extractor: str = "heuristic"
    alias_table_path: str | None = None
    format: str = "table"

    def validate(self) -> "CliConfig":
        if not 0.0 <= self.threshold <= 1.0:
            raise ConfigError(f"threshold {self.threshold} outside [0, 1]")
        if self.max_depth < 1:
            raise ConfigError(f"max-depth {self.max_depth} must be >= 1")
        if self.max_branching < 1:
            raise ConfigError(f"max-branching {self.max_branching} must be >= 1")
        if self.format not in FORMATS:
            raise ConfigError(f"format {self.format!r} not one of {FORMATS}")
        if self.offline and not self.fixture_root:
            raise ConfigError("offline mode needs a fixture_root to read from")
        return self


_FIELDS = {f.name: f.type for f in dataclasses.fields(CliConfig)}
_BOOL_WORDS = {"1": True, "true": True, "yes": True, "on": True,
               "0": False, "false": False, "no": False, "off": False}


def _coerce(name: str, raw: str):
    kind = _FIELDS[name]
    if kind == "bool":
        word = raw.strip().lower()
        if word not in _BOOL_WORDS:
            raise ConfigError(f"{name}: {raw!r} is not a boolean")
        return _BOOL_WORDS[word]
    try:
        if kind == "float":
            return float(raw)
        if kind == "int":
            return int(raw)
    except ValueError:
        raise ConfigError(f"{name}: {raw!r} is not a number")
    return raw


def load_config(path: str | None = None, env: dict | None = None,
                **overrides) -> CliConfig:
    """Resolve one CliConfig; ``overrides`` entries of None mean unset."""
    values: dict = {}

    if path is not None:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}")
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file {path}: {exc}")
        if not isinstance(doc, dict):
            raise ConfigError(f"config file {path}: expected an object")
        unknown = set(doc) - set(_FIELDS)
        if unknown:
            raise ConfigError(f"config file {path}: unknown keys {sorted(unknown)}")
        values.update(doc)

    env = os.environ if env is None else env
    for name in _FIELDS:
        raw = env.get(ENV_PREFIX + name.upper())
        if raw is not None:
            values[name] = _coerce(name, raw)

    for name, value in overrides.items():
        if name not in _FIELDS:
            raise ConfigError(f"unknown config override {name!r}")
        if value is not None:
            values[name] = value

    try:
        return CliConfig(**values).validate()
    except TypeError as exc:
        raise ConfigError(str(exc))


def load_aliases(path: str | None) -> dict[str, str]:
    """Alias table file: a JSON object of informal name -> canonical id."""
    if path is None:
        return {}
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read alias table: {exc}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"alias table {path}: {exc}")
    if not isinstance(doc, dict) or not all(
            isinstance(k, str) and isinstance(v, str) for k, v in doc.items()):
        raise ConfigError(f"alias table {path}: expected string-to-string object")
    return doc


def build_transport(config: CliConfig):
    if config.offline:
        # validate() already demanded a fixture_root
        return OfflineTransport(FixtureStore(config.fixture_root))
    cache = FixtureStore(config.fixture_root) if config.fixture_root else None
    return HttpTransport(cache=cache)


def build_tracer(config: CliConfig, judge=None) -> Tracer:
    config.validate()
    transport = build_transport(config)
    aliases = load_aliases(config.alias_table_path)
    return Tracer(
        hub=HubClient(transport, base_url=config.hub_base),
        arxiv=ArxivClient(transport, base_url=config.arxiv_base),
        web=WebClient(transport),
        extractor=build_extractor(config.extractor, alias_table=aliases,
                                  judge=judge),
        config=TraceConfig(
            max_depth=config.max_depth,
            max_branching=config.max_branching,
            review_threshold=config.threshold,
        ),
        alias_table=aliases,
    )
