"""Plugin contract for model-backed scorers.

The specialized quality models (learned complexity and quality raters,
instruction-following difficulty, fail rate and the like) are external
artifacts. They participate by declaring a name, a numeric scale, and a
target; the host never reimplements them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from lineagekit.errors import ConfigError, NotFound, OutOfScale, PluginError
from lineagekit.scoring.samples import Sample

TARGETS = ("Q", "QA")


@dataclass(frozen=True)
class PluginScorer:
    """A registered external scorer.

    fn receives the sample and returns one real score. A Q-target
    plugin is handed a response-less view of the sample, so declaring Q
    is enforced, not advisory.
    """

    name: str
    scale: tuple[float, float]
    target: str
    fn: Callable[[Sample], float] = field(repr=False)

    def __post_init__(self):
        if not self.name:
            raise ConfigError("plugin scorer needs a nonempty name")
        lo, hi = self.scale
        if not lo < hi:
            raise ConfigError(f"plugin {self.name}: scale {self.scale} is not an interval")
        if self.target not in TARGETS:
            raise ConfigError(f"plugin {self.name}: target must be one of {TARGETS}")

    def score(self, sample: Sample) -> float:
        return run_plugin(self, sample)


def run_plugin(plugin: PluginScorer, sample: Sample) -> float:
    if plugin.target == "Q":
        sample = Sample(instruction=sample.instruction, response="")
    try:
        value = plugin.fn(sample)
    except Exception as exc:
        raise PluginError(f"plugin {plugin.name} failed: {exc}")
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise PluginError(f"plugin {plugin.name} returned non-numeric {value!r}")
    lo, hi = plugin.scale
    if not lo <= value <= hi:
        raise OutOfScale(
            f"plugin {plugin.name} returned {value} outside [{lo}, {hi}]"
        )
    return float(value)


_REGISTRY: dict[str, PluginScorer] = {}


def register_plugin_scorer(
    name: str, scale: tuple[float, float], target: str, fn: Callable[[Sample], float]
) -> PluginScorer:
    if name in _REGISTRY:
        raise ConfigError(f"plugin scorer {name!r} is already registered")
    plugin = PluginScorer(name=name, scale=(float(scale[0]), float(scale[1])),
                          target=target, fn=fn)
    _REGISTRY[name] = plugin
    return plugin


def get_plugin_scorer(name: str) -> PluginScorer:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise NotFound(f"no plugin scorer registered as {name!r}")


def unregister_plugin_scorer(name: str) -> None:
    _REGISTRY.pop(name, None)


def registered_plugin_scorers() -> tuple[str, ...]:
    return tuple(sorted(_REGISTRY))
