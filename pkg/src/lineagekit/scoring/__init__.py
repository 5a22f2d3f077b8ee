from lineagekit.scoring.judge import (
    RATING_MAX,
    RATING_MIN,
    JudgeMetric,
    MockJudge,
    build_prompt,
    parse_judge_rating,
    run_judge,
    template_hash,
)
from lineagekit.scoring.plugins import (
    TARGETS,
    PluginScorer,
    get_plugin_scorer,
    register_plugin_scorer,
    registered_plugin_scorers,
    run_plugin,
    unregister_plugin_scorer,
)
from lineagekit.scoring.profile import (
    JudgeScorer,
    LengthScorer,
    MetricSummary,
    ScoreProfile,
    nearest_rank,
    score_dataset,
    score_length,
    summarize,
)
from lineagekit.scoring.samples import Sample, content_hash, load_samples

__all__ = [
    "RATING_MAX",
    "RATING_MIN",
    "TARGETS",
    "JudgeMetric",
    "JudgeScorer",
    "LengthScorer",
    "MetricSummary",
    "MockJudge",
    "PluginScorer",
    "Sample",
    "ScoreProfile",
    "build_prompt",
    "content_hash",
    "get_plugin_scorer",
    "load_samples",
    "nearest_rank",
    "parse_judge_rating",
    "register_plugin_scorer",
    "registered_plugin_scorers",
    "run_judge",
    "run_plugin",
    "score_dataset",
    "score_length",
    "summarize",
    "template_hash",
    "unregister_plugin_scorer",
]
