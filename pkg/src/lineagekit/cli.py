"""Operator command line.

Exit codes form a small contract scripts can branch on: 0 success,
1 usage or configuration problem, 2 empty or insufficient data,
3 contamination found. Every command is deterministic in offline mode.
"""

from __future__ import annotations

import json
import socket
from pathlib import Path

import click

from lineagekit.analysis import load_eval_records
from lineagekit.config import FORMATS, build_tracer, load_config
from lineagekit.errors import (
    ConfigError,
    EmptyContext,
    EmptyGraph,
    EmptyInput,
    InsufficientData,
    LineageError,
)
from lineagekit.graph import Domain, export_graph
from lineagekit.reports import KINDS, build_report
from lineagekit.scoring import (
    JudgeMetric,
    JudgeScorer,
    LengthScorer,
    MockJudge,
    load_samples,
    plugins,
    score_dataset,
)
from lineagekit.store import Store, slugify

_EMPTY_ERRORS = (EmptyInput, EmptyGraph, InsufficientData, EmptyContext)
_EXPORT_FORMATS = {"doc": "graph-document", "dot": "dot", "table": "edge-list"}


def _echo_table(rows) -> None:
    width = max(len(label) for label, _ in rows)
    for label, value in rows:
        click.echo(f"{label:<{width}}  {value}")


def _echo_doc(doc) -> None:
    click.echo(json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False))


def _store(config) -> Store:
    return Store(config.store_root, holder="cli")


@click.group()
@click.version_option(package_name="lineagekit", prog_name="lineage")
@click.option("--store", "store_root", default=None, metavar="PATH",
              help="Store root directory.")
@click.option("--offline", is_flag=True, default=False,
              help="Serve every fetch from the fixture store; never touch the network.")
@click.option("--config", "config_path", default=None, metavar="PATH",
              help="JSON config file.")
@click.option("--threshold", type=float, default=None,
              help="Review threshold in [0, 1].")
@click.option("--max-depth", type=int, default=None,
              help="Recursion depth limit for tracing.")
@click.option("--format", "fmt", type=click.Choice(FORMATS), default=None,
              help="Output format.")
@click.option("--fixture-root", default=None, metavar="PATH",
              help="Fixture directory backing offline mode.")
@click.option("--aliases", "alias_table_path", default=None, metavar="PATH",
              help="Alias table JSON (informal name -> canonical id).")
@click.pass_context
def cli(ctx, store_root, offline, config_path, threshold, max_depth, fmt,
        fixture_root, alias_table_path):
    """Trace, review, score, and analyze dataset provenance."""
    ctx.obj = load_config(
        path=config_path,
        store_root=store_root,
        offline=True if offline else None,
        threshold=threshold,
        max_depth=max_depth,
        format=fmt,
        fixture_root=fixture_root,
        alias_table_path=alias_table_path,
    )


@cli.command()
@click.argument("seeds", nargs=-1)
@click.option("--name", default="trace", help="Graph name in the store.")
@click.pass_obj
def trace(config, seeds, name):
    """Build a lineage graph from seed dataset ids."""
    if not seeds:
        raise click.UsageError("at least one seed dataset id is required")
    result = build_tracer(config).trace(list(seeds))
    graph = result.graph
    store = _store(config)
    store.save_graph(name, graph)
    store.save_queue(name, graph)
    flagged = len(graph.flagged_edges())
    if config.format == "doc":
        _echo_doc({"graph": name, "nodes": len(graph.nodes),
                   "edges": len(graph.edges), "flagged": flagged})
    else:
        _echo_table([("graph", name), ("nodes", len(graph.nodes)),
                     ("edges", len(graph.edges)), ("flagged", flagged)])
    if not graph.nodes:
        return 2
    return 0


@cli.command()
@click.argument("name")
@click.option("--domain", type=click.Choice([d.value for d in Domain]),
              default=None, help="Restrict statistics to one domain.")
@click.pass_obj
def stats(config, name, domain):
    """Print headline statistics for a stored graph."""
    graph = _store(config).load_graph(name)
    node_ids = None
    if domain is not None:
        node_ids = [i for i, node in graph.nodes.items()
                    if node.domain.value == domain]
        if not node_ids:
            raise EmptyGraph(f"graph {name!r} has no nodes in domain {domain}")
    overall = graph.graph_stats(node_ids=node_ids)
    depth = graph.depth_stats(node_ids=node_ids)
    if config.format == "doc":
        _echo_doc({
            "graph": name, "domain": domain,
            "nodes": overall.node_count, "edges": overall.edge_count,
            "edges_per_node": overall.edges_per_node,
            "avg_depth": depth.avg_depth, "max_depth": depth.max_depth,
            "deepest": depth.argmax,
            "top_degree": [[i, d] for i, d in overall.top_degree_nodes],
        })
    else:
        top = " ".join(f"{i}({d})" for i, d in overall.top_degree_nodes[:5])
        _echo_table([
            ("nodes", overall.node_count),
            ("edges", overall.edge_count),
            ("edges/node", f"{overall.edges_per_node:.2f}"),
            ("avg depth", f"{depth.avg_depth:.2f}"),
            ("max depth", depth.max_depth),
            ("deepest", depth.argmax),
            ("top degree", top or "-"),
        ])
    return 0


@cli.command()
@click.argument("name")
@click.option("--benchmarks", "benchmarks_path",
              type=click.Path(exists=True, dir_okay=False), default=None,
              help="File of benchmark dataset ids, one per line.")
@click.pass_obj
def contaminate(config, name, benchmarks_path):
    """Report benchmark leakage into a stored graph (exit 3 if found)."""
    graph = _store(config).load_graph(name)
    declared = []
    if benchmarks_path is not None:
        for line in Path(benchmarks_path).read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if line and not line.startswith("#"):
                declared.append(line)
    report = graph.detect_contamination(declared or None)
    if config.format == "doc":
        _echo_doc(report.to_dict())
    else:
        for record in report.records:
            click.echo(f"{record.dataset}  <-  {record.benchmark}  "
                       f"via {' -> '.join(record.path)}")
        if not report.records:
            click.echo("no contamination found")
    for absent in report.missing_benchmarks:
        click.echo(f"note: benchmark {absent} not in graph", err=True)
    return 3 if report.records else 0


def _build_scorer(spec: str, judge):
    if spec == "length-chars":
        return LengthScorer("chars")
    if spec == "length-tokens":
        return LengthScorer("ws_tokens")
    if spec.startswith("judge:"):
        raw = spec.split(":", 1)[1]
        try:
            metric = JudgeMetric(raw)
        except ValueError:
            known = ", ".join(m.value for m in JudgeMetric)
            raise ConfigError(f"unknown judge metric {raw!r} (expected one of {known})")
        return JudgeScorer(metric, judge)
    if spec.startswith("plugin:"):
        return plugins.get(spec.split(":", 1)[1])
    raise ConfigError(
        f"unknown scorer {spec!r} (length-chars, length-tokens, judge:<metric>, plugin:<name>)")


@cli.command()
@click.argument("dataset_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--name", default=None,
              help="Profile name in the store (default: the file stem).")
@click.option("--scorer", "scorer_specs", multiple=True,
              default=("length-chars",), show_default=True,
              help="Repeatable scorer selection.")
@click.option("--judge-rating", type=click.IntRange(1, 5), default=None,
              help="Pin the offline judge to one rating instead of hashing.")
@click.option("--keep-samples", is_flag=True, default=False,
              help="Keep the per-sample score table in the profile.")
@click.pass_obj
def score(config, dataset_file, name, scorer_specs, judge_rating, keep_samples):
    """Score a line-delimited dataset file into a quality profile."""
    samples = load_samples(Path(dataset_file).read_text(encoding="utf-8"))
    judge = MockJudge(fixed=judge_rating)
    scorers = [_build_scorer(spec, judge) for spec in scorer_specs]
    dataset_id = name or Path(dataset_file).stem
    profile = score_dataset(samples, scorers, dataset_id=dataset_id,
                            keep_sample_scores=keep_samples)
    _store(config).save_profile(slugify(dataset_id), profile)
    if config.format == "doc":
        _echo_doc(profile.to_dict())
    else:
        rows = [("samples", len(samples))]
        for metric in sorted(profile.per_metric):
            rows.append((metric, f"{profile.per_metric[metric].mean:.4f}"))
        _echo_table(rows)
    return 0


def _analyze_table(doc) -> list[tuple[str, str]]:
    mode = doc["mode"]
    if mode == "efficiency":
        return [(row["dataset_id"], f"{row['data_efficiency']:.3e}")
                for row in doc["rows"]]
    if mode == "consistency":
        return [
            (domain,
             "undefined" if entry["rho"] is None
             else f"{entry['rho']:+.4f} (n={entry['n']})")
            for domain, entry in doc["domains"].items()
        ]
    if mode == "correlation":
        return [
            (f"{metric}/{domain}", "undefined" if rho is None else f"{rho:+.4f}")
            for metric, row in doc["matrix"].items()
            for domain, rho in row.items()
        ]
    if mode == "temporal":
        return [(p["quarter"], str(p["value"])) for p in doc["series"]]
    return [(domain, f"{share:.1f}%") for domain, share in doc["shares"].items()]


@cli.command()
@click.argument("records_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--mode", required=True, type=click.Choice(KINDS))
@click.option("--out", "out_path", type=click.Path(dir_okay=False),
              default=None, help="Also write the report document to a file.")
@click.option("--delimiter", default="\t", help="Records file delimiter.")
@click.pass_obj
def analyze(config, records_file, mode, out_path, delimiter):
    """Run one analysis over an eval-records table."""
    records = load_eval_records(
        Path(records_file).read_text(encoding="utf-8"), delimiter=delimiter)
    if not records:
        raise EmptyInput(f"no records in {records_file}")
    doc = build_report(_store(config), records, mode)
    if out_path is not None:
        Path(out_path).write_text(
            json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
            encoding="utf-8")
    if config.format == "doc":
        _echo_doc(doc)
    else:
        _echo_table(_analyze_table(doc))
    return 0


@cli.command()
@click.argument("name")
@click.option("--out", "out_path", type=click.Path(dir_okay=False),
              default=None, help="Write to a file instead of stdout.")
@click.pass_obj
def export(config, name, out_path):
    """Export a stored graph (--format doc|dot|table)."""
    graph = _store(config).load_graph(name)
    payload = export_graph(graph, _EXPORT_FORMATS[config.format])
    if out_path is not None:
        Path(out_path).write_bytes(payload)
    else:
        click.echo(payload.decode("utf-8"), nl=False)
    return 0


@cli.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8321, show_default=True)
@click.pass_obj
def serve(config, host, port):
    """Run the review service over the configured store."""
    from lineagekit.service import build_app
    import uvicorn

    _store(config)  # materialize the store; request handlers never create it
    app = build_app(config)
    probe = socket.socket()
    try:
        probe.bind((host, port))
    except OSError as exc:
        click.echo(f"Error: cannot bind {host}:{port}: {exc}", err=True)
        return 1
    finally:
        probe.close()
    uvicorn.run(app, host=host, port=port, log_level="warning")
    return 0


def main(argv=None) -> int:
    try:
        result = cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.UsageError as exc:
        click.echo(f"Error: {exc.format_message()}", err=True)
        if exc.ctx is not None:
            click.echo(exc.ctx.get_usage(), err=True)
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.Abort:
        click.echo("Aborted.", err=True)
        return 1
    except LineageError as exc:
        click.echo(f"Error: {exc}", err=True)
        return 2 if isinstance(exc, _EMPTY_ERRORS) else 1
    return int(result or 0)


if __name__ == "__main__":
    raise SystemExit(main())
