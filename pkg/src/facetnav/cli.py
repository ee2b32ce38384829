"""Command line entry points: build an index, serve the API, or query an
index offline. Errors exit non-zero with a single line on stderr; an
unknown facet-value label exits with code 2."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import explore
from .config import resolve_config
from .errors import FacetNavError
from .facets import FACET_KINDS, ClusteringConfig
from .index import build_topic, discover_topics, load_index, write_index
from .service import QueryEngine, create_app, default_static_dir

EXIT_UNKNOWN_VALUE = 2


def _fail(message: str, code: int = 1):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _clustering_config(cd_threshold, alignment_threshold, max_mentions):
    kwargs = {}
    if cd_threshold is not None:
        kwargs["cd_merge_threshold"] = cd_threshold
    if alignment_threshold is not None:
        kwargs["alignment_threshold"] = alignment_threshold
    if max_mentions is not None:
        kwargs["max_cluster_mentions"] = max_mentions
    return ClusteringConfig(**kwargs)


@click.group()
def main():
    """Faceted exploration and summarization over document collections."""


@main.command()
@click.argument("topic_dir", type=click.Path(exists=True, file_okay=False))
@click.option("-o", "--output", "output", required=True, type=click.Path())
@click.option("--cd-threshold", type=float, default=None)
@click.option("--alignment-threshold", type=float, default=None)
@click.option("--max-mentions", type=int, default=None)
@click.option(
    "--force-surfaces",
    is_flag=True,
    help="Build even when stored mention surfaces disagree with span text.",
)
def build(topic_dir, output, cd_threshold, alignment_threshold, max_mentions, force_surfaces):
    """Build a topic index from a topic directory."""
    try:
        config = _clustering_config(cd_threshold, alignment_threshold, max_mentions)
        topic = build_topic(topic_dir, config, force_surfaces=force_surfaces)
        write_index(topic, output)
    except FacetNavError as exc:
        _fail(str(exc))
    counts = ", ".join(
        f"{len(topic.facets[kind])} {kind.lower()}" for kind in FACET_KINDS
    )
    click.echo(f"built {topic.topic_id}: {len(topic.corpus)} documents, {counts}")


@main.command()
@click.option("--data", "data_dir", required=True, type=click.Path(exists=True))
@click.option("--host", default=None)
@click.option("--port", type=int, default=None)
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--summarizer-url", default=None)
@click.option("--summarizer-timeout-ms", type=int, default=None)
@click.option("--cache-size", type=int, default=None)
@click.option("--cd-threshold", type=float, default=None)
@click.option("--alignment-threshold", type=float, default=None)
@click.option("--max-mentions", type=int, default=None)
@click.option("--static-dir", type=click.Path(), default=None)
def serve(
    data_dir,
    host,
    port,
    config_path,
    summarizer_url,
    summarizer_timeout_ms,
    cache_size,
    cd_threshold,
    alignment_threshold,
    max_mentions,
    static_dir,
):
    """Serve the HTTP API (and the UI, when built) over a data directory."""
    import uvicorn

    overrides = {
        "data_dir": data_dir,
        "host": host,
        "port": port,
        "summarizer_url": summarizer_url,
        "summarizer_timeout_ms": summarizer_timeout_ms,
        "cache_size": cache_size,
        "cd_threshold": cd_threshold,
        "alignment_threshold": alignment_threshold,
        "max_mentions": max_mentions,
    }
    try:
        config = resolve_config(config_path, overrides)
        topics = discover_topics(config.data_dir, config.clustering())
    except FacetNavError as exc:
        _fail(str(exc))
    engine = QueryEngine(topics, config)
    static = Path(static_dir) if static_dir else default_static_dir()
    app = create_app(engine, static)
    click.echo(
        f"serving {len(topics)} topic(s) on http://{config.host}:{config.port}",
        err=True,
    )
    uvicorn.run(app, host=config.host, port=config.port, log_level="warning")


def _format_table(response: dict) -> str:
    lines = []
    sel = ", ".join(s["label"] for s in response["selected"]) or "(none)"
    lines.append(f"selection: {sel}")
    lines.append(f"sentences: {response['sentence_count']}")
    for kind in FACET_KINDS:
        rows = response["facets"][kind]
        lines.append("")
        lines.append(f"{kind} ({len(rows)})")
        for row in rows:
            mark = "*" if row["selected"] else " "
            category = f"  [{row['category']}]" if row["category"] else ""
            lines.append(
                f" {mark} {row['label']}  ({row['frequency']}){category}"
            )
    summary = response.get("summary")
    if summary:
        lines.append("")
        lines.append("summary:")
        for sent in summary["sentences"]:
            lines.append(f"  {sent}")
    return "\n".join(lines)


@main.command()
@click.argument("index_path", type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--select",
    "labels",
    multiple=True,
    help="Facet-value label to select; repeatable.",
)
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["json", "table"]),
    default="table",
    show_default=True,
)
@click.option("--budget", type=int, default=None, help="Summarizer token budget.")
def query(index_path, labels, fmt, budget):
    """Query a built index without a server: select labels, print facets
    and the fallback summary."""
    try:
        topic = load_index(index_path)
    except FacetNavError as exc:
        _fail(str(exc))
    selected = []
    for label in labels:
        value = topic.find_by_label(label)
        if value is None:
            _fail(f"unknown facet value: {label}", EXIT_UNKNOWN_VALUE)
        selected.append(value.value_id)
    overrides = {"token_budget": budget} if budget else None
    config = resolve_config(None, overrides)
    engine = QueryEngine({topic.topic_id: topic}, config)
    response = engine.query(topic, None, selected)
    if fmt == "json":
        click.echo(json.dumps(response, indent=2, ensure_ascii=False, sort_keys=True))
    else:
        click.echo(_format_table(response))


if __name__ == "__main__":
    main()
