"""Building, serializing and loading topic indexes.

A topic index bundles the corpus, the clustering configuration it was built
with, and the three facet tables. The binary form is gzip-compressed
canonical JSON written with a zeroed timestamp, so building the same inputs
twice produces byte-identical files. A line-delimited `*.facets.jsonl`
diagnostic file is written alongside for eyeballing and diffing.
"""

from __future__ import annotations

import gzip
import io
import json
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import (
    ENTITY,
    EVENT,
    PROPOSITION,
    Corpus,
    Mention,
    SentenceRef,
    corpus_from_records,
    corpus_records,
    load_corpus,
)
from .errors import SurfaceMismatchError, UnknownValueError, ValidationError
from .facets import (
    CONCEPTS,
    ENTITIES,
    FACET_KINDS,
    STATEMENTS,
    ClusteringConfig,
    FacetValue,
    build_facets,
)
from .ingest import load_bundle, validate_surfaces

INDEX_FORMAT = 1
DOCUMENTS_FILE = "documents.jsonl"
TOPIC_META_FILE = "topic.json"

_FACET_MENTION_KIND = {CONCEPTS: EVENT, ENTITIES: ENTITY, STATEMENTS: PROPOSITION}


@dataclass
class Topic:
    """One loaded topic: immutable after construction, shared freely."""

    topic_id: str
    display_name: str
    corpus: Corpus
    facets: dict[str, list[FacetValue]]
    config: ClusteringConfig
    values_by_id: dict[str, FacetValue] = field(init=False)
    all_sentences: frozenset[SentenceRef] = field(init=False)

    def __post_init__(self):
        self.values_by_id = {
            v.value_id: v for values in self.facets.values() for v in values
        }
        self.all_sentences = frozenset(self.corpus.all_sentence_refs())

    def value(self, value_id: str) -> FacetValue:
        try:
            return self.values_by_id[value_id]
        except KeyError:
            raise UnknownValueError(value_id) from None

    def find_by_label(self, label: str) -> FacetValue | None:
        """Label lookup for the CLI: exact match first, then case-insensitive,
        scanning facets in fixed order."""
        for kind in FACET_KINDS:
            for v in self.facets[kind]:
                if v.label == label:
                    return v
        wanted = label.lower()
        for kind in FACET_KINDS:
            for v in self.facets[kind]:
                if v.label.lower() == wanted:
                    return v
        return None

    def descriptor(self) -> dict:
        return {
            "topic_id": self.topic_id,
            "display_name": self.display_name,
            "document_count": len(self.corpus),
            "facet_counts": {kind: len(self.facets[kind]) for kind in FACET_KINDS},
        }


def _read_topic_meta(topic_dir: Path) -> dict:
    meta_path = topic_dir / TOPIC_META_FILE
    if meta_path.exists():
        with meta_path.open("r", encoding="utf-8") as fh:
            return json.load(fh)
    return {}


def build_topic(
    topic_dir: str | Path,
    config: ClusteringConfig | None = None,
    *,
    force_surfaces: bool = False,
) -> Topic:
    """Load a topic directory, validate it, and form its facets."""
    topic_dir = Path(topic_dir)
    config = config or ClusteringConfig()
    corpus = load_corpus(topic_dir / DOCUMENTS_FILE)
    bundle = load_bundle(corpus, topic_dir)
    mismatches = validate_surfaces(corpus, bundle)
    if mismatches and not force_surfaces:
        first = mismatches[0]
        raise SurfaceMismatchError(
            f"{len(mismatches)} mention surface(s) disagree with span text; "
            f"first: mention {first['mention_id']!r} stores {first['stored']!r} "
            f"but span reads {first['actual']!r}"
        )
    meta = _read_topic_meta(topic_dir)
    facets = build_facets(corpus, bundle, config)
    return Topic(
        topic_id=meta.get("topic_id", topic_dir.name),
        display_name=meta.get("display_name", meta.get("topic_id", topic_dir.name)),
        corpus=corpus,
        facets=facets,
        config=config,
    )


def _facet_value_payload(value: FacetValue) -> dict:
    return {
        "value_id": value.value_id,
        "facet": value.facet,
        "label": value.label,
        "frequency": value.frequency,
        "category": value.category,
        "mentions": [m.as_dict() for m in value.mentions],
    }


def topic_payload(topic: Topic) -> dict:
    return {
        "format": INDEX_FORMAT,
        "topic_id": topic.topic_id,
        "display_name": topic.display_name,
        "config": {
            "wd_pair_score": topic.config.wd_pair_score,
            "cd_merge_threshold": topic.config.cd_merge_threshold,
            "alignment_threshold": topic.config.alignment_threshold,
            "max_cluster_mentions": topic.config.max_cluster_mentions,
            "min_label_chars": topic.config.min_label_chars,
        },
        "documents": corpus_records(topic.corpus),
        "facets": {
            kind: [_facet_value_payload(v) for v in topic.facets[kind]]
            for kind in FACET_KINDS
        },
    }


def canonical_json(payload: dict) -> bytes:
    return json.dumps(
        payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False
    ).encode("utf-8")


def facets_jsonl_path(index_path: str | Path) -> Path:
    return Path(str(index_path) + ".facets.jsonl")


def write_index(topic: Topic, path: str | Path) -> None:
    """Write the binary index plus its diagnostic facet listing.

    gzip is invoked with a fixed empty filename and zero mtime so that the
    output depends only on the payload.
    """
    path = Path(path)
    payload = canonical_json(topic_payload(topic))
    buf = io.BytesIO()
    with gzip.GzipFile(
        filename="", mode="wb", fileobj=buf, compresslevel=9, mtime=0
    ) as gz:
        gz.write(payload)
    path.write_bytes(buf.getvalue())

    with facets_jsonl_path(path).open("w", encoding="utf-8") as fh:
        for kind in FACET_KINDS:
            for value in topic.facets[kind]:
                fh.write(
                    json.dumps(
                        _facet_value_payload(value),
                        sort_keys=True,
                        ensure_ascii=False,
                    )
                    + "\n"
                )


def _facet_value_from_payload(rec: dict, corpus: Corpus) -> FacetValue:
    kind = _FACET_MENTION_KIND[rec["facet"]]
    mentions = []
    for m in rec["mentions"]:
        mention = Mention(
            mention_id=m["mention_id"],
            sentence=SentenceRef(m["doc_id"], m["sent_index"]),
            token_start=m["token_start"],
            token_end=m["token_end"],
            surface=m["surface"],
            kind=kind,
        )
        corpus.validate_mention_span(mention)
        mentions.append(mention)
    value = FacetValue(
        value_id=rec["value_id"],
        facet=rec["facet"],
        label=rec["label"],
        mentions=tuple(mentions),
        sentence_set=frozenset(m.sentence for m in mentions),
        frequency=len(mentions),
        category=rec.get("category"),
    )
    if value.frequency != rec["frequency"]:
        raise ValidationError(
            f"facet value {value.value_id}: stored frequency {rec['frequency']} "
            f"!= {value.frequency} mentions"
        )
    return value


def load_index(path: str | Path) -> Topic:
    path = Path(path)
    try:
        with gzip.open(path, "rb") as gz:
            payload = json.loads(gz.read().decode("utf-8"))
    except (OSError, EOFError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ValidationError(
            f"not a readable index file: {exc}", source=str(path)
        ) from None
    if not isinstance(payload, dict):
        raise ValidationError("index payload is not an object", source=str(path))
    if payload.get("format") != INDEX_FORMAT:
        raise ValidationError(
            f"unsupported index format {payload.get('format')!r}", source=str(path)
        )
    corpus = corpus_from_records(payload["documents"], source=str(path))
    facets = {
        kind: [
            _facet_value_from_payload(rec, corpus)
            for rec in payload["facets"].get(kind, [])
        ]
        for kind in FACET_KINDS
    }
    return Topic(
        topic_id=payload["topic_id"],
        display_name=payload["display_name"],
        corpus=corpus,
        facets=facets,
        config=ClusteringConfig(**payload["config"]),
    )


def is_topic_dir(path: Path) -> bool:
    return path.is_dir() and (path / DOCUMENTS_FILE).exists()


def discover_topics(
    data_dir: str | Path, config: ClusteringConfig | None = None
) -> dict[str, Topic]:
    """Load every topic under data_dir: prebuilt `*.fnidx` files and raw
    topic directories alike. A directory that is itself a topic works too."""
    data_dir = Path(data_dir)
    topics: dict[str, Topic] = {}

    def add(topic: Topic) -> None:
        if topic.topic_id in topics:
            raise ValidationError(f"duplicate topic_id {topic.topic_id!r}")
        topics[topic.topic_id] = topic

    if is_topic_dir(data_dir):
        add(build_topic(data_dir, config))
        return topics
    for entry in sorted(data_dir.iterdir()):
        if entry.suffix == ".fnidx" and entry.is_file():
            add(load_index(entry))
        elif is_topic_dir(entry):
            add(build_topic(entry, config))
    return topics
