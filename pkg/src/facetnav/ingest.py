"""Loading and validating the annotation files that accompany a corpus.

Each topic directory carries the outputs of the upstream coreference and
alignment models as line-delimited JSON. This module checks referential
integrity (every mention resolves to a real span), numeric bounds on pair
scores, and the within-document constraint on WD entity clusters. Errors
carry file and line context and are raised one at a time, so fixing the
single reported defect lets the load proceed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

from .corpus import (
    ENTITY,
    EVENT,
    PROPOSITION,
    Corpus,
    Mention,
    SentenceRef,
    mention_surface,
)
from .errors import (
    CrossDocumentClusterError,
    DuplicateMentionError,
    DuplicatePairError,
    ScoreOutOfRangeError,
    SelfPairError,
    UnknownMentionError,
    ValidationError,
)

EVENT_CLUSTERS_FILE = "event_clusters.jsonl"
ENTITY_WD_CLUSTERS_FILE = "entity_wd_clusters.jsonl"
ENTITY_CD_SCORES_FILE = "entity_cd_scores.jsonl"
PROPOSITIONS_FILE = "propositions.jsonl"
PROPOSITION_ALIGNMENTS_FILE = "proposition_alignments.jsonl"

ANNOTATION_FILES = (
    EVENT_CLUSTERS_FILE,
    ENTITY_WD_CLUSTERS_FILE,
    ENTITY_CD_SCORES_FILE,
    PROPOSITIONS_FILE,
    PROPOSITION_ALIGNMENTS_FILE,
)


@dataclass(frozen=True)
class RawCluster:
    cluster_id: str
    kind: str
    mentions: tuple[Mention, ...]


@dataclass(frozen=True)
class PairScore:
    mention_a: str
    mention_b: str
    score: float

    def key(self) -> tuple[str, str]:
        """Unordered-pair key."""
        a, b = self.mention_a, self.mention_b
        return (a, b) if a <= b else (b, a)


@dataclass
class AnnotationBundle:
    """All validated annotation inputs for one topic, in file order."""

    event_clusters: list[RawCluster] = field(default_factory=list)
    entity_wd_clusters: list[RawCluster] = field(default_factory=list)
    entity_cd_scores: list[PairScore] = field(default_factory=list)
    proposition_mentions: list[Mention] = field(default_factory=list)
    proposition_alignments: list[PairScore] = field(default_factory=list)
    mentions_by_id: dict[str, Mention] = field(default_factory=dict)

    def entity_mentions(self) -> list[Mention]:
        return [m for c in self.entity_wd_clusters for m in c.mentions]


def _iter_jsonl(path: Path) -> Iterator[tuple[int, dict]]:
    with path.open("r", encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            raw = raw.strip()
            if not raw:
                continue
            try:
                yield line_no, json.loads(raw)
            except json.JSONDecodeError as exc:
                raise ValidationError(
                    f"invalid JSON: {exc}", source=str(path), line=line_no
                ) from None


class _MentionRegistry:
    """Tracks mention definitions; repeated identical records are allowed
    (event clusters may share mentions) but any conflicting redefinition
    is rejected."""

    def __init__(self, corpus: Corpus):
        self.corpus = corpus
        self._seen: dict[str, tuple[str, Mention]] = {}

    def define(
        self, rec: dict, kind: str, *, source: str, line: int
    ) -> Mention:
        try:
            mention = Mention(
                mention_id=rec["mention_id"],
                sentence=SentenceRef(rec["doc_id"], int(rec["sent_index"])),
                token_start=int(rec["token_start"]),
                token_end=int(rec["token_end"]),
                surface=rec["surface"],
                kind=kind,
            )
        except KeyError as exc:
            raise ValidationError(
                f"mention record missing field {exc.args[0]!r}",
                source=source,
                line=line,
            ) from None
        prior = self._seen.get(mention.mention_id)
        if prior is not None:
            prior_kind, prior_mention = prior
            if prior_kind != kind or prior_mention != mention:
                raise DuplicateMentionError(
                    f"mention {mention.mention_id!r} already defined "
                    f"with a different record",
                    source=source,
                    line=line,
                )
            return prior_mention
        try:
            self.corpus.validate_mention_span(mention)
        except ValidationError as exc:
            raise type(exc)(str(exc), source=source, line=line) from None
        self._seen[mention.mention_id] = (kind, mention)
        return mention

    def lookup(self, mention_id: str, kind: str, *, source: str, line: int) -> Mention:
        entry = self._seen.get(mention_id)
        if entry is None or entry[0] != kind:
            raise UnknownMentionError(
                f"pair references unknown {kind.lower()} mention {mention_id!r}",
                source=source,
                line=line,
            )
        return entry[1]

    @property
    def by_id(self) -> dict[str, Mention]:
        return {mid: m for mid, (_, m) in self._seen.items()}


def _load_clusters(
    path: Path, kind: str, registry: _MentionRegistry, *, within_document: bool
) -> list[RawCluster]:
    clusters = []
    seen_ids: set[str] = set()
    for line_no, rec in _iter_jsonl(path):
        cluster_id = rec.get("cluster_id")
        if not cluster_id:
            raise ValidationError(
                "cluster record missing cluster_id", source=str(path), line=line_no
            )
        if cluster_id in seen_ids:
            raise ValidationError(
                f"duplicate cluster_id {cluster_id!r}", source=str(path), line=line_no
            )
        seen_ids.add(cluster_id)
        raw_mentions = rec.get("mentions") or []
        if not raw_mentions:
            raise ValidationError(
                f"cluster {cluster_id!r} has no mentions",
                source=str(path),
                line=line_no,
            )
        mentions = tuple(
            registry.define(m, kind, source=str(path), line=line_no)
            for m in raw_mentions
        )
        if within_document:
            docs = {m.sentence.doc_id for m in mentions}
            if len(docs) > 1:
                raise CrossDocumentClusterError(
                    f"within-document cluster {cluster_id!r} crosses documents "
                    f"{sorted(docs)}",
                    source=str(path),
                    line=line_no,
                )
        clusters.append(RawCluster(cluster_id=cluster_id, kind=kind, mentions=mentions))
    return clusters


def _load_pair_scores(
    path: Path, kind: str, registry: _MentionRegistry
) -> list[PairScore]:
    pairs = []
    seen: set[tuple[str, str]] = set()
    for line_no, rec in _iter_jsonl(path):
        try:
            a, b, score = rec["mention_a"], rec["mention_b"], float(rec["score"])
        except KeyError as exc:
            raise ValidationError(
                f"pair record missing field {exc.args[0]!r}",
                source=str(path),
                line=line_no,
            ) from None
        if a == b:
            raise SelfPairError(
                f"pair relates mention {a!r} to itself", source=str(path), line=line_no
            )
        if not 0.0 <= score <= 1.0:
            raise ScoreOutOfRangeError(
                f"score {score} out of range [0, 1]", source=str(path), line=line_no
            )
        registry.lookup(a, kind, source=str(path), line=line_no)
        registry.lookup(b, kind, source=str(path), line=line_no)
        pair = PairScore(mention_a=a, mention_b=b, score=score)
        if pair.key() in seen:
            raise DuplicatePairError(
                f"duplicate pair ({a!r}, {b!r})", source=str(path), line=line_no
            )
        seen.add(pair.key())
        pairs.append(pair)
    return pairs


def load_bundle(corpus: Corpus, topic_dir: str | Path) -> AnnotationBundle:
    """Load all annotation files found under topic_dir.

    Missing files yield empty sections (a partial pipeline still produces
    a working, smaller index). Present files must validate fully.
    """
    topic_dir = Path(topic_dir)
    registry = _MentionRegistry(corpus)
    bundle = AnnotationBundle()

    path = topic_dir / EVENT_CLUSTERS_FILE
    if path.exists():
        bundle.event_clusters = _load_clusters(
            path, EVENT, registry, within_document=False
        )

    path = topic_dir / ENTITY_WD_CLUSTERS_FILE
    if path.exists():
        bundle.entity_wd_clusters = _load_clusters(
            path, ENTITY, registry, within_document=True
        )

    path = topic_dir / ENTITY_CD_SCORES_FILE
    if path.exists():
        bundle.entity_cd_scores = _load_pair_scores(path, ENTITY, registry)

    path = topic_dir / PROPOSITIONS_FILE
    if path.exists():
        bundle.proposition_mentions = [
            registry.define(rec, PROPOSITION, source=str(path), line=line_no)
            for line_no, rec in _iter_jsonl(path)
        ]

    path = topic_dir / PROPOSITION_ALIGNMENTS_FILE
    if path.exists():
        bundle.proposition_alignments = _load_pair_scores(
            path, PROPOSITION, registry
        )

    bundle.mentions_by_id = registry.by_id
    return bundle


def validate_surfaces(corpus: Corpus, bundle: AnnotationBundle) -> list[dict]:
    """Compare every stored mention surface against its actual span text.

    Returns one entry per mismatch; an empty list means all surfaces agree.
    """
    report = []
    for mention in bundle.mentions_by_id.values():
        actual = mention_surface(corpus, mention)
        if actual != mention.surface:
            report.append(
                {
                    "mention_id": mention.mention_id,
                    "doc_id": mention.sentence.doc_id,
                    "sent_index": mention.sentence.sent_index,
                    "stored": mention.surface,
                    "actual": actual,
                }
            )
    report.sort(key=lambda e: e["mention_id"])
    return report
