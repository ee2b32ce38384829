"""Facet formation: turning coreference and alignment annotations into the
three facet-value tables (CONCEPTS, ENTITIES, STATEMENTS).

Pipelines per facet:
  events       verbal filter -> label -> same-label merge -> shared filters
  entities     agglomerative merge of WD clusters via CD pair scores
               -> label -> categorize -> shared filters
  statements   alignment-threshold graph -> connected components -> label
               -> shared filters

All steps are pure functions over immutable inputs; every tie-break is
specified so repeated builds produce byte-identical tables.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .corpus import ENTITY, PROPOSITION, Corpus, Mention, SentenceRef, doc_sort_key
from .errors import ValidationError
from .ingest import AnnotationBundle, PairScore, RawCluster

CONCEPTS = "CONCEPTS"
ENTITIES = "ENTITIES"
STATEMENTS = "STATEMENTS"
FACET_KINDS = (CONCEPTS, ENTITIES, STATEMENTS)

PERSON = "PERSON"
LOCATION = "LOCATION"
ORGANIZATION = "ORGANIZATION"
MISCELLANEOUS = "MISCELLANEOUS"
ENTITY_CATEGORIES = (PERSON, LOCATION, ORGANIZATION, MISCELLANEOUS)

# Fixed priority for category ties; also the popup tab order downstream.
_CATEGORY_PRIORITY = {PERSON: 0, LOCATION: 1, ORGANIZATION: 2}

_VERB = "VERB"

_ID_PREFIX = {CONCEPTS: "C", ENTITIES: "E", STATEMENTS: "S"}


@dataclass(frozen=True)
class ClusteringConfig:
    wd_pair_score: float = 1.0
    cd_merge_threshold: float = 0.5
    alignment_threshold: float = 0.5
    max_cluster_mentions: int = 50
    min_label_chars: int = 3

    def __post_init__(self):
        if not 0.0 < self.cd_merge_threshold <= 1.0:
            raise ValidationError(
                f"cd_merge_threshold must be in (0, 1], got {self.cd_merge_threshold}"
            )
        if not 0.0 <= self.alignment_threshold <= 1.0:
            raise ValidationError(
                f"alignment_threshold must be in [0, 1], got {self.alignment_threshold}"
            )
        if self.max_cluster_mentions < 1:
            raise ValidationError("max_cluster_mentions must be positive")
        if self.min_label_chars < 1:
            raise ValidationError("min_label_chars must be positive")


@dataclass(frozen=True)
class FacetValue:
    value_id: str
    facet: str
    label: str
    mentions: tuple[Mention, ...]
    sentence_set: frozenset[SentenceRef]
    frequency: int
    category: str | None = None

    def mention_forms(self) -> list[tuple[str, int]]:
        """Distinct surfaces with counts, most frequent first."""
        counts = Counter(m.surface for m in self.mentions)
        return sorted(counts.items(), key=lambda kv: (-kv[1], kv[0].lower(), kv[0]))


def mention_order_key(mention: Mention) -> tuple:
    """Canonical corpus-position ordering for mentions."""
    return (
        doc_sort_key(mention.sentence.doc_id),
        mention.sentence.sent_index,
        mention.token_start,
        mention.token_end,
        mention.mention_id,
    )


def _ordered_unique(mentions: Iterable[Mention]) -> tuple[Mention, ...]:
    seen: dict[str, Mention] = {}
    for m in mentions:
        seen.setdefault(m.mention_id, m)
    return tuple(sorted(seen.values(), key=mention_order_key))


def mention_is_verbal(corpus: Corpus, mention: Mention) -> bool:
    """A mention counts as verbal iff its final token is POS-tagged VERB."""
    sent = corpus.sentence(mention.sentence)
    return sent.tokens[mention.token_end].pos == _VERB


def filter_verbal_event_clusters(
    corpus: Corpus, clusters: Sequence[RawCluster]
) -> list[RawCluster]:
    """Drop clusters in which strictly more than half the mentions are verbal."""
    kept = []
    for cluster in clusters:
        verbal = sum(1 for m in cluster.mentions if mention_is_verbal(corpus, m))
        if verbal * 2 <= len(cluster.mentions):
            kept.append(cluster)
    return kept


def cluster_label(mentions: Sequence[Mention], facet: str) -> str:
    """Representative label for a mention cluster.

    CONCEPTS / ENTITIES: the most frequent surface, counted case-insensitively;
    the returned string keeps the casing of its earliest occurrence. STATEMENTS:
    the longest surface by character count. Ties go to the lexicographically
    smallest lowercased surface.
    """
    ordered = sorted(mentions, key=mention_order_key)
    first_casing: dict[str, str] = {}
    for m in ordered:
        first_casing.setdefault(m.surface.lower(), m.surface)
    if facet == STATEMENTS:
        best = min(first_casing, key=lambda s: (-len(first_casing[s]), s))
    else:
        counts = Counter(m.surface.lower() for m in ordered)
        best = min(counts, key=lambda s: (-counts[s], s))
    return first_casing[best]


def merge_same_label_event_clusters(
    labeled: Sequence[tuple[RawCluster, str]],
) -> list[tuple[RawCluster, str]]:
    """Union clusters that share a label (case-insensitive) and relabel the
    union. Relabeling can introduce new collisions, so this repeats until no
    two labels coincide; the second application is then the identity."""
    current = [
        (RawCluster(c.cluster_id, c.kind, _ordered_unique(c.mentions)), lbl)
        for c, lbl in labeled
    ]
    while True:
        groups: dict[str, list[tuple[RawCluster, str]]] = {}
        order: list[str] = []
        for cluster, label in current:
            key = label.lower()
            if key not in groups:
                groups[key] = []
                order.append(key)
            groups[key].append((cluster, label))
        if all(len(groups[k]) == 1 for k in order):
            return current
        merged: list[tuple[RawCluster, str]] = []
        for key in order:
            members = groups[key]
            if len(members) == 1:
                merged.append(members[0])
                continue
            mentions = _ordered_unique(
                m for cluster, _ in members for m in cluster.mentions
            )
            cluster_id = min(cluster.cluster_id for cluster, _ in members)
            union = RawCluster(cluster_id, members[0][0].kind, mentions)
            merged.append((union, cluster_label(mentions, CONCEPTS)))
        current = merged


def wd_clusters_to_pair_scores(
    wd_clusters: Sequence[RawCluster], config: ClusteringConfig
) -> list[PairScore]:
    """Every unordered mention pair inside a WD cluster, scored wd_pair_score.

    Cross-cluster pairs are omitted (implicit score 0)."""
    pairs = []
    for cluster in wd_clusters:
        ids = sorted(m.mention_id for m in cluster.mentions)
        for i, a in enumerate(ids):
            for b in ids[i + 1 :]:
                pairs.append(PairScore(a, b, config.wd_pair_score))
    return pairs


def agglomerative_entity_clustering(
    wd_clusters: Sequence[RawCluster],
    cd_scores: Sequence[PairScore],
    config: ClusteringConfig,
) -> list[RawCluster]:
    """Average-linkage agglomerative merge of the WD clusters.

    The WD clusters form the initial partition, so mentions sharing a WD
    cluster can never be separated. Distance between mentions is
    1 - score, where unscored cross-cluster pairs score 0. Merging
    continues while the minimum average inter-cluster distance is at most
    1 - cd_merge_threshold; distance ties are broken by the smallest
    (representative_a, representative_b) pair, where a cluster's
    representative is its minimal mention_id.

    Arithmetic is exact (rational): every input score converts to a
    Fraction, so equal-distance ties are decided by the tie-break rule,
    never by floating-point noise.
    """

    @dataclass
    class _Agg:
        mentions: list[Mention]
        rep: str
        size: int
        # sum of similarity scores to every other live cluster, sparsely
        sims: dict[int, Fraction] = field(default_factory=dict)

    clusters: dict[int, _Agg] = {}
    mention_to_cluster: dict[str, int] = {}
    for idx, wd in enumerate(wd_clusters):
        mentions = sorted(wd.mentions, key=mention_order_key)
        clusters[idx] = _Agg(
            mentions=list(mentions),
            rep=min(m.mention_id for m in mentions),
            size=len(mentions),
        )
        for m in mentions:
            mention_to_cluster[m.mention_id] = idx

    for pair in cd_scores:
        ca = mention_to_cluster.get(pair.mention_a)
        cb = mention_to_cluster.get(pair.mention_b)
        if ca is None or cb is None or ca == cb:
            continue
        s = Fraction(pair.score)
        clusters[ca].sims[cb] = clusters[ca].sims.get(cb, Fraction(0)) + s
        clusters[cb].sims[ca] = clusters[cb].sims.get(ca, Fraction(0)) + s

    min_avg_sim = Fraction(config.cd_merge_threshold)
    next_id = len(wd_clusters)

    while len(clusters) > 1:
        best: tuple[Fraction, tuple[str, str], int, int] | None = None
        for i, ci in clusters.items():
            for j, sim in ci.sims.items():
                if j <= i:
                    continue
                cj = clusters[j]
                avg = sim / (ci.size * cj.size)
                if avg < min_avg_sim:
                    continue
                reps = (ci.rep, cj.rep)
                if reps[0] > reps[1]:
                    reps = (reps[1], reps[0])
                # maximize similarity = minimize distance; then smallest reps
                cand = (-avg, reps, i, j)
                if best is None or cand < best:
                    best = cand
        if best is None:
            break
        _, _, i, j = best
        ci, cj = clusters.pop(i), clusters.pop(j)
        merged = _Agg(
            mentions=ci.mentions + cj.mentions,
            rep=min(ci.rep, cj.rep),
            size=ci.size + cj.size,
        )
        for k, agg in clusters.items():
            sim = agg.sims.pop(i, Fraction(0)) + agg.sims.pop(j, Fraction(0))
            if sim:
                agg.sims[next_id] = sim
                merged.sims[k] = sim
        clusters[next_id] = merged
        next_id += 1

    out = []
    for agg in clusters.values():
        mentions = _ordered_unique(agg.mentions)
        out.append(RawCluster(cluster_id=agg.rep, kind=ENTITY, mentions=mentions))
    out.sort(key=lambda c: c.cluster_id)
    return out


def categorize_entity_cluster(corpus: Corpus, mentions: Sequence[Mention]) -> str:
    """Majority vote over classified mentions.

    A mention is classified with tag T only when every token in its span
    carries ner = T; only PERSON, LOCATION and ORGANIZATION participate.
    No classified mentions means MISCELLANEOUS; count ties resolve in the
    order PERSON, LOCATION, ORGANIZATION.
    """
    counts = Counter()
    for m in mentions:
        sent = corpus.sentence(m.sentence)
        tags = {t.ner for t in sent.tokens[m.token_start : m.token_end + 1]}
        if len(tags) == 1:
            tag = next(iter(tags))
            if tag in _CATEGORY_PRIORITY:
                counts[tag] += 1
    if not counts:
        return MISCELLANEOUS
    return min(counts, key=lambda t: (-counts[t], _CATEGORY_PRIORITY[t]))


def proposition_clusters(
    propositions: Sequence[Mention],
    alignments: Sequence[PairScore],
    config: ClusteringConfig,
) -> list[RawCluster]:
    """Connected components over the above-threshold alignment graph.

    Edges with score strictly greater than alignment_threshold connect
    propositions; components are the clusters. Propositions with no kept
    edge come out as singletons (removed later by the size filters).
    """
    parent: dict[str, str] = {m.mention_id: m.mention_id for m in propositions}
    by_id = {m.mention_id: m for m in propositions}

    def find(x: str) -> str:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for pair in alignments:
        if pair.score > config.alignment_threshold:
            if pair.mention_a in parent and pair.mention_b in parent:
                ra, rb = find(pair.mention_a), find(pair.mention_b)
                if ra != rb:
                    if rb < ra:
                        ra, rb = rb, ra
                    parent[rb] = ra

    components: dict[str, list[Mention]] = {}
    for mid in parent:
        components.setdefault(find(mid), []).append(by_id[mid])
    out = [
        RawCluster(cluster_id=root, kind=PROPOSITION, mentions=_ordered_unique(ms))
        for root, ms in components.items()
    ]
    out.sort(key=lambda c: c.cluster_id)
    return out


def _label_has_verb(
    corpus: Corpus, mentions: Sequence[Mention], label: str
) -> bool:
    """POS check on the label, looked up from a mention whose surface is the
    label (exact casing preferred, case-insensitive fallback)."""
    exact = None
    loose = None
    for m in sorted(mentions, key=mention_order_key):
        if m.surface == label and exact is None:
            exact = m
        elif m.surface.lower() == label.lower() and loose is None:
            loose = m
    probe = exact or loose
    if probe is None:
        return False
    sent = corpus.sentence(probe.sentence)
    return any(
        t.pos == _VERB for t in sent.tokens[probe.token_start : probe.token_end + 1]
    )


def apply_facet_filters(
    corpus: Corpus,
    labeled: Sequence[tuple[RawCluster, str]],
    config: ClusteringConfig,
) -> list[tuple[RawCluster, str]]:
    """The four shared removal rules, applied in fixed order:
    oversized clusters, single-sentence clusters, short labels, verb labels."""
    stage = [
        (c, lbl)
        for c, lbl in labeled
        if len(c.mentions) <= config.max_cluster_mentions
    ]
    stage = [
        (c, lbl)
        for c, lbl in stage
        if len({m.sentence for m in c.mentions}) > 1
    ]
    stage = [(c, lbl) for c, lbl in stage if len(lbl) >= config.min_label_chars]
    stage = [
        (c, lbl)
        for c, lbl in stage
        if not _label_has_verb(corpus, c.mentions, lbl)
    ]
    return stage


def _finalize(
    facet: str,
    labeled: Sequence[tuple[RawCluster, str]],
    categories: dict[str, str] | None = None,
) -> list[FacetValue]:
    rows = []
    for cluster, label in labeled:
        mentions = _ordered_unique(cluster.mentions)
        rows.append(
            (
                label,
                mentions,
                frozenset(m.sentence for m in mentions),
                categories.get(cluster.cluster_id) if categories else None,
            )
        )
    rows.sort(key=lambda r: (-len(r[1]), r[0]))
    values = []
    for n, (label, mentions, sentences, category) in enumerate(rows, start=1):
        values.append(
            FacetValue(
                value_id=f"{_ID_PREFIX[facet]}{n:03d}",
                facet=facet,
                label=label,
                mentions=mentions,
                sentence_set=sentences,
                frequency=len(mentions),
                category=category,
            )
        )
    return values


def build_facets(
    corpus: Corpus, bundle: AnnotationBundle, config: ClusteringConfig | None = None
) -> dict[str, list[FacetValue]]:
    """Run the three per-facet pipelines over a validated bundle."""
    config = config or ClusteringConfig()

    survivors = filter_verbal_event_clusters(corpus, bundle.event_clusters)
    labeled_events = [(c, cluster_label(c.mentions, CONCEPTS)) for c in survivors]
    merged_events = merge_same_label_event_clusters(labeled_events)
    concepts = _finalize(
        CONCEPTS, apply_facet_filters(corpus, merged_events, config)
    )

    entity_clusters = agglomerative_entity_clustering(
        bundle.entity_wd_clusters, bundle.entity_cd_scores, config
    )
    labeled_entities = [
        (c, cluster_label(c.mentions, ENTITIES)) for c in entity_clusters
    ]
    categories = {
        c.cluster_id: categorize_entity_cluster(corpus, c.mentions)
        for c in entity_clusters
    }
    entities = _finalize(
        ENTITIES, apply_facet_filters(corpus, labeled_entities, config), categories
    )

    prop_clusters = proposition_clusters(
        bundle.proposition_mentions, bundle.proposition_alignments, config
    )
    labeled_props = [(c, cluster_label(c.mentions, STATEMENTS)) for c in prop_clusters]
    statements = _finalize(
        STATEMENTS, apply_facet_filters(corpus, labeled_props, config)
    )

    return {CONCEPTS: concepts, ENTITIES: entities, STATEMENTS: statements}
