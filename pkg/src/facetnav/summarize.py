"""Summary generation over intersected sentence sets.

Sentences are ordered by source position and greedily budgeted to the
backend's input limit. The abstractive model lives behind a one-endpoint
wire protocol; when it is absent or unreachable the deterministic
extractive fallback answers instead, so exploration never blocks on a
missing model. Results are cached (LRU) under a canonical selection key,
with request coalescing so concurrent identical queries trigger a single
backend call.

Repeated-sentence flags are recomputed per request from the session's
history and are never part of the cached value.
"""

from __future__ import annotations

import dataclasses
import re
import threading
from collections import OrderedDict
from dataclasses import dataclass
from typing import Callable, Sequence

import requests

from .corpus import Corpus, SentenceRef, doc_sort_key
from .facets import FacetValue
from .index import Topic

DEFAULT_TOKEN_BUDGET = 1024
DEFAULT_OUTPUT_BUDGET = 100
DEFAULT_TIMEOUT_MS = 10000
DEFAULT_CACHE_SIZE = 1024

EXTERNAL = "EXTERNAL"
FALLBACK = "FALLBACK"

_FALLBACK_ID = "fallback"

_SENTENCE_SPLIT = re.compile(r"(?<=[.!?])\s+")


def count_tokens(text: str) -> int:
    """Whitespace token count, the budget unit for the fallback path."""
    return len(text.split())


def order_and_budget(
    corpus: Corpus, refs: Sequence[SentenceRef], token_budget: int
) -> tuple[list[SentenceRef], bool]:
    """Sort refs by source position and keep the longest prefix whose
    cumulative token count fits the budget."""
    ordered = sorted(refs, key=lambda r: (doc_sort_key(r.doc_id), r.sent_index))
    kept = []
    total = 0
    for ref in ordered:
        tokens = count_tokens(corpus.sentence(ref).text)
        if total + tokens > token_budget:
            return kept, True
        kept.append(ref)
        total += tokens
    return kept, False


@dataclass(frozen=True)
class Summary:
    text: str
    sentences: tuple[str, ...]
    source_refs: tuple[SentenceRef, ...]
    truncated: bool
    backend: str
    empty: bool = False
    repeated_flags: tuple[bool, ...] = ()

    def as_dict(self) -> dict:
        return {
            "text": self.text,
            "sentences": list(self.sentences),
            "source_refs": [r.as_dict() for r in self.source_refs],
            "truncated": self.truncated,
            "backend": self.backend,
            "empty": self.empty,
            "repeated_flags": list(self.repeated_flags),
        }


def normalize_sentence(text: str) -> str:
    """Case-folded, whitespace-collapsed form used for repeat detection."""
    return " ".join(text.casefold().split())


def mark_repeated(
    sentences: Sequence[str], previous_summaries: Sequence[Sequence[str]]
) -> tuple[bool, ...]:
    """Flag each sentence that appeared, as a complete sentence, in any
    earlier summary of the session."""
    seen = {
        normalize_sentence(s) for summary in previous_summaries for s in summary
    }
    return tuple(normalize_sentence(s) in seen for s in sentences)


def split_sentences(text: str) -> list[str]:
    """Coarse sentence split on terminal punctuation; only affects how the
    repeated-sentence tint is granulated for backend output."""
    parts = [p.strip() for p in _SENTENCE_SPLIT.split(text.strip())]
    return [p for p in parts if p]


def fallback_summary(
    corpus: Corpus,
    refs: Sequence[SentenceRef],
    selected_values: Sequence[FacetValue],
    truncated: bool,
    output_budget: int = DEFAULT_OUTPUT_BUDGET,
) -> Summary:
    """Deterministic extractive summary of already-budgeted refs.

    Sentences are ranked by how many selected-value mentions they carry
    (ties: fewer tokens, then earlier position), taken greedily until the
    output budget is spent, and emitted in source order. The top-ranked
    sentence is always emitted, so a summary is never empty while its
    input is not.
    """
    ranked = []
    for pos, ref in enumerate(refs):
        text = corpus.sentence(ref).text
        hits = sum(
            1 for v in selected_values for m in v.mentions if m.sentence == ref
        )
        ranked.append((-hits, count_tokens(text), pos, ref, text))
    ranked.sort(key=lambda r: r[:3])

    chosen: list[tuple[int, SentenceRef, str]] = []
    total = 0
    for _, tokens, pos, ref, text in ranked:
        if chosen and total + tokens > output_budget:
            break
        chosen.append((pos, ref, text))
        total += tokens
    chosen.sort()

    sentences = tuple(text for _, _, text in chosen)
    return Summary(
        text=" ".join(sentences),
        sentences=sentences,
        source_refs=tuple(refs),
        truncated=truncated,
        backend=FALLBACK,
        repeated_flags=tuple(False for _ in sentences),
    )


class ExternalBackend:
    """Client for the one-endpoint summarizer protocol:
    POST /summarize {text, max_tokens} -> {summary}."""

    def __init__(self, url: str, timeout_ms: int = DEFAULT_TIMEOUT_MS):
        url = url.rstrip("/")
        self.endpoint = url if url.endswith("/summarize") else url + "/summarize"
        self.timeout = timeout_ms / 1000.0
        self.backend_id = f"external:{self.endpoint}"

    def summarize(self, text: str, max_tokens: int) -> str:
        resp = requests.post(
            self.endpoint,
            json={"text": text, "max_tokens": max_tokens},
            timeout=self.timeout,
        )
        resp.raise_for_status()
        body = resp.json()
        summary = body.get("summary")
        if not isinstance(summary, str):
            raise ValueError("summarizer response missing 'summary' string")
        return summary


class Summarizer:
    """Caching front door for both backends.

    Cache keys are (topic_id, sorted value_ids, backend id, token_budget),
    so permuted selections share an entry and each backend keeps its own.
    Degraded results are cached under the fallback id, never the external
    one, so a recovered backend is retried on the next distinct request.
    """

    def __init__(
        self,
        backend: ExternalBackend | None = None,
        *,
        cache_size: int = DEFAULT_CACHE_SIZE,
        output_budget: int = DEFAULT_OUTPUT_BUDGET,
    ):
        self.backend = backend
        self.output_budget = output_budget
        self._cache: OrderedDict[tuple, Summary] = OrderedDict()
        self._cache_size = cache_size
        self._lock = threading.Lock()
        self._inflight: dict[tuple, threading.Event] = {}

    def cache_key(
        self, topic_id: str, selected: Sequence[str], backend_id: str, budget: int
    ) -> tuple:
        return (topic_id, tuple(sorted(selected)), backend_id, budget)

    def _cache_get(self, key: tuple) -> Summary | None:
        with self._lock:
            summary = self._cache.get(key)
            if summary is not None:
                self._cache.move_to_end(key)
            return summary

    def _cache_put(self, key: tuple, summary: Summary) -> None:
        with self._lock:
            self._cache[key] = summary
            self._cache.move_to_end(key)
            while len(self._cache) > self._cache_size:
                self._cache.popitem(last=False)

    def _coalesced(self, key: tuple, produce: Callable[[], Summary | None]):
        """Single-flight per cache key: concurrent identical requests wait
        for the leader instead of duplicating backend work."""
        while True:
            with self._lock:
                summary = self._cache.get(key)
                if summary is not None:
                    self._cache.move_to_end(key)
                    return summary
                event = self._inflight.get(key)
                if event is None:
                    event = threading.Event()
                    self._inflight[key] = event
                    break
            event.wait()
        try:
            summary = produce()
            if summary is not None:
                self._cache_put(key, summary)
            return summary
        finally:
            with self._lock:
                self._inflight.pop(key, None)
            event.set()

    def summarize(
        self,
        topic: Topic,
        selected: Sequence[str],
        refs: Sequence[SentenceRef],
        token_budget: int = DEFAULT_TOKEN_BUDGET,
    ) -> Summary:
        ordered, truncated = order_and_budget(topic.corpus, refs, token_budget)
        if not ordered:
            return Summary(
                text="",
                sentences=(),
                source_refs=(),
                truncated=truncated,
                backend=FALLBACK,
                empty=True,
            )
        if self.backend is not None:
            key = self.cache_key(
                topic.topic_id, selected, self.backend.backend_id, token_budget
            )
            summary = self._coalesced(
                key, lambda: self._external(topic, ordered, truncated, token_budget)
            )
            if summary is not None:
                return summary
        key = self.cache_key(topic.topic_id, selected, _FALLBACK_ID, token_budget)
        values = [topic.value(v) for v in selected]
        return self._coalesced(
            key,
            lambda: fallback_summary(
                topic.corpus, ordered, values, truncated, self.output_budget
            ),
        )

    def _external(
        self,
        topic: Topic,
        ordered: list[SentenceRef],
        truncated: bool,
        token_budget: int,
    ) -> Summary | None:
        text = " ".join(topic.corpus.sentence(r).text for r in ordered)
        try:
            out = self.backend.summarize(text, max_tokens=token_budget)
        except Exception:
            return None
        sentences = tuple(split_sentences(out))
        return Summary(
            text=out.strip(),
            sentences=sentences,
            source_refs=tuple(ordered),
            truncated=truncated,
            backend=EXTERNAL,
            repeated_flags=tuple(False for _ in sentences),
        )


def with_repeated_flags(
    summary: Summary, previous_summaries: Sequence[Sequence[str]]
) -> Summary:
    """Per-request copy carrying history-dependent repeat flags."""
    flags = mark_repeated(summary.sentences, previous_summaries)
    return dataclasses.replace(summary, repeated_flags=flags)
