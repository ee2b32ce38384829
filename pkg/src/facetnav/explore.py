"""Interaction semantics: selections, sentence-set intersection, dynamic
facet refresh, mention-form reveal, and per-session history.

The facet index is immutable and shared; everything here is a pure function
of (topic, selection) except the session store, which guards its mutable
per-session state with one lock per session.
"""

from __future__ import annotations

import secrets
import threading
import time
from dataclasses import dataclass, field

from .corpus import SentenceRef
from .errors import UnknownSessionError
from .facets import FACET_KINDS, FacetValue
from .index import Topic

HISTORY_CAP = 200


def sentence_set(topic: Topic, value_id: str) -> frozenset[SentenceRef]:
    return topic.value(value_id).sentence_set


def intersect(topic: Topic, selected: list[str]) -> frozenset[SentenceRef]:
    """Sentence set selected by a conjunction of facet-values.

    An empty selection means the whole topic, not the empty set: the
    initial screen shows everything.
    """
    if not selected:
        return topic.all_sentences
    result: frozenset[SentenceRef] | None = None
    for value_id in selected:
        s = sentence_set(topic, value_id)
        result = s if result is None else result & s
    return result if result is not None else frozenset()


def restricted_frequency(value: FacetValue, sentences: frozenset[SentenceRef]) -> int:
    return sum(1 for m in value.mentions if m.sentence in sentences)


def refresh_facets(topic: Topic, selected: list[str]) -> dict:
    """Facet tables restricted to the current intersection.

    Values keep only the mentions whose sentence survives; values left with
    zero mentions disappear. Frequencies are recomputed within the
    restriction so the meters stay truthful as evidence shrinks.
    """
    current = intersect(topic, selected)
    selected_set = set(selected)
    view: dict = {kind: [] for kind in FACET_KINDS}
    for kind in FACET_KINDS:
        rows = []
        for value in topic.facets[kind]:
            freq = restricted_frequency(value, current)
            if freq == 0:
                continue
            rows.append(
                {
                    "value_id": value.value_id,
                    "label": value.label,
                    "frequency": freq,
                    "global_frequency": value.frequency,
                    "category": value.category,
                    "selected": value.value_id in selected_set,
                }
            )
        rows.sort(key=lambda r: (-r["frequency"], r["label"]))
        view[kind] = rows
    view["totals"] = {kind: len(view[kind]) for kind in FACET_KINDS}
    return view


def mention_forms(topic: Topic, value_id: str) -> list[tuple[str, int]]:
    return topic.value(value_id).mention_forms()


def toggle(topic: Topic, selected: list[str], value_id: str) -> list[str]:
    """Add the value if absent, drop it if present; click order of the rest
    is preserved."""
    topic.value(value_id)  # existence check
    if value_id in selected:
        return [v for v in selected if v != value_id]
    return [*selected, value_id]


@dataclass
class HistoryEntry:
    selected: list[dict]  # [{value_id, label, facet}]
    summary_text: str
    summary_sentences: list[str]
    sentence_refs: list[SentenceRef]
    sentence_count: int
    backend: str
    timestamp: float

    def as_dict(self) -> dict:
        return {
            "selected": self.selected,
            "summary_text": self.summary_text,
            "summary_sentences": self.summary_sentences,
            "sentence_refs": [r.as_dict() for r in self.sentence_refs],
            "sentence_count": self.sentence_count,
            "backend": self.backend,
            "timestamp": self.timestamp,
        }


@dataclass
class Session:
    token: str
    created_at: float
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)
    entries: list[HistoryEntry] = field(default_factory=list)

    def record(self, entry: HistoryEntry) -> None:
        with self.lock:
            self._append(entry)

    def append_with_priors(self, make_entry) -> HistoryEntry:
        """Atomically snapshot earlier summaries and append the entry built
        from them; keeps repeat detection consistent under concurrency."""
        with self.lock:
            priors = [list(e.summary_sentences) for e in self.entries]
            entry = make_entry(priors)
            self._append(entry)
            return entry

    def _append(self, entry: HistoryEntry) -> None:
        self.entries.append(entry)
        if len(self.entries) > HISTORY_CAP:
            del self.entries[: len(self.entries) - HISTORY_CAP]

    def history(self) -> list[HistoryEntry]:
        """Snapshot, newest first."""
        with self.lock:
            return list(reversed(self.entries))


class SessionStore:
    """In-memory sessions keyed by unguessable tokens (128 random bits)."""

    def __init__(self):
        self._lock = threading.Lock()
        self._sessions: dict[str, Session] = {}

    def create(self) -> Session:
        session = Session(token=secrets.token_urlsafe(16), created_at=time.time())
        with self._lock:
            self._sessions[session.token] = session
        return session

    def get(self, token: str) -> Session:
        with self._lock:
            session = self._sessions.get(token)
        if session is None:
            raise UnknownSessionError(token)
        return session

    def get_or_create(self, token: str | None) -> Session:
        """Resolve a client-supplied token; unknown or missing tokens start a
        fresh session rather than failing (tokens are advisory on query)."""
        if token:
            with self._lock:
                session = self._sessions.get(token)
            if session is not None:
                return session
        return self.create()
