"""HTTP API over the facet index: topics, queries, mentions, sentences,
documents, and session history.

The index is immutable and shared across requests; sessions are the only
mutable state and each one is guarded by its own lock. Handlers are plain
sync functions (the framework runs them on a worker pool), so a slow
external summarizer call never blocks unrelated requests.
"""

from __future__ import annotations

import time
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from . import explore
from .config import ServiceConfig
from .corpus import SentenceRef, token_char_offsets
from .errors import (
    FacetNavError,
    UnknownDocumentError,
    UnknownSessionError,
    UnknownTopicError,
    UnknownValueError,
)
from .explore import HistoryEntry, SessionStore
from .facets import FACET_KINDS
from .index import Topic
from .summarize import ExternalBackend, Summarizer, with_repeated_flags


class BadRequest(FacetNavError):
    pass


class QueryEngine:
    """Shared implementation behind POST /query and the CLI query command."""

    def __init__(self, topics: dict[str, Topic], config: ServiceConfig):
        self.topics = topics
        self.config = config
        backend = None
        if config.summarizer_url:
            backend = ExternalBackend(
                config.summarizer_url, config.summarizer_timeout_ms
            )
        self.summarizer = Summarizer(
            backend,
            cache_size=config.cache_size,
            output_budget=config.output_budget,
        )
        self.sessions = SessionStore()

    def topic(self, topic_id: str) -> Topic:
        try:
            return self.topics[topic_id]
        except KeyError:
            raise UnknownTopicError(topic_id) from None

    def describe_topics(self) -> list[dict]:
        return [self.topics[tid].descriptor() for tid in sorted(self.topics)]

    def _validate_selection(self, topic: Topic, selected) -> list[str]:
        if not isinstance(selected, list) or not all(
            isinstance(v, str) for v in selected
        ):
            raise BadRequest("selected must be a list of value ids")
        if len(set(selected)) != len(selected):
            raise BadRequest("selected contains duplicate value ids")
        for value_id in selected:
            topic.value(value_id)  # raises UnknownValueError
        return selected

    def query(
        self, topic: Topic, session_token: str | None, selected
    ) -> dict:
        selected = self._validate_selection(topic, selected)
        session = self.sessions.get_or_create(session_token)
        view = explore.refresh_facets(topic, selected)
        current = explore.intersect(topic, selected)
        selected_info = [
            {
                "value_id": v.value_id,
                "label": v.label,
                "facet": v.facet,
                "category": v.category,
            }
            for v in (topic.value(value_id) for value_id in selected)
        ]
        summary_dict = None
        truncated = False
        if selected:
            base = self.summarizer.summarize(
                topic, selected, current, self.config.token_budget
            )
            holder: dict = {}

            def make_entry(priors: list[list[str]]) -> HistoryEntry:
                flagged = with_repeated_flags(base, priors)
                holder["summary"] = flagged
                return HistoryEntry(
                    selected=selected_info,
                    summary_text=flagged.text,
                    summary_sentences=list(flagged.sentences),
                    sentence_refs=list(flagged.source_refs),
                    sentence_count=len(current),
                    backend=flagged.backend,
                    timestamp=time.time(),
                )

            session.append_with_priors(make_entry)
            summary = holder["summary"]
            summary_dict = summary.as_dict()
            truncated = summary.truncated
        return {
            "session": session.token,
            "topic_id": topic.topic_id,
            "selected": selected_info,
            "facets": view,
            "summary": summary_dict,
            "sentence_count": len(current),
            "truncated": truncated,
        }

    def value_mentions(self, topic: Topic, value_id: str) -> dict:
        value = topic.value(value_id)
        return {
            "value_id": value.value_id,
            "facet": value.facet,
            "label": value.label,
            "category": value.category,
            "frequency": value.frequency,
            "forms": [
                {"surface": surface, "count": count}
                for surface, count in value.mention_forms()
            ],
            "mentions": [m.as_dict() for m in value.mentions],
        }

    def _selection_spans(
        self, topic: Topic, selected: list[str], ref: SentenceRef
    ) -> list[dict]:
        sent = topic.corpus.sentence(ref)
        offsets = token_char_offsets(sent)
        spans = []
        for value_id in selected:
            value = topic.value(value_id)
            for m in value.mentions:
                if m.sentence == ref:
                    spans.append(
                        {
                            "value_id": value.value_id,
                            "label": value.label,
                            "token_start": m.token_start,
                            "token_end": m.token_end,
                            "char_start": offsets[m.token_start][0],
                            "char_end": offsets[m.token_end][1],
                        }
                    )
        spans.sort(key=lambda s: (s["char_start"], s["char_end"], s["value_id"]))
        return spans

    def sentences(
        self, topic: Topic, refs: list[SentenceRef], selected: list[str]
    ) -> dict:
        self._validate_selection(topic, selected)
        for ref in refs:
            try:
                topic.corpus.sentence(ref)
            except FacetNavError as exc:
                raise BadRequest(str(exc)) from None
        groups: list[dict] = []
        by_doc: dict[str, dict] = {}
        ordered = sorted(
            set(refs), key=lambda r: (r.doc_id.encode("utf-8"), r.sent_index)
        )
        for ref in ordered:
            group = by_doc.get(ref.doc_id)
            if group is None:
                doc = topic.corpus.document(ref.doc_id)
                group = {"doc_id": doc.doc_id, "title": doc.title, "sentences": []}
                by_doc[ref.doc_id] = group
                groups.append(group)
            sent = topic.corpus.sentence(ref)
            group["sentences"].append(
                {
                    "sent_index": ref.sent_index,
                    "text": sent.text,
                    "spans": self._selection_spans(topic, selected, ref),
                }
            )
        return {"groups": groups}

    def document(
        self,
        topic: Topic,
        doc_id: str,
        flagged: set[int],
        selected: list[str],
    ) -> dict:
        self._validate_selection(topic, selected)
        doc = topic.corpus.document(doc_id)
        for idx in flagged:
            if not 0 <= idx < len(doc.sentences):
                raise BadRequest(f"sentence index {idx} out of range")
        sentences = []
        for sent in doc.sentences:
            ref = SentenceRef(doc_id, sent.sent_index)
            sentences.append(
                {
                    "sent_index": sent.sent_index,
                    "text": sent.text,
                    "flagged": sent.sent_index in flagged,
                    "spans": self._selection_spans(topic, selected, ref),
                }
            )
        return {"doc_id": doc.doc_id, "title": doc.title, "sentences": sentences}

    def history(self, session_token: str) -> dict:
        session = self.sessions.get(session_token)
        return {
            "session": session.token,
            "entries": [e.as_dict() for e in session.history()],
        }


def _parse_refs(raw: str | None) -> list[SentenceRef]:
    """refs query parameter: comma-separated doc_id:sent_index items."""
    if not raw:
        return []
    refs = []
    for item in raw.split(","):
        item = item.strip()
        if not item:
            continue
        doc_id, sep, idx = item.rpartition(":")
        if not sep or not doc_id:
            raise BadRequest(f"bad sentence ref {item!r}, expected doc_id:index")
        try:
            refs.append(SentenceRef(doc_id, int(idx)))
        except ValueError:
            raise BadRequest(
                f"bad sentence ref {item!r}, index must be an integer"
            ) from None
    return refs


def _parse_csv(raw: str | None) -> list[str]:
    if not raw:
        return []
    return [item for item in (part.strip() for part in raw.split(",")) if item]


def create_app(
    engine: QueryEngine, static_dir: str | Path | None = None
) -> FastAPI:
    app = FastAPI(title="facetnav", docs_url=None, redoc_url=None)

    @app.exception_handler(FacetNavError)
    def _handle_domain_error(request: Request, exc: FacetNavError):
        not_found = (
            UnknownTopicError,
            UnknownValueError,
            UnknownSessionError,
            UnknownDocumentError,
        )
        status = 404 if isinstance(exc, not_found) else 400
        return JSONResponse(status_code=status, content={"error": str(exc)})

    @app.get("/api/topics")
    def list_topics():
        return engine.describe_topics()

    @app.post("/api/topics/{topic_id}/query")
    async def query(topic_id: str, request: Request):
        topic = engine.topic(topic_id)
        try:
            body = await request.json()
        except Exception:
            raise BadRequest("request body must be a JSON object") from None
        if not isinstance(body, dict):
            raise BadRequest("request body must be a JSON object")
        session_token = body.get("session")
        if session_token is not None and not isinstance(session_token, str):
            raise BadRequest("session must be a string")
        return engine.query(topic, session_token, body.get("selected", []))

    @app.get("/api/topics/{topic_id}/values/{value_id}/mentions")
    def value_mentions(topic_id: str, value_id: str):
        return engine.value_mentions(engine.topic(topic_id), value_id)

    @app.get("/api/topics/{topic_id}/sentences")
    def sentences(topic_id: str, refs: str = "", selected: str = ""):
        topic = engine.topic(topic_id)
        return engine.sentences(topic, _parse_refs(refs), _parse_csv(selected))

    @app.get("/api/topics/{topic_id}/documents/{doc_id}")
    def document(topic_id: str, doc_id: str, refs: str = "", selected: str = ""):
        topic = engine.topic(topic_id)
        flagged = set()
        for ref in _parse_refs(refs):
            if ref.doc_id != doc_id:
                raise BadRequest(
                    f"ref {ref.doc_id}:{ref.sent_index} is not in document {doc_id}"
                )
            flagged.add(ref.sent_index)
        return engine.document(topic, doc_id, flagged, _parse_csv(selected))

    @app.get("/api/sessions/{session_token}/history")
    def history(session_token: str):
        return engine.history(session_token)

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app


def default_static_dir() -> Path | None:
    """frontend/dist when running from a source checkout."""
    candidate = Path(__file__).resolve().parents[2] / "frontend" / "dist"
    return candidate if candidate.is_dir() else None
