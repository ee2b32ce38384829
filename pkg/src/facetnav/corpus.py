"""Document / sentence / token data model and the shared identifier scheme.

Tokenization is an input: annotation spans are token-index based and the
engine never re-tokenizes. Each token records whether it is followed by a
space (``ws``) so sentence text can be reproduced exactly from tokens.
Mention spans are inclusive on both ends, matching the convention of the
coreference annotation files this package ingests.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .errors import (
    DuplicateDocumentError,
    SpanOutOfRangeError,
    TokenizationMismatchError,
    UnknownDocumentError,
    ValidationError,
)

EVENT = "EVENT"
ENTITY = "ENTITY"
PROPOSITION = "PROPOSITION"
MENTION_KINDS = (EVENT, ENTITY, PROPOSITION)

NER_NONE = "NONE"


@dataclass(frozen=True)
class Token:
    text: str
    ws: bool  # followed by a space in the original text
    pos: str
    ner: str = NER_NONE


@dataclass(frozen=True)
class Sentence:
    sent_index: int
    text: str
    tokens: tuple[Token, ...]


@dataclass(frozen=True)
class Document:
    doc_id: str
    title: str
    sentences: tuple[Sentence, ...]


@dataclass(frozen=True, order=True)
class SentenceRef:
    """Stable handle for one sentence; the unit of sentence-set membership."""

    doc_id: str
    sent_index: int

    def as_dict(self) -> dict:
        return {"doc_id": self.doc_id, "sent_index": self.sent_index}


@dataclass(frozen=True)
class Mention:
    """A contiguous token span in one sentence. token_end is inclusive."""

    mention_id: str
    sentence: SentenceRef
    token_start: int
    token_end: int
    surface: str
    kind: str

    def as_dict(self) -> dict:
        return {
            "mention_id": self.mention_id,
            "doc_id": self.sentence.doc_id,
            "sent_index": self.sentence.sent_index,
            "token_start": self.token_start,
            "token_end": self.token_end,
            "surface": self.surface,
        }


def doc_sort_key(doc_id: str) -> bytes:
    """Byte-wise lexicographic ordering key for document ids."""
    return doc_id.encode("utf-8")


def canonical_doc_order(docs: Iterable[Document]) -> list[Document]:
    """Sort documents by byte-wise comparison of doc_id (stable, total)."""
    return sorted(docs, key=lambda d: doc_sort_key(d.doc_id))


def join_tokens(tokens: Iterable[Token]) -> str:
    """Reassemble text from tokens honoring per-token trailing-space flags."""
    parts = []
    for tok in tokens:
        parts.append(tok.text)
        if tok.ws:
            parts.append(" ")
    return "".join(parts)


def span_text(sentence: Sentence, token_start: int, token_end: int) -> str:
    """Exact source text of the inclusive token span, trailing space stripped."""
    toks = sentence.tokens[token_start : token_end + 1]
    return join_tokens(toks).rstrip(" ")


def token_char_offsets(sentence: Sentence) -> list[tuple[int, int]]:
    """(start, end) character offsets of each token within the sentence text."""
    offsets = []
    pos = 0
    for tok in sentence.tokens:
        offsets.append((pos, pos + len(tok.text)))
        pos += len(tok.text) + (1 if tok.ws else 0)
    return offsets


class Corpus:
    """An immutable set of documents in canonical order, indexed by doc_id."""

    def __init__(self, docs: Iterable[Document]):
        ordered = canonical_doc_order(docs)
        by_id: dict[str, Document] = {}
        for doc in ordered:
            if doc.doc_id in by_id:
                raise DuplicateDocumentError(f"duplicate doc_id: {doc.doc_id!r}")
            if not doc.doc_id:
                raise ValidationError("empty doc_id")
            by_id[doc.doc_id] = doc
        self.documents: tuple[Document, ...] = tuple(ordered)
        self._by_id = by_id

    def __len__(self) -> int:
        return len(self.documents)

    def document(self, doc_id: str) -> Document:
        try:
            return self._by_id[doc_id]
        except KeyError:
            raise UnknownDocumentError(f"unknown doc_id: {doc_id!r}") from None

    def has_document(self, doc_id: str) -> bool:
        return doc_id in self._by_id

    def sentence(self, ref: SentenceRef) -> Sentence:
        doc = self.document(ref.doc_id)
        if not 0 <= ref.sent_index < len(doc.sentences):
            raise SpanOutOfRangeError(
                f"sentence index {ref.sent_index} out of range for doc {ref.doc_id!r}"
            )
        return doc.sentences[ref.sent_index]

    def all_sentence_refs(self) -> list[SentenceRef]:
        return [
            SentenceRef(doc.doc_id, sent.sent_index)
            for doc in self.documents
            for sent in doc.sentences
        ]

    def validate_mention_span(self, mention: Mention) -> Sentence:
        """Check the mention's span resolves; returns the sentence it lands in."""
        if not self.has_document(mention.sentence.doc_id):
            raise UnknownDocumentError(
                f"mention {mention.mention_id!r} references unknown doc "
                f"{mention.sentence.doc_id!r}"
            )
        sent = self.sentence(mention.sentence)
        n = len(sent.tokens)
        if not (0 <= mention.token_start <= mention.token_end < n):
            raise SpanOutOfRangeError(
                f"mention {mention.mention_id!r} span "
                f"[{mention.token_start}, {mention.token_end}] out of range "
                f"(sentence has {n} tokens)"
            )
        return sent


def mention_surface(corpus: Corpus, mention: Mention) -> str:
    """Exact source text of a mention's span (validates the span)."""
    sent = corpus.validate_mention_span(mention)
    return span_text(sent, mention.token_start, mention.token_end)


def _sentence_from_record(index: int, rec: dict, *, source: str, line: int) -> Sentence:
    tokens = tuple(
        Token(
            text=t["text"],
            ws=bool(t.get("ws", True)),
            pos=t.get("pos", "X"),
            ner=t.get("ner") or NER_NONE,
        )
        for t in rec["tokens"]
    )
    if not tokens:
        raise ValidationError(
            f"sentence {index} has no tokens", source=source, line=line
        )
    text = rec["text"]
    rebuilt = join_tokens(tokens)
    if rebuilt != text:
        raise TokenizationMismatchError(
            f"sentence {index}: tokens rebuild {rebuilt!r} but text is {text!r}",
            source=source,
            line=line,
        )
    return Sentence(sent_index=index, text=text, tokens=tokens)


def document_from_record(rec: dict, *, source: str = "<record>", line: int = 0) -> Document:
    sentences = tuple(
        _sentence_from_record(i, s, source=source, line=line)
        for i, s in enumerate(rec.get("sentences", []))
    )
    return Document(
        doc_id=rec["doc_id"], title=rec.get("title", ""), sentences=sentences
    )


def corpus_from_records(records: Iterable[dict], *, source: str = "<records>") -> Corpus:
    docs = [document_from_record(rec, source=source) for rec in records]
    try:
        return Corpus(docs)
    except ValidationError as exc:
        raise type(exc)(str(exc), source=source) from None


def load_corpus(path: str | Path) -> Corpus:
    """Load documents.jsonl: one document record per line, UTF-8."""
    path = Path(path)
    docs = []
    with path.open("r", encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            raw = raw.strip()
            if not raw:
                continue
            try:
                rec = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise ValidationError(
                    f"invalid JSON: {exc}", source=str(path), line=line_no
                ) from None
            docs.append(document_from_record(rec, source=str(path), line=line_no))
    try:
        return Corpus(docs)
    except ValidationError as exc:
        raise type(exc)(str(exc), source=str(path)) from None


def corpus_records(corpus: Corpus) -> list[dict]:
    """Documents as plain records, ready for JSON serialization."""
    out = []
    for doc in corpus.documents:
        out.append(
            {
                "doc_id": doc.doc_id,
                "title": doc.title,
                "sentences": [
                    {
                        "text": sent.text,
                        "tokens": [
                            {"text": t.text, "ws": t.ws, "pos": t.pos, "ner": t.ner}
                            for t in sent.tokens
                        ],
                    }
                    for sent in doc.sentences
                ],
            }
        )
    return out


def save_corpus(corpus: Corpus, path: str | Path) -> None:
    """Write documents.jsonl in canonical document order."""
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        for rec in corpus_records(corpus):
            fh.write(json.dumps(rec, ensure_ascii=False) + "\n")
