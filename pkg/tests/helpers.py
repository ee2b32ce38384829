"""Shared builders for synthetic corpora and annotations in tests."""

from __future__ import annotations

from facetnav.corpus import Corpus, Document, Mention, Sentence, SentenceRef, Token
from facetnav.ingest import PairScore, RawCluster


def make_sentence(index: int, toks: list[tuple]) -> Sentence:
    """toks: (text, pos) or (text, pos, ner); single spaces between tokens."""
    tokens = []
    for i, tok in enumerate(toks):
        text, pos = tok[0], tok[1]
        ner = tok[2] if len(tok) > 2 else "NONE"
        tokens.append(Token(text=text, ws=i < len(toks) - 1, pos=pos, ner=ner))
    text = " ".join(t.text for t in tokens)
    return Sentence(sent_index=index, text=text, tokens=tuple(tokens))


def make_corpus(docs: dict[str, list[list[tuple]]]) -> Corpus:
    return Corpus(
        Document(
            doc_id=doc_id,
            title=doc_id,
            sentences=tuple(make_sentence(i, s) for i, s in enumerate(sentences)),
        )
        for doc_id, sentences in docs.items()
    )


def make_mention(
    corpus: Corpus,
    mention_id: str,
    doc_id: str,
    sent_index: int,
    token_start: int,
    token_end: int,
    kind: str = "EVENT",
) -> Mention:
    sent = corpus.document(doc_id).sentences[sent_index]
    surface = " ".join(t.text for t in sent.tokens[token_start : token_end + 1])
    return Mention(
        mention_id=mention_id,
        sentence=SentenceRef(doc_id, sent_index),
        token_start=token_start,
        token_end=token_end,
        surface=surface,
        kind=kind,
    )


def single_token_cluster_corpus(words: list[list[tuple[str, str]]]) -> Corpus:
    """One document per word list; each sentence is 'w0 w1 ...' of (text, pos)."""
    return make_corpus({"doc": [list(ws) for ws in words]})


def cluster_of(
    corpus: Corpus, cluster_id: str, kind: str, spans: list[tuple]
) -> RawCluster:
    """spans: (mention_id, doc_id, sent_index, token_start, token_end)."""
    mentions = tuple(
        make_mention(corpus, mid, d, s, a, b, kind) for mid, d, s, a, b in spans
    )
    return RawCluster(cluster_id=cluster_id, kind=kind, mentions=mentions)


def pair(a: str, b: str, score: float) -> PairScore:
    return PairScore(mention_a=a, mention_b=b, score=score)
