import json

import pytest

from facetnav.corpus import (
    Corpus,
    Document,
    SentenceRef,
    canonical_doc_order,
    corpus_records,
    join_tokens,
    load_corpus,
    mention_surface,
    save_corpus,
    span_text,
    token_char_offsets,
)
from facetnav.errors import (
    DuplicateDocumentError,
    SpanOutOfRangeError,
    TokenizationMismatchError,
    UnknownDocumentError,
)
from helpers import make_corpus, make_mention


class TestTextReconstruction:
    def test_tokens_rebuild_sentence_text(self, toy_topic):
        for doc in toy_topic.corpus.documents:
            for sent in doc.sentences:
                assert join_tokens(sent.tokens) == sent.text

    def test_span_text_strips_trailing_space(self):
        corpus = make_corpus({"d": [[("a", "DET"), ("pier", "NOUN")]]})
        sent = corpus.document("d").sentences[0]
        assert span_text(sent, 0, 0) == "a"
        assert span_text(sent, 0, 1) == "a pier"

    def test_char_offsets_locate_every_token(self, toy_topic):
        for doc in toy_topic.corpus.documents:
            for sent in doc.sentences:
                offsets = token_char_offsets(sent)
                for tok, (start, end) in zip(sent.tokens, offsets):
                    assert sent.text[start:end] == tok.text

    def test_no_space_before_final_period(self, toy_topic):
        sent = toy_topic.corpus.document("apw01").sentences[0]
        assert sent.text.endswith("crash.")


class TestDocumentOrdering:
    def test_byte_wise_order(self):
        docs = [
            Document(doc_id=d, title="", sentences=())
            for d in ["b", "B", "a10", "a2", "A"]
        ]
        ordered = [d.doc_id for d in canonical_doc_order(docs)]
        assert ordered == ["A", "B", "a10", "a2", "b"]

    def test_corpus_iterates_in_order(self, toy_topic):
        ids = [d.doc_id for d in toy_topic.corpus.documents]
        assert ids == sorted(ids, key=lambda d: d.encode("utf-8"))

    def test_duplicate_doc_id_rejected(self):
        doc = Document(doc_id="x", title="", sentences=())
        with pytest.raises(DuplicateDocumentError):
            Corpus([doc, doc])


class TestLookups:
    def test_unknown_document(self, toy_topic):
        with pytest.raises(UnknownDocumentError):
            toy_topic.corpus.document("nope")

    def test_sentence_index_out_of_range(self, toy_topic):
        with pytest.raises(SpanOutOfRangeError):
            toy_topic.corpus.sentence(SentenceRef("apw01", 99))

    def test_mention_surface_matches_span(self, toy_topic):
        corpus = toy_topic.corpus
        m = make_mention(corpus, "m1", "apw01", 0, 0, 1, "ENTITY")
        assert mention_surface(corpus, m) == "Mayor Chen"

    def test_mention_span_out_of_range(self, toy_topic):
        corpus = toy_topic.corpus
        m = make_mention(corpus, "m1", "apw01", 0, 0, 1, "ENTITY")
        bad = type(m)(
            mention_id="m2",
            sentence=m.sentence,
            token_start=5,
            token_end=99,
            surface="x",
            kind="ENTITY",
        )
        with pytest.raises(SpanOutOfRangeError):
            corpus.validate_mention_span(bad)

    def test_all_sentence_refs_count(self, toy_topic):
        refs = toy_topic.corpus.all_sentence_refs()
        assert len(refs) == 25
        assert len(set(refs)) == 25


class TestSerialization:
    def test_round_trip(self, toy_topic, tmp_path):
        out = tmp_path / "documents.jsonl"
        save_corpus(toy_topic.corpus, out)
        again = load_corpus(out)
        assert corpus_records(again) == corpus_records(toy_topic.corpus)

    def test_tokenization_mismatch_reports_line(self, tmp_path):
        rec = {
            "doc_id": "d1",
            "title": "",
            "sentences": [
                {
                    "text": "not what the tokens say",
                    "tokens": [{"text": "hello", "ws": False, "pos": "X"}],
                }
            ],
        }
        path = tmp_path / "documents.jsonl"
        path.write_text(json.dumps(rec) + "\n", encoding="utf-8")
        with pytest.raises(TokenizationMismatchError) as err:
            load_corpus(path)
        assert "line 1" in str(err.value) or ":1:" in str(err.value)

    def test_blank_lines_skipped(self, topic_dir, tmp_path):
        src = (topic_dir / "documents.jsonl").read_text(encoding="utf-8")
        path = tmp_path / "documents.jsonl"
        path.write_text("\n" + src + "\n\n", encoding="utf-8")
        assert len(load_corpus(path)) == 6
