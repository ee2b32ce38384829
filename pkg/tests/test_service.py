import pytest
from fastapi.testclient import TestClient

from facetnav.config import ServiceConfig
from facetnav.service import QueryEngine, create_app


@pytest.fixture()
def client(toy_topic):
    # function scope: session/history tests must not leak into each other
    config = ServiceConfig(summarizer_url=None)
    engine = QueryEngine({toy_topic.topic_id: toy_topic}, config)
    with TestClient(create_app(engine)) as c:
        yield c


def select_ids(by_label, *labels):
    return [by_label[label].value_id for label in labels]


class TestTopics:
    def test_lists_loaded_topics(self, client):
        body = client.get("/api/topics").json()
        assert body == [
            {
                "topic_id": "toy-harbor",
                "display_name": "Harbor crash and its aftermath",
                "document_count": 6,
                "facet_counts": {"CONCEPTS": 3, "ENTITIES": 6, "STATEMENTS": 2},
            }
        ]


class TestQuery:
    def test_empty_selection_shows_everything_without_summary(self, client):
        r = client.post("/api/topics/toy-harbor/query", json={"selected": []})
        assert r.status_code == 200
        body = r.json()
        assert body["sentence_count"] == 25
        assert body["summary"] is None
        assert body["selected"] == []
        assert body["facets"]["totals"] == {
            "CONCEPTS": 3,
            "ENTITIES": 6,
            "STATEMENTS": 2,
        }
        assert body["session"]

    def test_crash_selection_matches_hand_derivation(
        self, client, by_label, expected_query_crash
    ):
        sel = select_ids(by_label, "crash")
        r = client.post("/api/topics/toy-harbor/query", json={"selected": sel})
        assert r.status_code == 200
        body = r.json()
        assert body["sentence_count"] == expected_query_crash["sentence_count"]
        assert body["summary"]["text"] == expected_query_crash["summary_text"]
        assert body["summary"]["sentences"] == expected_query_crash[
            "summary_sentences"
        ]
        assert body["summary"]["backend"] == "FALLBACK"
        got_refs = sorted(
            f"{r['doc_id']}:{r['sent_index']}"
            for r in body["summary"]["source_refs"]
        )
        assert got_refs == expected_query_crash["sentences"]
        for kind, want in expected_query_crash["facets"].items():
            got = [
                {
                    "label": row["label"],
                    "frequency": row["frequency"],
                    "selected": row["selected"],
                }
                for row in body["facets"][kind]
            ]
            assert got == want

    def test_selected_info_carries_facet_and_category(self, client, by_label):
        sel = select_ids(by_label, "Chen")
        body = client.post(
            "/api/topics/toy-harbor/query", json={"selected": sel}
        ).json()
        assert body["selected"] == [
            {
                "value_id": sel[0],
                "label": "Chen",
                "facet": "ENTITIES",
                "category": "PERSON",
            }
        ]

    def test_empty_intersection_yields_empty_summary(self, client, by_label):
        sel = select_ids(by_label, "the casino", "city")
        body = client.post(
            "/api/topics/toy-harbor/query", json={"selected": sel}
        ).json()
        assert body["sentence_count"] == 0
        assert body["summary"]["empty"] is True
        assert body["summary"]["text"] == ""

    def test_session_round_trip_and_history(self, client, by_label):
        first = client.post(
            "/api/topics/toy-harbor/query",
            json={"selected": select_ids(by_label, "crash")},
        ).json()
        token = first["session"]
        second = client.post(
            "/api/topics/toy-harbor/query",
            json={"selected": select_ids(by_label, "crash", "Chen"), "session": token},
        ).json()
        assert second["session"] == token
        hist = client.get(f"/api/sessions/{token}/history").json()
        assert [len(e["selected"]) for e in hist["entries"]] == [2, 1]
        assert hist["entries"][1]["summary_text"] == first["summary"]["text"]

    def test_repeated_sentences_flagged_across_queries(self, client, by_label):
        crash = select_ids(by_label, "crash")
        first = client.post(
            "/api/topics/toy-harbor/query", json={"selected": crash}
        ).json()
        assert all(f is False for f in first["summary"]["repeated_flags"])
        token = first["session"]
        again = client.post(
            "/api/topics/toy-harbor/query",
            json={"selected": crash, "session": token},
        ).json()
        assert again["summary"]["repeated_flags"] == [True] * len(
            again["summary"]["sentences"]
        )

    def test_fresh_session_has_no_repeats(self, client, by_label):
        crash = select_ids(by_label, "crash")
        client.post("/api/topics/toy-harbor/query", json={"selected": crash})
        body = client.post(
            "/api/topics/toy-harbor/query", json={"selected": crash}
        ).json()
        # no session passed: a new session, so nothing counts as repeated
        assert all(f is False for f in body["summary"]["repeated_flags"])

    def test_unknown_session_token_starts_fresh(self, client, by_label):
        body = client.post(
            "/api/topics/toy-harbor/query",
            json={"selected": select_ids(by_label, "crash"), "session": "stale"},
        ).json()
        assert body["session"] != "stale"

    def test_empty_selection_not_recorded_in_history(self, client):
        body = client.post(
            "/api/topics/toy-harbor/query", json={"selected": []}
        ).json()
        hist = client.get(f"/api/sessions/{body['session']}/history").json()
        assert hist["entries"] == []

    def test_unknown_topic_404(self, client):
        r = client.post("/api/topics/nope/query", json={"selected": []})
        assert r.status_code == 404
        assert "unknown topic" in r.json()["error"]

    def test_unknown_value_404(self, client):
        r = client.post("/api/topics/toy-harbor/query", json={"selected": ["X9"]})
        assert r.status_code == 404
        assert "unknown facet value" in r.json()["error"]

    def test_malformed_body_400(self, client):
        r = client.post(
            "/api/topics/toy-harbor/query",
            content=b"not json",
            headers={"Content-Type": "application/json"},
        )
        assert r.status_code == 400
        r = client.post("/api/topics/toy-harbor/query", json=[1, 2])
        assert r.status_code == 400

    def test_duplicate_selection_400(self, client, by_label):
        sel = select_ids(by_label, "crash") * 2
        r = client.post("/api/topics/toy-harbor/query", json={"selected": sel})
        assert r.status_code == 400

    def test_non_string_selection_400(self, client):
        r = client.post("/api/topics/toy-harbor/query", json={"selected": [3]})
        assert r.status_code == 400

    def test_non_string_session_400(self, client):
        r = client.post(
            "/api/topics/toy-harbor/query", json={"selected": [], "session": 7}
        )
        assert r.status_code == 400


class TestMentions:
    def test_forms_and_mentions(self, client, by_label):
        chen = by_label["Chen"].value_id
        body = client.get(f"/api/topics/toy-harbor/values/{chen}/mentions").json()
        assert body["label"] == "Chen"
        assert body["category"] == "PERSON"
        assert [(f["surface"], f["count"]) for f in body["forms"]] == [
            ("Chen", 3),
            ("mayor", 1),
            ("Mayor Chen", 1),
            ("She", 1),
        ]
        assert len(body["mentions"]) == body["frequency"] == 6
        first = body["mentions"][0]
        assert set(first) >= {"mention_id", "doc_id", "sent_index", "surface"}

    def test_unknown_value_404(self, client):
        r = client.get("/api/topics/toy-harbor/values/E999/mentions")
        assert r.status_code == 404


class TestSentences:
    def test_grouped_by_document_in_byte_order(self, client):
        r = client.get(
            "/api/topics/toy-harbor/sentences",
            params={"refs": "xin01:0,apw01:0,apw01:2,nyt01:1"},
        )
        assert r.status_code == 200
        groups = r.json()["groups"]
        assert [g["doc_id"] for g in groups] == ["apw01", "nyt01", "xin01"]
        assert [s["sent_index"] for s in groups[0]["sentences"]] == [0, 2]

    def test_highlight_spans_for_selection(self, client, by_label):
        crash = by_label["crash"].value_id
        r = client.get(
            "/api/topics/toy-harbor/sentences",
            params={"refs": "apw01:0", "selected": crash},
        )
        sent = r.json()["groups"][0]["sentences"][0]
        (span,) = sent["spans"]
        assert span["label"] == "crash"
        text = sent["text"]
        assert text[span["char_start"] : span["char_end"]] == "crash"

    def test_duplicate_refs_collapse(self, client):
        r = client.get(
            "/api/topics/toy-harbor/sentences",
            params={"refs": "apw01:0,apw01:0"},
        )
        assert len(r.json()["groups"][0]["sentences"]) == 1

    def test_bad_ref_syntax_400(self, client):
        for refs in ("apw01", "apw01:x", ":3"):
            r = client.get(
                "/api/topics/toy-harbor/sentences", params={"refs": refs}
            )
            assert r.status_code == 400, refs

    def test_out_of_range_ref_400(self, client):
        r = client.get(
            "/api/topics/toy-harbor/sentences", params={"refs": "apw01:99"}
        )
        assert r.status_code == 400

    def test_unknown_document_ref_400(self, client):
        r = client.get(
            "/api/topics/toy-harbor/sentences", params={"refs": "ghost:0"}
        )
        assert r.status_code == 400


class TestDocument:
    def test_full_document_with_flags(self, client):
        r = client.get(
            "/api/topics/toy-harbor/documents/apw01", params={"refs": "apw01:1"}
        )
        assert r.status_code == 200
        body = r.json()
        assert body["doc_id"] == "apw01"
        assert [s["flagged"] for s in body["sentences"]] == [
            False,
            True,
            False,
            False,
        ]

    def test_unknown_document_404(self, client):
        assert (
            client.get("/api/topics/toy-harbor/documents/ghost").status_code == 404
        )

    def test_foreign_ref_400(self, client):
        r = client.get(
            "/api/topics/toy-harbor/documents/apw01", params={"refs": "nyt01:0"}
        )
        assert r.status_code == 400

    def test_selection_spans_present(self, client, by_label):
        chen = by_label["Chen"].value_id
        r = client.get(
            "/api/topics/toy-harbor/documents/apw01", params={"selected": chen}
        )
        spans = [s["spans"] for s in r.json()["sentences"]]
        assert any(spans)
        flat = [sp for group in spans for sp in group]
        assert {sp["label"] for sp in flat} == {"Chen"}


class TestHistoryEndpoint:
    def test_unknown_session_404(self, client):
        assert client.get("/api/sessions/ghost/history").status_code == 404

    def test_entries_newest_first_with_backend(self, client, by_label):
        token = client.post(
            "/api/topics/toy-harbor/query",
            json={"selected": select_ids(by_label, "crash")},
        ).json()["session"]
        client.post(
            "/api/topics/toy-harbor/query",
            json={"selected": select_ids(by_label, "Chen"), "session": token},
        )
        entries = client.get(f"/api/sessions/{token}/history").json()["entries"]
        assert [e["selected"][0]["label"] for e in entries] == ["Chen", "crash"]
        assert all(e["backend"] == "FALLBACK" for e in entries)
        assert all("timestamp" in e and "sentence_refs" in e for e in entries)
