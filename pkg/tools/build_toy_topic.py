#!/usr/bin/env python3
"""Regenerates the bundled toy topic (tests/fixtures/topic_toy).

The fixture is a hand-designed six-document story about a harbor ferry
crash, sized so every pipeline rule fires at least once: a verbal-majority
event cluster, a same-label merge, an exactly-half-verbal cluster kept,
an at-threshold alignment edge dropped, short/singleton/verb-label
filter hits, mixed NER spans, and a known agglomerative merge order.
Expected outputs in tests/fixtures/expected were derived from these
tables by hand; regenerate with care.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

# (text, pos, ner) per token; ner omitted means none. The sentence-final
# period is its own token; whitespace flags are derived (no space before
# the period, single spaces elsewhere).
DOCS = {
    "apw01": (
        "Ferry crash shakes Riverside",
        [
            [
                ("Mayor", "PROPN", "PERSON"),
                ("Chen", "PROPN", "PERSON"),
                ("toured", "VERB"),
                ("the", "DET"),
                ("harbor", "NOUN"),
                ("after", "ADP"),
                ("the", "DET"),
                ("crash", "NOUN"),
                (".", "PUNCT"),
            ],
            [
                ("The", "DET"),
                ("Harbor", "PROPN", "ORGANIZATION"),
                ("Authority", "PROPN", "ORGANIZATION"),
                ("said", "VERB"),
                ("the", "DET"),
                ("ferry", "NOUN"),
                ("hit", "VERB"),
                ("a", "DET"),
                ("pier", "NOUN"),
                (".", "PUNCT"),
            ],
            [
                ("Chen", "PROPN", "PERSON"),
                ("warned", "VERB"),
                ("that", "SCONJ"),
                ("unemployment", "NOUN"),
                ("could", "AUX"),
                ("follow", "VERB"),
                ("the", "DET"),
                ("closure", "NOUN"),
                (".", "PUNCT"),
            ],
            [
                ("She", "PRON"),
                ("said", "VERB"),
                ("the", "DET"),
                ("authority", "NOUN"),
                ("would", "AUX"),
                ("fund", "VERB"),
                ("repairs", "NOUN"),
                (".", "PUNCT"),
            ],
        ],
    ),
    "apw02": (
        "Jobs fears after harbor closure",
        [
            [
                ("Joblessness", "NOUN"),
                ("worries", "NOUN"),
                ("grew", "VERB"),
                ("in", "ADP"),
                ("Riverside", "PROPN", "LOCATION"),
                ("this", "DET"),
                ("week", "NOUN"),
                (".", "PUNCT"),
            ],
            [
                ("Gamblers", "NOUN"),
                ("packed", "VERB"),
                ("the", "DET"),
                ("casino", "NOUN"),
                ("floor", "NOUN"),
                ("near", "ADP"),
                ("the", "DET"),
                ("casino", "NOUN"),
                ("gate", "NOUN"),
                (".", "PUNCT"),
            ],
            [
                ("The", "DET"),
                ("crash", "NOUN"),
                ("forced", "VERB"),
                ("the", "DET"),
                ("city", "NOUN"),
                ("to", "PART"),
                ("shut", "VERB"),
                ("the", "DET"),
                ("harbor", "NOUN"),
                (".", "PUNCT"),
            ],
            [
                ("Unemployment", "NOUN"),
                ("in", "ADP"),
                ("the", "DET"),
                ("city", "NOUN"),
                ("rose", "VERB"),
                ("last", "ADJ"),
                ("month", "NOUN"),
                (".", "PUNCT"),
            ],
        ],
    ),
    "nyt01": (
        "Authority faces scrutiny",
        [
            [
                ("Chen", "PROPN", "PERSON"),
                ("blamed", "VERB"),
                ("the", "DET"),
                ("pier", "NOUN"),
                ("design", "NOUN"),
                ("for", "ADP"),
                ("the", "DET"),
                ("disaster", "NOUN"),
                (".", "PUNCT"),
            ],
            [
                ("The", "DET"),
                ("crash", "NOUN"),
                ("injured", "VERB"),
                ("twelve", "NUM"),
                ("passengers", "NOUN"),
                ("on", "ADP"),
                ("the", "DET"),
                ("ferry", "NOUN"),
                (".", "PUNCT"),
            ],
            [
                ("A", "DET"),
                ("lawsuit", "NOUN"),
                ("against", "ADP"),
                ("the", "DET"),
                ("operator", "NOUN"),
                ("was", "AUX"),
                ("filed", "VERB"),
                ("on", "ADP"),
                ("Monday", "PROPN"),
                (".", "PUNCT"),
            ],
            [
                ("The", "DET"),
                ("Harbor", "PROPN", "ORGANIZATION"),
                ("Authority", "PROPN", "ORGANIZATION"),
                ("promised", "VERB"),
                ("the", "DET"),
                ("mayor", "NOUN"),
                ("a", "DET"),
                ("full", "ADJ"),
                ("review", "NOUN"),
                (".", "PUNCT"),
            ],
        ],
    ),
    "nyt02": (
        "Casino bets on recovery",
        [
            [
                ("The", "DET"),
                ("case", "NOUN"),
                ("could", "AUX"),
                ("reshape", "VERB"),
                ("how", "SCONJ"),
                ("the", "DET"),
                ("casino", "NOUN"),
                ("operates", "VERB"),
                (".", "PUNCT"),
            ],
            [
                ("Unemployment", "NOUN"),
                ("claims", "NOUN"),
                ("doubled", "VERB"),
                ("near", "ADP"),
                ("the", "DET"),
                ("waterfront", "NOUN"),
                (".", "PUNCT"),
            ],
            [
                ("Tourists", "NOUN"),
                ("still", "ADV"),
                ("visit", "VERB"),
                ("the", "DET"),
                ("casino", "NOUN"),
                ("despite", "ADP"),
                ("the", "DET"),
                ("closure", "NOUN"),
                (".", "PUNCT"),
            ],
            [
                ("It", "PRON"),
                ("employs", "VERB"),
                ("four", "NUM"),
                ("hundred", "NUM"),
                ("residents", "NOUN"),
                (".", "PUNCT"),
            ],
        ],
    ),
    "xin01": (
        "Accident prompts review",
        [
            [
                ("The", "DET"),
                ("accident", "NOUN"),
                ("prompted", "VERB"),
                ("new", "ADJ"),
                ("rules", "NOUN"),
                ("at", "ADP"),
                ("the", "DET"),
                ("harbor", "NOUN"),
                (".", "PUNCT"),
            ],
            [
                ("The", "DET"),
                ("lawsuit", "NOUN"),
                ("names", "VERB"),
                ("the", "DET"),
                ("ferry", "NOUN"),
                ("operator", "NOUN"),
                ("and", "CCONJ"),
                ("the", "DET"),
                ("city", "NOUN"),
                (".", "PUNCT"),
            ],
            [
                ("Riverside", "PROPN", "LOCATION"),
                ("officials", "NOUN"),
                ("visited", "VERB"),
                ("East", "PROPN"),
                ("Riverside", "PROPN", "LOCATION"),
                ("on", "ADP"),
                ("Friday", "PROPN"),
                (".", "PUNCT"),
            ],
            [
                ("Chen", "PROPN", "PERSON"),
                ("met", "VERB"),
                ("the", "DET"),
                ("operator", "NOUN"),
                ("to", "PART"),
                ("discuss", "VERB"),
                ("repairs", "NOUN"),
                (".", "PUNCT"),
            ],
        ],
    ),
    "xin02": (
        "Region counts the cost",
        [
            [
                ("Unemployment", "NOUN"),
                ("stayed", "VERB"),
                ("the", "DET"),
                ("main", "ADJ"),
                ("topic", "NOUN"),
                ("of", "ADP"),
                ("the", "DET"),
                ("rally", "NOUN"),
                (".", "PUNCT"),
            ],
            [
                ("Residents", "NOUN"),
                ("marched", "VERB"),
                ("for", "ADP"),
                ("harbor", "NOUN"),
                ("jobs", "NOUN"),
                ("on", "ADP"),
                ("Saturday", "PROPN"),
                (".", "PUNCT"),
            ],
            [
                ("Protesters", "NOUN"),
                ("marched", "VERB"),
                ("and", "CCONJ"),
                ("blocked", "VERB"),
                ("the", "DET"),
                ("bridge", "NOUN"),
                ("for", "ADP"),
                ("an", "DET"),
                ("hour", "NOUN"),
                (".", "PUNCT"),
            ],
            [
                ("The", "DET"),
                ("AP", "PROPN", "ORGANIZATION"),
                ("reported", "VERB"),
                ("that", "SCONJ"),
                ("talks", "NOUN"),
                ("stalled", "VERB"),
                (".", "PUNCT"),
            ],
            [
                ("An", "DET"),
                ("AP", "PROPN", "ORGANIZATION"),
                ("photographer", "NOUN"),
                ("saw", "VERB"),
                ("the", "DET"),
                ("protest", "NOUN"),
                ("near", "ADP"),
                ("the", "DET"),
                ("bridge", "NOUN"),
                (".", "PUNCT"),
            ],
        ],
    ),
}

# mention spans: mention_id -> (doc_id, sent_index, token_start, token_end)
EVENT_MENTIONS = {
    "apw01-v01": ("apw01", 0, 7, 7),  # crash
    "apw01-v02": ("apw01", 1, 3, 3),  # said
    "apw01-v03": ("apw01", 3, 1, 1),  # said
    "apw01-v04": ("apw01", 2, 3, 3),  # unemployment
    "apw02-v01": ("apw02", 2, 1, 1),  # crash
    "apw02-v02": ("apw02", 3, 0, 0),  # Unemployment
    "apw02-v03": ("apw02", 1, 3, 3),  # casino
    "apw02-v04": ("apw02", 1, 7, 7),  # casino
    "nyt01-v01": ("nyt01", 1, 1, 1),  # crash
    "nyt01-v02": ("nyt01", 2, 1, 1),  # lawsuit
    "nyt02-v01": ("nyt02", 1, 0, 0),  # Unemployment
    "nyt02-v02": ("nyt02", 0, 1, 1),  # case
    "xin01-v01": ("xin01", 0, 1, 1),  # accident
    "xin01-v02": ("xin01", 1, 1, 1),  # lawsuit
    "xin02-v01": ("xin02", 3, 4, 4),  # talks
    "xin02-v02": ("xin02", 0, 0, 0),  # Unemployment
    "xin02-v03": ("xin02", 1, 1, 1),  # marched
    "xin02-v04": ("xin02", 2, 1, 1),  # marched
    "xin02-v05": ("xin02", 4, 5, 5),  # protest
    "xin02-v06": ("xin02", 0, 7, 7),  # rally
}

EVENT_CLUSTERS = {
    "ev01": ["apw01-v01", "apw02-v01", "nyt01-v01", "xin01-v01"],
    "ev02": ["apw01-v02", "apw01-v03", "xin02-v01"],
    "ev03": ["apw01-v04", "apw02-v02"],
    "ev04": ["nyt02-v01", "xin02-v02"],
    "ev05": ["xin02-v03", "xin02-v04", "xin02-v05", "xin02-v06"],
    "ev06": ["apw02-v03", "apw02-v04"],
    "ev07": ["nyt01-v02", "nyt02-v02", "xin01-v02"],
}

ENTITY_MENTIONS = {
    "apw01-e01": ("apw01", 0, 0, 1),  # Mayor Chen
    "apw01-e02": ("apw01", 2, 0, 0),  # Chen
    "apw01-e03": ("apw01", 3, 0, 0),  # She
    "apw01-e04": ("apw01", 1, 1, 2),  # Harbor Authority
    "apw01-e05": ("apw01", 3, 3, 3),  # authority
    "apw02-e01": ("apw02", 0, 4, 4),  # Riverside
    "apw02-e02": ("apw02", 2, 4, 4),  # city
    "apw02-e03": ("apw02", 3, 3, 3),  # city
    "nyt01-e01": ("nyt01", 0, 0, 0),  # Chen
    "nyt01-e02": ("nyt01", 3, 5, 5),  # mayor
    "nyt01-e03": ("nyt01", 3, 1, 2),  # Harbor Authority
    "nyt01-e04": ("nyt01", 2, 4, 4),  # operator
    "nyt02-e01": ("nyt02", 0, 5, 6),  # the casino
    "nyt02-e02": ("nyt02", 2, 3, 4),  # the casino
    "nyt02-e03": ("nyt02", 3, 0, 0),  # It
    "xin01-e01": ("xin01", 2, 0, 0),  # Riverside
    "xin01-e02": ("xin01", 2, 3, 4),  # East Riverside
    "xin01-e03": ("xin01", 3, 0, 0),  # Chen
    "xin01-e04": ("xin01", 1, 4, 5),  # ferry operator
    "xin01-e05": ("xin01", 3, 3, 3),  # operator
    "xin01-e06": ("xin01", 2, 6, 6),  # Friday
    "xin02-e01": ("xin02", 3, 1, 1),  # AP
    "xin02-e02": ("xin02", 4, 1, 1),  # AP
}

ENTITY_WD_CLUSTERS = {
    "wd-apw01-1": ["apw01-e01", "apw01-e02", "apw01-e03"],
    "wd-apw01-2": ["apw01-e04", "apw01-e05"],
    "wd-apw02-1": ["apw02-e01"],
    "wd-apw02-2": ["apw02-e02", "apw02-e03"],
    "wd-nyt01-1": ["nyt01-e01", "nyt01-e02"],
    "wd-nyt01-2": ["nyt01-e03"],
    "wd-nyt01-3": ["nyt01-e04"],
    "wd-nyt02-1": ["nyt02-e01", "nyt02-e02", "nyt02-e03"],
    "wd-xin01-1": ["xin01-e01", "xin01-e02"],
    "wd-xin01-2": ["xin01-e03"],
    "wd-xin01-3": ["xin01-e04", "xin01-e05"],
    "wd-xin01-4": ["xin01-e06"],
    "wd-xin02-1": ["xin02-e01", "xin02-e02"],
}

ENTITY_CD_SCORES = [
    ("apw01-e01", "nyt01-e01", 0.9),
    ("apw01-e02", "nyt01-e01", 0.9),
    ("apw01-e03", "nyt01-e01", 0.8),
    ("apw01-e01", "nyt01-e02", 0.7),
    ("apw01-e02", "nyt01-e02", 0.7),
    ("apw01-e03", "nyt01-e02", 0.8),
    ("apw01-e02", "xin01-e03", 0.9),
    ("apw01-e01", "xin01-e03", 0.8),
    ("apw01-e03", "xin01-e03", 0.5),
    ("nyt01-e01", "xin01-e03", 0.9),
    ("nyt01-e02", "xin01-e03", 0.7),
    ("apw01-e04", "nyt01-e03", 0.9),
    ("apw01-e05", "nyt01-e03", 0.7),
    ("apw02-e01", "xin01-e01", 0.9),
    ("apw02-e01", "xin01-e02", 0.5),
    ("xin01-e04", "nyt01-e04", 0.8),
    ("xin01-e05", "nyt01-e04", 0.8),
    ("apw02-e02", "xin01-e01", 0.4),
    ("nyt02-e03", "apw01-e03", 0.3),
]

PROPOSITION_MENTIONS = {
    "apw01-p01": ("apw01", 1, 4, 8),  # the ferry hit a pier
    "nyt01-p01": ("nyt01", 1, 3, 7),  # twelve passengers on the ferry
    "nyt01-p02": ("nyt01", 2, 0, 4),  # A lawsuit against the operator
    "nyt02-p01": ("nyt02", 1, 0, 2),  # Unemployment claims doubled
    "nyt02-p02": ("nyt02", 2, 0, 4),  # Tourists still visit the casino
    "xin01-p01": ("xin01", 0, 3, 7),  # new rules at the harbor
    "xin01-p02": ("xin01", 1, 0, 5),  # The lawsuit names the ferry operator
    "xin02-p01": ("xin02", 0, 2, 7),  # the main topic of the rally
}

PROPOSITION_ALIGNMENTS = [
    ("apw01-p01", "nyt01-p01", 0.9),
    ("apw01-p01", "xin01-p01", 0.7),
    ("nyt01-p02", "xin01-p02", 0.5),  # at threshold: not an edge
    ("nyt02-p01", "xin02-p01", 0.8),
]

TOPIC_META = {
    "topic_id": "toy-harbor",
    "display_name": "Harbor crash and its aftermath",
}


def _sentence_record(tokens: list[tuple]) -> dict:
    out = []
    for i, tok in enumerate(tokens):
        text, pos = tok[0], tok[1]
        ner = tok[2] if len(tok) > 2 else "NONE"
        ws = i < len(tokens) - 1 and tokens[i + 1][0] != "."
        out.append({"text": text, "ws": ws, "pos": pos, "ner": ner})
    text = "".join(t["text"] + (" " if t["ws"] else "") for t in out)
    return {"text": text, "tokens": out}


def _surface(doc_id: str, sent: int, start: int, end: int) -> str:
    tokens = DOCS[doc_id][1][sent][start : end + 1]
    return " ".join(t[0] for t in tokens)


def _mention_record(mention_id: str, span: tuple) -> dict:
    doc_id, sent, start, end = span
    return {
        "mention_id": mention_id,
        "doc_id": doc_id,
        "sent_index": sent,
        "token_start": start,
        "token_end": end,
        "surface": _surface(doc_id, sent, start, end),
    }


def _write_jsonl(path: Path, records) -> None:
    with path.open("w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec, ensure_ascii=False) + "\n")


def main(out_dir: str) -> None:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    _write_jsonl(
        out / "documents.jsonl",
        (
            {
                "doc_id": doc_id,
                "title": title,
                "sentences": [_sentence_record(s) for s in sentences],
            }
            for doc_id, (title, sentences) in sorted(DOCS.items())
        ),
    )

    _write_jsonl(
        out / "event_clusters.jsonl",
        (
            {
                "cluster_id": cid,
                "mentions": [
                    _mention_record(m, EVENT_MENTIONS[m]) for m in members
                ],
            }
            for cid, members in EVENT_CLUSTERS.items()
        ),
    )

    _write_jsonl(
        out / "entity_wd_clusters.jsonl",
        (
            {
                "cluster_id": cid,
                "mentions": [
                    _mention_record(m, ENTITY_MENTIONS[m]) for m in members
                ],
            }
            for cid, members in ENTITY_WD_CLUSTERS.items()
        ),
    )

    _write_jsonl(
        out / "entity_cd_scores.jsonl",
        (
            {"mention_a": a, "mention_b": b, "score": s}
            for a, b, s in ENTITY_CD_SCORES
        ),
    )

    _write_jsonl(
        out / "propositions.jsonl",
        (
            _mention_record(m, span)
            for m, span in sorted(PROPOSITION_MENTIONS.items())
        ),
    )

    _write_jsonl(
        out / "proposition_alignments.jsonl",
        (
            {"mention_a": a, "mention_b": b, "score": s}
            for a, b, s in PROPOSITION_ALIGNMENTS
        ),
    )

    (out / "topic.json").write_text(
        json.dumps(TOPIC_META, indent=2, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )
    print(f"wrote toy topic to {out}")


if __name__ == "__main__":
    default = Path(__file__).resolve().parents[1] / "tests" / "fixtures" / "topic_toy"
    main(sys.argv[1] if len(sys.argv) > 1 else str(default))
