#!/usr/bin/env python3
"""Replicate reference sentence-narrowing counts on a DUC 2006 topic.

The published reference behavior for the treaty-rights topic is:

    selection                  sentences
    ---------                  ---------
    treaties                   34
    treaties + New York        5
    treaties + Florida         1

DUC 2006 is license-restricted and not bundled here. Holders of a license
must first preprocess the topic into the topic-directory layout this
package ingests (documents.jsonl plus the five annotation files, produced
by their coreference / proposition-alignment models), then run:

    python3 tools/check_duc_counts.py /path/to/topic_dir

The script builds the index with default thresholds, applies the three
selections, and compares sentence counts against the reference values.
Exit status is 0 when all counts match, 1 otherwise. Counts depend on the
annotation models used for preprocessing, so mismatches indicate a
different model stack rather than a defect in the set algebra (which the
test suite pins independently on the bundled fixture).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from facetnav.errors import FacetNavError  # noqa: E402
from facetnav.explore import intersect  # noqa: E402
from facetnav.index import build_topic, load_index  # noqa: E402

REFERENCE = [
    (["treaties"], 34),
    (["treaties", "New York"], 5),
    (["treaties", "Florida"], 1),
]


def load(path: Path):
    if path.is_dir():
        return build_topic(path)
    return load_index(path)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "topic",
        type=Path,
        help="topic directory (annotation layout) or a built .fnidx index",
    )
    args = parser.parse_args()

    try:
        topic = load(args.topic)
    except FacetNavError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    failures = 0
    for labels, expected in REFERENCE:
        missing = [l for l in labels if topic.find_by_label(l) is None]
        if missing:
            print(
                f"  {' + '.join(labels):<28} SKIP (no facet value labeled "
                f"{', '.join(repr(m) for m in missing)})"
            )
            failures += 1
            continue
        values = [topic.find_by_label(l).value_id for l in labels]
        count = len(intersect(topic, values))
        status = "ok" if count == expected else f"MISMATCH (expected {expected})"
        if count != expected:
            failures += 1
        print(f"  {' + '.join(labels):<28} {count:>3} sentences  {status}")

    return 0 if failures == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
