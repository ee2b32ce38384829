import json
from pathlib import Path

import pytest

from facetnav.index import build_topic

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def topic_dir() -> Path:
    return FIXTURES / "topic_toy"


@pytest.fixture(scope="session")
def expected_dir() -> Path:
    return FIXTURES / "expected"


@pytest.fixture(scope="session")
def toy_topic(topic_dir):
    return build_topic(topic_dir)


@pytest.fixture(scope="session")
def by_label(toy_topic):
    return {v.label: v for values in toy_topic.facets.values() for v in values}


@pytest.fixture(scope="session")
def expected_facets(expected_dir):
    with (expected_dir / "facets.json").open(encoding="utf-8") as fh:
        return json.load(fh)


@pytest.fixture(scope="session")
def expected_query_crash(expected_dir):
    with (expected_dir / "query_crash.json").open(encoding="utf-8") as fh:
        return json.load(fh)


@pytest.fixture(scope="session")
def expected_intersections(expected_dir):
    with (expected_dir / "intersections.json").open(encoding="utf-8") as fh:
        return json.load(fh)
