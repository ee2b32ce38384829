"""Faceted exploration and summarization over topical document sets.

The package turns precomputed coreference and alignment annotations into
three facets (concepts, entities, statements), supports sentence-set
intersection queries with dynamic facet refresh, and summarizes the
selected sentences through a pluggable backend with a deterministic
extractive fallback.
"""

from .corpus import Corpus, Document, Mention, Sentence, SentenceRef, Token, load_corpus
from .errors import FacetNavError, ValidationError
from .facets import (
    CONCEPTS,
    ENTITIES,
    STATEMENTS,
    ClusteringConfig,
    FacetValue,
    build_facets,
)
from .index import Topic, build_topic, load_index, write_index
from .ingest import AnnotationBundle, load_bundle, validate_surfaces

__version__ = "0.1.0"

__all__ = [
    "AnnotationBundle",
    "CONCEPTS",
    "ClusteringConfig",
    "Corpus",
    "Document",
    "ENTITIES",
    "FacetNavError",
    "FacetValue",
    "Mention",
    "STATEMENTS",
    "Sentence",
    "SentenceRef",
    "Token",
    "Topic",
    "ValidationError",
    "build_facets",
    "build_topic",
    "load_bundle",
    "load_corpus",
    "load_index",
    "validate_surfaces",
    "write_index",
    "__version__",
]
