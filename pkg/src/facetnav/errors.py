"""Exception types shared across the package.

Load-time validation raises on the first defect found, with enough
context (file, line, offending id) to fix that one record and retry.
"""

from __future__ import annotations


class FacetNavError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(FacetNavError):
    """A corpus or annotation file failed validation.

    ``source`` and ``line`` locate the offending record when the error
    originates from a file; both are None for in-memory validation.
    """

    def __init__(self, message: str, *, source: str | None = None, line: int | None = None):
        self.source = source
        self.line = line
        super().__init__(self._format(message))

    def _format(self, message: str) -> str:
        if self.source is None:
            return message
        loc = self.source if self.line is None else f"{self.source}:{self.line}"
        return f"{loc}: {message}"


class DuplicateDocumentError(ValidationError):
    """Two documents share a doc_id."""


class TokenizationMismatchError(ValidationError):
    """Joining a sentence's tokens does not reproduce its text."""


class UnknownDocumentError(ValidationError):
    """A mention references a doc_id absent from the corpus."""


class SpanOutOfRangeError(ValidationError):
    """A mention span falls outside its sentence's token range."""


class DuplicateMentionError(ValidationError):
    """A mention_id is defined twice with conflicting records."""


class UnknownMentionError(ValidationError):
    """A pair score references a mention_id never defined in the bundle."""


class ScoreOutOfRangeError(ValidationError):
    """A pair score lies outside [0, 1]."""


class SelfPairError(ValidationError):
    """A pair score links a mention to itself."""


class DuplicatePairError(ValidationError):
    """The same unordered mention pair is scored twice."""


class CrossDocumentClusterError(ValidationError):
    """A within-document cluster contains mentions from two documents."""


class SurfaceMismatchError(ValidationError):
    """Stored mention surfaces disagree with the corpus text."""


class UnknownValueError(FacetNavError):
    """A facet value_id (or label) does not exist in the topic."""

    def __init__(self, value: str):
        self.value = value
        super().__init__(f"unknown facet value: {value}")


class UnknownTopicError(FacetNavError):
    """A topic_id does not exist in the loaded data."""

    def __init__(self, topic_id: str):
        self.topic_id = topic_id
        super().__init__(f"unknown topic: {topic_id}")


class UnknownSessionError(FacetNavError):
    """A session token does not exist."""

    def __init__(self, session_id: str):
        self.session_id = session_id
        super().__init__(f"unknown session: {session_id}")
