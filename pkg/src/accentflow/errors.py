"""Exception hierarchy shared by every accentflow module."""

from __future__ import annotations


class AccentFlowError(Exception):
    """Base class for all library errors."""


class UnknownAccent(AccentFlowError):
    """An accent code outside the supported label set."""

    def __init__(self, code: str):
        super().__init__(f"unknown accent code: {code!r}")
        self.code = code


class EmptyInstruction(AccentFlowError):
    """Instruction text was empty after trimming."""


class BackendUnavailable(AccentFlowError):
    """A remote backend kept failing after the configured retries."""


class MalformedBackendReply(AccentFlowError):
    """A backend reply that violates its wire schema.

    Carries the offending payload so operators can inspect what the
    backend actually sent.
    """

    def __init__(self, reason: str, payload=None):
        super().__init__(f"malformed backend reply: {reason}")
        self.reason = reason
        self.payload = payload


class MalformedRecord(AccentFlowError):
    """A manifest line that fails validation."""

    def __init__(self, line_number: int, reason: str):
        super().__init__(f"manifest line {line_number}: {reason}")
        self.line_number = line_number
        self.reason = reason


class DuplicateId(AccentFlowError):
    """A pool entry id that appears more than once in a manifest."""

    def __init__(self, entry_id: str):
        super().__init__(f"duplicate pool entry id: {entry_id!r}")
        self.entry_id = entry_id


class EmptyCorpus(AccentFlowError):
    """TF-IDF fitting was attempted on an empty corpus."""


class AccentRequired(AccentFlowError):
    """Pool filtering needs a target accent but none was specified."""


class EmptyCandidates(AccentFlowError):
    """Prompt selection was attempted on an empty ranked list."""


class ScorerUnavailable(AccentFlowError):
    """The accent scorer kept failing after the configured retries."""


class JudgeUnavailable(AccentFlowError):
    """The judge backend kept failing after the configured retries."""


class NoPromptAvailable(AccentFlowError):
    """No pool entry matches the target accent even after relaxation."""


class SynthesisFailed(AccentFlowError):
    """The TTS backend failed; selection results remain valid."""


class EmptyRecords(AccentFlowError):
    """A metric was requested over an empty prediction-record set."""


class InsufficientGroups(AccentFlowError):
    """Fairness rates need at least two accent groups in the records."""


class InvalidConfig(AccentFlowError):
    """A run configuration that violates its schema."""
