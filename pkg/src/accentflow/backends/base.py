"""Backend contracts the pipeline binds per role.

Every role is pluggable: a deterministic in-process mock (see
accentflow.backends.mock) or a JSON-over-HTTP client (see
accentflow.backends.http) satisfying the same protocol. Wire payload
shapes are documented on each protocol and mirrored by the JSON schema
files under schemas/ at the repository root.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Protocol, Sequence, runtime_checkable

from ..core import AccentLabel, Metadata


@dataclass(frozen=True)
class SpeechArtifact:
    """A synthesized speech result: locator, container format, optional
    duration in seconds."""

    audio_ref: str
    format: str = "wav"
    duration: Optional[float] = None

    def __post_init__(self):
        if not self.audio_ref:
            raise ValueError("audio_ref must be non-empty")

    def to_dict(self) -> dict:
        return {
            "audio_ref": self.audio_ref,
            "format": self.format,
            "duration": self.duration,
        }


@runtime_checkable
class AdapterBackend(Protocol):
    """Dialect text localizer.

    Wire: request {text, metadata}; reply {text}.
    """

    @property
    def name(self) -> str: ...

    def adapt(self, text: str, metadata: Metadata) -> str: ...


@runtime_checkable
class JudgeBackend(Protocol):
    """Scores how well each candidate text fits the speaker metadata.

    All candidates are scored in one call so scores share a context.
    Wire: request {speaker_info, samples}; reply {score: [...],
    reason: [...]}, lists aligned with the samples by index.
    """

    def score(
        self, samples: Sequence[str], metadata: Metadata
    ) -> tuple[list[float], list[str]]: ...


@runtime_checkable
class AccentScorer(Protocol):
    """Confidence in [0, 1] that a speech sample carries an accent.

    Must be deterministic for a fixed (speech_ref, accent) pair within
    one run. Wire: request {speech_ref, accent}; reply {confidence}.
    """

    def score(self, speech_ref: str, accent: AccentLabel) -> float: ...


@runtime_checkable
class TtsBackend(Protocol):
    """Zero-shot synthesis steered by the selected text and prompt.

    Wire: request {text, prompt_speech_ref, prompt_transcript,
    metadata}; reply {audio_ref, format}.
    """

    def synthesize(
        self,
        text: str,
        prompt_speech_ref: str,
        prompt_transcript: str,
        metadata: Metadata,
    ) -> SpeechArtifact: ...


@runtime_checkable
class QualityScorer(Protocol):
    """Perceptual quality of generated audio on a 1-5 scale.

    Wire: request {audio_ref}; reply {score}.
    """

    def score(self, audio_ref: str) -> float: ...
