from .base import (
    AccentScorer,
    AdapterBackend,
    JudgeBackend,
    QualityScorer,
    SpeechArtifact,
    TtsBackend,
)
from .mock import (
    ACCENT_PARTICLES,
    FailingAdapter,
    MockAccentScorer,
    MockAdapter,
    MockJudge,
    MockQualityScorer,
    MockTts,
    unit_hash,
)

__all__ = [
    "AccentScorer",
    "AdapterBackend",
    "JudgeBackend",
    "QualityScorer",
    "SpeechArtifact",
    "TtsBackend",
    "ACCENT_PARTICLES",
    "FailingAdapter",
    "MockAccentScorer",
    "MockAdapter",
    "MockJudge",
    "MockQualityScorer",
    "MockTts",
    "unit_hash",
]
