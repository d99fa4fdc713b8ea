"""Deterministic mock backends for offline runs and reproducible tests.

All pseudo-randomness derives from one documented mapping:

    unit_hash(seed, *parts) = int(sha256("{seed}|{p1}|{p2}|...")[:8],
                                  big-endian) / 2**64

which is uniform on [0, 1) and identical across platforms and
processes. Every mock score, pick, and artifact name is a pure function
of (seed, call inputs), so a fixed seed makes whole pipeline runs
byte-reproducible.

The per-accent particle lexicon below is a toy vocabulary for
exercising adaptation and judging offline; it makes no linguistic
claims about any accent.
"""

from __future__ import annotations

import hashlib
from typing import Optional, Sequence

from ..core import AccentLabel, Metadata
from ..tfidf import tokenize
from .base import SpeechArtifact

__all__ = [
    "unit_hash",
    "hash_pick_accent",
    "ACCENT_PARTICLES",
    "MockAdapter",
    "FailingAdapter",
    "MockJudge",
    "MockAccentScorer",
    "MockTts",
    "MockQualityScorer",
]


def unit_hash(seed: int, *parts: object) -> float:
    """Map (seed, parts) to a uniform float in [0, 1)."""
    payload = "|".join([str(seed), *(str(p) for p in parts)])
    digest = hashlib.sha256(payload.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") / 2**64


ACCENT_PARTICLES: dict[AccentLabel, tuple[str, ...]] = {
    AccentLabel.CA: ("eh", "buddy", "right"),
    AccentLabel.CN: ("ya", "ba", "ma"),
    AccentLabel.ES: ("vale", "venga", "hombre"),
    AccentLabel.GB: ("mate", "cheers", "brilliant", "lovely"),
    AccentLabel.IN: ("yaar", "na", "acha"),
    AccentLabel.JP: ("ne", "ano", "eto"),
    AccentLabel.KR: ("ne", "aigo", "jinjja"),
    AccentLabel.MY: ("lah", "kan", "alamak"),
    AccentLabel.PT: ("pois", "ne", "oi"),
    AccentLabel.RU: ("da", "nu", "davai"),
    AccentLabel.SG: ("lah", "leh", "lor", "can"),
    AccentLabel.US: ("totally", "awesome", "dude"),
}


class MockAdapter:
    """Injects one accent particle into the text.

    style="suffix" appends ", <particle>" before terminal punctuation;
    style="prefix" prepends "<Particle>, ". The particle index is
    unit_hash(seed, name, accent) over the accent's lexicon, so each
    (adapter, accent) pair localizes consistently across calls.
    """

    def __init__(self, name: str = "particle", seed: int = 0, style: str = "suffix"):
        if style not in ("suffix", "prefix"):
            raise ValueError(f"unknown adapter style: {style!r}")
        self._name = name
        self._seed = seed
        self._style = style

    @property
    def name(self) -> str:
        return self._name

    def adapt(self, text: str, metadata: Metadata) -> str:
        accent = metadata.accent
        if accent is None:
            return text
        particles = ACCENT_PARTICLES[accent]
        particle = particles[
            int(unit_hash(self._seed, self._name, accent) * len(particles))
        ]
        if self._style == "prefix":
            return f"{particle.capitalize()}, {text[0].lower()}{text[1:]}" if text else text
        stripped = text.rstrip()
        if stripped and stripped[-1] in ".!?":
            return f"{stripped[:-1]}, {particle}{stripped[-1]}"
        return f"{stripped}, {particle}"


class FailingAdapter:
    """Always raises; for exercising per-adapter failure handling."""

    def __init__(self, name: str = "failing"):
        self._name = name

    @property
    def name(self) -> str:
        return self._name

    def adapt(self, text: str, metadata: Metadata) -> str:
        raise RuntimeError("mock adapter failure")


class MockJudge:
    """Lexical-overlap judge over the particle lexicon.

    score = clamp(4.0 + 1.5*hits + 0.5*unit_hash(seed, "judge", text), 0, 10)
    where hits counts distinct lexicon particles of the target accent
    present in the candidate's tokens. The jitter term is strictly
    smaller than the per-hit step, so it never reorders candidates with
    different hit counts; it only perturbs exact ties deterministically.
    """

    def __init__(self, seed: int = 0, jitter: bool = True):
        self._seed = seed
        self._jitter = jitter

    def _score_one(self, text: str, metadata: Metadata) -> float:
        accent = metadata.accent
        hits = 0
        if accent is not None:
            tokens = set(tokenize(text))
            hits = sum(1 for p in ACCENT_PARTICLES[accent] if p in tokens)
        score = 4.0 + 1.5 * hits
        if self._jitter:
            score += 0.5 * unit_hash(self._seed, "judge", text)
        return min(10.0, max(0.0, score))

    def score(
        self, samples: Sequence[str], metadata: Metadata
    ) -> tuple[list[float], list[str]]:
        scores = [self._score_one(text, metadata) for text in samples]
        reasons = [
            f"lexical overlap with {metadata.accent} particles"
            if metadata.accent
            else "no target accent"
            for _ in samples
        ]
        return scores, reasons


class MockAccentScorer:
    """Seeded hash of (speech_ref, accent) mapped into [0, 1)."""

    def __init__(self, seed: int = 0):
        self._seed = seed

    def score(self, speech_ref: str, accent: AccentLabel) -> float:
        return unit_hash(self._seed, "accent-score", speech_ref, accent)


class MockTts:
    """Names a pseudo-artifact from a digest of all synthesis inputs;
    no audio is produced."""

    def __init__(self, seed: int = 0):
        self._seed = seed

    def synthesize(
        self,
        text: str,
        prompt_speech_ref: str,
        prompt_transcript: str,
        metadata: Metadata,
    ) -> SpeechArtifact:
        payload = "|".join(
            [str(self._seed), text, prompt_speech_ref, prompt_transcript,
             str(metadata.accent)]
        )
        digest = hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]
        return SpeechArtifact(
            audio_ref=f"mock://tts/{digest}.wav",
            format="wav",
            duration=round(0.06 * len(text), 2),
        )


class MockQualityScorer:
    """Constant score, or a seeded hash of the audio_ref in [1, 5]."""

    def __init__(self, seed: int = 0, constant: Optional[float] = None):
        self._seed = seed
        self._constant = constant

    def score(self, audio_ref: str) -> float:
        if self._constant is not None:
            return self._constant
        return 1.0 + 4.0 * unit_hash(self._seed, "quality", audio_ref)


def hash_pick_accent(seed: int, *parts: object) -> AccentLabel:
    """Deterministically pick one of the twelve labels; used by the
    ablation harness's mock recognition rule."""
    labels = list(AccentLabel)
    return labels[int(unit_hash(seed, "pick-accent", *parts) * len(labels))]
