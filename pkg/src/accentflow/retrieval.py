"""Retrieval-augmented accent prompting: score filtered pool candidates
by accent confidence plus transcript/text similarity and pick the top
prompt.

The fused score of a candidate is

    r = w_c * C(speech_ref, accent) + w_s * cos(phi(transcript), phi(query))

with both weights defaulting to 1. Setting the similarity weight to 0
reduces selection to the pure accent-confidence argmax; the weights
exist for the ablation harness, not for tuning.

The similarity query defaults to the user's standard text; using the
adapted text instead is a configuration choice wired by the pipeline.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Optional, Sequence

from . import tfidf
from .backends.base import AccentScorer
from .core import AccentLabel, Metadata, UnitScore
from .errors import AccentRequired, EmptyCandidates
from .pool import PoolEntry

_FUSED_TOL = 1e-12


@dataclass(frozen=True)
class FusionWeights:
    """Weights on (accent confidence, text similarity)."""

    accent: float = 1.0
    similarity: float = 1.0

    @property
    def similarity_enabled(self) -> bool:
        return self.similarity != 0.0

    @property
    def accent_enabled(self) -> bool:
        return self.accent != 0.0


@dataclass(frozen=True)
class RankedPrompt:
    """One scored candidate: the entry, its two signal scores, and the
    fused rank score."""

    entry: PoolEntry
    accent_confidence: UnitScore
    text_similarity: float
    fused_score: float

    def __post_init__(self):
        if not 0.0 <= self.text_similarity <= 1.0:
            raise ValueError(f"similarity out of [0, 1]: {self.text_similarity}")

    def to_dict(self) -> dict:
        return {
            "entry_id": self.entry.id,
            "accent": str(self.entry.accent),
            "speech_ref": self.entry.speech_ref,
            "accent_confidence": float(self.accent_confidence),
            "text_similarity": self.text_similarity,
            "fused_score": self.fused_score,
        }


class CachingScorer:
    """Memoizes (speech_ref, accent) scores for one run.

    Purely a cost optimization: the scorer contract already promises
    determinism per pair within a run. Insertion is lock-protected so
    concurrent candidate scoring stays safe.
    """

    def __init__(self, inner: AccentScorer):
        self._inner = inner
        self._memo: dict[tuple[str, AccentLabel], float] = {}
        self._lock = threading.Lock()

    def score(self, speech_ref: str, accent: AccentLabel) -> float:
        key = (speech_ref, accent)
        with self._lock:
            if key in self._memo:
                return self._memo[key]
        value = self._inner.score(speech_ref, accent)
        with self._lock:
            self._memo.setdefault(key, value)
            return self._memo[key]


def rank_candidates(
    candidates: Sequence[PoolEntry],
    m: Metadata,
    query_text: str,
    scorer: AccentScorer,
    model: tfidf.TfIdfModel,
    weights: FusionWeights = FusionWeights(),
) -> list[RankedPrompt]:
    """Score every candidate and sort by fused score.

    Order: fused score descending, ties by entry id ascending, so the
    ranking is a pure function of the candidate set. Disabled terms are
    not computed (a disabled scorer backend is never called).
    """
    if not candidates:
        return []
    if weights.accent_enabled and m.accent is None:
        raise AccentRequired("accent scoring needs a target accent")
    query_vec = tfidf.embed(model, query_text)
    ranked = []
    for entry in candidates:
        confidence = UnitScore(
            scorer.score(entry.speech_ref, m.accent)
            if weights.accent_enabled
            else 0.0
        )
        similarity = (
            tfidf.cosine(tfidf.embed(model, entry.transcript), query_vec)
            if weights.similarity_enabled
            else 0.0
        )
        fused = weights.accent * confidence + weights.similarity * similarity
        ranked.append(
            RankedPrompt(
                entry=entry,
                accent_confidence=confidence,
                text_similarity=similarity,
                fused_score=fused,
            )
        )
    ranked.sort(key=lambda r: (-r.fused_score, r.entry.id))
    return ranked


def select_prompt(ranked: Sequence[RankedPrompt]) -> PoolEntry:
    """Head of the ranked list; EmptyCandidates when there is none."""
    if not ranked:
        raise EmptyCandidates("no ranked prompts to select from")
    return ranked[0].entry
