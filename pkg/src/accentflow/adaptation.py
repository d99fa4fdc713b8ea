"""Contextual text adaptation: generate localized candidates through
adapter backends and pick the best one by judge score.

The standard (user-provided) text is always candidate zero, so the
selection argmax runs over {standard} union {adapted}. Adapter output
must be ASCII-only and non-empty; violating candidates are dropped with
a recorded reason, never raised. Judge failure degrades selection to
the standard text rather than failing the pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .backends.base import AdapterBackend, JudgeBackend
from .core import JudgeScore, Metadata

STANDARD_SOURCE = "standard"


@dataclass(frozen=True)
class CandidateText:
    """A text variant: the standard input or one adapter's output,
    optionally carrying its judge score and reasoning."""

    source: str  # "standard" or "adapter:<name>"
    text: str
    score: Optional[JudgeScore] = None
    reason: Optional[str] = None

    def __post_init__(self):
        if not self.text:
            raise ValueError("candidate text must be non-empty")

    @property
    def is_standard(self) -> bool:
        return self.source == STANDARD_SOURCE

    def scored(self, score: float, reason: str = "") -> "CandidateText":
        return CandidateText(
            source=self.source,
            text=self.text,
            score=JudgeScore(score),
            reason=reason or None,
        )

    def to_dict(self) -> dict:
        return {
            "source": self.source,
            "text": self.text,
            "score": float(self.score) if self.score is not None else None,
            "reason": self.reason,
        }


@dataclass
class AdaptationTrace:
    """Per-adapter outcomes recorded during candidate generation and
    selection fallbacks."""

    events: list[dict] = field(default_factory=list)

    def note(self, event: str, **detail) -> None:
        self.events.append({"event": event, **detail})


def validate_adapted(text: str) -> list[str]:
    """Diagnostic check of adapter output: empty result and non-ASCII
    bytes are violations. Returns [] when the text is acceptable; no
    repair is attempted."""
    violations = []
    if not text:
        violations.append("empty output")
        return violations
    for offset, char in enumerate(text):
        if ord(char) > 127:
            violations.append(f"non-ASCII character {char!r} at offset {offset}")
    return violations


def generate_candidates(
    text: str,
    metadata: Metadata,
    adapters: Sequence[AdapterBackend],
    trace: Optional[AdaptationTrace] = None,
) -> list[CandidateText]:
    """Build the candidate list: standard text first, then one entry per
    adapter that produced valid output.

    Adapter exceptions and validation failures skip that candidate and
    are noted in the trace; they are never fatal.
    """
    if not text:
        raise ValueError("input text must be non-empty")
    trace = trace if trace is not None else AdaptationTrace()
    candidates = [CandidateText(source=STANDARD_SOURCE, text=text)]
    for adapter in adapters:
        try:
            adapted = adapter.adapt(text, metadata)
        except Exception as exc:
            trace.note("adapter_failed", adapter=adapter.name, error=str(exc))
            continue
        violations = validate_adapted(adapted)
        if violations:
            trace.note(
                "candidate_dropped", adapter=adapter.name, violations=violations
            )
            continue
        candidates.append(CandidateText(source=f"adapter:{adapter.name}", text=adapted))
    return candidates


def select_text(
    candidates: Sequence[CandidateText],
    judge: JudgeBackend,
    metadata: Metadata,
    trace: Optional[AdaptationTrace] = None,
) -> tuple[CandidateText, list[CandidateText]]:
    """Score all candidates in a single judge call and return the argmax
    plus the full scored list.

    Ties prefer the standard candidate, then earlier candidate order.
    If the judge is unreachable or replies out of contract, selection
    falls back to the standard candidate (scores stay unset) and the
    trace records the fallback.
    """
    if not candidates:
        raise ValueError("candidate list must be non-empty")
    if not any(c.is_standard for c in candidates):
        raise ValueError("standard candidate missing from the list")
    trace = trace if trace is not None else AdaptationTrace()

    try:
        scores, reasons = judge.score([c.text for c in candidates], metadata)
        if len(scores) != len(candidates):
            raise ValueError("judge returned a misaligned score list")
        scored = [
            c.scored(s, r) for c, s, r in zip(candidates, scores, reasons)
        ]
    except Exception as exc:  # unreachable/out-of-contract judge
        trace.note("judge_fallback", error=str(exc))
        fallback = next(c for c in candidates if c.is_standard)
        return fallback, list(candidates)

    best = None
    for candidate in scored:
        if best is None or candidate.score > best.score:
            best = candidate
        elif candidate.score == best.score and candidate.is_standard:
            best = candidate  # tie goes to standard text
    trace.note(
        "text_selected",
        source=best.source,
        score=float(best.score),
        scores={c.source: float(c.score) for c in scored},
    )
    return best, scored
