"""End-to-end orchestration: instruction -> metadata -> adapted text ->
retrieved prompt -> synthesized speech.

Every run produces a PipelineResult carrying the selected text, the
full prompt ranking, and an ordered structured trace. Runs are pure
with respect to their inputs (the pool and the input text are never
mutated) and byte-reproducible for a fixed config: the trace records
logical steps only, never wall-clock times.

When both ranking signals are disabled the run degrades to the baseline
system: no retrieval at all, synthesis conditioned on a designated
near-silent prompt reference.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

from . import tfidf
from .adaptation import CandidateText, generate_candidates, select_text
from .backends.base import SpeechArtifact
from .backends.mock import hash_pick_accent, unit_hash
from .config import RunConfig
from .core import Metadata, UnitScore
from .errors import (
    AccentFlowError,
    AccentRequired,
    NoPromptAvailable,
    SynthesisFailed,
)
from .metrics import PredictionRecord
from .parsing import parse
from .pool import FilterSpec, Pool, PoolEntry, filter_pool
from .retrieval import CachingScorer, RankedPrompt, rank_candidates, select_prompt


class PipelineTrace:
    """Ordered, numbered record of pipeline decisions.

    Carries no timestamps or host details so that identical runs emit
    identical traces. The .note signature matches AdaptationTrace, so
    the adaptation stage writes into the same stream.
    """

    def __init__(self):
        self.events: list[dict] = []

    def note(self, event: str, **detail) -> None:
        self.events.append({"step": len(self.events), "event": event, **detail})

    def to_list(self) -> list[dict]:
        return [dict(e) for e in self.events]


def filter_with_relaxation(
    pool: Pool,
    m: Metadata,
    spec: FilterSpec,
    drop_age: bool = True,
    drop_gender: bool = True,
    trace: Optional[PipelineTrace] = None,
) -> tuple[list[PoolEntry], tuple[str, ...]]:
    """Filter the pool, relaxing constraints only when the result is
    empty: age is dropped first, then gender. The accent constraint is
    never relaxed. Returns (entries, dropped-constraint names).

    Raises NoPromptAvailable when the ladder is exhausted.
    """
    attempts: list[tuple[FilterSpec, tuple[str, ...]]] = [(spec, ())]
    current, dropped = spec, ()
    if drop_age and current.use_age and not current.strict_accent_only:
        current = replace(current, use_age=False)
        dropped = dropped + ("age",)
        attempts.append((current, dropped))
    if drop_gender and current.use_gender and not current.strict_accent_only:
        current = replace(current, use_gender=False)
        dropped = dropped + ("gender",)
        attempts.append((current, dropped))

    for attempt_spec, attempt_dropped in attempts:
        entries = filter_pool(pool, m, attempt_spec)
        if trace is not None:
            trace.note(
                "pool_filtered",
                candidates=len(entries),
                dropped=list(attempt_dropped),
            )
        if entries:
            return entries, attempt_dropped
    raise NoPromptAvailable(
        f"no pool entry matches accent {m.accent} even after relaxation"
    )


@dataclass(frozen=True)
class PipelineResult:
    """Everything one run produced, in a JSON-stable shape."""

    instruction: str
    input_text: str
    metadata: Metadata
    candidates: tuple[CandidateText, ...]
    chosen_text: CandidateText
    ranked: tuple[RankedPrompt, ...]
    chosen_prompt: Optional[PoolEntry]
    prompt_speech_ref: str
    prompt_transcript: str
    relaxation_applied: tuple[str, ...]
    artifact: Optional[SpeechArtifact]
    trace: tuple[dict, ...]
    config_fingerprint: str
    seed: int

    def to_dict(self) -> dict:
        return {
            "instruction": self.instruction,
            "input_text": self.input_text,
            "metadata": self.metadata.to_dict(),
            "candidates": [c.to_dict() for c in self.candidates],
            "chosen_text": self.chosen_text.to_dict(),
            "ranked": [r.to_dict() for r in self.ranked],
            "chosen_prompt": self.chosen_prompt.to_dict() if self.chosen_prompt else None,
            "prompt_speech_ref": self.prompt_speech_ref,
            "prompt_transcript": self.prompt_transcript,
            "relaxation_applied": list(self.relaxation_applied),
            "artifact": self.artifact.to_dict() if self.artifact else None,
            "trace": [dict(e) for e in self.trace],
            "config_fingerprint": self.config_fingerprint,
            "seed": self.seed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"


def run_pipeline(
    instruction: str,
    text: str,
    pool: Pool,
    config: RunConfig,
    synthesize: Optional[bool] = None,
) -> PipelineResult:
    """Run the full two-signal pipeline for one (instruction, text) pair.

    Stages: parse -> defaults -> candidate generation -> judged text
    selection -> compatibility filter (with relaxation ladder) ->
    two-signal ranking -> prompt selection -> synthesis. Synthesis can
    be disabled (synthesize=False or config.synthesis=False); all other
    outputs are still produced.
    """
    do_synth = config.synthesis if synthesize is None else synthesize
    trace = PipelineTrace()

    m = parse(instruction, config.parser, config.defaults)
    trace.note("metadata_resolved", metadata=m.to_dict())

    candidates = generate_candidates(text, m, config.adapters, trace)
    if len(candidates) > 1:
        chosen_text, scored = select_text(candidates, config.judge, m, trace)
    else:
        # Only the standard text exists; an argmax over one candidate
        # needs no judge call.
        chosen_text, scored = candidates[0], candidates
        trace.note("judge_skipped", reason="single candidate")

    if config.baseline_mode:
        trace.note("baseline_prompt", speech_ref=config.silent_speech_ref)
        ranked: list[RankedPrompt] = []
        chosen_prompt: Optional[PoolEntry] = None
        prompt_speech_ref = config.silent_speech_ref
        prompt_transcript = ""
        dropped: tuple[str, ...] = ()
    else:
        entries, dropped = filter_with_relaxation(
            pool,
            m,
            config.filter_spec,
            drop_age=config.relaxation.drop_age,
            drop_gender=config.relaxation.drop_gender,
            trace=trace,
        )
        corpus = (
            [e.transcript for e in entries]
            if config.tfidf_fit_scope == "filtered"
            else pool.transcripts()
        )
        model = tfidf.fit(corpus)
        query_text = chosen_text.text if config.query_text_mode == "adapted" else text
        ranked = rank_candidates(
            entries,
            m,
            query_text,
            CachingScorer(config.scorer),
            model,
            config.fusion,
        )
        chosen_prompt = select_prompt(ranked)
        prompt_speech_ref = chosen_prompt.speech_ref
        prompt_transcript = chosen_prompt.transcript
        trace.note(
            "prompt_selected",
            entry_id=chosen_prompt.id,
            accent=str(chosen_prompt.accent),
            fused_score=ranked[0].fused_score,
            candidates_ranked=len(ranked),
        )

    artifact: Optional[SpeechArtifact] = None
    if do_synth:
        try:
            artifact = config.tts.synthesize(
                chosen_text.text, prompt_speech_ref, prompt_transcript, m
            )
        except AccentFlowError:
            raise
        except Exception as exc:
            raise SynthesisFailed(f"tts backend failed: {exc}") from exc
        trace.note("synthesized", audio_ref=artifact.audio_ref, format=artifact.format)
    else:
        trace.note("synthesis_skipped")

    return PipelineResult(
        instruction=instruction,
        input_text=text,
        metadata=m,
        candidates=tuple(scored),
        chosen_text=chosen_text,
        ranked=tuple(ranked),
        chosen_prompt=chosen_prompt,
        prompt_speech_ref=prompt_speech_ref,
        prompt_transcript=prompt_transcript,
        relaxation_applied=dropped,
        artifact=artifact,
        trace=tuple(trace.events),
        config_fingerprint=config.fingerprint(),
        seed=config.seed,
    )


# ---------------------------------------------------------------------------
# Ablation harness
# ---------------------------------------------------------------------------


def mock_recognize(result: PipelineResult, seed: int) -> PredictionRecord:
    """Stand-in recognizer used only by the offline ablation harness.

    There is no real accent classifier in this package, so ablation
    accuracy needs a deterministic proxy: a run that retrieved a prompt
    is credited with that prompt's accent (the compatibility filter
    guarantees it equals the target), while a baseline run draws a
    pseudo-random accent from the audio reference. Confidence comes
    from the same documented hash mapping as the other mocks.
    """
    if result.metadata.accent is None:
        raise AccentRequired("cannot grade a run with no target accent")
    key = result.artifact.audio_ref if result.artifact else result.chosen_text.text
    if result.chosen_prompt is not None:
        predicted = result.chosen_prompt.accent
    else:
        predicted = hash_pick_accent(seed, "recognize", key)
    return PredictionRecord(
        true_accent=result.metadata.accent,
        predicted_accent=predicted,
        confidence=UnitScore(unit_hash(seed, "recognize-confidence", key)),
    )


@dataclass(frozen=True)
class AblationRow:
    """One configuration of the three toggles under study."""

    name: str
    text_similarity: bool
    accent_score: bool
    adaptation: str | tuple[str, ...] = "max"  # "none" | "max" | adapter names

    @classmethod
    def from_dict(cls, data: dict) -> "AblationRow":
        adaptation = data.get("adaptation", "max")
        if isinstance(adaptation, list):
            adaptation = tuple(adaptation)
        return cls(
            name=str(data["name"]),
            text_similarity=bool(data["text_similarity"]),
            accent_score=bool(data["accent_score"]),
            adaptation=adaptation,
        )


#: The standard six-row study: every combination actually compared when
#: switching the two ranking signals and the adaptation stage on/off.
DEFAULT_ABLATION_ROWS = (
    AblationRow("baseline", text_similarity=False, accent_score=False, adaptation="none"),
    AblationRow("similarity_only", text_similarity=True, accent_score=False, adaptation="none"),
    AblationRow("accent_only", text_similarity=False, accent_score=True, adaptation="none"),
    AblationRow("fused", text_similarity=True, accent_score=True, adaptation="none"),
    AblationRow("adaptation_only", text_similarity=False, accent_score=False, adaptation="max"),
    AblationRow("full", text_similarity=True, accent_score=True, adaptation="max"),
)


@dataclass
class AblationRowResult:
    row: AblationRow
    runs: int = 0
    failures: list[dict] = field(default_factory=list)
    records: list[PredictionRecord] = field(default_factory=list)
    qualities: list[float] = field(default_factory=list)

    @property
    def accuracy(self) -> Optional[float]:
        if not self.records:
            return None
        correct = sum(
            1 for r in self.records if r.true_accent is r.predicted_accent
        )
        return 100.0 * correct / len(self.records)

    @property
    def mean_quality(self) -> Optional[float]:
        if not self.qualities:
            return None
        return sum(self.qualities) / len(self.qualities)

    def to_dict(self) -> dict:
        return {
            "name": self.row.name,
            "text_similarity": self.row.text_similarity,
            "accent_score": self.row.accent_score,
            "adaptation": list(self.row.adaptation)
            if isinstance(self.row.adaptation, tuple)
            else self.row.adaptation,
            "runs": self.runs,
            "failed": len(self.failures),
            "failures": list(self.failures),
            "accuracy": self.accuracy,
            "mean_quality": self.mean_quality,
        }


def run_ablation(
    base_config: RunConfig,
    pool: Pool,
    inputs: Sequence[tuple[str, str]],
    rows: Sequence[AblationRow] = DEFAULT_ABLATION_ROWS,
) -> list[AblationRowResult]:
    """Run every (row, input) combination and tabulate per-row accuracy
    and mean quality under the mock recognizer.

    A failing run is recorded on its row and never aborts the matrix;
    a row whose config cannot even be derived is reported with zero
    runs and one failure entry.
    """
    results = []
    for row in rows:
        row_result = AblationRowResult(row=row)
        try:
            config = base_config.with_ablation_row(
                text_similarity=row.text_similarity,
                accent_score=row.accent_score,
                adaptation=row.adaptation
                if isinstance(row.adaptation, str)
                else list(row.adaptation),
            )
        except AccentFlowError as exc:
            row_result.failures.append(
                {"input_index": None, "error": type(exc).__name__, "detail": str(exc)}
            )
            results.append(row_result)
            continue
        for index, (instruction, text) in enumerate(inputs):
            try:
                outcome = run_pipeline(instruction, text, pool, config)
                row_result.records.append(mock_recognize(outcome, config.seed))
                if outcome.artifact is not None:
                    row_result.qualities.append(
                        max(1.0, min(5.0, float(config.quality.score(outcome.artifact.audio_ref))))
                    )
                row_result.runs += 1
            except Exception as exc:
                row_result.failures.append(
                    {
                        "input_index": index,
                        "error": type(exc).__name__,
                        "detail": str(exc),
                    }
                )
        results.append(row_result)
    return results
