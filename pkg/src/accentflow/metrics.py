"""Objective metrics and bias statistics over accent predictions.

All metrics consume flat PredictionRecord collections (true accent,
predicted accent, confidence) and are permutation-invariant. The record
file format is one JSON object per line:

    {"true_accent": "GB", "predicted_accent": "US", "confidence": 0.83}

Fairness rates are computed one-vs-rest per accent at a decision
threshold tau:

    FAR_g = #{true != g, predicted = g, confidence >= tau} / #{true != g}
    FRR_g = #{true = g, not(predicted = g and confidence >= tau)} / #{true = g}

and the fairness discrepancy score is 1 - (alpha * max-gap(FAR) +
beta * max-gap(FRR)) with alpha + beta = 1, so 1.0 means perfectly
equal error rates across accents. The bias test is a one-sided exact
binomial tail P(X >= k) under the null that a non-target accent is
predicted as the target at chance rate 1/12; it is evaluated in
log-space so it stays exact-to-1e-9 out to n around 1e5.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, Optional, Sequence

import numpy as np

from .backends.base import QualityScorer, SpeechArtifact
from .core import AccentLabel, UnitScore, parse_accent_code
from .errors import EmptyRecords, InsufficientGroups, MalformedRecord

logger = logging.getLogger(__name__)

#: Chance rate of hitting one specific accent out of twelve.
CHANCE_RATE = 1.0 / 12.0

QUALITY_MIN = 1.0
QUALITY_MAX = 5.0


@dataclass(frozen=True)
class PredictionRecord:
    """One classifier outcome: the unit of every fairness statistic."""

    true_accent: AccentLabel
    predicted_accent: AccentLabel
    confidence: UnitScore

    def to_dict(self) -> dict:
        return {
            "true_accent": str(self.true_accent),
            "predicted_accent": str(self.predicted_accent),
            "confidence": float(self.confidence),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PredictionRecord":
        return cls(
            true_accent=parse_accent_code(str(data["true_accent"])),
            predicted_accent=parse_accent_code(str(data["predicted_accent"])),
            confidence=UnitScore(data["confidence"]),
        )


def read_prediction_records(source: str | Path | IO[str]) -> list[PredictionRecord]:
    if isinstance(source, (str, Path)):
        lines: Iterable[str] = Path(source).read_text(encoding="utf-8").splitlines()
    else:
        lines = source
    records = []
    for line_number, line in enumerate(lines, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            records.append(PredictionRecord.from_dict(json.loads(line)))
        except Exception as exc:
            raise MalformedRecord(line_number, str(exc)) from None
    return records


def write_prediction_records(
    records: Iterable[PredictionRecord], path: str | Path
) -> None:
    with Path(path).open("w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record.to_dict(), sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# Accuracy and confusion
# ---------------------------------------------------------------------------


def accent_accuracy(records: Sequence[PredictionRecord]) -> float:
    """Percentage of records whose prediction matches the true accent."""
    if not records:
        raise EmptyRecords("accuracy over zero records")
    correct = sum(1 for r in records if r.true_accent is r.predicted_accent)
    return 100.0 * correct / len(records)


@dataclass(frozen=True)
class ConfusionResult:
    """Full 12x12 tally (rows = true accent, columns = predicted) plus
    per-accent true/false positive counts."""

    matrix: np.ndarray
    true_positives: dict[AccentLabel, int]
    false_positives: dict[AccentLabel, int]

    def to_dict(self) -> dict:
        labels = [str(a) for a in AccentLabel]
        return {
            "labels": labels,
            "matrix": self.matrix.tolist(),
            "true_positives": {str(a): v for a, v in self.true_positives.items()},
            "false_positives": {str(a): v for a, v in self.false_positives.items()},
        }


def confusion_distribution(records: Sequence[PredictionRecord]) -> ConfusionResult:
    """Tally predictions into the fixed 12x12 accent grid.

    TP(g) is the diagonal cell; FP(g) is everything else predicted as g
    (column sum minus diagonal). Row sums equal per-true-accent record
    counts by construction.
    """
    if not records:
        raise EmptyRecords("confusion over zero records")
    order = {label: i for i, label in enumerate(AccentLabel)}
    matrix = np.zeros((len(order), len(order)), dtype=np.int64)
    for record in records:
        matrix[order[record.true_accent], order[record.predicted_accent]] += 1
    tp = {label: int(matrix[i, i]) for label, i in order.items()}
    fp = {
        label: int(matrix[:, i].sum() - matrix[i, i]) for label, i in order.items()
    }
    return ConfusionResult(matrix=matrix, true_positives=tp, false_positives=fp)


# ---------------------------------------------------------------------------
# Fairness discrepancy
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupRates:
    """One-vs-rest rates for one accent at a threshold."""

    accent: AccentLabel
    far: float
    frr: float
    n_genuine: int  # records with true_accent == accent
    n_impostor: int  # records with true_accent != accent

    def to_dict(self) -> dict:
        return {
            "accent": str(self.accent),
            "far": self.far,
            "frr": self.frr,
            "n_genuine": self.n_genuine,
            "n_impostor": self.n_impostor,
        }


@dataclass(frozen=True)
class FdrResult:
    threshold: float
    alpha: float
    beta: float
    max_far_gap: float
    max_frr_gap: float
    fdr: float
    group_rates: tuple[GroupRates, ...]

    def to_dict(self) -> dict:
        return {
            "threshold": self.threshold,
            "alpha": self.alpha,
            "beta": self.beta,
            "max_far_gap": self.max_far_gap,
            "max_frr_gap": self.max_frr_gap,
            "fdr": self.fdr,
            "group_rates": [g.to_dict() for g in self.group_rates],
        }


def group_rates(
    records: Sequence[PredictionRecord], threshold: float
) -> list[GroupRates]:
    """Per-accent FAR/FRR over the accents present as true labels."""
    groups = sorted({r.true_accent for r in records}, key=lambda a: a.value)
    if len(groups) < 2:
        raise InsufficientGroups("fairness rates need at least two accent groups")
    out = []
    for g in groups:
        genuine = [r for r in records if r.true_accent is g]
        impostor = [r for r in records if r.true_accent is not g]
        false_alarms = sum(
            1
            for r in impostor
            if r.predicted_accent is g and r.confidence >= threshold
        )
        false_rejects = sum(
            1
            for r in genuine
            if not (r.predicted_accent is g and r.confidence >= threshold)
        )
        out.append(
            GroupRates(
                accent=g,
                far=false_alarms / len(impostor),
                frr=false_rejects / len(genuine),
                n_genuine=len(genuine),
                n_impostor=len(impostor),
            )
        )
    return out


def fdr(
    records: Sequence[PredictionRecord],
    threshold: float = 0.5,
    alpha: float = 0.5,
    beta: float = 0.5,
) -> FdrResult:
    """Fairness discrepancy at a threshold; 1.0 is perfectly fair.

    Gaps are the maximum pairwise absolute rate differences across
    groups (equivalently max minus min).
    """
    if alpha < 0 or beta < 0 or abs(alpha + beta - 1.0) > 1e-12:
        raise ValueError("alpha and beta must be nonnegative and sum to 1")
    rates = group_rates(records, threshold)
    fars = [g.far for g in rates]
    frrs = [g.frr for g in rates]
    max_far_gap = max(fars) - min(fars)
    max_frr_gap = max(frrs) - min(frrs)
    value = 1.0 - (alpha * max_far_gap + beta * max_frr_gap)
    return FdrResult(
        threshold=threshold,
        alpha=alpha,
        beta=beta,
        max_far_gap=max_far_gap,
        max_frr_gap=max_frr_gap,
        fdr=value,
        group_rates=tuple(rates),
    )


# ---------------------------------------------------------------------------
# Exact binomial bias test
# ---------------------------------------------------------------------------


def binomial_tail(n: int, k: int, p0: float) -> float:
    """One-sided exact tail P(X >= k) for X ~ Binomial(n, p0).

    Evaluated as a log-space sum of the k..n probability mass terms
    (lgamma binomial coefficients plus a max-shifted exponential sum),
    which avoids underflow for n up to about 1e5. No normal
    approximation anywhere.
    """
    if n < 0 or k < 0 or k > n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    if not 0.0 < p0 < 1.0:
        raise ValueError(f"p0 must be in (0, 1), got {p0}")
    if k == 0:
        return 1.0
    log_p = math.log(p0)
    log_q = math.log1p(-p0)
    log_terms = [
        math.lgamma(n + 1)
        - math.lgamma(i + 1)
        - math.lgamma(n - i + 1)
        + i * log_p
        + (n - i) * log_q
        for i in range(k, n + 1)
    ]
    peak = max(log_terms)
    total = sum(math.exp(t - peak) for t in log_terms)
    return min(1.0, math.exp(peak + math.log(total)))


@dataclass(frozen=True)
class BinomialTestResult:
    """Bias test outcome for one true-accent group against one dominant
    target accent."""

    group: AccentLabel
    target: AccentLabel
    n: int
    k: int
    p0: float
    p_value: float

    def to_dict(self) -> dict:
        return {
            "group": str(self.group),
            "target": str(self.target),
            "n": self.n,
            "k": self.k,
            "p0": self.p0,
            "p_value": self.p_value,
        }


#: The dominant accents whose over-prediction the bias test probes.
BIAS_TARGETS = (AccentLabel.US, AccentLabel.CA)


def binomial_bias_test(
    records: Sequence[PredictionRecord],
    target: AccentLabel,
    p0: float = CHANCE_RATE,
) -> list[BinomialTestResult]:
    """Test each non-target true-accent group for over-prediction as
    the target accent.

    For group g: n = records with true accent g, k = those predicted as
    the target; a small p-value rejects the chance-rate null and flags
    bias toward the target. Groups without records are skipped with a
    log note rather than failing.
    """
    if target not in BIAS_TARGETS:
        raise ValueError(f"bias target must be one of {BIAS_TARGETS}, got {target}")
    if not records:
        raise EmptyRecords("bias test over zero records")
    results = []
    for group in AccentLabel:
        if group in BIAS_TARGETS:
            continue
        members = [r for r in records if r.true_accent is group]
        if not members:
            logger.info("bias test: no records for group %s, skipped", group)
            continue
        k = sum(1 for r in members if r.predicted_accent is target)
        results.append(
            BinomialTestResult(
                group=group,
                target=target,
                n=len(members),
                k=k,
                p0=p0,
                p_value=binomial_tail(len(members), k, p0),
            )
        )
    return results


# ---------------------------------------------------------------------------
# Quality scoring
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QualityResult:
    scores: tuple[float, ...]
    per_accent_mean: dict[AccentLabel, float]

    def to_dict(self) -> dict:
        return {
            "scores": list(self.scores),
            "per_accent_mean": {
                str(a): v
                for a, v in sorted(self.per_accent_mean.items(), key=lambda kv: kv[0].value)
            },
        }


def quality_scores(
    items: Sequence[tuple[SpeechArtifact | str, AccentLabel]],
    scorer: QualityScorer,
) -> QualityResult:
    """Score each artifact on the 1-5 scale and average per accent.

    Out-of-range scorer outputs are clamped into [1, 5] with a warning;
    the scorer itself is pluggable and treated as a black box.
    """
    scores: list[float] = []
    grouped: dict[AccentLabel, list[float]] = {}
    for artifact, accent in items:
        audio_ref = artifact.audio_ref if isinstance(artifact, SpeechArtifact) else artifact
        value = float(scorer.score(audio_ref))
        if value < QUALITY_MIN or value > QUALITY_MAX:
            logger.warning(
                "quality score %.3f for %s outside [1, 5]; clamped", value, audio_ref
            )
            value = min(QUALITY_MAX, max(QUALITY_MIN, value))
        scores.append(value)
        grouped.setdefault(accent, []).append(value)
    per_accent = {a: sum(v) / len(v) for a, v in grouped.items()}
    return QualityResult(scores=tuple(scores), per_accent_mean=per_accent)
