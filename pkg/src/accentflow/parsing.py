"""Free-form instruction parsing into structured speaker metadata.

A pluggable backend maps the raw instruction to a slot map in the wire
schema (keys: accent, language, age, gender, tone, emotion,
additional_context; age as integer or 2-element [lo, hi]; the
"unspecified" sentinel is allowed anywhere). A deterministic rule-based
backend ships in-package so the whole pipeline runs offline; remote
backends live in accentflow.backends.http.

Backend replies may carry a bare value per slot (treated as a point
mass) or a {value: weight} posterior; the predicted value is the argmax
with ties broken by canonical value ordering.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any, Mapping, Optional, Protocol, runtime_checkable

from .core import (
    ACCENT_ORDER,
    AGE_MAX,
    AGE_MIN,
    GENDER_ORDER,
    METADATA_SLOTS,
    UNSPECIFIED,
    AccentLabel,
    AgeSpec,
    DefaultPolicy,
    GenderLabel,
    Metadata,
    parse_accent_code,
    parse_gender_code,
)
from .errors import EmptyInstruction, MalformedBackendReply, UnknownAccent

_POSTERIOR_SUM_TOL = 1e-9


@dataclass(frozen=True)
class Instruction:
    """A free-form user instruction; must be non-empty after trimming."""

    text: str

    def __post_init__(self):
        if not self.text.strip():
            raise EmptyInstruction("instruction is empty")


@dataclass(frozen=True)
class SlotPosterior:
    """A normalized distribution over candidate values for one slot."""

    slot: str
    weights: Mapping[str, float]

    def __post_init__(self):
        if not self.weights:
            raise ValueError(f"empty posterior for slot {self.slot!r}")
        if any(w < 0 for w in self.weights.values()):
            raise ValueError(f"negative weight in posterior for {self.slot!r}")
        total = sum(self.weights.values())
        if abs(total - 1.0) > _POSTERIOR_SUM_TOL:
            raise ValueError(
                f"posterior for {self.slot!r} sums to {total!r}, expected 1"
            )

    @classmethod
    def from_weights(cls, slot: str, weights: Mapping[str, float]) -> "SlotPosterior":
        """Build from unnormalized nonnegative weights.

        Argmax selection is invariant under positive rescaling, so
        normalization here never changes the selected value.
        """
        total = sum(weights.values())
        if total <= 0 or any(w < 0 for w in weights.values()):
            raise ValueError(f"weights for {slot!r} must be nonnegative, sum > 0")
        return cls(slot=slot, weights={k: w / total for k, w in weights.items()})


def _canonical_rank(slot: str, value: str):
    """Sort key realizing the documented canonical value ordering:
    accent labels in declaration order, genders M then F, everything
    else lexicographic."""
    if slot == "accent":
        try:
            return (0, ACCENT_ORDER[parse_accent_code(value)])
        except Exception:
            return (1, value)
    if slot == "gender":
        try:
            return (0, GENDER_ORDER[parse_gender_code(value)])
        except Exception:
            return (1, value)
    return (0, value)


def select_slot(posterior: SlotPosterior) -> str:
    """Argmax value of a slot posterior.

    Ties break toward the canonically first value, so selection is
    stable across runs and platforms.
    """
    best = max(posterior.weights.values())
    tied = [v for v, w in posterior.weights.items() if w == best]
    return min(tied, key=lambda v: _canonical_rank(posterior.slot, v))


def apply_defaults(partial: Metadata, policy: DefaultPolicy) -> Metadata:
    """Fill unspecified slots from the policy; specified slots are
    untouched. Idempotent."""
    changes = {}
    for slot in METADATA_SLOTS:
        if not partial.is_specified(slot):
            default = policy.default_for(slot)
            if slot == "age":
                if default.is_specified:
                    changes[slot] = default
            elif default is not None:
                changes[slot] = default
    return partial.replace(**changes) if changes else partial


@runtime_checkable
class ParserBackend(Protocol):
    """Maps raw instruction text to a slot map in the wire schema."""

    def parse_instruction(self, text: str) -> Mapping[str, Any]: ...


# ---------------------------------------------------------------------------
# Rule-based backend
# ---------------------------------------------------------------------------

# Country / demonym / city keyword table. Bare "us" is deliberately
# absent: it collides with the pronoun after lowercasing.
_ACCENT_KEYWORDS: dict[AccentLabel, tuple[str, ...]] = {
    AccentLabel.CA: ("canada", "canadian", "toronto", "vancouver"),
    AccentLabel.CN: ("china", "chinese", "beijing", "shanghai"),
    AccentLabel.ES: ("spain", "spanish", "spaniard", "madrid", "barcelona"),
    AccentLabel.GB: ("british", "britain", "uk", "england", "london"),
    AccentLabel.IN: ("india", "indian", "mumbai", "delhi"),
    AccentLabel.JP: ("japan", "japanese", "tokyo", "osaka"),
    AccentLabel.KR: ("korea", "korean", "seoul"),
    AccentLabel.MY: ("malaysia", "malaysian", "kuala lumpur"),
    AccentLabel.PT: ("portugal", "portuguese", "lisbon", "porto"),
    AccentLabel.RU: ("russia", "russian", "moscow"),
    AccentLabel.SG: ("singapore", "singaporean"),
    AccentLabel.US: ("american", "america", "usa", "united states", "u.s."),
}

_MALE_RE = re.compile(r"\b(man|male|he|his|him|gentleman|boy)\b")
_FEMALE_RE = re.compile(r"\b(woman|female|she|her|lady|girl)\b")
_INT_RE = re.compile(r"\b(\d{1,3})\b")
_DECADES = {
    "teens": (13, 19),
    "twenties": (20, 29),
    "thirties": (30, 39),
    "forties": (40, 49),
    "fifties": (50, 59),
    "sixties": (60, 69),
    "seventies": (70, 79),
    "eighties": (80, 89),
    "nineties": (90, 99),
}
_DECADE_RE = re.compile(r"\b(" + "|".join(_DECADES) + r")\b")

_ACCENT_RES = {
    label: re.compile(
        r"\b(" + "|".join(re.escape(k) for k in keywords) + r")\b"
    )
    for label, keywords in _ACCENT_KEYWORDS.items()
}


class RuleBasedParser:
    """Deterministic keyword-grammar parser, the offline surrogate for a
    remote language-model backend.

    Lowercases the instruction, then matches accents via the keyword
    table (earliest match wins, canonical accent order on position
    ties), gender via pronoun/noun keywords, and age via the first
    integer token in [1, 120] or a decade phrase ("in her twenties" ->
    [20, 29]). Same input always yields the same slot map.
    """

    def parse_instruction(self, text: str) -> dict[str, Any]:
        lowered = text.lower()
        out: dict[str, Any] = {slot: UNSPECIFIED for slot in METADATA_SLOTS}

        hits: list[tuple[int, int, AccentLabel]] = []
        for label in AccentLabel:
            match = _ACCENT_RES[label].search(lowered)
            if match:
                hits.append((match.start(), ACCENT_ORDER[label], label))
        if hits:
            out["accent"] = str(min(hits)[2])

        male = _MALE_RE.search(lowered)
        female = _FEMALE_RE.search(lowered)
        if male and (not female or male.start() < female.start()):
            out["gender"] = "M"
        elif female:
            out["gender"] = "F"

        for match in _INT_RE.finditer(lowered):
            years = int(match.group(1))
            if AGE_MIN <= years <= AGE_MAX:
                out["age"] = years
                break
        if out["age"] == UNSPECIFIED:
            decade = _DECADE_RE.search(lowered)
            if decade:
                lo, hi = _DECADES[decade.group(1)]
                out["age"] = [lo, hi]

        return out


# ---------------------------------------------------------------------------
# Reply normalization
# ---------------------------------------------------------------------------


def _slot_value(slot: str, raw: Any) -> Any:
    """Resolve one wire slot: bare values pass through, mapping values
    are treated as posteriors and argmaxed."""
    if isinstance(raw, Mapping):
        try:
            posterior = SlotPosterior.from_weights(
                slot, {str(k): float(v) for k, v in raw.items()}
            )
        except (TypeError, ValueError) as exc:
            raise MalformedBackendReply(f"bad posterior for {slot!r}: {exc}", raw)
        return select_slot(posterior)
    return raw


def metadata_from_reply(reply: Mapping[str, Any]) -> Metadata:
    """Validate a parser-backend reply and build partial Metadata.

    Schema violations (unknown slots, out-of-domain values) raise
    MalformedBackendReply carrying the offending payload.
    """
    if not isinstance(reply, Mapping):
        raise MalformedBackendReply("reply is not a map", reply)
    unknown = set(reply) - set(METADATA_SLOTS)
    if unknown:
        raise MalformedBackendReply(f"unknown slots: {sorted(unknown)}", dict(reply))
    resolved = {slot: _slot_value(slot, reply[slot]) for slot in reply}
    try:
        return Metadata.from_dict(resolved)
    except (ValueError, UnknownAccent) as exc:
        raise MalformedBackendReply(str(exc), dict(reply)) from None


def parse(
    instruction: Instruction | str,
    backend: ParserBackend,
    policy: Optional[DefaultPolicy] = None,
) -> Metadata:
    """Parse a free-form instruction into fully defaulted Metadata.

    The backend produces a (possibly partial) slot map; unspecified
    slots then fall back to the policy defaults. Backends raising
    BackendUnavailable propagate as-is.
    """
    if isinstance(instruction, str):
        instruction = Instruction(instruction)
    if policy is None:
        policy = DefaultPolicy()
    reply = backend.parse_instruction(instruction.text)
    partial = metadata_from_reply(reply)
    return apply_defaults(partial, policy)
