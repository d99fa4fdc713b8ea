"""Shared domain vocabulary: accent/gender labels, the speaker metadata
schema, per-slot default policies, and bounded score types.

All types here are immutable values and safe to share across threads.
Accents are opaque categories; no phonetic modeling happens anywhere in
this package.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any, Mapping, Optional

from .errors import UnknownAccent

#: Sentinel used in wire payloads and manifests for an absent slot value.
UNSPECIFIED = "unspecified"


class AccentLabel(enum.Enum):
    """The twelve supported English accent categories.

    Declaration order is the canonical order (alphabetical by code) and
    is used for deterministic tie-breaking.
    """

    CA = "CA"
    CN = "CN"
    ES = "ES"
    GB = "GB"
    IN = "IN"
    JP = "JP"
    KR = "KR"
    MY = "MY"
    PT = "PT"
    RU = "RU"
    SG = "SG"
    US = "US"

    def __str__(self) -> str:
        return self.value


#: Canonical accent ordering, usable as a sort key.
ACCENT_ORDER = {label: i for i, label in enumerate(AccentLabel)}

#: Alternate spellings accepted on input and normalized to one label.
_ACCENT_ALIASES = {"IND": AccentLabel.IN}


def parse_accent_code(text: str) -> AccentLabel:
    """Parse an accent code token, case-insensitively.

    "IND" is accepted as an alias of IN; every other non-member token
    raises UnknownAccent.
    """
    token = text.strip().upper()
    if token in _ACCENT_ALIASES:
        return _ACCENT_ALIASES[token]
    try:
        return AccentLabel(token)
    except ValueError:
        raise UnknownAccent(text) from None


class GenderLabel(enum.Enum):
    """Speaker gender as used in pool metadata. M precedes F canonically."""

    M = "M"
    F = "F"

    def __str__(self) -> str:
        return self.value


GENDER_ORDER = {label: i for i, label in enumerate(GenderLabel)}


def parse_gender_code(text: str) -> GenderLabel:
    token = text.strip().upper()
    try:
        return GenderLabel(token)
    except ValueError:
        raise ValueError(f"unknown gender code: {text!r}") from None


AGE_MIN = 1
AGE_MAX = 120


@dataclass(frozen=True)
class AgeSpec:
    """An age constraint: an exact year count, an inclusive range, or
    unspecified.

    Bounds [1, 120] are a sanity envelope, not a dataset property.
    """

    kind: str = UNSPECIFIED  # "exact" | "range" | "unspecified"
    exact: Optional[int] = None
    lo: Optional[int] = None
    hi: Optional[int] = None

    def __post_init__(self):
        if self.kind == "exact":
            if self.exact is None or not AGE_MIN <= self.exact <= AGE_MAX:
                raise ValueError(f"exact age out of [1, 120]: {self.exact!r}")
        elif self.kind == "range":
            if (
                self.lo is None
                or self.hi is None
                or not AGE_MIN <= self.lo <= self.hi <= AGE_MAX
            ):
                raise ValueError(f"bad age range: [{self.lo!r}, {self.hi!r}]")
        elif self.kind != UNSPECIFIED:
            raise ValueError(f"bad age kind: {self.kind!r}")

    @classmethod
    def unspecified(cls) -> "AgeSpec":
        return cls()

    @classmethod
    def of(cls, years: int) -> "AgeSpec":
        return cls(kind="exact", exact=years)

    @classmethod
    def between(cls, lo: int, hi: int) -> "AgeSpec":
        return cls(kind="range", lo=lo, hi=hi)

    @property
    def is_specified(self) -> bool:
        return self.kind != UNSPECIFIED

    def admits(self, years: int) -> bool:
        """True when an exact speaker age satisfies this constraint.

        Unspecified admits everything; exact ages admit within the
        configured tolerance elsewhere (this method is the strict
        range/equality check only).
        """
        if self.kind == "exact":
            return years == self.exact
        if self.kind == "range":
            return self.lo <= years <= self.hi
        return True

    def to_wire(self) -> Any:
        """Wire form: integer for exact, 2-element list for a range, or
        the "unspecified" sentinel."""
        if self.kind == "exact":
            return self.exact
        if self.kind == "range":
            return [self.lo, self.hi]
        return UNSPECIFIED

    @classmethod
    def from_wire(cls, value: Any) -> "AgeSpec":
        if value is None or value == UNSPECIFIED:
            return cls.unspecified()
        if isinstance(value, bool):
            raise ValueError(f"bad age value: {value!r}")
        if isinstance(value, int):
            return cls.of(value)
        if isinstance(value, (list, tuple)) and len(value) == 2:
            lo, hi = value
            if isinstance(lo, int) and isinstance(hi, int):
                return cls.between(lo, hi)
        raise ValueError(f"bad age value: {value!r}")


#: Slot names of the metadata schema, in wire order.
METADATA_SLOTS = (
    "accent",
    "language",
    "age",
    "gender",
    "tone",
    "emotion",
    "additional_context",
)


@dataclass(frozen=True)
class Metadata:
    """Structured speaker metadata: the seven-slot schema every backend
    speaks.

    Tone, emotion and additional_context are free text by design; no
    closed vocabulary exists for them.
    """

    accent: Optional[AccentLabel] = None
    gender: Optional[GenderLabel] = None
    age: AgeSpec = field(default_factory=AgeSpec.unspecified)
    language: Optional[str] = None
    tone: Optional[str] = None
    emotion: Optional[str] = None
    additional_context: Optional[str] = None

    def is_specified(self, slot: str) -> bool:
        if slot == "age":
            return self.age.is_specified
        return getattr(self, slot) is not None

    def replace(self, **changes) -> "Metadata":
        values = {slot: getattr(self, slot) for slot in METADATA_SLOTS}
        values.update(changes)
        return Metadata(**values)

    def to_dict(self) -> dict:
        """Wire/manifest form; unspecified slots carry the sentinel."""
        return {
            "accent": str(self.accent) if self.accent else UNSPECIFIED,
            "language": self.language if self.language else UNSPECIFIED,
            "age": self.age.to_wire(),
            "gender": str(self.gender) if self.gender else UNSPECIFIED,
            "tone": self.tone if self.tone else UNSPECIFIED,
            "emotion": self.emotion if self.emotion else UNSPECIFIED,
            "additional_context": self.additional_context
            if self.additional_context
            else UNSPECIFIED,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "Metadata":
        """Parse the wire/manifest form.

        Unknown slot names are rejected; each value may be the
        "unspecified" sentinel.
        """
        unknown = set(data) - set(METADATA_SLOTS)
        if unknown:
            raise ValueError(f"unknown metadata slots: {sorted(unknown)}")

        def text_slot(name: str) -> Optional[str]:
            value = data.get(name)
            if value is None or value == UNSPECIFIED:
                return None
            if not isinstance(value, str):
                raise ValueError(f"slot {name!r} must be text, got {value!r}")
            return value

        accent_raw = data.get("accent")
        accent = None
        if accent_raw is not None and accent_raw != UNSPECIFIED:
            accent = parse_accent_code(str(accent_raw))
        gender_raw = data.get("gender")
        gender = None
        if gender_raw is not None and gender_raw != UNSPECIFIED:
            gender = parse_gender_code(str(gender_raw))
        return cls(
            accent=accent,
            gender=gender,
            age=AgeSpec.from_wire(data.get("age")),
            language=text_slot("language"),
            tone=text_slot("tone"),
            emotion=text_slot("emotion"),
            additional_context=text_slot("additional_context"),
        )


@dataclass(frozen=True)
class DefaultPolicy:
    """Per-slot fallback values applied when parsing leaves a slot
    unspecified.

    Every slot has exactly one entry; a None entry means "no default,
    leave unspecified". Which values to use is configuration, not a
    library constant.
    """

    accent: Optional[AccentLabel] = None
    gender: Optional[GenderLabel] = None
    age: AgeSpec = field(default_factory=AgeSpec.unspecified)
    language: Optional[str] = "EN"
    tone: Optional[str] = None
    emotion: Optional[str] = None
    additional_context: Optional[str] = None

    def default_for(self, slot: str):
        return getattr(self, slot)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "DefaultPolicy":
        """Override only the slots named in data; absent slots keep the
        class defaults. An explicit "unspecified" disables a default."""
        meta = Metadata.from_dict(data)
        return cls(**{slot: getattr(meta, slot) for slot in METADATA_SLOTS if slot in data})


class UnitScore(float):
    """A confidence score constrained to [0, 1]."""

    def __new__(cls, value: float) -> "UnitScore":
        value = float(value)
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"unit score out of [0, 1]: {value!r}")
        return super().__new__(cls, value)


class JudgeScore(float):
    """A judge score constrained to [0, 10]."""

    def __new__(cls, value: float) -> "JudgeScore":
        value = float(value)
        if not 0.0 <= value <= 10.0:
            raise ValueError(f"judge score out of [0, 10]: {value!r}")
        return super().__new__(cls, value)
