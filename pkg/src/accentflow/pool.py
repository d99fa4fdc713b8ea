"""The accent prompt pool: manifest ingestion, metadata filtering, and
per-accent statistics.

Manifest format: UTF-8, one JSON object per line with keys
id, accent, transcript, speech_ref, speaker_id, gender, age.

Speech audio is never opened here; speech_ref is an opaque locator so
the whole pool layer stays offline-testable. Desk-scale pools (tens of
thousands of utterances) are held fully in memory; the manifest is the
single persistence format.
"""

from __future__ import annotations

import hashlib
import io
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable, Iterator, Optional

from .core import (
    AGE_MAX,
    AGE_MIN,
    AccentLabel,
    GenderLabel,
    Metadata,
    parse_accent_code,
    parse_gender_code,
)
from .errors import AccentRequired, DuplicateId, MalformedRecord

MANIFEST_KEYS = ("id", "accent", "transcript", "speech_ref", "speaker_id", "gender", "age")

#: Attribute-tolerance applied when the target age is exact.
DEFAULT_AGE_TOLERANCE = 5


@dataclass(frozen=True)
class PoolEntry:
    """One prompt-speech record: accent label, transcript, and an opaque
    audio locator plus speaker attributes."""

    id: str
    accent: AccentLabel
    transcript: str
    speech_ref: str
    speaker_id: str
    gender: GenderLabel
    age: int

    def __post_init__(self):
        if not self.transcript:
            raise ValueError("transcript must be non-empty")
        if not AGE_MIN <= self.age <= AGE_MAX:
            raise ValueError(f"age out of [1, 120]: {self.age}")

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "accent": str(self.accent),
            "transcript": self.transcript,
            "speech_ref": self.speech_ref,
            "speaker_id": self.speaker_id,
            "gender": str(self.gender),
            "age": self.age,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PoolEntry":
        missing = [k for k in MANIFEST_KEYS if k not in data]
        if missing:
            raise ValueError(f"missing keys: {missing}")
        unknown = set(data) - set(MANIFEST_KEYS)
        if unknown:
            raise ValueError(f"unknown keys: {sorted(unknown)}")
        age = data["age"]
        if isinstance(age, bool) or not isinstance(age, int):
            raise ValueError(f"age must be an integer, got {age!r}")
        for key in ("id", "transcript", "speech_ref", "speaker_id"):
            if not isinstance(data[key], str) or not data[key]:
                raise ValueError(f"{key} must be non-empty text")
        return cls(
            id=data["id"],
            accent=parse_accent_code(str(data["accent"])),
            transcript=data["transcript"],
            speech_ref=data["speech_ref"],
            speaker_id=data["speaker_id"],
            gender=parse_gender_code(str(data["gender"])),
            age=age,
        )


@dataclass(frozen=True)
class Pool:
    """An immutable ingested pool plus its accent partition index."""

    entries: tuple[PoolEntry, ...]
    index: dict[AccentLabel, tuple[str, ...]] = field(default_factory=dict)

    def __post_init__(self):
        if not self.index:
            built: dict[AccentLabel, list[str]] = {}
            for entry in self.entries:
                built.setdefault(entry.accent, []).append(entry.id)
            object.__setattr__(
                self, "index", {a: tuple(ids) for a, ids in built.items()}
            )

    def __len__(self) -> int:
        return len(self.entries)

    def by_accent(self, accent: AccentLabel) -> list[PoolEntry]:
        wanted = set(self.index.get(accent, ()))
        return [e for e in self.entries if e.id in wanted]

    def transcripts(self) -> list[str]:
        return [e.transcript for e in self.entries]


def ingest_manifest(source: str | Path | IO[str] | Iterable[str]) -> Pool:
    """Read and validate a line-delimited manifest.

    Raises MalformedRecord with the 1-based line number on the first
    invalid line, DuplicateId on a repeated entry id.
    """
    if isinstance(source, (str, Path)):
        stream: Iterable[str] = Path(source).read_text(encoding="utf-8").splitlines()
    elif isinstance(source, io.IOBase):
        stream = source
    else:
        stream = source

    entries: list[PoolEntry] = []
    seen: set[str] = set()
    for line_number, line in enumerate(stream, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            data = json.loads(line)
        except json.JSONDecodeError as exc:
            raise MalformedRecord(line_number, f"invalid JSON: {exc.msg}") from None
        if not isinstance(data, dict):
            raise MalformedRecord(line_number, "record is not a JSON object")
        try:
            entry = PoolEntry.from_dict(data)
        except Exception as exc:
            raise MalformedRecord(line_number, str(exc)) from None
        if entry.id in seen:
            raise DuplicateId(entry.id)
        seen.add(entry.id)
        entries.append(entry)
    return Pool(entries=tuple(entries))


def write_manifest(entries: Iterable[PoolEntry], path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8") as fh:
        for entry in entries:
            fh.write(json.dumps(entry.to_dict(), sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# Filtering
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FilterSpec:
    """Which attributes participate in pool filtering.

    Accent always matches exactly and is never relaxed at this layer.
    strict_accent_only ignores gender and age entirely (the minimal
    reading of metadata compatibility is configuration-toggleable).
    """

    strict_accent_only: bool = False
    use_gender: bool = True
    use_age: bool = True
    age_tolerance: int = DEFAULT_AGE_TOLERANCE


def entry_matches(entry: PoolEntry, m: Metadata, spec: FilterSpec) -> bool:
    if entry.accent is not m.accent:
        return False
    if spec.strict_accent_only:
        return True
    if spec.use_gender and m.gender is not None and entry.gender is not m.gender:
        return False
    if spec.use_age and m.age.is_specified:
        if m.age.kind == "exact":
            if abs(entry.age - m.age.exact) > spec.age_tolerance:
                return False
        elif not (m.age.lo <= entry.age <= m.age.hi):
            return False
    return True


def filter_pool(
    pool: Pool, m: Metadata, spec: Optional[FilterSpec] = None
) -> list[PoolEntry]:
    """Select pool entries compatible with the target metadata.

    Accent must match exactly; gender matches when the target specifies
    it; an exact target age admits entries within the tolerance and a
    target range admits contained ages. Output preserves manifest
    order. An empty result is not an error here; the orchestrator owns
    the relaxation ladder.
    """
    if m.accent is None:
        raise AccentRequired("pool filtering needs a target accent")
    spec = spec or FilterSpec()
    return [entry for entry in pool.entries if entry_matches(entry, m, spec)]


# ---------------------------------------------------------------------------
# Statistics
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AccentStats:
    speakers: int = 0
    utterances: int = 0
    female: int = 0
    male: int = 0
    age_min: Optional[int] = None
    age_max: Optional[int] = None

    def to_dict(self) -> dict:
        return {
            "speakers": self.speakers,
            "utterances": self.utterances,
            "female": self.female,
            "male": self.male,
            "age_min": self.age_min,
            "age_max": self.age_max,
        }


@dataclass(frozen=True)
class PoolStats:
    """Per-accent speaker/utterance/gender counts and age extremes.

    per_accent holds only accents present in the pool; the rendered
    table always carries all twelve rows in canonical order, zeroed
    where the pool has no entries.
    """

    per_accent: dict[AccentLabel, AccentStats]

    def to_dict(self) -> dict:
        return {
            str(a): self.per_accent.get(a, AccentStats()).to_dict()
            for a in AccentLabel
        }


def pool_stats(pool: Pool) -> PoolStats:
    """Aggregate counts per accent.

    Speakers are distinct speaker_ids; a speaker's gender is taken from
    their first entry in manifest order. Totals are invariant under
    entry reordering (first-seen gender assumes per-speaker manifests
    are internally consistent, which ingestion-grade data is).
    """
    per_accent: dict[AccentLabel, AccentStats] = {}
    speakers: dict[AccentLabel, dict[str, GenderLabel]] = {}
    utterances: dict[AccentLabel, int] = {}
    ages: dict[AccentLabel, tuple[int, int]] = {}
    for entry in pool.entries:
        a = entry.accent
        speakers.setdefault(a, {}).setdefault(entry.speaker_id, entry.gender)
        utterances[a] = utterances.get(a, 0) + 1
        lo, hi = ages.get(a, (entry.age, entry.age))
        ages[a] = (min(lo, entry.age), max(hi, entry.age))
    for a, genders in speakers.items():
        female = sum(1 for g in genders.values() if g is GenderLabel.F)
        per_accent[a] = AccentStats(
            speakers=len(genders),
            utterances=utterances[a],
            female=female,
            male=len(genders) - female,
            age_min=ages[a][0],
            age_max=ages[a][1],
        )
    return PoolStats(per_accent=per_accent)


# ---------------------------------------------------------------------------
# Synthetic manifests
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PoolRowSpec:
    """One accent row of a synthetic-pool profile: speaker count,
    utterance count, gender split, and age extremes to reproduce."""

    accent: AccentLabel
    speakers: int
    utterances: int
    female: int
    male: int
    age_min: int
    age_max: int

    def __post_init__(self):
        if self.female + self.male != self.speakers:
            raise ValueError("female + male must equal speaker count")
        if self.utterances < self.speakers:
            raise ValueError("need at least one utterance per speaker")
        if not AGE_MIN <= self.age_min <= self.age_max <= AGE_MAX:
            raise ValueError("bad age extremes")

    @classmethod
    def from_dict(cls, data: dict) -> "PoolRowSpec":
        return cls(
            accent=parse_accent_code(str(data["accent"])),
            speakers=int(data["speakers"]),
            utterances=int(data["utterances"]),
            female=int(data["female"]),
            male=int(data["male"]),
            age_min=int(data["age_min"]),
            age_max=int(data["age_max"]),
        )


#: Built-in profile mirroring the reference accent pool's published
#: per-accent row shapes; usable as-is for round-trip tests and demos.
DEFAULT_POOL_PROFILE: tuple[PoolRowSpec, ...] = tuple(
    PoolRowSpec(parse_accent_code(a), spk, utt, f, m, lo, hi)
    for a, spk, utt, f, m, lo, hi in [
        ("CA", 44, 4400, 22, 22, 18, 49),
        ("CN", 50, 5000, 26, 24, 17, 38),
        ("ES", 44, 4400, 22, 22, 19, 45),
        ("GB", 92, 9031, 42, 50, 16, 65),
        ("IN", 42, 4200, 22, 20, 15, 37),
        ("JP", 46, 4600, 23, 23, 18, 69),
        ("KR", 46, 4600, 23, 23, 19, 39),
        ("MY", 40, 4358, 21, 19, 20, 33),
        ("PT", 53, 5283, 27, 26, 18, 62),
        ("RU", 41, 4100, 21, 20, 18, 41),
        ("SG", 114, 17750, 63, 51, 18, 24),
        ("US", 70, 7000, 37, 33, 15, 63),
    ]
)

_TRANSCRIPT_BANK = (
    "could i order a flat white and a slice of toast please",
    "the morning lecture on signal processing starts in ten minutes",
    "let us review the quarterly report before the client meeting",
    "the checkout queue near the bakery aisle moves quite fast",
    "can you recommend something mild from the lunch menu",
    "remember to submit the assignment through the campus portal",
    "the project deadline moved so we should sync on priorities",
    "fresh vegetables are on discount near the back shelves today",
)


def _pick(seed: int, *parts: object) -> int:
    payload = "|".join(str(p) for p in parts)
    digest = hashlib.sha256(f"{seed}|{payload}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def generate_synthetic_entries(
    rows: Iterable[PoolRowSpec], seed: int = 0
) -> Iterator[PoolEntry]:
    """Emit a synthetic pool whose stats round-trip to the row specs.

    Per row: the first `female` speakers are F, the rest M; speaker
    ages cycle through [age_min, age_max] with the last speaker pinned
    to age_max so both extremes are realized whenever speakers >= 2;
    utterances distribute as evenly as possible with the remainder on
    the earliest speakers. Fully deterministic in (rows, seed).
    """
    for row in rows:
        code = str(row.accent).lower()
        span = row.age_max - row.age_min + 1
        base, rem = divmod(row.utterances, row.speakers)
        for s in range(row.speakers):
            age = row.age_min + (s % span)
            if s == row.speakers - 1 and row.speakers >= 2:
                age = row.age_max
            gender = GenderLabel.F if s < row.female else GenderLabel.M
            speaker_id = f"{code}-spk{s:03d}"
            count = base + (1 if s < rem else 0)
            for u in range(count):
                text = _TRANSCRIPT_BANK[
                    _pick(seed, code, s, u) % len(_TRANSCRIPT_BANK)
                ]
                yield PoolEntry(
                    id=f"{code}-{s:03d}-{u:04d}",
                    accent=row.accent,
                    transcript=text,
                    speech_ref=f"synthetic://{code}/{speaker_id}/{u:04d}.wav",
                    speaker_id=speaker_id,
                    gender=gender,
                    age=age,
                )


def generate_synthetic_manifest(
    path: str | Path, rows: Iterable[PoolRowSpec] = DEFAULT_POOL_PROFILE, seed: int = 0
) -> int:
    """Write a synthetic manifest; returns the number of entries."""
    count = 0
    with Path(path).open("w", encoding="utf-8") as fh:
        for entry in generate_synthetic_entries(rows, seed=seed):
            fh.write(json.dumps(entry.to_dict(), sort_keys=True) + "\n")
            count += 1
    return count
