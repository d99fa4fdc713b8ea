"""
Building a prompt pool and reading its statistics
=================================================

A prompt pool is a JSONL manifest of short speech recordings: one line
per utterance with an accent label, a transcript, an audio locator, and
speaker attributes. This demo builds a small synthetic pool in memory,
round-trips it through a manifest file, and prints the per-accent table.
"""

import json
import tempfile
from pathlib import Path

import accentflow as af

# A profile row says: this accent, this many speakers and utterances,
# this gender split, ages spread across this range.
profile = [
    af.PoolRowSpec(af.AccentLabel.GB, speakers=4, utterances=12, female=2,
                   male=2, age_min=18, age_max=40),
    af.PoolRowSpec(af.AccentLabel.SG, speakers=3, utterances=9, female=2,
                   male=1, age_min=20, age_max=30),
]

entries = list(af.generate_synthetic_entries(profile, seed=7))
print(f"generated {len(entries)} entries")
print("first entry:", json.dumps(entries[0].to_dict(), indent=2, sort_keys=True))

# Manifests are plain JSONL; ingestion validates every line and rejects
# duplicates, unknown accents, and malformed ages with line numbers.
workdir = Path(tempfile.mkdtemp(prefix="accentflow-demo-"))
manifest = workdir / "pool.jsonl"
manifest.write_text(
    "".join(json.dumps(e.to_dict(), sort_keys=True) + "\n" for e in entries),
    encoding="utf-8",
)

pool = af.ingest_manifest(manifest)
print(f"\ningested {len(pool)} entries from {manifest}")

# The statistics table always renders all twelve accents in canonical
# order; accents absent from this pool show zero counts.
stats = af.pool_stats(pool)
for accent, row in stats.to_dict().items():
    print(
        f"  {accent}: {row['speakers']:>3} speakers {row['utterances']:>4} "
        f"utterances  {row['female']}F/{row['male']}M  "
        f"ages {row['age_min']}-{row['age_max']}"
    )

# Filtering is how retrieval narrows the pool to compatible prompts:
# accent must match exactly; gender and age apply when requested. List
# the British speakers first so the match set below is unsurprising.
speakers = sorted({(e.speaker_id, e.gender, e.age) for e in pool.entries
                   if e.accent is af.AccentLabel.GB})
print("\nGB speakers:")
for sid, gender, age in speakers:
    print(f"  {sid}  {gender}/{age}")

spec = af.FilterSpec(age_tolerance=5)
meta = af.Metadata(accent=af.AccentLabel.GB, gender=af.GenderLabel.F,
                   age=af.AgeSpec.of(20))
matches = af.filter_pool(pool, meta, spec)
print(f"\nGB/F/20±5 matches: {len(matches)}")
for e in matches[:3]:
    print(f"  {e.id}  {e.gender}/{e.age}  {e.transcript[:50]!r}")
