"""Shared fixtures: small deterministic pools and the offline config."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

import accentflow as af

REPO_ROOT = Path(__file__).resolve().parent.parent
SCHEMA_DIR = REPO_ROOT / "schemas"


def make_pool(profile, seed=0) -> af.Pool:
    """Build an in-memory pool from (accent, spk, utt, f, m, lo, hi) rows."""
    rows = [
        af.PoolRowSpec(af.parse_accent_code(a), spk, utt, f, m, lo, hi)
        for a, spk, utt, f, m, lo, hi in profile
    ]
    return af.Pool(entries=tuple(af.generate_synthetic_entries(rows, seed=seed)))


@pytest.fixture
def small_pool() -> af.Pool:
    """Three accents, four speakers each, ages spanning 18-40."""
    return make_pool(
        [
            ("GB", 4, 12, 2, 2, 18, 40),
            ("SG", 4, 12, 2, 2, 18, 40),
            ("US", 4, 12, 2, 2, 18, 40),
        ],
        seed=7,
    )


@pytest.fixture(scope="session")
def full_pool() -> af.Pool:
    """The complete built-in twelve-accent profile (≈75k entries)."""
    return af.Pool(
        entries=tuple(af.generate_synthetic_entries(af.DEFAULT_POOL_PROFILE, seed=0))
    )


@pytest.fixture
def mock_config() -> af.RunConfig:
    return af.RunConfig.mock(seed=11)


def load_schema(name: str) -> dict:
    return json.loads((SCHEMA_DIR / name).read_text(encoding="utf-8"))
