"""Deterministic TF-IDF embedding and cosine similarity.

The exact recipe, fixed so independent implementations agree at the
formula level:

  tokenize : lowercase, split on any non-alphanumeric run, drop empties;
             no stemming, no stop-words
  idf(t)   : ln((1 + N) / (1 + df(t))) + 1   (always > 0)
  weight   : raw term count * idf(t), then L2-normalized
  cosine   : dot product of normalized vectors; 0 when either is zero

Out-of-vocabulary terms are ignored at embed time, so a fully OOV text
embeds to the zero vector and its cosine against anything is 0 (the
fused retrieval score then degrades to accent confidence alone).
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import EmptyCorpus

_TOKEN_RE = re.compile(r"[0-9a-z]+")

#: Version tag written into persisted model artifacts.
MODEL_FORMAT_VERSION = 1


def tokenize(text: str) -> list[str]:
    """Lowercase and split on non-alphanumeric runs."""
    return _TOKEN_RE.findall(text.lower())


@dataclass(frozen=True)
class SparseVector:
    """L2-normalized sparse vector as (index, weight) pairs sorted by
    strictly increasing index."""

    items: tuple[tuple[int, float], ...]

    @property
    def is_zero(self) -> bool:
        return not self.items

    def norm(self) -> float:
        return math.sqrt(sum(w * w for _, w in self.items))


@dataclass(frozen=True)
class TfIdfModel:
    """Fitted vocabulary and idf weights over a document corpus."""

    vocabulary: dict[str, int]
    idf: dict[str, float]
    corpus_size: int

    def save(self, path: str | Path) -> None:
        """Persist as a versioned JSON artifact."""
        payload = {
            "format_version": MODEL_FORMAT_VERSION,
            "corpus_size": self.corpus_size,
            "vocabulary": self.vocabulary,
            "idf": self.idf,
        }
        Path(path).write_text(
            json.dumps(payload, sort_keys=True, indent=2) + "\n", encoding="utf-8"
        )

    @classmethod
    def load(cls, path: str | Path) -> "TfIdfModel":
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
        version = payload.get("format_version")
        if version != MODEL_FORMAT_VERSION:
            raise ValueError(f"unsupported tf-idf model format: {version!r}")
        return cls(
            vocabulary=dict(payload["vocabulary"]),
            idf={t: float(v) for t, v in payload["idf"].items()},
            corpus_size=int(payload["corpus_size"]),
        )


def fit(corpus: Sequence[str]) -> TfIdfModel:
    """Fit vocabulary and smoothed idf weights on a corpus.

    Vocabulary indices follow sorted term order, making fit a pure
    function of the corpus contents.
    """
    if len(corpus) == 0:
        raise EmptyCorpus("cannot fit tf-idf on an empty corpus")
    df: dict[str, int] = {}
    for doc in corpus:
        for term in set(tokenize(doc)):
            df[term] = df.get(term, 0) + 1
    vocabulary = {term: i for i, term in enumerate(sorted(df))}
    n = len(corpus)
    idf = {term: math.log((1 + n) / (1 + count)) + 1.0 for term, count in df.items()}
    return TfIdfModel(vocabulary=vocabulary, idf=idf, corpus_size=n)


def embed(model: TfIdfModel, text: str) -> SparseVector:
    """Embed a text as an L2-normalized tf-idf vector.

    Terms outside the fitted vocabulary are ignored; an all-OOV or
    empty text yields the zero vector.
    """
    counts: dict[int, float] = {}
    for term in tokenize(text):
        index = model.vocabulary.get(term)
        if index is None:
            continue
        counts[index] = counts.get(index, 0.0) + model.idf[term]
    if not counts:
        return SparseVector(items=())
    norm = math.sqrt(sum(w * w for w in counts.values()))
    items = tuple((i, counts[i] / norm) for i in sorted(counts))
    return SparseVector(items=items)


def cosine(v1: SparseVector, v2: SparseVector) -> float:
    """Cosine similarity of two normalized sparse vectors.

    Defined as 0 when either vector is zero. Weights are nonnegative,
    so the result lies in [0, 1]; accumulation slightly above 1 from
    float rounding is clamped back to 1.
    """
    if v1.is_zero or v2.is_zero:
        return 0.0
    if len(v2.items) < len(v1.items):
        v1, v2 = v2, v1
    other = dict(v2.items)
    return min(1.0, sum(w * other[i] for i, w in v1.items if i in other))


def fit_embed_all(corpus: Iterable[str]) -> tuple[TfIdfModel, list[SparseVector]]:
    """Fit on a corpus and embed every document in one pass."""
    docs = list(corpus)
    model = fit(docs)
    return model, [embed(model, doc) for doc in docs]
