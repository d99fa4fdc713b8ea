"""Independent reference implementations used to cross-check the
package. Everything here is deliberately written the slow, obvious way
(dense matrices, exact rationals, exhaustive search) and shares no code
with the library under test.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

import numpy as np

_TOKEN = re.compile(r"[0-9a-z]+")


def dense_tokenize(text: str) -> list[str]:
    return _TOKEN.findall(text.lower())


def dense_fit(corpus: list[str]) -> tuple[dict[str, int], np.ndarray]:
    """Vocabulary (sorted terms) and idf vector, dense."""
    terms = sorted({t for doc in corpus for t in dense_tokenize(doc)})
    vocab = {t: i for i, t in enumerate(terms)}
    n = len(corpus)
    df = np.zeros(len(terms))
    for doc in corpus:
        for t in set(dense_tokenize(doc)):
            df[vocab[t]] += 1
    idf = np.log((1.0 + n) / (1.0 + df)) + 1.0
    return vocab, idf


def dense_embed(vocab: dict[str, int], idf: np.ndarray, text: str) -> np.ndarray:
    """Raw tf x idf, L2-normalized; zero vector when nothing is in
    vocabulary."""
    vec = np.zeros(len(vocab))
    for t in dense_tokenize(text):
        if t in vocab:
            vec[vocab[t]] += 1.0
    vec = vec * idf
    norm = np.linalg.norm(vec)
    if norm == 0.0:
        return vec
    return vec / norm


def dense_cosine(u: np.ndarray, v: np.ndarray) -> float:
    if np.linalg.norm(u) == 0.0 or np.linalg.norm(v) == 0.0:
        return 0.0
    return float(np.dot(u, v))


def exact_binomial_tail(n: int, k: int, p0: Fraction) -> Fraction:
    """P(X >= k) for X ~ Binomial(n, p0), summed exactly over rationals."""
    total = Fraction(0)
    for j in range(k, n + 1):
        total += (
            Fraction(math.comb(n, j)) * p0**j * (1 - p0) ** (n - j)
        )
    return total


def brute_force_best(items: list[tuple[str, float, float]], wa: float, ws: float) -> str:
    """Exhaustive argmax of wa*confidence + ws*similarity over
    (id, confidence, similarity) triples; ties resolved by smallest id."""
    best_id, best_score = None, None
    for entry_id, confidence, similarity in items:
        score = wa * confidence + ws * similarity
        if (
            best_score is None
            or score > best_score
            or (score == best_score and entry_id < best_id)
        ):
            best_id, best_score = entry_id, score
    return best_id


def direct_fdr(
    records: list[tuple[str, str, float]],
    tau: float,
    alpha: float,
    beta: float,
) -> float:
    """Direct transcription of the disparity definition over
    (true, predicted, confidence) triples.

    For each accent a present as a true label:
      FAR(a) = accepted impostors / impostor trials
      FRR(a) = rejected genuine / genuine trials
    where a trial against identity a accepts iff (predicted == a and
    confidence >= tau). Groups with zero trials on a side contribute
    rate 0. Result: 1 - (alpha*(maxFAR-minFAR) + beta*(maxFRR-minFRR)).
    """
    groups = sorted({true for true, _, _ in records})
    fars, frrs = [], []
    for a in groups:
        genuine = [(p, c) for t, p, c in records if t == a]
        impostor = [(p, c) for t, p, c in records if t != a]
        accepted_impostors = sum(1 for p, c in impostor if p == a and c >= tau)
        rejected_genuine = sum(1 for p, c in genuine if not (p == a and c >= tau))
        fars.append(accepted_impostors / len(impostor) if impostor else 0.0)
        frrs.append(rejected_genuine / len(genuine) if genuine else 0.0)
    far_gap = max(fars) - min(fars)
    frr_gap = max(frrs) - min(frrs)
    return 1.0 - (alpha * far_gap + beta * frr_gap)
