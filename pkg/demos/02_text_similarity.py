"""
Text similarity from first principles
=====================================

Prompt retrieval ranks pool transcripts partly by how similar they are
to a query text. The similarity signal is tf-idf with cosine: fit a
vocabulary on a corpus, embed each text as an L2-normalized sparse
vector, and compare vectors with a dot product. This demo walks the
whole recipe on a corpus small enough to check by hand.
"""

import math

import accentflow as af

corpus = [
    "please reserve a table for two near the window",
    "the window seat by the garden is reserved",
    "how long is the wait for a table tonight",
    "turn left at the garden gate and follow the path",
]

# Tokenization is deliberately plain: lowercase, runs of [0-9a-z]+.
# Punctuation splits tokens and nothing is stemmed or stopped.
print("tokens[0]:", af.tokenize(corpus[0]))

model = af.fit(corpus)
print(f"\nvocabulary: {len(model.vocabulary)} terms")

# Inverse document frequency follows the smoothed form
# ln((1 + N) / (1 + df)) + 1, so a term in every document still gets
# weight 1.0 rather than vanishing.
for term in ("the", "table", "garden", "tonight"):
    df = sum(term in af.tokenize(doc) for doc in corpus)
    expected = math.log((1 + len(corpus)) / (1 + df)) + 1.0
    print(f"  idf[{term!r}] = {model.idf[term]:.6f}  (df={df}, by hand {expected:.6f})")

# Embeddings are sparse (index, value) pairs over the fitted vocabulary
# and always unit length, so cosine is just the dot product.
vec = af.embed(model, "a table near the window please")
norm = math.sqrt(sum(v * v for _, v in vec.items))
print(f"\nembedded {len(vec.items)} nonzero terms, |v| = {norm:.12f}")

query = "is there a free table by the window"
print(f"\nquery: {query!r}")
q = af.embed(model, query)
for doc in corpus:
    sim = af.cosine(q, af.embed(model, doc))
    print(f"  {sim:.4f}  {doc!r}")

# Out-of-vocabulary text embeds to the zero vector, and cosine against
# a zero vector is defined as 0.0 — unknown text is simply unranked.
oov = af.embed(model, "zyxwv qqq")
print(f"\nOOV nonzeros: {len(oov.items)}, cosine vs query: {af.cosine(q, oov)}")

# Identical texts score exactly 1.0; the implementation clamps tiny
# floating-point overshoot so downstream weights never see 1.0000000002.
print("self-similarity:", af.cosine(q, af.embed(model, query)))
