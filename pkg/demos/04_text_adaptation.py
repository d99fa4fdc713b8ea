"""
Text adaptation and judge-based selection
=========================================

Before synthesis, the input text can be rewritten to better match the
target accent's phrasing. Several adapter backends each propose one
rewrite; the unmodified text always stays in the candidate set as
"standard". A judge backend scores every candidate from 0 to 10 for
accent fit, and the argmax is what gets synthesized. If the judge is
down, the pipeline quietly falls back to the standard text rather than
failing the run — adaptation is an enhancement, never a gate.
"""

import accentflow as af

meta = af.Metadata(accent=af.AccentLabel.SG, gender=af.GenderLabel.M,
                   age=af.AgeSpec.of(35))
text = "Could you pack the leftovers to go?"

# Two mock adapters with different injection styles. Each one inserts a
# single accent-typical particle; which particle is a deterministic
# function of (seed, adapter name, accent).
adapters = [
    af.MockAdapter(name="particle", seed=3, style="suffix"),
    af.MockAdapter(name="opener", seed=3, style="prefix"),
]

trace = af.AdaptationTrace()
candidates = af.generate_candidates(text, meta, adapters, trace=trace)
print("candidates:")
for c in candidates:
    print(f"  [{c.source}] {c.text!r}")

# The judge never sees which adapter produced a candidate — it scores
# text against the requested accent and nothing else.
judge = af.MockJudge(seed=3)
chosen, scored = af.select_text(candidates, judge, meta, trace=trace)
print("\njudge scores:")
for c in scored:
    marker = "*" if c.text == chosen.text else " "
    print(f" {marker}{float(c.score):5.2f}  [{c.source}] {c.text!r}")
print(f"\nchosen: [{chosen.source}] {chosen.text!r}")

# Every decision leaves a trace event, so a run can be audited later.
print("\ntrace events:")
for event in trace.events:
    print(" ", {k: v for k, v in event.items() if k != "candidates"})


class DeadJudge:
    """A judge whose backing service is unreachable."""

    def score(self, text, metadata):
        raise af.JudgeUnavailable("connection refused")


fallback_trace = af.AdaptationTrace()
chosen, _ = af.select_text(candidates, DeadJudge(), meta, trace=fallback_trace)
print(f"\nwith a dead judge the pipeline keeps the standard text: {chosen.text!r}")
print("fallback event:", [e["event"] for e in fallback_trace.events])

# Adapted text is sanity-checked before use; rewrites that stray too
# far (empty output, runaway length) are reported as violations.
print("\nvalidate_adapted('') ->", af.validate_adapted(""))
