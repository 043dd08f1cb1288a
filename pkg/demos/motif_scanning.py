"""Scan a long random text for a probabilistic motif.

Walks through the two matchers: integer-profile matching against a
solid text, then probability-threshold matching against a weighted
(PWM) text. Run directly:

    python demos/motif_scanning.py
"""

import random

from uncertainmatch import (
    ProbThreshold,
    ScoringMatrix,
    from_probabilities,
    profile_match,
    wpm,
)
from uncertainmatch.profile import heavy_string, score
from uncertainmatch.reference import naive_profile_match

rng = random.Random(42)
SIGMA = "acgt"

# A toy 6-position scoring profile. Row i scores the letter placed at
# position i of a window; a window matches when its score sum clears
# the threshold.
profile = ScoringMatrix(
    SIGMA,
    tuple(tuple(rng.randint(-5, 5) for _ in SIGMA) for _ in range(6)),
)
text = "".join(rng.choice(SIGMA) for _ in range(2000))

best = heavy_string(profile)
print("profile heavy string:", best, "with score", score(best, profile))

threshold = score(best, profile) - 4
hits = profile_match(profile, text, threshold)
print(f"windows scoring >= {threshold}: {hits}")
assert hits == naive_profile_match(profile, text, threshold)

# The same idea with probabilities: the text itself is uncertain and a
# solid pattern matches a window when the product of per-position
# probabilities reaches 1/z.
rows = []
for _ in range(500):
    raw = [rng.expovariate(1.0) for _ in SIGMA]
    total = sum(raw)
    rows.append({s: x / total for s, x in zip(SIGMA, raw)})
weighted_text = from_probabilities(SIGMA, rows)

pattern = "".join(rng.choice(SIGMA) for _ in range(4))
for z in (16, 256, 4096):
    occ = wpm(pattern, weighted_text, ProbThreshold.from_z(z))
    print(f"pattern {pattern!r} at 1/{z}: {len(occ)} occurrences")
