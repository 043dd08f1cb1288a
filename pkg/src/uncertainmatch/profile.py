"""Scoring-matrix (profile) model and the lookahead-scoring matcher.

A profile assigns an integer score to every letter at every position;
a window of text matches when its score sum reaches the threshold.
The matcher scans windows starting from the heavy string's score and
walks mismatches with O(1) lcp queries, abandoning a window as soon
as the running score falls below the threshold.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .capacity import enumeration_limit
from .errors import CapacityError, DomainError
from .lcp import build_cross_index

_SCORE_LIMIT = 1 << 31  # per-entry scores are 32-bit; window sums fit in 64


@dataclass(frozen=True)
class ScoringMatrix:
    """m x sigma table of signed integer scores."""

    alphabet: str
    scores: tuple[tuple[int, ...], ...]
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.scores) == 0:
            raise DomainError("scoring matrix must have at least one row")
        sigma = len(self.alphabet)
        if len(set(self.alphabet)) != sigma or sigma == 0:
            raise DomainError("alphabet must be a nonempty set of distinct letters")
        for row in self.scores:
            if len(row) != sigma:
                raise DomainError("every row must have one score per alphabet letter")
            for s in row:
                if abs(s) >= _SCORE_LIMIT:
                    raise DomainError(f"score out of 32-bit range: {s}")
        object.__setattr__(self, "_index", {c: k for k, c in enumerate(self.alphabet)})

    @property
    def m(self) -> int:
        return len(self.scores)

    def entry(self, i: int, letter: str) -> int:
        """Score of `letter` at 1-based position `i`."""
        try:
            return self.scores[i - 1][self._index[letter]]
        except KeyError:
            raise DomainError(f"letter {letter!r} not in alphabet {self.alphabet!r}") from None


def score(s: str, profile: ScoringMatrix) -> int:
    """Sum of per-position scores of the string under the profile."""
    if len(s) != profile.m:
        raise DomainError(f"string length {len(s)} != profile length {profile.m}")
    return sum(profile.entry(i, c) for i, c in enumerate(s, start=1))


def heavy_string(profile: ScoringMatrix) -> str:
    """Per-position highest-scoring letter; ties go to the smallest alphabet index."""
    out = []
    for row in profile.scores:
        best = max(range(len(row)), key=lambda k: (row[k], -k))
        out.append(profile.alphabet[best])
    return "".join(out)


def profile_match(profile: ScoringMatrix, text: str, threshold: int) -> list[int]:
    """All 1-based positions whose window scores at least `threshold`.

    Lookahead scan: every window starts at the heavy string's score and
    mismatches are walked via lcp queries, so each window costs at most
    floor(log2 M) + 1 steps before it is accepted or abandoned.
    """
    m, n = profile.m, len(text)
    if m > n:
        return []
    for c in text:
        if c not in profile._index:
            raise DomainError(f"text letter {c!r} not in alphabet {profile.alphabet!r}")
    heavy = heavy_string(profile)
    idx = build_cross_index(heavy, text)
    s = score(heavy, profile)
    occ = []
    for p in range(1, n - m + 2):
        sp = s
        i, j = 1, p
        while sp >= threshold and i <= m:
            delta = idx.cross_lcp(i, j)
            i += delta + 1
            j += delta + 1
            if i <= m + 1:
                sp += profile.entry(i - 1, text[j - 2]) - profile.entry(i - 1, heavy[i - 2])
        if sp >= threshold:
            occ.append(p)
    return occ


def count_matching_strings(profile: ScoringMatrix, threshold: int) -> int:
    """Exact number of strings scoring at least `threshold` (NumStrings)."""
    m, sigma = profile.m, len(profile.alphabet)
    limit = max(1 << 24, enumeration_limit())
    if sigma ** m > limit:
        raise CapacityError(
            f"count_matching_strings: {sigma}**{m} strings exceed the "
            f"enumeration guard of {limit}"
        )
    # exact DP over achievable score sums; equivalent to full enumeration
    counts: dict[int, int] = {0: 1}
    for row in profile.scores:
        nxt: dict[int, int] = {}
        for total, cnt in counts.items():
            for sc in row:
                key = total + sc
                nxt[key] = nxt.get(key, 0) + cnt
        counts = nxt
    return sum(cnt for total, cnt in counts.items() if total >= threshold)
