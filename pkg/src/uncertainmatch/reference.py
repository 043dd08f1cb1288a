"""Definition-level brute-force oracles.

Each function is a direct transcription of the matching definition,
kept deliberately naive; the optimized solvers are tested against
these.  All probability arithmetic stays in the shared NegLog
fixed-point domain so comparisons are bit-exact.
"""

from __future__ import annotations

from .capacity import enumeration_limit
from .errors import CapacityError
from .profile import ScoringMatrix, score
from .weighted import ProbThreshold, WeightedSequence


def naive_profile_match(profile: ScoringMatrix, text: str, threshold: int) -> list[int]:
    """Per-window score summation, O(nm)."""
    m, n = profile.m, len(text)
    return [
        p for p in range(1, n - m + 2)
        if score(text[p - 1: p + m - 1], profile) >= threshold
    ]


def naive_wpm(pattern: str, text: WeightedSequence, z: ProbThreshold) -> list[int]:
    """Per-window NegLog summation against the occurrence definition."""
    m, n = len(pattern), text.n
    occ = []
    for p in range(1, n - m + 2):
        total = 0
        for i, c in enumerate(pattern, start=1):
            total += text.units(p + i - 1, c)
        if total <= z.units:
            occ.append(p)
    return occ


def enumerate_solid_strings(x: WeightedSequence, z: ProbThreshold) -> list[tuple[str, int]]:
    """All strings matching `x` with probability >= 1/z, with their units."""
    limit = max(1 << 16, enumeration_limit())
    if not (z.display <= limit):
        raise CapacityError(f"enumerate_solid_strings: z={z.display} exceeds guard {limit}")
    out: list[tuple[str, int]] = []

    def dfs(i: int, units: int, prefix: list[str]) -> None:
        if i == x.n:
            out.append(("".join(prefix), units))
            return
        for letter, u in x.sorted_rows[i]:
            if units + u <= z.units:
                prefix.append(letter)
                dfs(i + 1, units + u, prefix)
                prefix.pop()

    dfs(0, 0, [])
    return out


def naive_consensus(x: WeightedSequence, y: WeightedSequence, z: ProbThreshold) -> str | None:
    """First string (in enumeration order) solid in both sequences, or None."""
    solid_in_y = {s for s, _ in enumerate_solid_strings(y, z)}
    for s, _ in enumerate_solid_strings(x, z):
        if s in solid_in_y:
            return s
    return None


def hamming(a: str, b: str) -> int:
    if len(a) != len(b):
        raise ValueError("hamming distance needs equal lengths")
    return sum(1 for x, y in zip(a, b) if x != y)
