"""Weighted sequences (PWMs) under fixed-point log-probabilities.

Every position holds a letter -> NegLog-units table; a string matches
a weighted fragment when its per-position units sum to at most the
threshold's units.  All arithmetic is exact integer addition, so the
matchers and their brute-force oracles agree bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import neglog
from .capacity import enumeration_limit
from .errors import CapacityError, DomainError
from .lcp import SEPARATOR, build_cross_index

# Placeholder letter for positions whose row became empty after
# pruning; never equal to any user letter or the index separator.
EMPTY_ROW_FILLER = "\x01"

ROW_SUM_SLACK = 1e-6


@dataclass(frozen=True)
class ProbThreshold:
    """Threshold probability 1/z stored as units of log2(z)."""

    units: int
    display: float

    @classmethod
    def from_z(cls, z: float) -> "ProbThreshold":
        if z != z or z < 1:
            raise DomainError(f"threshold z must be >= 1, got {z}")
        if math.isinf(z):
            return cls(units=neglog.INF, display=math.inf)
        return cls(units=neglog.from_z(z), display=float(z))

    @property
    def log2_floor(self) -> int:
        """floor(log2 z), the mismatch budget of the lookahead matchers."""
        if math.isinf(self.display):
            raise DomainError("floor(log2 z) undefined for the infinite threshold")
        return self.units >> neglog.FRACTION_BITS


class WeightedSequence:
    """Immutable per-position letter probability tables."""

    def __init__(self, alphabet: str, rows):
        if len(set(alphabet)) != len(alphabet) or not alphabet:
            raise DomainError("alphabet must be a nonempty set of distinct letters")
        if SEPARATOR in alphabet or EMPTY_ROW_FILLER in alphabet:
            raise DomainError("alphabet contains a reserved character")
        self.alphabet = alphabet
        order = {c: k for k, c in enumerate(alphabet)}
        table = []
        sorted_rows = []
        for row in rows:
            clean = {}
            for letter, units in row.items():
                if letter not in order:
                    raise DomainError(f"letter {letter!r} not in alphabet {alphabet!r}")
                if neglog.is_inf(units):
                    continue
                clean[letter] = units
            table.append(clean)
            sorted_rows.append(tuple(sorted(clean.items(), key=lambda kv: (kv[1], order[kv[0]]))))
        self.rows = tuple(table)
        self.sorted_rows = tuple(sorted_rows)
        self._order = order

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def lam(self) -> int:
        """Maximum number of letters at a single position."""
        return max((len(r) for r in self.rows), default=0)

    @property
    def total_size(self) -> int:
        """Total list-representation size (R)."""
        return sum(len(r) for r in self.rows)

    def units(self, i: int, letter: str) -> int:
        """NegLog units of `letter` at 1-based position `i` (INF if absent)."""
        return self.rows[i - 1].get(letter, neglog.INF)

    def heavy(self, i: int) -> str:
        """Most probable letter at 1-based position `i`; ties by alphabet order."""
        row = self.sorted_rows[i - 1]
        if not row:
            raise DomainError(f"position {i} has no letters with nonzero probability")
        return row[0][0]

    def factor(self, i: int, j: int) -> "WeightedSequence":
        """The weighted factor spanning 1-based positions i..j."""
        return WeightedSequence(self.alphabet, self.rows[i - 1: j])

    def __eq__(self, other):
        return isinstance(other, WeightedSequence) and \
            (self.alphabet, self.rows) == (other.alphabet, other.rows)

    def __repr__(self):
        return f"WeightedSequence(n={self.n}, alphabet={self.alphabet!r})"


def from_probabilities(alphabet: str, rows) -> WeightedSequence:
    """Build a weighted sequence from decimal probability rows.

    Each row is either a mapping letter -> probability or a sequence of
    probabilities in alphabet order.  Zero entries are dropped; rows
    must sum to at most 1 (plus rounding slack).
    """
    converted = []
    prob_rows = []
    for idx, row in enumerate(rows, start=1):
        if not isinstance(row, dict):
            if len(row) != len(alphabet):
                raise DomainError(
                    f"row {idx}: expected {len(alphabet)} probabilities, got {len(row)}"
                )
            row = dict(zip(alphabet, row))
        total = 0.0
        units_row = {}
        for letter, p in row.items():
            if p < 0:
                raise DomainError(f"row {idx}: negative probability {p}")
            total += p
            units_row[letter] = neglog.from_probability(p)
        if total > 1.0 + ROW_SUM_SLACK:
            raise DomainError(f"row {idx}: probabilities sum to {total} > 1")
        converted.append(units_row)
        prob_rows.append(tuple(float(row.get(c, 0.0)) for c in alphabet))
    ws = WeightedSequence(alphabet, converted)
    # kept for lossless serialization (see io.serialize_pwm)
    ws.prob_rows = tuple(prob_rows)
    return ws


def prune(x: WeightedSequence, z: ProbThreshold) -> WeightedSequence:
    """Drop letters with probability below 1/z; guarantees lambda <= z."""
    return WeightedSequence(
        x.alphabet,
        [{s: u for s, u in row.items() if u <= z.units} for row in x.rows],
    )


def heavy_string(x: WeightedSequence) -> str:
    """Per-position most probable letter (requires every row nonempty)."""
    return "".join(x.heavy(i) for i in range(1, x.n + 1))


def match_neglog(s: str, x: WeightedSequence) -> int:
    """NegLog units of the matching probability of `s` with `x`."""
    if len(s) != x.n:
        raise DomainError(f"string length {len(s)} != sequence length {x.n}")
    total = 0
    for i, c in enumerate(s, start=1):
        total += x.units(i, c)
    return neglog.clamp(total)


def _heavy_with_filler(t: WeightedSequence) -> tuple[str, list[int]]:
    """Heavy string where empty rows become an unmatchable filler letter."""
    chars = [r[0][0] if r else EMPTY_ROW_FILLER for r in t.sorted_rows]
    units = [r[0][1] if r else neglog.INF for r in t.sorted_rows]
    return "".join(chars), units


def wpm(pattern: str, text: WeightedSequence, z: ProbThreshold) -> list[int]:
    """Occurrences of a solid pattern in a weighted text above 1/z.

    Sliding-window lookahead scan over the text's heavy string: the
    running window probability starts at the heavy probability and is
    corrected along mismatches found by lcp queries, abandoning the
    window once it falls below 1/z.
    """
    m, n = len(pattern), text.n
    if m == 0:
        raise DomainError("empty pattern")
    if m > n:
        return []
    heavy, heavy_units = _heavy_with_filler(text)
    idx = build_cross_index(pattern, heavy)
    cross_lcp = idx.cross_lcp
    rows = text.rows
    z_units = z.units
    inf = neglog.INF

    def survives(p, ap, i):
        # kangaroo walk from 1-based pattern position i of window p
        j = p + i - 1
        while ap <= z_units and i <= m:
            delta = cross_lcp(i, j)
            i += delta + 1
            j += delta + 1
            if i <= m + 1:
                ap += rows[j - 2].get(pattern[i - 2], inf) - heavy_units[j - 2]
        return ap <= z_units

    if z_units >= inf:
        alpha = sum(heavy_units[:m])
        occ = []
        for p in range(1, n - m + 2):
            if survives(p, alpha, 1):
                occ.append(p)
            if p <= n - m:
                alpha += heavy_units[p + m - 1] - heavy_units[p - 1]
        return occ

    # vector pass: window heavy sums, every surviving window's first
    # mismatch (one batched rmq query) and its penalty; only windows
    # still above 1/z after that mismatch walk further per query.
    # Clamping rows at z_units + 1 cannot flip a verdict (a clamped
    # term alone sinks its windows) and keeps the cumsum inside int64.
    hu = np.array(heavy_units, dtype=np.int64)
    csum = np.concatenate(([0], np.cumsum(np.minimum(hu, z_units + 1))))
    alphas = csum[m:] - csum[: n - m + 1]
    cand = np.nonzero(alphas <= z_units)[0]
    first = idx.cross_lcp_batch(1, cand + 1)
    whole = first >= m
    occ = (cand[whole] + 1).tolist()
    part = cand[~whole]
    fp = first[~whole]
    jrow = part + fp
    pen = np.fromiter(
        (rows[j].get(pattern[f], inf) for j, f in zip(jrow.tolist(), fp.tolist())),
        dtype=np.int64,
        count=len(part),
    )
    ap2 = alphas[part] - hu[jrow] + np.minimum(pen, z_units + 1)
    for t in np.nonzero(ap2 <= z_units)[0].tolist():
        p = int(part[t]) + 1
        if survives(p, int(ap2[t]), int(fp[t]) + 2):
            occ.append(p)
    occ.sort()
    return occ


def maximal_solid_prefixes(x: WeightedSequence, z: ProbThreshold) -> list[str]:
    """All maximal 1/z-solid prefixes, by depth-first enumeration.

    A prefix is maximal when no single-letter extension keeps the
    matching probability at or above 1/z.  There are at most z of them.
    """
    limit = max(1 << 20, enumeration_limit())
    if not (z.display <= limit):
        raise CapacityError(f"maximal_solid_prefixes: z={z.display} exceeds guard {limit}")
    results: list[str] = []
    n = x.n

    def dfs(i: int, units: int, prefix: list[str]) -> None:
        extended = False
        if i < n:
            for letter, u in x.sorted_rows[i]:
                if units + u <= z.units:
                    prefix.append(letter)
                    dfs(i + 1, units + u, prefix)
                    prefix.pop()
                    extended = True
        if not extended:
            results.append("".join(prefix))

    dfs(0, 0, [])
    return results
