"""Weighted Consensus and general weighted pattern matching.

A consensus of two equal-length weighted sequences is a single string
matching both with probability at least 1/z.  Finding one is a
two-threshold Multichoice Knapsack problem over NegLog units: one
class per position, one item per letter alive in both sequences.

The general matcher (gwpm) slides a weighted pattern over a weighted
text: each window reduces to a consensus instance restricted to the
few positions where the heavy strings mismatch.
"""

from __future__ import annotations

import math
import string as _string
from dataclasses import dataclass

from . import knapsack, neglog
from .errors import DomainError
from .knapsack import KnapsackInstance, make_instance
from .lcp import build_cross_index
from .weighted import (
    ProbThreshold,
    WeightedSequence,
    _heavy_with_filler,
    prune,
)

# Letter pool for sequences synthesized from knapsack instances.
_LETTER_POOL = _string.ascii_lowercase + _string.ascii_uppercase + _string.digits
_EQUALIZER = "$"


@dataclass(frozen=True)
class WcInstance:
    """A Weighted Consensus instance: two aligned sequences and 1/z."""

    X: WeightedSequence
    Y: WeightedSequence
    z: ProbThreshold

    def __post_init__(self):
        if self.X.n != self.Y.n:
            raise DomainError(
                f"sequences must have equal length, got {self.X.n} and {self.Y.n}"
            )


def wc_to_knapsack(
    X: WeightedSequence, Y: WeightedSequence, z: ProbThreshold
) -> tuple[KnapsackInstance | None, list[list[str]]]:
    """Knapsack view of a consensus instance, plus per-class letters.

    Item values are NegLog units in X, weights units in Y; both
    thresholds are the units of z.  A position with no letter alive in
    both sequences has an empty class, reported as (None, []): the
    answer is NO outright.
    """
    if X.n != Y.n:
        raise DomainError("sequences must have equal length")
    classes = []
    letters: list[list[str]] = []
    for i in range(1, X.n + 1):
        row_y = Y.rows[i - 1]
        cls = [
            (u, row_y[s])
            for s, u in X.sorted_rows[i - 1]
            if s in row_y
        ]
        if not cls:
            return None, []
        classes.append(cls)
        letters.append([s for s, u in X.sorted_rows[i - 1] if s in row_y])
    return make_instance(classes, z.units, z.units), letters


def _decode(choice: dict[int, int], letters: list[list[str]]) -> str:
    return "".join(letters[ci][choice[ci]] for ci in range(len(letters)))


def weighted_consensus(
    X: WeightedSequence, Y: WeightedSequence, z: ProbThreshold, k: int | None = None
) -> str | None:
    """A string matching both X and Y with probability >= 1/z, or None."""
    inst, letters = wc_to_knapsack(X, Y, z)
    if inst is None:
        return None
    choice = knapsack.solve(inst) if k is None else knapsack.solve_k(inst, k)
    if choice is None:
        return None
    return _decode(choice, letters)


def knapsack_to_wc(inst: KnapsackInstance, normalize: bool = False) -> WcInstance:
    """Equivalent consensus instance with z <= 4 * prod |C_i|.

    Item values are shifted non-negative per class, scaled by a power
    of two M >= max(n, V, W) and turned into letter probabilities of
    the form 2^-(ceil(M log |C_i|) + v)/M; an extra position equalizes
    the two per-sequence thresholds into a single z.  With `normalize`
    each row gains a completing letter (dead in the other sequence) so
    probabilities sum to 1.
    """
    lam = inst.lam
    if lam > len(_LETTER_POOL):
        raise DomainError(f"class size {lam} exceeds the letter pool")
    v_mins = [min(it.v for it in cls) for cls in inst.classes]
    w_mins = [min(it.w for it in cls) for cls in inst.classes]
    V = inst.V - sum(v_mins)
    W = inst.W - sum(w_mins)
    if V < 0 or W < 0:
        # no choice fits even the per-class minima: any NO instance works
        no_x = WeightedSequence("ab", [{"a": 0}])
        no_y = WeightedSequence("ab", [{"b": 0}])
        return WcInstance(no_x, no_y, ProbThreshold.from_z(1))
    M = 1
    while M < max(inst.n, V, W, 1):
        M *= 2
    if M > neglog.SCALE:
        raise DomainError("thresholds too large for exact fixed-point reduction")
    unit = neglog.SCALE // M  # exact: M is a power of two <= 2**32
    rows_x = []
    rows_y = []
    ceil_logs = []
    for ci, cls in enumerate(inst.classes):
        size = len(cls)
        if size & (size - 1) == 0:
            ceil_log = M * (size.bit_length() - 1)
        else:
            ceil_log = math.ceil(M * math.log2(size))
        ceil_logs.append(ceil_log)
        row_x = {}
        row_y = {}
        for ii, item in enumerate(cls):
            letter = _LETTER_POOL[ii]
            row_x[letter] = (ceil_log + item.v - v_mins[ci]) * unit
            row_y[letter] = (ceil_log + item.w - w_mins[ci]) * unit
        rows_x.append(row_x)
        rows_y.append(row_y)
    zx_units = (V + sum(ceil_logs)) * unit
    zy_units = (W + sum(ceil_logs)) * unit
    z_units = max(zx_units, zy_units)
    rows_x.append({_EQUALIZER: z_units - zx_units})
    rows_y.append({_EQUALIZER: z_units - zy_units})
    alphabet = _LETTER_POOL[:lam] + _EQUALIZER
    if normalize:
        alphabet += "!?"
        for row_x, row_y in zip(rows_x, rows_y):
            rem_x = 1.0 - sum(neglog.to_probability(u) for u in row_x.values())
            rem_y = 1.0 - sum(neglog.to_probability(u) for u in row_y.values())
            if rem_x > 0:
                row_x["!"] = neglog.from_probability(min(rem_x, 1.0))
            if rem_y > 0:
                row_y["?"] = neglog.from_probability(min(rem_y, 1.0))
    X = WeightedSequence(alphabet, rows_x)
    Y = WeightedSequence(alphabet, rows_y)
    z = ProbThreshold(units=z_units, display=2.0 ** (z_units / neglog.SCALE))
    return WcInstance(X, Y, z)


@dataclass(frozen=True)
class _Occurrence:
    mismatches: tuple[int, ...]  # 1-based offsets into the pattern
    letters: str  # consensus letters at the mismatch offsets
    alpha_rest: int  # NegLog of the window's heavy letters outside D
    beta_rest: int  # NegLog of the pattern's heavy letters outside D


@dataclass(frozen=True)
class GwpmResult:
    """Occurrences of a weighted pattern in a weighted text.

    Stores, per occurrence, the heavy-string mismatch set and the
    consensus letters chosen there, so a full witness string is
    recoverable in O(m).
    """

    occurrences: tuple[int, ...]
    m: int
    _heavy_text: str
    _records: dict[int, _Occurrence]


def gwpm(
    P: WeightedSequence,
    T: WeightedSequence,
    z: ProbThreshold,
    algo: str = "auto",
    k: int | None = None,
) -> GwpmResult:
    """Positions p where some string matches both P and T[p..p+m-1].

    Window scan over the heavy strings: lcp queries collect the few
    positions where they mismatch; windows with more than
    2 floor(log2 z) mismatches cannot match, the rest reduce to a
    consensus instance restricted to the mismatch set.
    """
    P = prune(P, z)
    T = prune(T, z)
    m, n = P.n, T.n
    if m == 0:
        raise DomainError("empty pattern")
    heavy_t, units_t = _heavy_with_filler(T)
    if m > n or any(not row for row in P.sorted_rows):
        return GwpmResult((), m, heavy_t, {})
    heavy_p = "".join(row[0][0] for row in P.sorted_rows)
    units_p = [row[0][1] for row in P.sorted_rows]
    beta = sum(units_p)
    budget = 2 * z.log2_floor
    z_units = z.units
    idx = build_cross_index(heavy_p, heavy_t)
    cross_lcp = idx.cross_lcp
    alpha = sum(units_t[:m])
    occ = []
    records: dict[int, _Occurrence] = {}
    for p in range(1, n - m + 2):
        d: list[int] = []
        i, j = 1, p
        while i <= m:
            delta = cross_lcp(i, j)
            i += delta
            j += delta
            if i > m:
                break
            d.append(i)
            i += 1
            j += 1
            if len(d) > budget:
                break
        if len(d) > budget:
            pass
        elif not d:
            if alpha <= z_units and beta <= z_units:
                occ.append(p)
                records[p] = _Occurrence((), "", alpha, beta)
        else:
            alpha_rest = alpha - sum(units_t[p + i - 2] for i in d)
            beta_rest = beta - sum(units_p[i - 1] for i in d)
            witness = _solve_window(P, T, z, p, d, alpha_rest, beta_rest, algo, k)
            if witness is not None:
                occ.append(p)
                records[p] = _Occurrence(tuple(d), witness, alpha_rest, beta_rest)
        if p <= n - m:
            alpha += units_t[p + m - 1] - units_t[p - 1]
    return GwpmResult(tuple(occ), m, heavy_t, records)


def _solve_window(P, T, z, p, d, alpha_rest, beta_rest, algo, k):
    """Consensus over the mismatch positions, reweighted by the rest."""
    rows_x = [dict(P.rows[i - 1]) for i in d]
    rows_y = [dict(T.rows[p + i - 2]) for i in d]
    for s in rows_x[0]:
        rows_x[0][s] += beta_rest
    for s in rows_y[0]:
        rows_y[0][s] += alpha_rest
    X = prune(WeightedSequence(P.alphabet, rows_x), z)
    Y = prune(WeightedSequence(T.alphabet, rows_y), z)
    if any(not row for row in X.rows) or any(not row for row in Y.rows):
        return None
    if algo == "naive":
        from .reference import naive_consensus

        return naive_consensus(X, Y, z)
    if algo == "mim":
        return weighted_consensus(X, Y, z, k=k)
    # heavy letters differ at every mismatch position, and reweighting
    # shifts whole rows, so the dissimilarity invariant holds
    from . import sdwc

    inst = sdwc.SdwcInstance(X, Y, z)
    if k is not None:
        return sdwc.solve_fast(inst, k)
    return sdwc.solve(inst)


def gwpm_witness(result: GwpmResult, p: int) -> str:
    """Witness string for occurrence p, spliced in O(m)."""
    rec = result._records.get(p)
    if rec is None:
        raise DomainError(f"position {p} is not an occurrence")
    window = list(result._heavy_text[p - 1: p + result.m - 1])
    for off, letter in zip(rec.mismatches, rec.letters):
        window[off - 1] = letter
    return "".join(window)
