"""Short Dissimilar Weighted Consensus.

Tailor-made solver for consensus instances whose length is at most
2 floor(log2 z) and whose heavy strings disagree at every position.
Every consensus string splits into a light solid prefix of one
sequence, a single letter, a run of letters heavy in the other
sequence, and a light solid suffix; the solver enumerates the light
parts (there are few), fills the heavy runs along a hierarchy of
basic intervals, and meets prefix and suffix lists with a linear
two-pointer sweep.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

from . import neglog
from .errors import DomainError
from .weighted import ProbThreshold, WeightedSequence, match_neglog


@dataclass(frozen=True)
class SolidFactorRep:
    """A solid factor with its NegLog units in X (p1) and in Y (p2)."""

    letters: str
    p1: int
    p2: int


@dataclass(frozen=True)
class SdwcInstance:
    X: WeightedSequence
    Y: WeightedSequence
    z: ProbThreshold

    def __post_init__(self):
        X, Y, z = self.X, self.Y, self.z
        if X.n != Y.n:
            raise DomainError("sequences must have equal length")
        if X.n > 2 * z.log2_floor:
            raise DomainError(
                f"length {X.n} exceeds the 2*floor(log2 z) = {2 * z.log2_floor} bound"
            )
        lam = max(X.lam, Y.lam)
        if lam > z.display:
            raise DomainError(f"lambda = {lam} exceeds z = {z.display}")
        for i in range(1, X.n + 1):
            if X.heavy(i) == Y.heavy(i):
                raise DomainError(f"heavy strings agree at position {i}")

    @property
    def n(self) -> int:
        return self.X.n

    @property
    def lam(self) -> int:
        return max(self.X.lam, self.Y.lam)


def light_prefixes(
    X: WeightedSequence, Y: WeightedSequence, z: ProbThreshold, zp_units: int
) -> list[list[SolidFactorRep]]:
    """Lists B_0..B_n of common 1/z-solid prefixes light in X.

    B_k holds the length-k prefixes whose last letter is not heavy in
    X and whose probability in X is at least 2^-(zp_units/2^32),
    sorted by non-increasing probability in X (p1 is relative to X,
    the first argument).  Built per length: a shorter light prefix is
    extended by a heavy run and one non-heavy letter, walking letters
    in decreasing probability and stopping on the first failure.
    """
    n = X.n
    hx = [X.heavy(i) for i in range(1, n + 1)]
    B: list[list[SolidFactorRep]] = [[SolidFactorRep("", 0, 0)]] + [[] for _ in range(n)]
    z_units = z.units
    for k in range(1, n + 1):
        cand = [(s, u) for s, u in X.sorted_rows[k - 1] if s != hx[k - 1]]
        if not cand:
            continue
        streams: list[list[SolidFactorRep]] = []
        acc_x = acc_y = 0
        run: list[str] = []
        for i in range(k - 1, -1, -1):
            if i < k - 1:
                # account for the heavy letter at position i + 1
                h = hx[i]
                acc_x += X.units(i + 1, h)
                acc_y += Y.units(i + 1, h)
                run.append(h)
            if not B[i]:
                continue
            hstr = "".join(reversed(run))
            per_letter: list[list[SolidFactorRep]] = [[] for _ in cand]
            for rep in B[i]:
                first_failed = True
                for si, (s, ux) in enumerate(cand):
                    p1 = rep.p1 + acc_x + ux
                    if p1 > zp_units:
                        break
                    first_failed = False
                    p2 = rep.p2 + acc_y + Y.units(k, s)
                    if p2 <= z_units:
                        per_letter[si].append(
                            SolidFactorRep(rep.letters + hstr + s, p1, p2)
                        )
                if first_failed:
                    # even the heaviest non-heavy letter fails; later
                    # elements have smaller probability, so give up on B_i
                    break
            streams.extend(lst for lst in per_letter if lst)
        B[k] = list(heapq.merge(*streams, key=lambda r: r.p1))
    return B


def light_suffixes(
    X: WeightedSequence, Y: WeightedSequence, z: ProbThreshold, zp_units: int
) -> list[list[SolidFactorRep]]:
    """Lists S_0..S_n of common 1/z-solid suffixes light in X, by length."""
    rev = lambda W: WeightedSequence(W.alphabet, list(reversed(W.rows)))
    B = light_prefixes(rev(X), rev(Y), z, zp_units)
    return [
        [SolidFactorRep(r.letters[::-1], r.p1, r.p2) for r in lst] for lst in B
    ]


def _orient(rep: SolidFactorRep, primary_is_x: bool) -> SolidFactorRep:
    if primary_is_x:
        return rep
    return SolidFactorRep(rep.letters, rep.p2, rep.p1)


def _thresholds(inst: SdwcInstance) -> tuple[int, int]:
    """(zl_units, zr_units) with zl + zr = z so that z_l * z_r >= z."""
    lam = max(inst.lam, 1)
    lam_units = round(math.log2(lam) * neglog.SCALE) if lam > 1 else 0
    zr = (inst.z.units + lam_units + 1) // 2
    zl = max(inst.z.units - zr, 0)
    return zl, zr


def build_L_R(inst: SdwcInstance, U: str, V: str):
    """Prefix lists L_1..L_{n+1} and suffix lists R_1..R_{n+1}.

    L_i: light sqrt(lambda/z)-solid prefixes of U of length i-1
    extended by one letter at i, kept when common 1/z-solid, sorted by
    probability in U.  R_i: common 1/z-solid suffixes of length n-i+1
    light 1/sqrt(z lambda)-solid in V, sorted by probability in V.
    All reps are absolute: p1 in X, p2 in Y.
    """
    X, Y, z = inst.X, inst.Y, inst.z
    n = inst.n
    zl_units, zr_units = _thresholds(inst)
    u_seq, u_other = (X, Y) if U == "X" else (Y, X)
    v_seq, v_other = (X, Y) if V == "X" else (Y, X)
    u_key = (lambda r: r.p1) if U == "X" else (lambda r: r.p2)
    v_key = (lambda r: r.p1) if V == "X" else (lambda r: r.p2)

    Bp = light_prefixes(u_seq, u_other, z, zl_units)
    L: list[list[SolidFactorRep]] = [[] for _ in range(n + 2)]
    for i in range(1, n + 1):
        base = [_orient(r, U == "X") for r in Bp[i - 1]]
        streams = []
        for s, _ in X.sorted_rows[i - 1]:
            ux = X.units(i, s)
            uy = Y.units(i, s)
            lst = [
                SolidFactorRep(r.letters + s, r.p1 + ux, r.p2 + uy)
                for r in base
                if r.p1 + ux <= z.units and r.p2 + uy <= z.units
            ]
            if lst:
                streams.append(lst)
        L[i] = list(heapq.merge(*streams, key=u_key))
    L[n + 1] = []

    Bs = light_suffixes(v_seq, v_other, z, zr_units)
    R: list[list[SolidFactorRep]] = [[] for _ in range(n + 2)]
    for i in range(1, n + 2):
        R[i] = [_orient(r, V == "X") for r in Bs[n - i + 1]]
    return L, R


def basic_intervals(n: int) -> list[tuple[int, int, int]]:
    """All (a, b, layer) with 2^layer | a-1 and b = min(n+1, a+2^layer-1)."""
    out = []
    j = 0
    while True:
        for a in range(1, n + 2, 1 << j):
            out.append((a, min(n + 1, a + (1 << j) - 1), j))
        if (1 << j) >= n + 1:
            return out
        j += 1


def star_lists(inst: SdwcInstance, L, R, U: str, V: str):
    """L*_{a,b} and R*_{a,b} over all basic intervals, as (a, b) dicts.

    Layer 0 equals L_a / R_a; a parent list extends its left child's
    prefixes (prepends its right child's suffixes) with letters heavy
    in V and merges with the other child.
    """
    X, Y = inst.X, inst.Y
    n = inst.n
    z_units = inst.z.units
    v_seq = X if V == "X" else Y
    hv = [v_seq.heavy(i) for i in range(1, n + 1)]
    hv_x = [X.units(i, hv[i - 1]) for i in range(1, n + 1)]
    hv_y = [Y.units(i, hv[i - 1]) for i in range(1, n + 1)]
    u_key = (lambda r: r.p1) if U == "X" else (lambda r: r.p2)
    v_key = (lambda r: r.p1) if V == "X" else (lambda r: r.p2)

    l_star = {}
    r_star = {}
    for a in range(1, n + 2):
        l_star[(a, a)] = L[a]
        r_star[(a, a)] = R[a]
    j = 1
    while (1 << (j - 1)) <= n:
        step = 1 << j
        for a in range(1, n + 2, step):
            b = min(n + 1, a + step - 1)
            c = a + (1 << (j - 1)) - 1
            if c >= b:
                continue  # the interval coincides with its left child
            hseg = "".join(hv[c: min(b, n)])
            add_x = sum(hv_x[c: min(b, n)])
            add_y = sum(hv_y[c: min(b, n)])
            ext = [
                SolidFactorRep(r.letters + hseg, r.p1 + add_x, r.p2 + add_y)
                for r in l_star[(a, c)]
                if r.p1 + add_x <= z_units and r.p2 + add_y <= z_units
            ]
            l_star[(a, b)] = list(heapq.merge(ext, l_star[(c + 1, b)], key=u_key))
            pseg = "".join(hv[a - 1: c])
            pre_x = sum(hv_x[a - 1: c])
            pre_y = sum(hv_y[a - 1: c])
            ext2 = [
                SolidFactorRep(pseg + r.letters, r.p1 + pre_x, r.p2 + pre_y)
                for r in r_star[(c + 1, b)]
                if r.p1 + pre_x <= z_units and r.p2 + pre_y <= z_units
            ]
            r_star[(a, b)] = list(heapq.merge(r_star[(a, c)], ext2, key=v_key))
        j += 1
    return l_star, r_star


def meet(L, R, z: ProbThreshold) -> str | None:
    """Concatenation of a prefix from L and a suffix from R solid in both.

    Dominated elements are dropped (someone else is more probable on
    both sides), then a two-pointer sweep pairs each prefix with the
    most probable admissible suffix.
    """
    for lst in (L, R):
        if lst and len({len(r.letters) for r in lst}) != 1:
            raise DomainError("meet requires uniform factor lengths per list")
    if not L or not R:
        return None
    z_units = z.units

    def front(lst):
        out = []
        for r in sorted(lst, key=lambda r: (r.p1, r.p2)):
            if out and out[-1].p2 <= r.p2:
                continue
            while out and out[-1].p1 == r.p1 and out[-1].p2 > r.p2:
                out.pop()
            if out and out[-1].p2 <= r.p2:
                continue
            out.append(r)
        return out

    left = front(L)
    right = front(R)
    ptr = len(right) - 1
    for l in left:  # p1 ascending, so the suffix budget only shrinks
        budget = z_units - l.p1
        while ptr >= 0 and right[ptr].p1 > budget:
            ptr -= 1
        if ptr < 0:
            return None
        r = right[ptr]
        if l.p2 + r.p2 <= z_units:
            return l.letters + r.letters
    return None


def solve(inst: SdwcInstance) -> str | None:
    """A consensus string of the instance, or None.

    Tries the four orientation choices in a fixed order; within each,
    a divide-and-conquer over basic intervals meets prefix and suffix
    star lists at every split.  The first verified witness wins.
    """
    n = inst.n
    if n == 0:
        return ""
    z_units = inst.z.units
    top_layer = max(0, (n).bit_length())
    for U in ("X", "Y"):
        for V in ("X", "Y"):
            L, R = build_L_R(inst, U, V)
            l_star, r_star = star_lists(inst, L, R, U, V)

            def rec(a: int, b: int, j: int) -> str | None:
                if a >= b or j == 0:
                    return None
                c = a + (1 << (j - 1)) - 1
                if c >= b:
                    return rec(a, b, j - 1)
                s = meet(l_star[(a, c)], r_star[(c + 1, b)], inst.z)
                if s is not None:
                    return s
                return rec(a, c, j - 1) or rec(c + 1, b, j - 1)

            s = rec(1, n + 1, top_layer)
            if s is not None and match_neglog(s, inst.X) <= z_units \
                    and match_neglog(s, inst.Y) <= z_units:
                return s
    return None


def solve_fast(inst: SdwcInstance, k: int) -> str | None:
    """Same answer as solve, via the rank-parameterized knapsack path."""
    from . import knapsack
    from .consensus import _decode, wc_to_knapsack

    ki, letters = wc_to_knapsack(inst.X, inst.Y, inst.z)
    if ki is None:
        return None
    choice = knapsack.solve_k(ki, k)
    if choice is None:
        return None
    return _decode(choice, letters)
