"""Suffix-array text index answering lcp(i, j) queries in O(1).

The index holds the suffix array, its inverse, the LCP table (Kasai)
and a sparse-table range-minimum structure.  Construction is
O(n log n) via numpy prefix doubling; queries use 1-based positions
throughout, matching the rest of the package.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError

# Reserved sentinel used to join two texts; lexicographically below
# every printable letter.  Parsers reject user input containing it.
SEPARATOR = "\x00"

try:
    import numba

    @numba.njit(cache=True)
    def _kasai(codes, sa):  # pragma: no cover - exercised via wrapper
        n = len(codes)
        rank = np.empty(n, dtype=np.int64)
        for r in range(n):
            rank[sa[r]] = r
        lcp = np.zeros(max(n - 1, 0), dtype=np.int64)
        k = 0
        for i in range(n):
            r = rank[i]
            if r == n - 1:
                k = 0
                continue
            j = sa[r + 1]
            while i + k < n and j + k < n and codes[i + k] == codes[j + k]:
                k += 1
            lcp[r] = k
            if k:
                k -= 1
        return lcp

except ImportError:  # pragma: no cover
    def _kasai(codes, sa):
        n = len(codes)
        rank = np.empty(n, dtype=np.int64)
        rank[sa] = np.arange(n)
        lcp = np.zeros(max(n - 1, 0), dtype=np.int64)
        k = 0
        for i in range(n):
            r = rank[i]
            if r == n - 1:
                k = 0
                continue
            j = sa[r + 1]
            while i + k < n and j + k < n and codes[i + k] == codes[j + k]:
                k += 1
            lcp[r] = k
            if k:
                k -= 1
        return lcp


def _encode(text: str) -> np.ndarray:
    return np.frombuffer(text.encode("utf-32-le"), dtype="<u4").astype(np.int64)


def _suffix_array(codes: np.ndarray) -> np.ndarray:
    """Prefix-doubling suffix array, O(n log n) lexsort rounds.

    Ranks fit int32 (n < 2^31), which roughly halves the sort's
    memory traffic compared to int64 keys.
    """
    n = len(codes)
    rank = codes.astype(np.int32)
    sa = np.argsort(rank, kind="stable")
    k = 1
    while k < n:
        key2 = np.full(n, -1, dtype=np.int32)
        key2[: n - k] = rank[k:]
        sa = np.lexsort((key2, rank))
        new_rank = np.empty(n, dtype=np.int32)
        new_rank[sa[0]] = 0
        prev, cur = sa[:-1], sa[1:]
        diff = (rank[cur] != rank[prev]) | (key2[cur] != key2[prev])
        new_rank[cur] = np.cumsum(diff, dtype=np.int32)
        rank = new_rank
        if rank[sa[-1]] == n - 1:
            break
        k *= 2
    return sa


class _SparseTable:
    """Range-minimum structure: O(n log n) space, O(1) query."""

    def __init__(self, values: np.ndarray):
        self._levels = [values]
        n = len(values)
        k = 1
        while (1 << k) <= n:
            half = 1 << (k - 1)
            prev = self._levels[-1]
            self._levels.append(np.minimum(prev[: n - (1 << k) + 1], prev[half: n - half + 1]))
            k += 1

    def query(self, lo: int, hi: int) -> int:
        """Minimum over the inclusive index range [lo, hi]."""
        k = (hi - lo + 1).bit_length() - 1
        level = self._levels[k]
        return int(min(level[lo], level[hi - (1 << k) + 1]))

    def query_batch(self, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
        """Vectorized `query` over parallel arrays of inclusive ranges."""
        out = np.empty(len(lo), dtype=np.int64)
        if len(lo) == 0:
            return out
        # frexp is exact on integers below 2^53, unlike log2 rounding
        ks = np.frexp((hi - lo + 1).astype(np.float64))[1] - 1
        for k in np.unique(ks):
            mask = ks == k
            level = self._levels[k]
            out[mask] = np.minimum(level[lo[mask]], level[hi[mask] - (1 << k) + 1])
        return out


class LcpIndex:
    """Longest-common-prefix oracle over a fixed text (1-based)."""

    def __init__(self, text: str):
        if len(text) == 0:
            raise DomainError("cannot index an empty text")
        self.text = text
        self.n = len(text)
        codes = _encode(text)
        sa = _suffix_array(codes)
        self.suffix_array = sa
        inverse = np.empty(self.n, dtype=np.int64)
        inverse[sa] = np.arange(self.n)
        self.inverse_sa = inverse
        self.lcp_table = _kasai(codes, sa)
        self._rmq = _SparseTable(self.lcp_table) if self.n > 1 else None

    def lcp(self, i: int, j: int) -> int:
        """Length of the longest common prefix of text[i..n] and text[j..n]."""
        n = self.n
        if not (1 <= i <= n) or not (1 <= j <= n):
            raise DomainError(f"lcp position out of range: ({i}, {j}), n={n}")
        if i == j:
            return n - i + 1
        ri = int(self.inverse_sa[i - 1])
        rj = int(self.inverse_sa[j - 1])
        if ri > rj:
            ri, rj = rj, ri
        return self._rmq.query(ri, rj - 1)

    def lcp_batch(self, i: int, js: np.ndarray) -> np.ndarray:
        """`lcp(i, j)` for every j in `js` at once (1-based positions)."""
        n = self.n
        js = np.asarray(js, dtype=np.int64)
        if not (1 <= i <= n) or (len(js) and not (1 <= js.min() and js.max() <= n)):
            raise DomainError(f"lcp position out of range, n={n}")
        if self._rmq is None:
            return np.full(len(js), n - i + 1, dtype=np.int64)
        ri = int(self.inverse_sa[i - 1])
        rj = self.inverse_sa[js - 1]
        lo = np.minimum(ri, rj)
        hi = np.maximum(ri, rj) - 1
        out = self._rmq.query_batch(lo, np.maximum(hi, lo))  # j == i gives hi < lo
        out[js == i] = n - i + 1
        return out


class CrossLcpIndex:
    """lcp queries between suffixes of a pattern and suffixes of a text.

    Indexes the concatenation pattern + SEPARATOR + text; the separator
    is smaller than every user letter and never matches, so results are
    automatically truncated at the end of the pattern.
    """

    def __init__(self, pattern: str, text: str):
        if SEPARATOR in pattern or SEPARATOR in text:
            raise DomainError("input contains the reserved separator character")
        self.m = len(pattern)
        self.n = len(text)
        self._index = LcpIndex(pattern + SEPARATOR + text)

    def cross_lcp(self, i: int, j: int) -> int:
        """lcp of pattern[i..m] and text[j..n]."""
        if not (1 <= i <= self.m):
            raise DomainError(f"pattern position out of range: {i}")
        if not (1 <= j <= self.n):
            raise DomainError(f"text position out of range: {j}")
        return self._index.lcp(i, self.m + 1 + j)

    def cross_lcp_batch(self, i: int, js: np.ndarray) -> np.ndarray:
        """`cross_lcp(i, j)` for every text position j in `js` at once."""
        if not (1 <= i <= self.m):
            raise DomainError(f"pattern position out of range: {i}")
        return self._index.lcp_batch(i, np.asarray(js, dtype=np.int64) + self.m + 1)


def build_index(text: str) -> LcpIndex:
    return LcpIndex(text)


def build_cross_index(pattern: str, text: str) -> CrossLcpIndex:
    return CrossLcpIndex(pattern, text)


def naive_lcp(a: str, b: str) -> int:
    """Character-by-character common-prefix length (test oracle)."""
    k = 0
    for x, y in zip(a, b):
        if x != y:
            break
        k += 1
    return k
