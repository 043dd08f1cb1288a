"""Parsing and serialization of instance files.

Three whitespace-separated, line-oriented formats:

  PROFILE <m> <alphabet>   followed by m rows of sigma integer scores
  PWM <n> <alphabet>       followed by n rows of sigma probabilities
  MCK <n> <V> <W>          followed, per class, by a line with the
                           class size and one `<v> <w>` line per item

Lines starting with `#` and blank lines are ignored.  Errors carry
1-based line numbers of the original file.  Serialization is the
exact inverse on files produced by the generator: parse then
serialize is byte-identical.
"""

from __future__ import annotations

from .capacity import MAX_ABS_MAGNITUDE, MAX_ITEMS
from .errors import ParseError
from .knapsack import KnapsackInstance, make_instance
from .profile import ScoringMatrix
from .weighted import WeightedSequence, from_probabilities


def _logical_lines(text: str):
    for num, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield num, line


class _Lines:
    def __init__(self, text: str):
        self._it = _logical_lines(text)
        self.last = 0

    def next(self, what: str) -> str:
        try:
            self.last, line = next(self._it)
            return line
        except StopIteration:
            raise ParseError(f"unexpected end of file, expected {what}", self.last) from None

    def expect_end(self) -> None:
        try:
            num, line = next(self._it)
        except StopIteration:
            return
        raise ParseError(f"trailing content: {line!r}", num)


def _int(token: str, lines: _Lines, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected an integer {what}, got {token!r}", lines.last) from None


def _float(token: str, lines: _Lines, what: str) -> float:
    try:
        return float(token)
    except ValueError:
        raise ParseError(f"expected a number {what}, got {token!r}", lines.last) from None


def _check_alphabet(alphabet: str, lines: _Lines) -> None:
    if len(set(alphabet)) != len(alphabet):
        raise ParseError(f"alphabet has repeated letters: {alphabet!r}", lines.last)
    if any(c in alphabet for c in "#\x00\x01"):
        raise ParseError("alphabet contains a reserved character", lines.last)


def parse_profile(text: str) -> ScoringMatrix:
    lines = _Lines(text)
    header = lines.next("PROFILE header").split()
    if len(header) != 3 or header[0] != "PROFILE":
        raise ParseError("expected header `PROFILE <m> <alphabet>`", lines.last)
    m = _int(header[1], lines, "length")
    alphabet = header[2]
    _check_alphabet(alphabet, lines)
    if not (1 <= m < MAX_ITEMS):
        raise ParseError(f"profile length {m} out of range [1, {MAX_ITEMS})", lines.last)
    rows = []
    for _ in range(m):
        tokens = lines.next("a score row").split()
        if len(tokens) != len(alphabet):
            raise ParseError(
                f"expected {len(alphabet)} scores, got {len(tokens)}", lines.last
            )
        row = tuple(_int(t, lines, "score") for t in tokens)
        for s in row:
            if abs(s) >= MAX_ABS_MAGNITUDE:
                raise ParseError(f"score magnitude {s} exceeds 2^40", lines.last)
        rows.append(row)
    lines.expect_end()
    return ScoringMatrix(alphabet, tuple(rows))


def serialize_profile(profile: ScoringMatrix) -> str:
    out = [f"PROFILE {profile.m} {profile.alphabet}"]
    out.extend(" ".join(str(s) for s in row) for row in profile.scores)
    return "\n".join(out) + "\n"


def parse_pwm(text: str) -> WeightedSequence:
    lines = _Lines(text)
    header = lines.next("PWM header").split()
    if len(header) != 3 or header[0] != "PWM":
        raise ParseError("expected header `PWM <n> <alphabet>`", lines.last)
    n = _int(header[1], lines, "length")
    alphabet = header[2]
    _check_alphabet(alphabet, lines)
    if not (1 <= n < MAX_ITEMS):
        raise ParseError(f"sequence length {n} out of range [1, {MAX_ITEMS})", lines.last)
    rows = []
    for _ in range(n):
        tokens = lines.next("a probability row").split()
        if len(tokens) != len(alphabet):
            raise ParseError(
                f"expected {len(alphabet)} probabilities, got {len(tokens)}", lines.last
            )
        row = []
        for t in tokens:
            p = _float(t, lines, "probability")
            if not (0.0 <= p <= 1.0):
                raise ParseError(f"probability {p} outside [0, 1]", lines.last)
            row.append(p)
        rows.append(row)
    lines.expect_end()
    try:
        return from_probabilities(alphabet, rows)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def serialize_pwm(x: WeightedSequence) -> str:
    from . import neglog

    prob_rows = getattr(x, "prob_rows", None)
    if prob_rows is None:
        prob_rows = [
            [neglog.to_probability(row.get(c, neglog.INF)) for c in x.alphabet]
            for row in x.rows
        ]
    out = [f"PWM {x.n} {x.alphabet}"]
    out.extend(" ".join(repr(p) for p in row) for row in prob_rows)
    return "\n".join(out) + "\n"


def parse_mck(text: str) -> KnapsackInstance:
    lines = _Lines(text)
    header = lines.next("MCK header").split()
    if len(header) != 4 or header[0] != "MCK":
        raise ParseError("expected header `MCK <n> <V> <W>`", lines.last)
    n = _int(header[1], lines, "class count")
    V = _int(header[2], lines, "value threshold")
    W = _int(header[3], lines, "weight threshold")
    if not (1 <= n < MAX_ITEMS):
        raise ParseError(f"class count {n} out of range [1, {MAX_ITEMS})", lines.last)
    classes = []
    total = 0
    for _ in range(n):
        size = _int(lines.next("a class size").strip(), lines, "class size")
        if size < 1:
            raise ParseError(f"class size must be positive, got {size}", lines.last)
        total += size
        if total >= MAX_ITEMS:
            raise ParseError(f"total item count exceeds {MAX_ITEMS}", lines.last)
        cls = []
        for _ in range(size):
            tokens = lines.next("an item `<v> <w>`").split()
            if len(tokens) != 2:
                raise ParseError(f"expected `<v> <w>`, got {tokens!r}", lines.last)
            v = _int(tokens[0], lines, "item value")
            w = _int(tokens[1], lines, "item weight")
            if abs(v) >= MAX_ABS_MAGNITUDE or abs(w) >= MAX_ABS_MAGNITUDE:
                raise ParseError("item magnitude exceeds 2^40", lines.last)
            cls.append((v, w))
        classes.append(cls)
    lines.expect_end()
    return make_instance(classes, V, W)


def serialize_mck(inst: KnapsackInstance) -> str:
    out = [f"MCK {inst.n} {inst.V} {inst.W}"]
    for cls in inst.classes:
        out.append(str(len(cls)))
        out.extend(f"{it.v} {it.w}" for it in cls)
    return "\n".join(out) + "\n"
