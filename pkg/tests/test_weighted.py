import math

import pytest

from uncertainmatch import neglog
from uncertainmatch.errors import CapacityError, DomainError
from uncertainmatch.reference import enumerate_solid_strings, hamming, naive_wpm
from uncertainmatch.weighted import (
    ProbThreshold,
    from_probabilities,
    heavy_string,
    match_neglog,
    maximal_solid_prefixes,
    prune,
    wpm,
)

from conftest import random_string, random_weighted


def fig_sequence():
    """The running four-position example: many strings, two of them maximal."""
    return from_probabilities(
        "ab", [{"a": 0.5, "b": 0.5}, {"a": 1.0}, {"a": 0.75, "b": 0.25}, {"b": 1.0}]
    )


def test_neglog_dyadic_exact():
    assert neglog.from_probability(1.0) == 0
    assert neglog.from_probability(0.5) == 1 << 32
    assert neglog.from_probability(0.25) == 2 << 32
    assert neglog.from_probability(0.75) == round(-math.log2(0.75) * (1 << 32))
    assert neglog.from_probability(0.0) == neglog.INF


def test_from_probabilities_shape():
    x = fig_sequence()
    assert x.n == 4
    assert x.lam == 2
    assert x.total_size == 6


def test_from_probabilities_rejects():
    with pytest.raises(DomainError):
        from_probabilities("ab", [{"a": -0.1}])
    with pytest.raises(DomainError):
        from_probabilities("ab", [{"a": 0.7, "b": 0.7}])


def test_prune():
    x = fig_sequence()
    z2 = ProbThreshold.from_z(2)
    pruned = prune(x, z2)
    assert "b" not in pruned.rows[2]  # 1/4 < 1/2
    assert "a" in pruned.rows[2]
    z1 = ProbThreshold.from_z(1)
    assert [set(r) for r in prune(x, z1).rows] == [set(), {"a"}, set(), {"b"}]
    zinf = ProbThreshold.from_z(math.inf)
    assert prune(x, zinf) == x


def test_heavy_string_tie_break():
    assert heavy_string(fig_sequence()) == "aaab"


def test_match_neglog_values():
    x = fig_sequence()
    assert match_neglog("aaab", x) == neglog.from_probability(0.375)
    assert match_neglog("abab", x) == neglog.INF
    ones = from_probabilities("ab", [{"a": 1.0}, {"b": 1.0}])
    assert match_neglog("ab", ones) == 0
    with pytest.raises(DomainError):
        match_neglog("a", x)


def test_wpm_fig_examples():
    x = fig_sequence()
    assert wpm("aa", x, ProbThreshold.from_z(2)) == [1, 2]
    assert wpm("b", x, ProbThreshold.from_z(4)) == [1, 3, 4]
    assert wpm("c", from_probabilities("abc", [{"a": 1.0}]), ProbThreshold.from_z(4)) == []


def test_wpm_equals_naive(rng):
    for _ in range(300):
        n = rng.randint(1, 40)
        m = rng.randint(1, min(6, n))
        t = random_weighted(rng, n, allow_empty=True)
        pattern = random_string(rng, m)
        z = ProbThreshold.from_z(rng.choice([2, 4, 16, 256, 1024]))
        assert wpm(pattern, t, z) == naive_wpm(pattern, t, z)


def test_wpm_mismatch_bound(rng):
    for _ in range(100):
        n = rng.randint(2, 30)
        m = rng.randint(1, min(6, n))
        z = ProbThreshold.from_z(rng.choice([4, 16, 64]))
        t = prune(random_weighted(rng, n), z)
        pattern = random_string(rng, m)
        try:
            h = heavy_string(t)
        except DomainError:
            continue  # a row lost all letters; no occurrences possible anyway
        for p in wpm(pattern, t, z):
            assert hamming(pattern, h[p - 1: p + m - 1]) <= z.log2_floor


def test_maximal_solid_prefixes_fig():
    got = maximal_solid_prefixes(fig_sequence(), ProbThreshold.from_z(4))
    assert sorted(got) == ["aaab", "baab"]


def test_maximal_solid_prefixes_forced():
    x = from_probabilities("ab", [{"a": 1.0}, {"b": 1.0}])
    assert maximal_solid_prefixes(x, ProbThreshold.from_z(1)) == ["ab"]


def test_maximal_solid_prefix_count_bound(rng):
    for _ in range(200):
        z = ProbThreshold.from_z(rng.choice([2, 4, 8, 32, 128]))
        x = random_weighted(rng, rng.randint(1, 8), allow_empty=True)
        assert len(maximal_solid_prefixes(x, z)) <= z.display


def test_solid_prefix_guard():
    x = fig_sequence()
    with pytest.raises(CapacityError):
        maximal_solid_prefixes(x, ProbThreshold.from_z(2.0 ** 40))


def test_enumerate_solid_strings_fig():
    got = dict(enumerate_solid_strings(fig_sequence(), ProbThreshold.from_z(4)))
    assert set(got) == {"aaab", "baab"}
    assert got["aaab"] == neglog.from_probability(0.375)
    assert got["baab"] == neglog.from_probability(0.375)
