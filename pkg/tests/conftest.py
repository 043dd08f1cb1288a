"""Shared random-instance builders for the test suite."""

import random

import pytest

from uncertainmatch import knapsack as K
from uncertainmatch.weighted import from_probabilities


def random_knapsack(rng, max_n=4, max_lam=4, v_hi=20, t_hi=40):
    n = rng.randint(1, max_n)
    classes = [
        [(rng.randint(0, v_hi), rng.randint(0, v_hi)) for _ in range(rng.randint(1, max_lam))]
        for _ in range(n)
    ]
    return K.make_instance(classes, rng.randint(0, t_hi), rng.randint(0, t_hi))


def random_rows(rng, n, sigma, allow_empty=False, deficit=False):
    rows = []
    for _ in range(n):
        k = rng.randint(0 if allow_empty else 1, len(sigma))
        letters = rng.sample(sigma, k)
        raw = [rng.random() for _ in letters]
        total = sum(raw) or 1.0
        if deficit:
            total /= min(1.0, rng.uniform(0.5, 1.0))
        rows.append({s: x / total for s, x in zip(letters, raw)})
    return rows


def random_weighted(rng, n, sigma="acgt", allow_empty=False, deficit=False):
    return from_probabilities(sigma, random_rows(rng, n, sigma, allow_empty, deficit))


def random_dissimilar(rng, n, z, sigma="acgt"):
    """An SDWC instance whose heavy strings differ everywhere."""
    from uncertainmatch.sdwc import SdwcInstance

    x = from_probabilities(sigma, random_rows(rng, n, sigma))
    rows_y = []
    for i in range(1, n + 1):
        hx = x.heavy(i)
        b = rng.choice([s for s in sigma if s != hx])
        others = [s for s in sigma if s != b and rng.random() < 0.7]
        weights = [rng.uniform(0.0, 0.4) for _ in others]
        total = 0.6 + sum(weights)
        row = {b: 0.6 / total}
        row.update({s: w / total for s, w in zip(others, weights)})
        rows_y.append(row)
    y = from_probabilities(sigma, rows_y)
    return SdwcInstance(x, y, z)


def random_string(rng, n, sigma="acgt"):
    return "".join(rng.choice(sigma) for _ in range(n))


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
