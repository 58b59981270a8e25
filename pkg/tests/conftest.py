import random

import pytest

from posetval import Dyadic, Poset, SimpleValuation


@pytest.fixture
def m4():
    """Diamond: bot below incomparable a, b below top."""
    return Poset(["bot", "a", "b", "top"],
                 [("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")],
                 "bot")


@pytest.fixture
def c3():
    return Poset(["c0", "c1", "c2"], [("c0", "c1"), ("c1", "c2")], "c0")


def make_chain(length):
    names = ["c%d" % i for i in range(length)]
    return Poset(names, list(zip(names, names[1:])), names[0])


def random_poset(rng: random.Random, max_elements=6) -> Poset:
    """Random order on e0..ek with e0 as bottom; acyclic by index order."""
    n = rng.randint(1, max_elements)
    names = ["e%d" % i for i in range(n)]
    covers = [("e0", x) for x in names[1:]]
    for i in range(1, n):
        for j in range(i + 1, n):
            if rng.random() < 0.4:
                covers.append((names[i], names[j]))
    return Poset(names, covers, "e0")


def random_valuation(rng: random.Random, base: Poset, exp=4,
                     probability=False) -> SimpleValuation:
    """Weights are unit multiples of 2^-exp spread over random elements."""
    units = (1 << exp) if probability else rng.randint(0, 1 << exp)
    weights = {}
    for _ in range(units):
        x = rng.choice(base.elements)
        weights[x] = weights.get(x, Dyadic(0, 0)) + Dyadic(1, exp)
    return SimpleValuation(base, weights)


def random_monotone_integrand(rng: random.Random, base: Poset, exp=4):
    """f(x) = max of raw random values over the down-set of x."""
    raw = {x: Dyadic(rng.randint(0, 1 << exp), exp) for x in base.elements}
    return {x: max((raw[y] for y in base.down_set(x)), default=raw[x])
            for x in base.elements}
