import random

import pytest

from cyclesolve import Cycle, Derangement, PermSet, apply_cycle_set
from cyclesolve.instances import gen_instance, load_example2


@pytest.fixture(scope="session")
def ex2():
    """The bundled 20-vertex benchmark matrix."""
    return load_example2()


@pytest.fixture(scope="session")
def d_cyclic():
    return Derangement.cyclic(20)


@pytest.fixture(scope="session")
def d_after_first(d_cyclic):
    """Derangement after the first greedy improvement on the cyclic start."""
    return apply_cycle_set(d_cyclic, PermSet.of((1, 6, 13, 19, 2, 14, 16)))


@pytest.fixture(scope="session")
def d_after_second(d_after_first):
    return apply_cycle_set(d_after_first, PermSet.of((4, 15, 17, 9, 2, 5, 6)))


@pytest.fixture(scope="session")
def d_cover_234():
    """Value-234 derangement with slack ties at vertices 11 and 15."""
    return Derangement([7, 8, 11, 16, 17, 14, 5, 1, 4, 12, 9, 20, 19, 13, 18, 6, 10, 15, 3, 2])


@pytest.fixture(scope="session")
def d_tour_213():
    """A value-213 tour at which greedy improvement is exhausted."""
    return Derangement([7, 8, 11, 17, 18, 14, 5, 1, 4, 12, 9, 20, 19, 13, 16, 6, 10, 15, 3, 2])


@pytest.fixture(scope="session")
def d_apopt_212(d_tour_213):
    """The assignment optimum: the 213 tour improved by the final -1 cycle."""
    return apply_cycle_set(d_tour_213, PermSet.of((11, 12, 20, 18, 6, 13)))


def random_derangement(n: int, rng: random.Random) -> Derangement:
    while True:
        perm = list(range(1, n + 1))
        rng.shuffle(perm)
        if all(perm[i] != i + 1 for i in range(n)):
            return Derangement(perm)


def random_cycle(n: int, rng: random.Random, max_len: int | None = None) -> Cycle:
    k = rng.randint(2, max_len or n)
    return Cycle(tuple(rng.sample(range(1, n + 1), k)))


@pytest.fixture
def rng():
    return random.Random(12345)


def make_instance(n: int, seed: int, max_cost: int = 99):
    return gen_instance(n, max_cost, seed)
