import math
import random

from flipforge.generators import (
    checkerboard_demo,
    edgebound,
    k4,
    lower4c,
    lowerham,
    octahedron,
    random_by_flip_walk,
    stacked_random,
    wheel5,
)


def fuzz(count: int, n_min: int = 4, n_max: int = 60, seed: int = 0, steps: int | None = None):
    """Seeded triangulations: half flip walks, half stacked, n uniform in range."""
    rng = random.Random(seed)
    for k in range(count):
        n = rng.randint(n_min, n_max)
        s = rng.randrange(1 << 30)
        if k % 2:
            yield stacked_random(n - 4, s)
        else:
            yield random_by_flip_walk(n, steps if steps is not None else 3 * n, s)


def families(max_param: int = 3):
    yield k4()
    yield wheel5()
    yield octahedron()
    yield checkerboard_demo()
    for i in range(max_param + 1):
        yield edgebound(i)
        yield stacked_random(i + 2, i)
    for i in range(1, max_param + 1):
        yield lower4c(i)
        yield lowerham(i)


def log_uniform(rng: random.Random, lo: int, hi: int) -> int:
    return min(hi, int(math.exp(rng.uniform(math.log(lo), math.log(hi + 1)))))


# (criterion, passed, detail) lines collected by the acceptance suite
ACCEPTANCE: list[tuple[int, bool, str]] = []
