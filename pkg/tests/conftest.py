import random

import pytest
from hypothesis import settings

settings.register_profile("det", derandomize=True, deadline=None)
settings.load_profile("det")

from paulisched.flows import FlowNetwork, ScaledFlow


def make_fractional_case(rng: random.Random) -> tuple[FlowNetwork, ScaledFlow]:
    """Random two-layer network with a feasible, conservative fractional flow.

    Starts from an integral flow on the complete bipartite middle layer and
    perturbs it around random 4-cycles by fractional amounts; row and column
    sums (the terminal-edge flows) stay integral throughout, and capacities
    are drawn at or above the final flow, so the seed is always valid.
    """
    d = rng.randint(2, 32)
    a = rng.randint(1, 5)
    b = rng.randint(1, 5)
    mid = {(i, j): 0 for i in range(a) for j in range(b)}
    for i in range(a):
        for _ in range(rng.randint(0, 3)):
            mid[(i, rng.randrange(b))] += d
    if a >= 2 and b >= 2:
        for _ in range(rng.randint(0, 12)):
            i1, i2 = rng.sample(range(a), 2)
            j1, j2 = rng.sample(range(b), 2)
            t = rng.randint(1, d - 1)
            if mid[(i1, j2)] >= t and mid[(i2, j1)] >= t:
                mid[(i1, j1)] += t
                mid[(i1, j2)] -= t
                mid[(i2, j2)] += t
                mid[(i2, j1)] -= t

    source, sink = 0, a + b + 1
    edges: list[tuple[int, int, int]] = []
    nums: list[int] = []
    for i in range(a):
        row = sum(mid[(i, j)] for j in range(b))
        assert row % d == 0
        edges.append((source, 1 + i, row // d + rng.randint(0, 2)))
        nums.append(row)
    for (i, j), f in sorted(mid.items()):
        edges.append((1 + i, 1 + a + j, -(-f // d) + rng.randint(0, 2)))
        nums.append(f)
    for j in range(b):
        col = sum(mid[(i, j)] for i in range(a))
        assert col % d == 0
        edges.append((1 + a + j, sink, col // d + rng.randint(0, 2)))
        nums.append(col)
    return FlowNetwork(a + b + 2, source, sink, tuple(edges)), ScaledFlow(d, tuple(nums))


@pytest.fixture
def fractional_case_maker():
    return make_fractional_case
