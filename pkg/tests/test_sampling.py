import numpy as np

from findim.modrep import check_module
from findim.sampling import random_module, random_representation


def test_representations_satisfy_relations(ws):
    a = ws.algebra("SQUARE")
    rng = np.random.default_rng(5)
    made = 0
    for _ in range(20):
        m = random_representation(a, {"1": 1, "2": 2, "3": 1, "4": 2}, rng)
        if m is not None:
            made += 1
            assert not check_module(m)
    assert made > 0


def test_loops_fall_back(ws):
    # a*a is not linear in a, the solver declines
    a = ws.algebra("LOOP2")
    assert random_representation(a, {"1": 2}, np.random.default_rng(0)) is None
    assert random_module(a, 0, 4).dim > 0


def test_seeded(ws):
    a = ws.algebra("A2")
    x = random_module(a, 9, 6)
    y = random_module(a, 9, 6)
    assert np.array_equal(x.action, y.action)
