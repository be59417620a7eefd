import random

import pytest

from sqfree_bn.algebra.generators import (
    holonomy_grid,
    random_cm_module,
    random_holonomies,
    random_module,
)
from sqfree_bn.algebra.simplicial import build_named, genus, max_independent_connected_complement
from sqfree_bn.algebra.sqfree import (
    is_cm_module,
    is_indecomposable,
    is_locally_rank_one,
    riemann_roch_check,
    validate,
)
from sqfree_bn.utils.exceptions import InconclusiveError

RR_GRAPHS = [f"cycle:{n}" for n in range(3, 9)] + ["k33", "petersen", "theta:1,1,1"]
RR_MODULES_PER_GRAPH = 60


def test_random_cm_modules(k33, rng):
    for _ in range(20):
        module = random_cm_module(k33, rng)
        assert validate(module)
        assert is_cm_module(module)
        assert is_locally_rank_one(module)
        assert all(0 <= module.dim((v,)) <= 2 for v in k33.vertices)


def test_random_modules_are_valid(bowtie, rng):
    for _ in range(20):
        assert validate(random_module(bowtie, rng))


def test_random_modules_are_reproducible(petersen):
    first = random_cm_module(petersen, random.Random(3))
    second = random_cm_module(petersen, random.Random(3))
    assert first.dims == second.dims
    assert first.maps == second.maps


@pytest.mark.parametrize("name", RR_GRAPHS)
def test_riemann_roch_on_random_modules(name, rng):
    graph = build_named(name)
    for _ in range(RR_MODULES_PER_GRAPH):
        report = riemann_roch_check(random_cm_module(graph, rng))
        assert report.holds, report.to_json()
        assert report.g == genus(graph)


def test_random_holonomies(theta, rng):
    for _ in range(50):
        values = random_holonomies(theta, rng)
        assert len(values) == genus(theta)
        assert all(h != 0 for h in values)


def test_holonomy_grid():
    grid = holonomy_grid([1, 2, 3], 2)
    assert len(grid) == 9
    assert len(set(grid)) == 9
    assert holonomy_grid([1, 2], 0) == [()]


@pytest.mark.parametrize("name", ["cycle:3", "k33"])
def test_degree_bounds_on_indecomposable_modules(name, rng):
    graph = build_named(name)
    g = genus(graph)
    s = max_independent_connected_complement(graph)
    found = 0
    for _ in range(2000):
        module = random_cm_module(graph, rng)
        try:
            if not is_indecomposable(module):
                continue
        except InconclusiveError:
            continue
        assert -s <= module.degree() <= 2 * g - 2 + s
        found += 1
        if found == 200:
            break
    assert found == 200


def test_riemann_roch_sample_size():
    assert len(RR_GRAPHS) * RR_MODULES_PER_GRAPH >= 500
