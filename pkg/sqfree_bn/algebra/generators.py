"""Seeded random modules on graphs, for property tests and grid scans"""

import random
from typing import Sequence

from sqfree_bn.algebra import linalg
from sqfree_bn.algebra.simplicial import bfs_tree
from sqfree_bn.algebra.sqfree import cm_completion
from sqfree_bn.models.complex import Face, SimplicialGraph
from sqfree_bn.models.field import QQ, Field, FieldScalar
from sqfree_bn.models.matrix import Matrix
from sqfree_bn.models.module import SquareFreeModule
from sqfree_bn.settings.const import RANDOM_COEFF_RANGE


def _random_matrix(rng: random.Random, nrows: int, ncols: int, field: Field, scale: int) -> Matrix:
    return Matrix(
        [[field(rng.randint(-scale, scale)) for _ in range(ncols)] for _ in range(nrows)],
        field,
        ncols,
    )


def _vertex_data(
    graph: SimplicialGraph,
    rng: random.Random,
    field: Field,
    max_vertex_dim: int,
    scale: int,
    injective: bool,
) -> tuple[dict[Face, int], dict[tuple[Face, Face], Matrix]]:
    dims: dict[Face, int] = {e: 1 for e in graph.edges}
    maps: dict[tuple[Face, Face], Matrix] = dict()
    for vertex in graph.vertices:
        edges = graph.incident_edges(vertex)
        top = min(max_vertex_dim, len(edges)) if injective else max_vertex_dim
        size = rng.randint(0, top)
        dims[(vertex,)] = size
        if not size:
            continue
        block = _random_matrix(rng, len(edges), size, field, scale)
        while injective and not linalg.is_injective(block):
            block = _random_matrix(rng, len(edges), size, field, scale)
        for edge, row in zip(edges, block.rows):
            maps[((vertex,), edge)] = Matrix([list(row)], field, size)
    return dims, maps


def random_cm_module(
    graph: SimplicialGraph,
    rng: random.Random,
    field: Field = QQ,
    max_vertex_dim: int = 2,
    scale: int = RANDOM_COEFF_RANGE,
) -> SquareFreeModule:
    """
    A CM, locally rank 1 module: random injective vertex maps into the incident
    edges, completed in degree 0. It may be decomposable.
    """
    dims, maps = _vertex_data(graph, rng, field, max_vertex_dim, scale, injective=True)
    return cm_completion(graph, dims, maps, field)


def random_module(
    graph: SimplicialGraph,
    rng: random.Random,
    field: Field = QQ,
    max_vertex_dim: int = 3,
    scale: int = 3,
) -> SquareFreeModule:
    """Random vertex maps with no injectivity filter, so neither CM nor indecomposable in general"""
    dims, maps = _vertex_data(graph, rng, field, max_vertex_dim, scale, injective=False)
    return cm_completion(graph, dims, maps, field)


def random_holonomies(
    graph: SimplicialGraph, rng: random.Random, field: Field = QQ, scale: int = 9
) -> list[FieldScalar]:
    """Nonzero scalars p/q with 1 <= |p|, q <= scale, one per chord of the BFS tree"""
    tree, _ = bfs_tree(graph)
    count = graph.e - len(tree)
    values = list()
    for _ in range(count):
        p = rng.choice([-1, 1]) * rng.randint(1, scale)
        q = rng.randint(1, scale)
        values.append(field(p) / field(q))
    return values


def holonomy_grid(values: Sequence[int], count: int, field: Field = QQ) -> list[tuple]:
    """All tuples of the given nonzero values, e.g. for jacobian scans"""
    grid: list[tuple] = [()]
    for _ in range(count):
        grid = [t + (field(v),) for t in grid for v in values]
    return grid
