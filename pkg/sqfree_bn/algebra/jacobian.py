"""
Multidegree zero, locally rank 1 modules on a connected graph.

Every vertex and edge piece is a line, so the module is a labelling of the
half edges (v, e) by scalars φ_{ve}. Rescaling the basis of each piece moves
these labels around without changing the class. Along a spanning tree all maps
can be made 1, after which every chord keeps one scalar, its holonomy.
"""

import logging
from typing import Mapping, Sequence

from sqfree_bn.algebra.simplicial import bfs_tree, cycle_graph, genus, require_connected
from sqfree_bn.algebra.sqfree import cm_completion, is_cm_module, is_locally_rank_one
from sqfree_bn.models.certificate import CycleClass, GaugeNormalForm
from sqfree_bn.models.complex import Edge, Face, SimplicialGraph
from sqfree_bn.models.field import QQ, Field, FieldScalar
from sqfree_bn.models.matrix import Matrix
from sqfree_bn.models.module import SquareFreeModule
from sqfree_bn.utils.exceptions import (
    DecomposableModuleError,
    DimensionMismatchError,
    NotAFaceError,
    PreconditionError,
    ZeroHolonomyError,
)

logger = logging.getLogger(__name__)

Holonomies = Sequence[FieldScalar] | Mapping[Edge, FieldScalar]


def _require_line_bundle(module: SquareFreeModule):
    if module.complex.dim > 1:
        raise PreconditionError("support is a graph")
    if not is_locally_rank_one(module):
        raise PreconditionError("locally of rank 1")
    if any(d != 0 for d in module.multi_degree()):
        raise PreconditionError("multidegree 0", f"multidegree {list(module.multi_degree())}")


def _scalar(module: SquareFreeModule, vertex: int, edge: Edge) -> FieldScalar:
    return module.phi((vertex,), edge).entry(0, 0)


def _tree_parents(graph: SimplicialGraph) -> tuple[list[tuple[int, int, Edge]], dict[int, int], list[Edge]]:
    """(parent, child, edge) in BFS order from the least vertex, the BFS order and the tree"""
    tree, order = bfs_tree(graph)
    steps = list()
    for child in sorted(order, key=order.get)[1:]:
        for edge in tree:
            if child in edge:
                parent = edge[0] if edge[1] == child else edge[1]
                if order[parent] < order[child]:
                    steps.append((parent, child, edge))
                    break
    return steps, order, tree


def _gauge(module: SquareFreeModule) -> tuple[dict[Face, FieldScalar], dict[int, int], list[Edge]]:
    """Basis scalings c_F that make every tree map 1"""
    field = module.field
    steps, order, tree = _tree_parents(module.graph)
    root = min(order, key=order.get)
    scalings: dict[Face, FieldScalar] = {(root,): field.one}
    for parent, child, edge in steps:
        scalings[edge] = _scalar(module, parent, edge) * scalings[(parent,)]
        scalings[(child,)] = scalings[edge] / _scalar(module, child, edge)
    return scalings, order, tree


def _require_nonzero_maps(module: SquareFreeModule, error: type[Exception]):
    for vertex, edge in _half_edges(module.graph):
        if _scalar(module, vertex, edge) == 0:
            raise error(
                f"map [{vertex}] -> {list(edge)} is zero; "
                "use classify_cycle_graph on cycles or is_indecomposable elsewhere"
            )


def _half_edges(graph: SimplicialGraph) -> list[tuple[int, Edge]]:
    return [(v, e) for e in graph.edges for v in e]


def normalize_genus0(module: SquareFreeModule) -> tuple[SquareFreeModule, dict[Face, FieldScalar]]:
    """
    Rescales bases on a tree so that every map is [1].

    Returns the normalized module and the scalar c_F by which the basis vector
    of M_F was multiplied.
    """
    _require_line_bundle(module)
    graph = module.graph
    if genus(graph) != 0:
        raise PreconditionError("support is a tree", f"genus {genus(graph)}")
    _require_nonzero_maps(module, DecomposableModuleError)
    field = module.field
    scalings, _, _ = _gauge(module)
    if module.dim(()) > 1:
        raise DecomposableModuleError("the kernel of M_∅ -> ⊕ M_v splits off")
    if module.dim(()) == 1:
        root = graph.vertices[0]
        first = module.phi((), (root,)).entry(0, 0)
        if first == 0:
            raise DecomposableModuleError("M_∅ maps to zero and splits off")
        scalings[()] = scalings[(root,)] / first
    one = Matrix.identity(1, field)
    maps = {
        (source, target): one
        for source, target in graph.covering_pairs()
        if module.dim(source) and module.dim(target)
    }
    normalized = SquareFreeModule(graph, dict(module.dims), maps, field)
    return normalized, scalings


def tree_normalize(module: SquareFreeModule) -> GaugeNormalForm:
    """
    Fixes bases along the BFS tree from the least vertex so every tree map is
    1. A chord e = vw, v reached first, keeps h_e = φ_{ve} c_v / (φ_{we} c_w).
    """
    _require_line_bundle(module)
    require_connected(module.graph)
    _require_nonzero_maps(module, ZeroHolonomyError)
    scalings, order, tree = _gauge(module)
    tree_set = set(tree)
    chords = tuple(e for e in module.graph.edges if e not in tree_set)
    holonomies = list()
    for edge in chords:
        v, w = sorted(edge, key=order.get)
        holonomies.append(
            (_scalar(module, v, edge) * scalings[(v,)])
            / (_scalar(module, w, edge) * scalings[(w,)])
        )
    logger.debug(f"gauge fixed along {len(tree)} tree edges, {len(chords)} chords")
    return GaugeNormalForm(tuple(tree), chords, tuple(holonomies), module.field)


def jacobian_is_isomorphic(first: SquareFreeModule, second: SquareFreeModule) -> bool:
    if first.complex != second.complex:
        raise PreconditionError("modules on the same graph")
    if first.dim(()) != second.dim(()):
        return False
    return tree_normalize(first).holonomies == tree_normalize(second).holonomies


def _cycle_walk(graph: SimplicialGraph) -> list[int]:
    """The vertices of a cycle graph from the least vertex towards its smaller neighbor"""
    walk = [graph.vertices[0]]
    previous = None
    while len(walk) < graph.v:
        options = [w for w in graph.neighbors(walk[-1]) if w != previous]
        previous = walk[-1]
        walk.append(min(options))
    return walk


def is_cycle_graph(graph: SimplicialGraph) -> bool:
    return (
        graph.v >= 3
        and graph.is_connected()
        and all(graph.valency(v) == 2 for v in graph.vertices)
    )


def classify_cycle_graph(module: SquareFreeModule) -> CycleClass:
    """
    The point (s : t) of P¹ of an n-gon module, s the product of the maps on
    the tail side and t on the head side of each edge, walking from the least
    vertex towards its smaller neighbor. A single zero map gives (0 : 1) on the
    tail side of its walk step and (1 : 0) on the head side, the limits of the
    same ratio, and the edge is reported with it.
    """
    graph = module.graph
    if not is_cycle_graph(graph):
        raise PreconditionError("support is a cycle graph")
    _require_line_bundle(module)
    if not is_cm_module(module):
        raise PreconditionError("Cohen-Macaulay")
    field = module.field
    walk = _cycle_walk(graph)
    tail, head = field.one, field.one
    zeros = list()
    for i, v in enumerate(walk):
        w = walk[(i + 1) % len(walk)]
        edge = (min(v, w), max(v, w))
        s, t = _scalar(module, v, edge), _scalar(module, w, edge)
        for side, value in enumerate((s, t)):
            if value == 0:
                zeros.append((side, edge))
        tail, head = tail * s, head * t
    if len(zeros) > 1:
        raise DecomposableModuleError(f"{len(zeros)} zero maps split the cycle")
    if zeros:
        side, edge = zeros[0]
        point = (field.zero, field.one) if side == 0 else (field.one, field.zero)
        return CycleClass(point, edge, field)
    return CycleClass((tail / head, field.one), None, field)


def _chord_values(chords: Sequence[Edge], holonomies: Holonomies, field: Field) -> list:
    if isinstance(holonomies, Mapping):
        missing = [c for c in chords if c not in holonomies]
        if missing:
            raise DimensionMismatchError(f"no holonomy for chords {missing}")
        values = [holonomies[c] for c in chords]
    else:
        values = list(holonomies)
    if len(values) != len(chords):
        raise DimensionMismatchError(f"expected {len(chords)} holonomies, got {len(values)}")
    values = [field(h) for h in values]
    for chord, h in zip(chords, values):
        if h == 0:
            raise ZeroHolonomyError(f"holonomy on chord {list(chord)} is zero")
    return values


def module_from_holonomies(
    graph: SimplicialGraph, holonomies: Holonomies, field: Field = QQ
) -> SquareFreeModule:
    """
    Tree maps 1, and on a chord e = vw with v reached first φ_{ve} = h_e and
    φ_{we} = 1. The degree 0 piece is the CM completion.
    """
    require_connected(graph)
    tree, order = bfs_tree(graph)
    tree_set = set(tree)
    chords = [e for e in graph.edges if e not in tree_set]
    values = dict(zip(chords, _chord_values(chords, holonomies, field)))
    one = Matrix.identity(1, field)
    dims: dict[Face, int] = {f: 1 for f in graph.ordered if f}
    maps = dict()
    for edge in graph.edges:
        for vertex in edge:
            maps[((vertex,), edge)] = one
        if edge in values:
            first = min(edge, key=order.get)
            maps[((first,), edge)] = Matrix([[values[edge]]], field)
    return cm_completion(graph, dims, maps, field)


def cycle_module(
    n: int, s: FieldScalar, t: FieldScalar, edge: Edge = (1, 2), field: Field = QQ
) -> SquareFreeModule:
    """The n-gon module with all maps 1 except φ = s at edge[0] and t at edge[1]"""
    graph = cycle_graph(n)
    edge = tuple(sorted(edge))
    if edge not in graph:
        raise NotAFaceError(f"{list(edge)} is not an edge of C_{n}")
    dims: dict[Face, int] = {f: 1 for f in graph.ordered if f}
    maps = {((v,), e): Matrix.identity(1, field) for e in graph.edges for v in e}
    maps[((edge[0],), edge)] = Matrix([[field(s)]], field)
    maps[((edge[1],), edge)] = Matrix([[field(t)]], field)
    return cm_completion(graph, dims, maps, field)

