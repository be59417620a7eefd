import logging
import math
from dataclasses import dataclass
from itertools import combinations

import networkx as nx

from sqfree_bn.models.complex import Edge, SimplicialGraph
from sqfree_bn.models.cycle import CycleVector
from sqfree_bn.models.field import QQ, Field
from sqfree_bn.settings.const import DEFAULT_CYCLE_CAP
from sqfree_bn.utils.exceptions import (
    CycleCapExceededError,
    DisconnectedGraphError,
    InputFormatError,
)

logger = logging.getLogger(__name__)

Walk = tuple[int, ...]


def _relabeled(graph: nx.Graph) -> SimplicialGraph:
    """Relabels nodes to 1..n in sorted order"""
    mapping = {node: i + 1 for i, node in enumerate(sorted(graph.nodes))}
    return SimplicialGraph.from_networkx(nx.relabel_nodes(graph, mapping))


def _int_args(spec: str, name: str, count: int) -> list[int]:
    parts = spec.split(",")
    if len(parts) != count:
        raise InputFormatError("builder", f"{name} takes {count} integer argument(s)")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise InputFormatError("builder", f"bad integer in {name}:{spec}")


def cycle_graph(k: int) -> SimplicialGraph:
    if k < 3:
        raise InputFormatError("builder", "cycle:k needs k >= 3")
    return _relabeled(nx.cycle_graph(k))


def path_graph(k: int) -> SimplicialGraph:
    if k < 1:
        raise InputFormatError("builder", "path:k needs k >= 1")
    return _relabeled(nx.path_graph(k))


def complete_graph(k: int) -> SimplicialGraph:
    if k < 1:
        raise InputFormatError("builder", "complete:k needs k >= 1")
    return _relabeled(nx.complete_graph(k))


def theta_graph(a: int, b: int, c: int) -> SimplicialGraph:
    """Two poles 1 and 2 joined by three paths with a, b, c interior vertices"""
    lengths = (a, b, c)
    if min(lengths) < 0 or sorted(lengths)[1] == 0:
        raise InputFormatError("builder", "theta:a,b,c allows at most one empty path")
    graph = nx.Graph()
    graph.add_nodes_from((1, 2))
    next_vertex = 3
    for interior in lengths:
        walk = [1] + list(range(next_vertex, next_vertex + interior)) + [2]
        next_vertex += interior
        nx.add_path(graph, walk)
    return SimplicialGraph.from_networkx(graph)


def wedge_graph(a: int, b: int) -> SimplicialGraph:
    """Cycles C_a and C_b glued at vertex 1"""
    if a < 3 or b < 3:
        raise InputFormatError("builder", "wedge:a,b needs a, b >= 3")
    graph = nx.Graph()
    nx.add_cycle(graph, [1] + list(range(2, a + 1)))
    nx.add_cycle(graph, [1] + list(range(a + 1, a + b)))
    return SimplicialGraph.from_networkx(graph)


def diamond_graph() -> SimplicialGraph:
    return SimplicialGraph(4, [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)])


def build_named(name: str) -> SimplicialGraph:
    """Builds one of the named graphs, e.g. "cycle:5", "petersen", "theta:1,1,2" """
    name = name.strip().lower()
    kind, _, spec = name.partition(":")
    if kind == "cycle":
        return cycle_graph(*_int_args(spec, kind, 1))
    if kind == "path":
        return path_graph(*_int_args(spec, kind, 1))
    if kind == "complete":
        return complete_graph(*_int_args(spec, kind, 1))
    if kind == "theta":
        return theta_graph(*_int_args(spec, kind, 3))
    if kind == "wedge":
        return wedge_graph(*_int_args(spec, kind, 2))
    if spec:
        raise InputFormatError("builder", f"{kind} takes no arguments")
    if kind == "k33":
        return _relabeled(nx.complete_bipartite_graph(3, 3))
    if kind == "petersen":
        return _relabeled(nx.petersen_graph())
    if kind == "heawood":
        return _relabeled(nx.heawood_graph())
    if kind == "bowtie":
        return wedge_graph(3, 3)
    if kind == "diamond":
        return diamond_graph()
    raise InputFormatError("builder", f"unknown builder {name!r}")


def require_connected(graph: SimplicialGraph):
    if not graph.is_connected():
        raise DisconnectedGraphError("graph is not connected")


def genus(graph: SimplicialGraph) -> int:
    require_connected(graph)
    return 1 - graph.v + graph.e


def girth(graph: SimplicialGraph) -> int | float:
    """Length of a shortest cycle, math.inf for forests"""
    value = nx.girth(graph.nx_graph)
    return value if value == math.inf else int(value)


def is_two_connected(graph: SimplicialGraph) -> bool:
    return graph.v >= 3 and nx.is_biconnected(graph.nx_graph)


def min_valency(graph: SimplicialGraph) -> int:
    return min((graph.valency(v) for v in graph.vertices), default=0)


def smoothable_vertices(graph: nx.Graph) -> list[int]:
    """Valency-2 vertices whose two neighbors are not adjacent"""
    eligible = list()
    for vertex in sorted(graph.nodes):
        if graph.degree(vertex) != 2:
            continue
        first, second = graph.neighbors(vertex)
        if not graph.has_edge(first, second):
            eligible.append(vertex)
    return eligible


def reduce(graph: SimplicialGraph) -> tuple[SimplicialGraph, dict[int, int]]:
    """
    Smooths valency-2 vertices with non-adjacent neighbors until none is left,
    always taking the smallest eligible vertex. Returns the reduced graph on a
    dense range 1..n' and the map from surviving old labels to new labels.
    """
    work = graph.nx_graph.copy()
    while eligible := smoothable_vertices(work):
        vertex = eligible[0]
        first, second = sorted(work.neighbors(vertex))
        work.remove_node(vertex)
        work.add_edge(first, second)
        logger.debug(f"smoothed vertex {vertex} into edge {first}-{second}")
    renaming = {old: new for new, old in enumerate(sorted(work.nodes), start=1)}
    return SimplicialGraph.from_networkx(nx.relabel_nodes(work, renaming)), renaming


def is_reduced(graph: SimplicialGraph) -> bool:
    return not smoothable_vertices(graph.nx_graph)


def independent_connected_complement(graph: SimplicialGraph) -> tuple[int, ...]:
    """
    The lexicographically first largest σ with Δ|_σ edgeless and Δ|_{σᶜ}
    connected (an empty complement counts as connected).
    """
    require_connected(graph)
    vertices = graph.vertices
    nx_graph = graph.nx_graph
    for size in range(len(vertices), -1, -1):
        for sigma in combinations(vertices, size):
            chosen = set(sigma)
            if any(u in chosen and w in chosen for u, w in graph.edges):
                continue
            rest = [v for v in vertices if v not in chosen]
            if not rest or nx.is_connected(nx_graph.subgraph(rest)):
                return sigma
    return ()


def max_independent_connected_complement(graph: SimplicialGraph) -> int:
    return len(independent_connected_complement(graph))


def canonical_walk(walk: list[int]) -> Walk:
    """Rotates a cycle to start at its least vertex, second vertex the smaller neighbor"""
    start = walk.index(min(walk))
    rotated = walk[start:] + walk[:start]
    reverse = [rotated[0]] + rotated[:0:-1]
    return tuple(min(rotated, reverse))


def simple_cycles(graph: SimplicialGraph, cap: int = DEFAULT_CYCLE_CAP) -> list[Walk]:
    """All simple cycles as canonical vertex walks, ordered by (length, walk)"""
    cycles = list()
    for walk in nx.simple_cycles(graph.nx_graph):
        if len(walk) < 3:
            continue
        cycles.append(canonical_walk(list(walk)))
        if len(cycles) > cap:
            raise CycleCapExceededError(f"more than {cap} simple cycles")
    return sorted(set(cycles), key=lambda w: (len(w), w))


def walk_edges(walk: Walk) -> tuple[Edge, ...]:
    return tuple(
        sorted((min(a, b), max(a, b)) for a, b in zip(walk, walk[1:] + walk[:1]))
    )


@dataclass(frozen=True)
class FundamentalCycles:
    tree_edges: tuple[Edge, ...]
    chords: tuple[Edge, ...]
    cycles: tuple[CycleVector, ...]
    bfs_order: dict[int, int]


def bfs_tree(graph: SimplicialGraph, root: int | None = None) -> tuple[list[Edge], dict[int, int]]:
    """BFS tree edges (tail < head) from the least vertex and the BFS visiting order"""
    require_connected(graph)
    root = graph.vertices[0] if root is None else root
    order = {root: 0}
    tree = list()
    for parent, child in nx.bfs_edges(graph.nx_graph, root, sort_neighbors=sorted):
        order[child] = len(order)
        tree.append((min(parent, child), max(parent, child)))
    return sorted(tree), order


def fundamental_cycles(graph: SimplicialGraph, field: Field = QQ) -> FundamentalCycles:
    """Spanning tree plus one cycle per chord, the chord carrying coefficient +1"""
    tree, order = bfs_tree(graph)
    tree_set = set(tree)
    chords = tuple(e for e in graph.edges if e not in tree_set)
    tree_graph = nx.Graph(tree)
    tree_graph.add_nodes_from(graph.vertices)
    cycles = list()
    for tail, head in chords:
        path = nx.shortest_path(tree_graph, head, tail)
        cycles.append(CycleVector.from_vertex_cycle(graph, path, field))
    return FundamentalCycles(tuple(tree), chords, tuple(cycles), order)


def connected_vertex_sets(graph: SimplicialGraph, max_size: int) -> list[tuple[int, ...]]:
    """Vertex sets inducing a connected subgraph, up to max_size, ordered by (size, set)"""
    layer = {frozenset([v]) for v in graph.vertices}
    found = set(layer)
    for _ in range(max_size - 1):
        grown = set()
        for vertices in layer:
            for v in vertices:
                for w in graph.neighbors(v):
                    if w not in vertices:
                        grown.add(vertices | {w})
        found |= grown
        layer = grown
    return sorted((tuple(sorted(s)) for s in found), key=lambda s: (len(s), s))
