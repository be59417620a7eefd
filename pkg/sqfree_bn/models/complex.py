from functools import cached_property
from itertools import combinations
from typing import Iterable

import networkx as nx

from sqfree_bn.utils.exceptions import InputFormatError, NotAFaceError, PreconditionError

Face = tuple[int, ...]
Edge = tuple[int, int]


def as_face(vertices: Iterable[int]) -> Face:
    face = tuple(sorted(vertices))
    if len(set(face)) != len(face):
        raise NotAFaceError(f"repeated vertex in {face}")
    return face


def face_order(face: Face) -> tuple[int, Face]:
    return len(face), face


class SimplicialComplex:
    """
    A downward closed set of faces (sorted vertex tuples).

    With n given, every label 1..n is a vertex and the empty face is present.
    Without n the face set is taken as is after closure, so subcomplexes such as
    Δ - F (which may even be void) are representable.
    """

    def __init__(self, faces: Iterable[Iterable[int]], n: int | None = None):
        closed: set[Face] = set()
        for raw in faces:
            face = as_face(raw)
            if face in closed:
                continue
            for k in range(len(face) + 1):
                closed.update(combinations(face, k))
        if n is not None:
            for face in closed:
                if face and (face[0] < 1 or face[-1] > n):
                    raise InputFormatError("faces", f"face {list(face)} outside 1..{n}")
            closed.add(())
            closed.update((i,) for i in range(1, n + 1))
        self.faces: frozenset[Face] = frozenset(closed)
        self.ordered: tuple[Face, ...] = tuple(sorted(self.faces, key=face_order))
        self.vertices: tuple[int, ...] = tuple(f[0] for f in self.ordered if len(f) == 1)
        self.n = n if n is not None else (self.vertices[-1] if self.vertices else 0)
        self._hash = hash(self.faces)

    @property
    def dim(self) -> int:
        return len(self.ordered[-1]) - 1 if self.ordered else -1

    @property
    def is_void(self) -> bool:
        return not self.faces

    def __contains__(self, face) -> bool:
        return tuple(face) in self.faces

    def require_face(self, face: Iterable[int]) -> Face:
        face = as_face(face)
        if face not in self.faces:
            raise NotAFaceError(f"{list(face)} is not a face")
        return face

    def faces_of_size(self, size: int) -> list[Face]:
        return [f for f in self.ordered if len(f) == size]

    @property
    def facets(self) -> list[Face]:
        facets = list()
        for face in reversed(self.ordered):
            if not any(set(face) < set(f) for f in facets):
                facets.append(face)
        return sorted(facets, key=face_order)

    def star(self, face: Face) -> list[Face]:
        """Faces containing face, i.e. the open star"""
        s = set(face)
        return [f for f in self.ordered if s.issubset(f)]

    def deletion(self, face: Face) -> "SimplicialComplex":
        """Δ - F, the faces not containing F"""
        s = set(face)
        return SimplicialComplex(f for f in self.ordered if not s.issubset(f))

    def link(self, face: Face) -> "SimplicialComplex":
        s = set(face)
        return SimplicialComplex(
            tuple(sorted(set(f) - s)) for f in self.star(face)
        )

    def induced(self, vertices: Iterable[int]) -> "SimplicialComplex":
        keep = set(vertices)
        return SimplicialComplex(f for f in self.ordered if keep.issuperset(f))

    def covering_pairs(self) -> list[tuple[Face, Face]]:
        """All (F, F ∪ {i}) with both faces in the complex"""
        pairs = list()
        for target in self.ordered:
            for i in range(len(target)):
                pairs.append((target[:i] + target[i + 1 :], target))
        return pairs

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.faces == other.faces and self.n == other.n

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.n}, facets={[list(f) for f in self.facets]})"


class SimplicialGraph(SimplicialComplex):
    def __init__(self, n: int, edges: Iterable[Iterable[int]]):
        edges = [as_face(e) for e in edges]
        for edge in edges:
            if len(edge) != 2:
                raise PreconditionError("dimension <= 1", f"{list(edge)} is not an edge")
        super().__init__(edges, n=n)

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "SimplicialGraph":
        return cls(graph.number_of_nodes(), graph.edges())

    @classmethod
    def from_complex(cls, complex_: SimplicialComplex) -> "SimplicialGraph":
        if complex_.dim > 1:
            raise PreconditionError("dimension <= 1", f"complex has dimension {complex_.dim}")
        return cls(complex_.n, complex_.faces_of_size(2))

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(self.faces_of_size(2))

    @property
    def v(self) -> int:
        return len(self.vertices)

    @property
    def e(self) -> int:
        return len(self.edges)

    @cached_property
    def nx_graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(self.edges)
        return graph

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {edge: i for i, edge in enumerate(self.edges)}

    def neighbors(self, vertex: int) -> list[int]:
        return sorted(self.nx_graph.neighbors(vertex))

    def incident_edges(self, vertex: int) -> list[Edge]:
        return [e for e in self.edges if vertex in e]

    def valency(self, vertex: int) -> int:
        return self.nx_graph.degree(vertex)

    def is_connected(self) -> bool:
        return self.v > 0 and nx.is_connected(self.nx_graph)

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}
