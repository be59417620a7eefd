from dataclasses import dataclass
from typing import Sequence

from sqfree_bn.models.complex import Edge, SimplicialGraph
from sqfree_bn.models.field import QQ, Field, FieldScalar
from sqfree_bn.utils.exceptions import InputFormatError, PreconditionError


@dataclass(frozen=True)
class CycleVector:
    """
    A 1-chain on a graph, one coefficient per edge in graph.edges order.
    Edges are oriented tail < head.
    """

    graph: SimplicialGraph
    coeffs: tuple[FieldScalar, ...]
    field: Field = QQ

    def __post_init__(self):
        if len(self.coeffs) != self.graph.e:
            raise PreconditionError(
                "one coefficient per edge", f"{len(self.coeffs)} != {self.graph.e}"
            )

    @classmethod
    def from_vertex_cycle(
        cls, graph: SimplicialGraph, walk: Sequence[int], field: Field = QQ
    ) -> "CycleVector":
        """Signed chain of a closed walk v0 -> v1 -> ... -> v0"""
        coeffs = [field.zero] * graph.e
        index = graph.edge_index
        for a, b in zip(walk, list(walk[1:]) + [walk[0]]):
            edge = (min(a, b), max(a, b))
            if edge not in index:
                raise PreconditionError("closed walk along edges", f"{a}-{b} is not an edge")
            coeffs[index[edge]] += field.one if a < b else -field.one
        return cls(graph, tuple(coeffs), field)

    @property
    def support(self) -> tuple[Edge, ...]:
        return tuple(e for e, c in zip(self.graph.edges, self.coeffs) if c != 0)

    @property
    def vertex_support(self) -> tuple[int, ...]:
        return tuple(sorted({v for e in self.support for v in e}))

    def coefficient(self, edge: Edge) -> FieldScalar:
        return self.coeffs[self.graph.edge_index[edge]]

    def boundary(self) -> dict[int, FieldScalar]:
        result = {v: self.field.zero for v in self.graph.vertices}
        for (tail, head), c in zip(self.graph.edges, self.coeffs):
            result[head] += c
            result[tail] -= c
        return result

    def is_cycle(self) -> bool:
        return all(x == 0 for x in self.boundary().values())

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __add__(self, other: "CycleVector") -> "CycleVector":
        return CycleVector(
            self.graph, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.field
        )

    def scale(self, scalar) -> "CycleVector":
        c = self.field(scalar)
        return CycleVector(self.graph, tuple(c * x for x in self.coeffs), self.field)

    def sort_key(self) -> tuple:
        return len(self.support), self.support

    def to_json(self) -> dict:
        return {
            "edges": [
                [tail, head, self.field.format(c)]
                for (tail, head), c in zip(self.graph.edges, self.coeffs)
                if c != 0
            ]
        }

    @classmethod
    def from_json(cls, graph: SimplicialGraph, data: dict, field: Field = QQ) -> "CycleVector":
        coeffs = [field.zero] * graph.e
        try:
            entries = data["edges"]
        except (KeyError, TypeError):
            raise InputFormatError("edges", "cycle JSON needs an 'edges' list")
        for entry in entries:
            if len(entry) != 3:
                raise InputFormatError("edges", f"expected [i, j, coeff], got {entry!r}")
            i, j, c = entry
            edge = (min(i, j), max(i, j))
            if edge not in graph.edge_index:
                raise InputFormatError("edges", f"[{i}, {j}] is not an edge")
            sign = 1 if i < j else -1
            coeffs[graph.edge_index[edge]] += field.parse(str(c)) * sign
        return cls(graph, tuple(coeffs), field)
