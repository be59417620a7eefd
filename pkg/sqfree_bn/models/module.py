from dataclasses import dataclass
from dataclasses import field as dc_field
from typing import Mapping, Optional

from sqfree_bn.models.complex import Face, SimplicialComplex, SimplicialGraph
from sqfree_bn.models.field import QQ, Field
from sqfree_bn.models.matrix import Matrix
from sqfree_bn.utils.exceptions import FieldMismatchError, ModuleValidationError, NotAFaceError


@dataclass(frozen=True, eq=False)
class SquareFreeModule:
    """
    A square-free module stored by its square-free degrees: a vector space of
    dimension dims[F] on every face F and a matrix φ_{F,G} of shape
    dims[G] x dims[F] on every covering pair F ⊂ G = F ∪ {i}.

    Faces missing from dims have dimension 0. A covering pair missing from maps
    carries the zero map.
    """

    complex: SimplicialComplex
    dims: Mapping[Face, int]
    maps: Mapping[tuple[Face, Face], Matrix]
    field: Field = QQ
    # set for submodules of ω built from cycles: the inclusion into ω
    embedding: Optional["ModuleHom"] = dc_field(default=None, compare=False)

    @property
    def graph(self) -> SimplicialGraph:
        if isinstance(self.complex, SimplicialGraph):
            return self.complex
        return SimplicialGraph.from_complex(self.complex)

    @property
    def faces(self) -> tuple[Face, ...]:
        return self.complex.ordered

    def dim(self, face: Face) -> int:
        return self.dims.get(tuple(face), 0)

    def phi(self, source: Face, target: Face) -> Matrix:
        """The structure map M_source -> M_target, composed along covering pairs"""
        source, target = tuple(source), tuple(target)
        if not set(source).issubset(target):
            raise NotAFaceError(f"{list(source)} is not contained in {list(target)}")
        if source == target:
            return Matrix.identity(self.dim(source), self.field)
        if len(target) == len(source) + 1:
            matrix = self.maps.get((source, target))
            if matrix is None:
                return Matrix.zeros(self.dim(target), self.dim(source), self.field)
            return matrix
        # go through the smallest missing vertex first
        extra = min(set(target) - set(source))
        middle = tuple(sorted(source + (extra,)))
        return self.phi(middle, target) @ self.phi(source, middle)

    @property
    def total_dim(self) -> int:
        return sum(self.dim(f) for f in self.faces)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def multi_degree(self) -> tuple[int, ...]:
        return tuple(self.dim((v,)) - 1 for v in self.complex.vertices)

    def degree(self) -> int:
        return sum(self.multi_degree())

    def global_sections(self) -> int:
        return self.dim(())

    def with_embedding(self, embedding: "ModuleHom") -> "SquareFreeModule":
        return SquareFreeModule(self.complex, self.dims, self.maps, self.field, embedding)

    def summary(self) -> dict:
        return {
            "multi_degree": list(self.multi_degree()),
            "degree": self.degree(),
            "l": self.global_sections(),
        }

    def __repr__(self) -> str:
        return (
            f"SquareFreeModule(field={self.field.name}, "
            f"dims={ {f: d for f, d in self.dims.items() if d} })"
        )


@dataclass(frozen=True, eq=False)
class ModuleHom:
    """Per-face matrices ψ_F: M_F -> N_F"""

    source: SquareFreeModule
    target: SquareFreeModule
    components: Mapping[Face, Matrix]

    def __post_init__(self):
        if self.source.field != self.target.field:
            raise FieldMismatchError(
                f"{self.source.field.name} vs {self.target.field.name}"
            )

    @classmethod
    def identity(cls, module: SquareFreeModule) -> "ModuleHom":
        return cls(
            module,
            module,
            {f: Matrix.identity(module.dim(f), module.field) for f in module.faces},
        )

    def component(self, face: Face) -> Matrix:
        matrix = self.components.get(tuple(face))
        if matrix is None:
            return Matrix.zeros(
                self.target.dim(face), self.source.dim(face), self.source.field
            )
        return matrix

    def compose(self, other: "ModuleHom") -> "ModuleHom":
        """self ∘ other"""
        if other.target.complex != self.source.complex or any(
            other.target.dim(f) != self.source.dim(f) for f in self.source.faces
        ):
            raise ModuleValidationError("composition of non-composable homomorphisms")
        return ModuleHom(
            other.source,
            self.target,
            {f: self.component(f) @ other.component(f) for f in self.source.faces},
        )

    def __add__(self, other: "ModuleHom") -> "ModuleHom":
        return ModuleHom(
            self.source,
            self.target,
            {f: self.component(f) + other.component(f) for f in self.source.faces},
        )

    def scale(self, scalar) -> "ModuleHom":
        return ModuleHom(
            self.source,
            self.target,
            {f: self.component(f).scale(scalar) for f in self.source.faces},
        )

    def is_natural(self) -> bool:
        for source, target in self.source.complex.covering_pairs():
            left = self.component(target) @ self.source.phi(source, target)
            right = self.target.phi(source, target) @ self.component(source)
            if left != right:
                return False
        return True
