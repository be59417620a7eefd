"""
Reduced and relative simplicial homology over an exact field.

A chain complex is built on any set of faces. The boundary of a face is
Σ_j (-1)^j (face minus its j-th vertex), keeping only terms that lie in the
face set. On a subcomplex nothing is dropped, and the empty face gives the
augmentation, so the homology is reduced homology. On the open star st F the
dropped terms are exactly those in Δ - F, so the homology is H̃(Δ, Δ - F).
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import networkx as nx

from sqfree_bn.algebra import linalg
from sqfree_bn.models.complex import Face, SimplicialComplex, face_order
from sqfree_bn.models.field import QQ, Field
from sqfree_bn.models.matrix import Matrix, Vector
from sqfree_bn.utils.exceptions import NotAFaceError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ChainComplex:
    faces: tuple[Face, ...]
    field: Field = QQ

    def basis(self, i: int) -> tuple[Face, ...]:
        """Faces of dimension i, i.e. of size i + 1"""
        return tuple(f for f in self.faces if len(f) == i + 1)

    def boundary(self, i: int) -> Matrix:
        """∂_i: C_i -> C_{i-1}"""
        rows = self.basis(i - 1)
        cols = self.basis(i)
        index = {f: k for k, f in enumerate(rows)}
        entries = [[self.field.zero] * len(cols) for _ in rows]
        for c, face in enumerate(cols):
            for j in range(len(face)):
                smaller = face[:j] + face[j + 1 :]
                if smaller in index:
                    entries[index[smaller]][c] = self.field(-1 if j % 2 else 1)
        return Matrix(entries, self.field, len(cols))

    @property
    def top(self) -> int:
        return max((len(f) for f in self.faces), default=0) - 1


@dataclass(frozen=True)
class HomologyResult:
    """H_i with representatives in the coordinates of the i-chains"""

    degree: int
    chains: tuple[Face, ...]
    boundaries: tuple[Vector, ...]
    representatives: tuple[Vector, ...]
    field: Field = QQ

    @property
    def dim(self) -> int:
        return len(self.representatives)

    def coordinates(self, chain: Sequence) -> Vector:
        """Coordinates of the class of a cycle in the representative basis"""
        if not self.representatives:
            return ()
        basis = list(self.boundaries) + list(self.representatives)
        solution = linalg.coordinates(basis, chain, self.field)
        if solution is None:
            raise ValueError("chain is not a cycle of this complex")
        return solution[len(self.boundaries) :]


def chain_complex(faces: Iterable[Face], field: Field = QQ) -> ChainComplex:
    return ChainComplex(tuple(sorted(set(faces), key=face_order)), field)


@lru_cache(maxsize=4096)
def _homology(faces: tuple[Face, ...], i: int, field: Field) -> HomologyResult:
    chains = ChainComplex(faces, field)
    basis = chains.basis(i)
    if not basis:
        return HomologyResult(i, basis, (), (), field)
    cycles = linalg.nullspace(chains.boundary(i))
    if not cycles:
        return HomologyResult(i, basis, (), (), field)
    boundaries = linalg.column_space(chains.boundary(i + 1)) if chains.basis(i + 1) else []
    cycles = linalg.row_space(cycles, len(basis), field)
    chosen = linalg.extend_basis(boundaries, cycles, len(basis), field)
    return HomologyResult(
        i, basis, tuple(boundaries), tuple(cycles[k] for k in chosen), field
    )


def homology(faces: Iterable[Face], i: int, field: Field = QQ) -> HomologyResult:
    ordered = tuple(sorted(set(tuple(f) for f in faces), key=face_order))
    return _homology(ordered, i, field)


def reduced_homology(complex_: SimplicialComplex, i: int, field: Field = QQ) -> HomologyResult:
    return _homology(complex_.ordered, i, field)


def relative_homology(
    complex_: SimplicialComplex, face: Face, i: int, field: Field = QQ
) -> HomologyResult:
    """H̃_i(Δ, Δ - F), computed on the open star of F"""
    face = tuple(face)
    if face not in complex_:
        raise NotAFaceError(f"{list(face)} is not a face")
    return _homology(tuple(complex_.star(face)), i, field)


def link(complex_: SimplicialComplex, face: Face) -> SimplicialComplex:
    face = tuple(face)
    if face not in complex_:
        raise NotAFaceError(f"{list(face)} is not a face")
    return complex_.link(face)


def link_homology(
    complex_: SimplicialComplex, face: Face, i: int, field: Field = QQ
) -> HomologyResult:
    return reduced_homology(link(complex_, face), i, field)


def project_chain(
    chain: Sequence, source: Sequence[Face], target: Sequence[Face], field: Field = QQ
) -> Vector:
    """Restricts a chain on source faces to the target faces (zero elsewhere)"""
    values = dict(zip(source, chain))
    return tuple(values.get(f, field.zero) for f in target)


def restriction_matrix(
    complex_: SimplicialComplex,
    source: Face,
    target: Face,
    i: int,
    field: Field = QQ,
) -> Matrix:
    """
    The map H̃_i(Δ, Δ - F) -> H̃_i(Δ, Δ - G) for F ⊆ G induced by the quotient
    of chain groups. With F = ∅ this is the natural map from H̃_i(Δ).
    """
    source, target = tuple(source), tuple(target)
    if not set(source).issubset(target):
        raise NotAFaceError(f"{list(source)} is not contained in {list(target)}")
    start = relative_homology(complex_, source, i, field)
    end = relative_homology(complex_, target, i, field)
    columns = [
        end.coordinates(project_chain(rep, start.chains, end.chains, field))
        for rep in start.representatives
    ]
    return Matrix.from_columns(columns, end.dim, field)


def natural_restriction(
    complex_: SimplicialComplex, face: Face, i: int | None = None, field: Field = QQ
) -> Matrix:
    """H̃_{d-1}(Δ) -> H̃_{d-1}(Δ, Δ - F), d - 1 = dim Δ unless i is given"""
    i = complex_.dim if i is None else i
    return restriction_matrix(complex_, (), face, i, field)


def _vanishes(faces: Sequence[Face], degrees: range, field: Field) -> bool:
    return all(_homology(tuple(faces), i, field).dim == 0 for i in degrees)


def is_cm_complex(complex_: SimplicialComplex, field: Field = QQ) -> bool:
    """
    Reisner's criterion in relative form: H̃_i(Δ) = 0 and H̃_i(Δ, Δ - F) = 0
    for i <= dim Δ - 1 and every face F. A graph is CM iff it is connected.
    """
    if complex_.dim == 1:
        graph = nx.Graph()
        graph.add_nodes_from(complex_.vertices)
        graph.add_edges_from(complex_.faces_of_size(2))
        return nx.is_connected(graph)
    d = complex_.dim + 1
    degrees = range(-1, d - 1)
    for face in complex_.ordered:
        if not _vanishes(tuple(complex_.star(face)), degrees, field):
            return False
    return True


def is_two_cm_complex(complex_: SimplicialComplex, field: Field = QQ) -> bool:
    """
    H̃_i(Δ) = 0 and H̃_i(Δ - F) = 0 for 0 <= i <= dim Δ - 1 and every face F,
    with Δ - p of the same dimension as Δ for every vertex p.
    """
    if complex_.is_void:
        return False
    d = complex_.dim + 1
    degrees = range(0, d - 1)
    if not _vanishes(complex_.ordered, degrees, field):
        return False
    for vertex in complex_.vertices:
        if complex_.deletion((vertex,)).dim != complex_.dim:
            return False
    for face in complex_.ordered:
        if not face:
            continue
        if not _vanishes(complex_.deletion(face).ordered, degrees, field):
            return False
    return True


def long_exact_sequence_defect(
    complex_: SimplicialComplex, face: Face, field: Field = QQ
) -> int:
    """
    dim H̃₁(Δ-F) - dim H̃₁(Δ) + dim H̃₁(Δ,Δ-F) - dim H̃₀(Δ-F), zero on CM graphs
    by exactness of 0 -> H̃₁(Δ-F) -> H̃₁(Δ) -> H̃₁(Δ,Δ-F) -> H̃₀(Δ-F) -> H̃₀(Δ) = 0.
    """
    rest = complex_.deletion(tuple(face)).ordered
    return (
        _homology(rest, 1, field).dim
        - reduced_homology(complex_, 1, field).dim
        + relative_homology(complex_, face, 1, field).dim
        - _homology(rest, 0, field).dim
    )
