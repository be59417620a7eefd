"""
The canonical module ω of k[Δ] for a connected graph Δ.

(ω)_F is H̃₁(Δ, Δ - F) and the multiplication maps are the natural maps of
relative homology, so (ω)_∅ = H̃₁(Δ) is the cycle space. Submodules of ω are
built from sets of cycles by taking images under these restrictions.
"""

import logging
import random
from dataclasses import dataclass
from typing import Sequence

from sqfree_bn.algebra import homology, linalg
from sqfree_bn.algebra.simplicial import is_two_connected, require_connected
from sqfree_bn.models.complex import Face, SimplicialGraph
from sqfree_bn.models.cycle import CycleVector
from sqfree_bn.models.field import QQ, Field
from sqfree_bn.models.matrix import Matrix, Vector
from sqfree_bn.models.module import ModuleHom, SquareFreeModule
from sqfree_bn.settings.const import (
    DEFAULT_COEFFICIENT_SCALE,
    DEFAULT_GENERAL_SECTION_DRAWS,
    DEFAULT_SEED,
)
from sqfree_bn.utils.exceptions import GeneralSectionError, PreconditionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CanonicalOmega:
    graph: SimplicialGraph
    field: Field
    # cycle basis of H̃₁(Δ), the coordinates of (ω)_∅
    basis: tuple[CycleVector, ...]
    # H̃₁(Δ) -> H̃₁(Δ, Δ - F) for every face F
    restrictions: dict[Face, Matrix]
    module: SquareFreeModule

    @property
    def genus(self) -> int:
        return len(self.basis)

    def dim(self, face: Face) -> int:
        return self.module.dim(face)

    def coordinates(self, cycle: CycleVector) -> Vector:
        """Coordinates of a cycle in the basis of H̃₁(Δ)"""
        if cycle.graph != self.graph:
            raise PreconditionError("cycle on the same graph")
        if not cycle.is_cycle():
            raise PreconditionError("chain is a cycle", "boundary is nonzero")
        if not self.basis:
            return ()
        return linalg.coordinates([b.coeffs for b in self.basis], cycle.coeffs, self.field)

    def restrict(self, cycle: CycleVector, face: Face) -> Vector:
        return self.restrictions[tuple(face)].apply(self.coordinates(cycle))


def build_omega(graph: SimplicialGraph, field: Field = QQ) -> CanonicalOmega:
    require_connected(graph)
    cycles = homology.reduced_homology(graph, 1, field)
    basis = tuple(CycleVector(graph, rep, field) for rep in cycles.representatives)
    dims = {
        face: homology.relative_homology(graph, face, 1, field).dim for face in graph.ordered
    }
    maps = {
        (source, target): homology.restriction_matrix(graph, source, target, 1, field)
        for source, target in graph.covering_pairs()
        if dims[source] and dims[target]
    }
    restrictions = {
        face: homology.natural_restriction(graph, face, 1, field) for face in graph.ordered
    }
    module = SquareFreeModule(graph, dims, maps, field)
    logger.debug(f"built ω on {graph.v} vertices, genus {len(basis)}")
    return CanonicalOmega(graph, field, basis, restrictions, module)


def general_section(
    omega: CanonicalOmega,
    seed: int = DEFAULT_SEED,
    draws: int = DEFAULT_GENERAL_SECTION_DRAWS,
    scale: int = DEFAULT_COEFFICIENT_SCALE,
) -> CycleVector:
    """
    A combination u_N = Σ c_k s_k of the basis cycles, c_k drawn from
    1..scale·g, whose chain has a nonzero coefficient on every edge.
    """
    omega.field.require_char_zero("general sections")
    if not is_two_connected(omega.graph):
        raise PreconditionError("2-connected graph")
    g = omega.genus
    rng = random.Random(seed)
    for draw in range(draws):
        coefficients = [rng.randint(1, scale * g) for _ in range(g)]
        section = omega.basis[0].scale(coefficients[0])
        for c, cycle in zip(coefficients[1:], omega.basis[1:]):
            section = section + cycle.scale(c)
        if len(section.support) != omega.graph.e:
            continue
        if all(any(x != 0 for x in omega.restrict(section, f)) for f in omega.graph.ordered):
            logger.debug(f"general section found on draw {draw + 1}")
            return section
    raise GeneralSectionError(f"no full-support section in {draws} draws")


def submodule_generated(omega: CanonicalOmega, cycles: Sequence[CycleVector]) -> SquareFreeModule:
    """
    The submodule of ω generated by the cycles in degree 0: M_∅ is their span
    and M_F its image in (ω)_F. The inclusion into ω is kept as the embedding.
    """
    field = omega.field
    target = omega.module
    span = linalg.row_space([omega.coordinates(c) for c in cycles], omega.genus, field)
    if not span:
        logger.warning("submodule generated by no cycles is the zero module")
    bases: dict[Face, list[Vector]] = dict()
    for face in omega.graph.ordered:
        restriction = omega.restrictions[face]
        images = [restriction.apply(v) for v in span]
        bases[face] = linalg.row_space(images, target.dim(face), field)
    dims = {face: len(vectors) for face, vectors in bases.items()}
    maps = dict()
    for source, dest in omega.graph.covering_pairs():
        if not dims[source] or not dims[dest]:
            continue
        natural = target.phi(source, dest)
        columns = [
            linalg.coordinates(bases[dest], natural.apply(v), field) for v in bases[source]
        ]
        maps[(source, dest)] = Matrix.from_columns(columns, dims[dest], field)
    module = SquareFreeModule(omega.graph, dims, maps, field)
    inclusion = {
        face: Matrix.from_columns(vectors, target.dim(face), field)
        for face, vectors in bases.items()
        if vectors
    }
    return module.with_embedding(ModuleHom(module, target, inclusion))


def degree_of_generated(omega: CanonicalOmega, cycles: Sequence[CycleVector]) -> int:
    """Σ_v (dim span{s|_v} - 1) over the vertices where some s restricts to nonzero"""
    total = 0
    for vertex in omega.graph.vertices:
        images = [omega.restrict(c, (vertex,)) for c in cycles]
        dim = linalg.span_rank(images, omega.dim((vertex,)), omega.field)
        if dim:
            total += dim - 1
    return total


def omega_generated_in_degree_zero(omega: CanonicalOmega) -> bool:
    return all(
        linalg.is_surjective(omega.restrictions[f]) for f in omega.graph.ordered
    )
