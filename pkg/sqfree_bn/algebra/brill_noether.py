"""
Linear series on graphs: effective and special modules, the g¹_d search
behind the gonality, and the Clifford index.

A pencil is the submodule of ω generated by a 2-dimensional space of cycles
span{s₁, s₂}. Its degree is the number of vertices where the restrictions of
s₁ and s₂ are independent, provided the span covers every face. For a fixed
s₁, requiring s₂|_v to be parallel to s₁|_v is linear in s₂, so the pencils
through s₁ are searched over the flats of these vertex constraints.
"""

import logging
import math
import random
from itertools import combinations
from logging import Logger
from typing import Sequence

from sympy import Matrix as SymbolicMatrix
from sympy import expand, symbols

from sqfree_bn.algebra import homology, linalg
from sqfree_bn.algebra.omega import (
    CanonicalOmega,
    build_omega,
    general_section,
    submodule_generated,
)
from sqfree_bn.algebra.simplicial import (
    connected_vertex_sets,
    genus,
    girth,
    is_two_connected,
    simple_cycles,
    smoothable_vertices,
)
from sqfree_bn.algebra.sqfree import (
    IndecomposabilityTester,
    hom_space,
    is_cm_module,
    is_locally_rank_one,
    to_sympy,
)
from sqfree_bn.models.certificate import CliffordResult, GonalityResult, LinearSeriesCertificate
from sqfree_bn.models.complex import Face, SimplicialGraph
from sqfree_bn.models.cycle import CycleVector
from sqfree_bn.models.field import QQ
from sqfree_bn.models.matrix import Matrix, Vector
from sqfree_bn.models.module import ModuleHom, SquareFreeModule
from sqfree_bn.settings.const import (
    DEFAULT_CLIFFORD_CYCLE_LENGTH_SLACK,
    DEFAULT_CLIFFORD_MAX_TRIPLES,
    DEFAULT_COEFFICIENT_SCALE,
    DEFAULT_CYCLE_CAP,
    DEFAULT_GENERAL_SECTION_DRAWS,
    DEFAULT_GONALITY_DELETION_DEPTH,
    DEFAULT_INDECOMPOSABLE_SAMPLES,
    DEFAULT_ISOMORPHISM_SYMBOLIC_MAX_DIM,
    DEFAULT_SEED,
    DEFAULT_SPECIAL_SAMPLES,
    RANDOM_COEFF_RANGE,
)
from sqfree_bn.utils.exceptions import (
    InconclusiveError,
    NoQualifyingModuleError,
    PreconditionError,
)

logger = logging.getLogger(__name__)


def _require_search_graph(graph: SimplicialGraph) -> int:
    if not is_two_connected(graph):
        raise PreconditionError("2-connected graph")
    g = genus(graph)
    if g < 2:
        raise PreconditionError("genus >= 2", f"genus is {g}")
    return g


def has_full_support(module: SquareFreeModule) -> bool:
    """Every restriction M_∅ -> M_F is nonzero"""
    if not module.dim(()):
        return False
    return all(not module.phi((), f).is_zero() for f in module.faces if f)


def _indecomposable(
    module: SquareFreeModule, samples: int, seed: int, logger: Logger = logger
) -> bool:
    try:
        return IndecomposabilityTester(module, samples, seed, logger).run()
    except InconclusiveError as e:
        logger.warning(f"treating module as not certified: {e}")
        return False


def is_effective(
    module: SquareFreeModule,
    samples: int = DEFAULT_INDECOMPOSABLE_SAMPLES,
    seed: int = DEFAULT_SEED,
) -> bool:
    """
    CM, indecomposable, and some u ∈ M_∅ is nonzero in every M_F. Over Q a
    finite union of proper subspaces cannot cover M_∅, so such u exists iff
    every restriction from M_∅ is nonzero.

    Raises InconclusiveError when the indecomposability test exhausts its
    sample budget; the CLI reports that as exit code 3.
    """
    module.field.require_char_zero("effectiveness")
    if module.is_zero() or not is_cm_module(module) or not has_full_support(module):
        return False
    return IndecomposabilityTester(module, samples, seed).run()


def _injective_somewhere(
    basis: list[ModuleHom],
    face: Face,
    rng: random.Random,
    samples: int,
    symbolic_max_dim: int,
) -> bool:
    size = basis[0].source.dim(face)
    stacked = basis[0].component(face)
    for hom in basis[1:]:
        stacked = stacked.vstack(hom.component(face))
    if linalg.rank(stacked) < size:
        return False
    for _ in range(samples):
        combination = basis[0].component(face).scale(rng.randint(1, RANDOM_COEFF_RANGE))
        for hom in basis[1:]:
            combination = combination + hom.component(face).scale(
                rng.randint(-RANDOM_COEFF_RANGE, RANDOM_COEFF_RANGE)
            )
        if linalg.is_injective(combination):
            return True
    target = basis[0].target.dim(face)
    if max(size, target) > symbolic_max_dim:
        raise InconclusiveError(f"no injective map sampled at {list(face)}", samples)
    coefficients = symbols(f"c0:{len(basis)}")
    generic = SymbolicMatrix.zeros(target, size)
    for c, hom in zip(coefficients, basis):
        generic += c * SymbolicMatrix(
            [[to_sympy(x) for x in row] for row in hom.component(face).rows]
        )
    for rows in combinations(range(target), size):
        if expand(generic.extract(list(rows), list(range(size))).det(method="berkowitz")) != 0:
            return True
    return False


def is_special(
    module: SquareFreeModule,
    omega: CanonicalOmega,
    samples: int = DEFAULT_SPECIAL_SAMPLES,
    seed: int = DEFAULT_SEED,
    symbolic_max_dim: int = DEFAULT_ISOMORPHISM_SYMBOLIC_MAX_DIM,
) -> bool:
    """
    True iff some homomorphism M -> ω is injective. Injectivity at a face is a
    Zariski open condition on Hom(M, ω), so one face at a time suffices.
    """
    embedding = module.embedding
    if embedding is not None and embedding.target.complex == omega.graph:
        return True
    if module.is_zero():
        return True
    if any(module.dim(f) > omega.dim(f) for f in module.faces):
        return False
    module.field.require_char_zero("special modules")
    basis = hom_space(module, omega.module)
    if not basis:
        return False
    rng = random.Random(seed)
    for face in module.faces:
        if not module.dim(face):
            continue
        if not _injective_somewhere(basis, face, rng, samples, symbolic_max_dim):
            logger.debug(f"no injective map into ω at {list(face)}")
            return False
    return True


def series_checks(
    omega: CanonicalOmega,
    module: SquareFreeModule,
    samples: int = DEFAULT_INDECOMPOSABLE_SAMPLES,
    seed: int = DEFAULT_SEED,
    logger: Logger = logger,
) -> dict[str, bool]:
    checks = {
        "special": is_special(module, omega),
        "cohen_macaulay": is_cm_module(module),
        "locally_rank_one": is_locally_rank_one(module),
        "full_support": has_full_support(module),
    }
    checks["indecomposable"] = all(checks.values()) and _indecomposable(
        module, samples, seed, logger
    )
    checks["effective"] = (
        checks["cohen_macaulay"] and checks["full_support"] and checks["indecomposable"]
    )
    return checks


def certificate_for(
    omega: CanonicalOmega,
    cycles: Sequence[CycleVector],
    samples: int = DEFAULT_INDECOMPOSABLE_SAMPLES,
    seed: int = DEFAULT_SEED,
    logger: Logger = logger,
) -> LinearSeriesCertificate:
    module = submodule_generated(omega, cycles)
    checks = series_checks(omega, module, samples, seed, logger)
    return LinearSeriesCertificate(
        tuple(cycles), module.degree(), module.global_sections() - 1, checks
    )


def verify_certificate(
    omega: CanonicalOmega,
    certificate: LinearSeriesCertificate,
    samples: int = DEFAULT_INDECOMPOSABLE_SAMPLES,
    seed: int = DEFAULT_SEED,
) -> bool:
    """Rebuilds the module from the stored cycles and re-runs every check"""
    fresh = certificate_for(omega, certificate.cycles, samples, seed)
    return (
        fresh.degree == certificate.degree
        and fresh.r == certificate.r
        and fresh.verified
        and all(fresh.checks.get(k) == v for k, v in certificate.checks.items())
    )


def gonality_bounds(graph: SimplicialGraph) -> dict[str, int]:
    g = genus(graph)
    value = girth(graph)
    return {
        "girth_bound": value if value != math.inf else None,
        "genus_bound": (g + 3) // 2,
    }


def hyperelliptic_triangles(graph: SimplicialGraph) -> list[tuple[int, int, int]]:
    """Triangles (w, a, b) with w of valency 2 and a, b adjacent"""
    triangles = list()
    for vertex in graph.vertices:
        if graph.valency(vertex) != 2:
            continue
        a, b = graph.neighbors(vertex)
        if (a, b) in graph.edge_index:
            triangles.append((vertex, a, b))
    return triangles


def hyperelliptic_pencil(
    graph: SimplicialGraph,
    omega: CanonicalOmega | None = None,
    seed: int = DEFAULT_SEED,
    samples: int = DEFAULT_INDECOMPOSABLE_SAMPLES,
) -> LinearSeriesCertificate | None:
    """The g¹₂ spanned by u_N and the triangle at a valency-2 vertex, if certified"""
    triangles = hyperelliptic_triangles(graph)
    if not triangles:
        return None
    omega = omega or build_omega(graph)
    section = general_section(omega, seed)
    for vertex, a, b in triangles:
        triangle = CycleVector.from_vertex_cycle(graph, (vertex, a, b), omega.field)
        certificate = certificate_for(omega, [section, triangle], samples, seed)
        if certificate.verified and certificate.r == 1 and certificate.degree <= 2:
            return certificate
    return None


def is_hyperelliptic_reduced(graph: SimplicialGraph, seed: int = DEFAULT_SEED) -> bool:
    """
    On a reduced graph a valency-2 vertex must have adjacent neighbors; the
    graph is hyperelliptic iff such a vertex exists and its pencil certifies.
    """
    if smoothable_vertices(graph.nx_graph):
        raise PreconditionError("reduced graph", "a valency-2 vertex can be smoothed")
    _require_search_graph(graph)
    return hyperelliptic_pencil(graph, seed=seed) is not None


class GonalitySearch:
    """
    Searches pencils span{s₁, s₂} for the least certified degree.

    s₁ runs over the general section u_N, general cycles of Δ - A for small
    connected vertex sets A, then the simple cycles. For each s₁ the search over
    s₂ is complete: the vertices where s₂ is parallel to s₁ form a flat of the
    constraint rows, s₂ is drawn from the common kernel L_C, and the degree of
    the pencil is |V(s₁)| - |C|.
    """

    def __init__(
        self,
        graph: SimplicialGraph,
        seed: int = DEFAULT_SEED,
        cycle_cap: int = DEFAULT_CYCLE_CAP,
        samples: int = DEFAULT_INDECOMPOSABLE_SAMPLES,
        draws: int = DEFAULT_GENERAL_SECTION_DRAWS,
        scale: int = DEFAULT_COEFFICIENT_SCALE,
        deletion_depth: int = DEFAULT_GONALITY_DELETION_DEPTH,
        logger: Logger = logger,
    ):
        self.graph = graph
        self.g = _require_search_graph(graph)
        self.seed = seed
        self.cycle_cap = cycle_cap
        self.samples = samples
        self.draws = draws
        self.scale = scale
        self.deletion_depth = deletion_depth
        self.logger = logger
        self.rng = random.Random(seed)
        self.omega = build_omega(graph, QQ)
        self.field = self.omega.field
        self.best = math.inf
        self.best_certificate: LinearSeriesCertificate | None = None
        self.certified: list[LinearSeriesCertificate] = list()
        self.examined = 0
        self.cycles: list[tuple[int, ...]] = list()

    def _chain(self, coordinates: Sequence) -> CycleVector:
        zero = self.field.zero
        coeffs = [zero] * self.graph.e
        for c, cycle in zip(coordinates, self.omega.basis):
            if c != 0:
                coeffs = [a + c * b for a, b in zip(coeffs, cycle.coeffs)]
        return CycleVector(self.graph, tuple(coeffs), self.field)

    def _restriction(self, face: Face, coordinates: Sequence) -> Vector:
        return self.omega.restrictions[face].apply(coordinates)

    def _constraint_rows(self, vertex: int, image: Vector) -> list[Vector]:
        """Rows r_p·R[j] - r_j·R[p], j ≠ p, whose kernel is {x : R x ∥ r}"""
        rows = self.omega.restrictions[(vertex,)].rows
        p = next(k for k, x in enumerate(image) if x != 0)
        return [
            tuple(image[p] * a - image[j] * b for a, b in zip(rows[j], rows[p]))
            for j in range(len(rows))
            if j != p
        ]

    def _consider(self, cycles: Sequence[CycleVector]) -> LinearSeriesCertificate | None:
        certificate = certificate_for(self.omega, cycles, self.samples, self.seed, self.logger)
        if not certificate.verified or certificate.r != 1:
            return None
        self.certified.append(certificate)
        # equal degrees: least generating cycle supports win
        if self.best_certificate is None or certificate.sort_key < self.best_certificate.sort_key:
            if certificate.degree < self.best:
                self.logger.info(f"certified a g¹_{certificate.degree}")
            self.best = certificate.degree
            self.best_certificate = certificate
        return certificate

    def _first_cycles(self) -> list[tuple[str, Vector]]:
        """Candidates for s₁ with a label, in search order"""
        section = general_section(self.omega, self.seed, self.draws, self.scale)
        candidates = [("u_N", self.omega.coordinates(section))]
        for removed in connected_vertex_sets(self.graph, self.deletion_depth):
            rest = [v for v in self.graph.vertices if v not in removed]
            sub = self.graph.induced(rest)
            cycles = homology.reduced_homology(sub, 1, self.field)
            if not cycles.dim:
                continue
            coeffs = [self.rng.randint(1, self.scale * self.g) for _ in range(cycles.dim)]
            chain = [self.field.zero] * len(cycles.chains)
            for c, rep in zip(coeffs, cycles.representatives):
                chain = [a + c * b for a, b in zip(chain, rep)]
            lifted = homology.project_chain(chain, cycles.chains, self.graph.edges, self.field)
            cycle = CycleVector(self.graph, lifted, self.field)
            candidates.append((f"general on Δ-{list(removed)}", self.omega.coordinates(cycle)))
        for walk in self.cycles:
            cycle = CycleVector.from_vertex_cycle(self.graph, walk, self.field)
            candidates.append((f"cycle {list(walk)}", self.omega.coordinates(cycle)))
        return candidates

    def _reduce(self, basis: list[tuple[int, Vector]], vector: Vector) -> Vector:
        for pivot, row in basis:
            c = vector[pivot]
            if c != 0:
                vector = tuple(a - c * b for a, b in zip(vector, row))
        return vector

    def _extend(self, basis: list[tuple[int, Vector]], rows: list[Vector]) -> list[tuple[int, Vector]]:
        basis = list(basis)
        for row in rows:
            row = self._reduce(basis, row)
            pivot = next((k for k, x in enumerate(row) if x != 0), None)
            if pivot is not None:
                inv = self.field.one / row[pivot]
                basis.append((pivot, tuple(x * inv for x in row)))
        return basis

    def _closure(self, basis, blocks: dict[int, list[Vector]]) -> frozenset:
        return frozenset(
            v
            for v, rows in blocks.items()
            if all(not any(self._reduce(basis, r)) for r in rows)
        )

    def _covers(self, kernel: list[Vector], uncovered: list[Face]) -> bool:
        return all(
            any(any(self._restriction(f, x)) for x in kernel) for f in uncovered
        )

    def _certify_flat(self, first: Vector, kernel: list[Vector], uncovered: list[Face]):
        for _ in range(self.draws):
            combination = [self.field.zero] * self.g
            for vector in kernel:
                c = self.rng.randint(-RANDOM_COEFF_RANGE, RANDOM_COEFF_RANGE)
                combination = [a + c * b for a, b in zip(combination, vector)]
            if linalg.span_rank([first, combination], self.g, self.field) < 2:
                continue
            if not all(any(self._restriction(f, combination)) for f in uncovered):
                continue
            return self._consider([self._chain(first), self._chain(combination)])
        return None

    def _search_from(self, label: str, first: Vector):
        support = list()
        uncovered = list()
        for face in self.graph.ordered:
            if not face:
                continue
            image = self._restriction(face, first)
            if any(image):
                if len(face) == 1:
                    support.append(face[0])
            else:
                uncovered.append(face)
        blocks = {
            v: self._constraint_rows(v, self._restriction((v,), first)) for v in support
        }
        limit = self.g - 2
        root = self._closure([], blocks)
        stack = [(root, [])]
        seen = {root}
        while stack:
            flat, basis = stack.pop()
            kernel = linalg.nullspace(Matrix([row for _, row in basis], self.field, self.g))
            if uncovered and not self._covers(kernel, uncovered):
                continue
            if len(support) - len(flat) <= self.best and len(kernel) >= 2:
                self._certify_flat(first, kernel, uncovered)
            if len(basis) >= limit:
                continue
            for vertex in sorted(support, reverse=True):
                if vertex in flat:
                    continue
                extended = self._extend(basis, blocks[vertex])
                if len(extended) > limit:
                    continue
                child = self._closure(extended, blocks)
                if child not in seen:
                    seen.add(child)
                    stack.append((child, extended))
        self.logger.debug(f"{label}: {len(seen)} flats, best {self.best}")

    def run(self) -> GonalityResult:
        self.cycles = simple_cycles(self.graph, self.cycle_cap)
        bounds = gonality_bounds(self.graph)
        section = general_section(self.omega, self.seed, self.draws, self.scale)
        shortest = CycleVector.from_vertex_cycle(self.graph, self.cycles[0], self.field)
        self._consider([section, shortest])
        pencil = hyperelliptic_pencil(self.graph, self.omega, self.seed, self.samples)
        if pencil is not None:
            self._consider(pencil.cycles)
        for label, first in self._first_cycles():
            self.examined += 1
            self._search_from(label, first)
        if self.best_certificate is None:
            raise NoQualifyingModuleError("no certified pencil in the search space")
        if self.best > min(v for v in bounds.values() if v is not None):
            self.logger.error(f"gonality {self.best} exceeds the bounds {bounds}")
        return GonalityResult(
            gonality=self.best,
            certificate=self.best_certificate,
            girth_bound=bounds["girth_bound"],
            genus_bound=bounds["genus_bound"],
            seed=self.seed,
            first_cycles_examined=self.examined,
            candidates_certified=len(self.certified),
            certified=self.certified,
        )


def gonality(graph: SimplicialGraph, seed: int = DEFAULT_SEED, **options) -> GonalityResult:
    return GonalitySearch(graph, seed, **options).run()


def verify_clifford(
    module: SquareFreeModule,
    omega: CanonicalOmega,
    samples: int = DEFAULT_INDECOMPOSABLE_SAMPLES,
    seed: int = DEFAULT_SEED,
) -> bool:
    """deg(M) >= 2(l(M) - 1) for a special effective module"""
    _require_search_graph(module.graph)
    if not is_special(module, omega):
        raise PreconditionError("special module")
    if not is_effective(module, samples, seed):
        raise PreconditionError("effective module")
    return module.degree() >= 2 * (module.global_sections() - 1)


def clifford_index(
    graph: SimplicialGraph,
    seed: int = DEFAULT_SEED,
    max_triples: int = DEFAULT_CLIFFORD_MAX_TRIPLES,
    length_slack: int = DEFAULT_CLIFFORD_CYCLE_LENGTH_SLACK,
    search: GonalitySearch | None = None,
    logger: Logger = logger,
    **options,
) -> CliffordResult:
    """
    min d - 2r over special effective modules with l >= 2 and l(ω_M) >= 2,
    taking the certified pencils of the gonality search and the modules
    generated by triples of short simple cycles.
    """
    if search is None:
        search = GonalitySearch(graph, seed, logger=logger, **options)
        search.run()
    omega, g = search.omega, search.g
    candidates = list(search.certified)
    short = [w for w in search.cycles if len(w) <= girth(graph) + length_slack]
    faces = [f for f in graph.ordered if f]
    for count, triple in enumerate(combinations(short, 3)):
        if count >= max_triples:
            logger.info(f"stopped after {max_triples} triples")
            break
        cycles = [CycleVector.from_vertex_cycle(graph, w, omega.field) for w in triple]
        coordinates = [omega.coordinates(c) for c in cycles]
        if linalg.span_rank(coordinates, g, omega.field) < 3:
            continue
        if not all(any(any(omega.restrictions[f].apply(x)) for x in coordinates) for f in faces):
            continue
        module = submodule_generated(omega, cycles)
        if module.global_sections() - 1 - module.degree() + g < 2:
            continue
        certificate = LinearSeriesCertificate(
            tuple(cycles),
            module.degree(),
            2,
            series_checks(omega, module, search.samples, seed, logger),
        )
        if certificate.verified:
            candidates.append(certificate)
    best = None
    best_l_omega = 0
    qualifying = 0
    violations = 0
    for certificate in candidates:
        if certificate.degree < 2 * certificate.r:
            violations += 1
            logger.error(f"d < 2r for {certificate.to_json()}")
        l_omega = certificate.l - 1 - certificate.degree + g
        if certificate.l < 2 or l_omega < 2:
            continue
        qualifying += 1
        value = certificate.degree - 2 * certificate.r
        if best is None or value < best.degree - 2 * best.r:
            best, best_l_omega = certificate, l_omega
    if best is None:
        raise NoQualifyingModuleError("no qualifying module found in search space")
    return CliffordResult(
        clifford_index=best.degree - 2 * best.r,
        certificate=best,
        l_omega=best_l_omega,
        candidates=qualifying,
        violations=violations,
        seed=seed,
        enumerated=len(candidates),
    )
