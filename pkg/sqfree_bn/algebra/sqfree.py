"""
Square-free modules on simplicial complexes: validation, constructions, the
K• local cohomology and the Cohen-Macaulay test, homomorphism spaces and the
indecomposability and isomorphism deciders.
"""

import logging
import random
from fractions import Fraction
from functools import reduce as fold
from logging import Logger
from typing import Iterable, Mapping, Sequence

from sympy import Matrix as SymbolicMatrix
from sympy import Poly, Rational, Symbol, expand, factor_list, gcdex, symbols

from sqfree_bn.algebra import linalg
from sqfree_bn.algebra.simplicial import (
    bfs_tree,
    genus,
    independent_connected_complement,
    require_connected,
)
from sqfree_bn.models.certificate import RiemannRochReport
from sqfree_bn.models.complex import Face, SimplicialComplex, SimplicialGraph
from sqfree_bn.models.field import QQ, Field
from sqfree_bn.models.matrix import Matrix, Vector, block_diagonal
from sqfree_bn.models.module import ModuleHom, SquareFreeModule
from sqfree_bn.settings.const import (
    DEFAULT_INDECOMPOSABLE_SAMPLES,
    DEFAULT_ISOMORPHISM_SAMPLES,
    DEFAULT_ISOMORPHISM_SYMBOLIC_MAX_DIM,
    DEFAULT_SEED,
    RANDOM_COEFF_RANGE,
)
from sqfree_bn.utils.exceptions import (
    DegreeOutOfRangeError,
    FieldMismatchError,
    InconclusiveError,
    ModuleValidationError,
    NotAFaceError,
    NotCohenMacaulayError,
    NotSquareFreeError,
    PreconditionError,
)

logger = logging.getLogger(__name__)


def validate(module: SquareFreeModule) -> bool:
    """
    Checks that dims live on faces, that every map sits on a covering pair
    with the right shape and field, and that all squares commute.
    """
    complex_ = module.complex
    for face, dim in module.dims.items():
        if tuple(face) not in complex_:
            raise NotAFaceError(f"dims given on {list(face)}, which is not a face")
        if not isinstance(dim, int) or dim < 0:
            raise ModuleValidationError(f"dim at {list(face)} must be a nonnegative integer")
    for (source, target), matrix in module.maps.items():
        source, target = tuple(source), tuple(target)
        if len(target) != len(source) + 1 or not set(source).issubset(target):
            raise NotSquareFreeError(
                f"map {list(source)} -> {list(target)} is not on a covering pair"
            )
        if target not in complex_:
            raise NotAFaceError(f"map target {list(target)} is not a face")
        if matrix.field != module.field:
            raise FieldMismatchError(
                f"map {list(source)} -> {list(target)} is over {matrix.field.name}, "
                f"module is over {module.field.name}"
            )
        expected = (module.dim(target), module.dim(source))
        if matrix.shape != expected:
            raise ModuleValidationError(
                f"map {list(source)} -> {list(target)} has shape {matrix.shape}, "
                f"expected {expected}"
            )
    for top in complex_.ordered:
        if len(top) < 2:
            continue
        for a in range(len(top)):
            for b in range(a + 1, len(top)):
                i, j = top[a], top[b]
                bottom = tuple(v for v in top if v not in (i, j))
                via_i = tuple(sorted(bottom + (i,)))
                via_j = tuple(sorted(bottom + (j,)))
                left = module.phi(via_i, top) @ module.phi(bottom, via_i)
                right = module.phi(via_j, top) @ module.phi(bottom, via_j)
                if left != right:
                    raise ModuleValidationError(
                        f"square {list(bottom)} -> {list(top)} does not commute"
                    )
    return True


def structure_module(complex_: SimplicialComplex, field: Field = QQ) -> SquareFreeModule:
    """k[Δ]: dimension 1 on every face, every map the identity"""
    dims = {face: 1 for face in complex_.ordered}
    maps = {pair: Matrix.identity(1, field) for pair in complex_.covering_pairs()}
    return SquareFreeModule(complex_, dims, maps, field)


def zero_module(complex_: SimplicialComplex, field: Field = QQ) -> SquareFreeModule:
    return SquareFreeModule(complex_, {}, {}, field)


def direct_sum(first: SquareFreeModule, second: SquareFreeModule) -> SquareFreeModule:
    if first.complex != second.complex:
        raise ModuleValidationError("direct sum of modules on different complexes")
    if first.field != second.field:
        raise FieldMismatchError(f"{first.field.name} vs {second.field.name}")
    field = first.field
    dims = {f: first.dim(f) + second.dim(f) for f in first.faces}
    maps = dict()
    for source, target in first.complex.covering_pairs():
        if dims[source] and dims[target]:
            maps[(source, target)] = block_diagonal(
                [first.phi(source, target), second.phi(source, target)], field
            )
    return SquareFreeModule(first.complex, dims, maps, field)


def _offsets(faces: Sequence[Face], module: SquareFreeModule) -> tuple[dict[Face, int], int]:
    offsets = dict()
    total = 0
    for face in faces:
        offsets[face] = total
        total += module.dim(face)
    return offsets, total


def edge_differential(module: SquareFreeModule) -> Matrix:
    """
    ⊕_v M_v -> ⊕_e M_e with block φ_ve at v and -φ_we at w for e = vw, v < w.
    Its kernel is the set of compatible vertex families.
    """
    graph = module.graph
    field = module.field
    columns, ncols = _offsets([(v,) for v in graph.vertices], module)
    rows, nrows = _offsets(list(graph.edges), module)
    entries = [[field.zero] * ncols for _ in range(nrows)]
    for edge in graph.edges:
        for vertex, sign in ((edge[0], 1), (edge[1], -1)):
            block = module.phi((vertex,), edge)
            for r, row in enumerate(block.rows):
                for c, x in enumerate(row):
                    entries[rows[edge] + r][columns[(vertex,)] + c] = x * sign
    return Matrix(entries, field, ncols)


def cm_completion(
    graph: SimplicialGraph,
    dims: Mapping[Face, int],
    maps: Mapping[tuple[Face, Face], Matrix],
    field: Field = QQ,
) -> SquareFreeModule:
    """
    Completes vertex and edge data to a module whose degree-0 piece is the
    joint kernel of the edge differential, with φ_{∅v} the coordinate
    projections. The result is CM whenever every φ_v is injective.
    """
    dims = {f: d for f, d in dims.items() if f}
    maps = {pair: m for pair, m in maps.items() if pair[0]}
    partial = SquareFreeModule(graph, dims, maps, field)
    kernel = linalg.nullspace(edge_differential(partial))
    columns, _ = _offsets([(v,) for v in graph.vertices], partial)
    dims[()] = len(kernel)
    for vertex in graph.vertices:
        start, size = columns[(vertex,)], partial.dim((vertex,))
        if size and kernel:
            maps[((), (vertex,))] = Matrix.from_columns(
                [k[start : start + size] for k in kernel], size, field
            )
    return SquareFreeModule(graph, dims, maps, field)


def koszul_sign(j: int, sigma: Face) -> int:
    """(-1)^{#{i ∈ σ : i < j}}"""
    return -1 if sum(1 for i in sigma if i < j) % 2 else 1


def _require_square_free(tau: Iterable[int]) -> Face:
    tau = tuple(sorted(tau))
    if len(set(tau)) != len(tau) or any(not isinstance(v, int) or v < 1 for v in tau):
        raise NotSquareFreeError(f"{list(tau)} is not a square-free degree")
    return tau


def koszul_differential(module: SquareFreeModule, tau: Face, i: int) -> Matrix:
    """d^i: (K^i)_{-τ} -> (K^{i+1})_{-τ} with K^i = ⊕_{τ ⊆ σ, |σ| = i} M_σ"""
    field = module.field
    star = module.complex.star(tau)
    sources = [s for s in star if len(s) == i]
    targets = [s for s in star if len(s) == i + 1]
    columns, ncols = _offsets(sources, module)
    rows, nrows = _offsets(targets, module)
    entries = [[field.zero] * ncols for _ in range(nrows)]
    for target in targets:
        for j in target:
            if j in tau:
                continue
            source = tuple(v for v in target if v != j)
            sign = koszul_sign(j, target)
            block = module.phi(source, target)
            for r, row in enumerate(block.rows):
                for c, x in enumerate(row):
                    if x != 0:
                        entries[rows[target] + r][columns[source] + c] = x * sign
    return Matrix(entries, field, ncols)


def local_cohomology_dims(module: SquareFreeModule, tau: Iterable[int]) -> list[int]:
    """dim H^i_m(M)_{-τ} for i = 0..d, where d - 1 = dim Δ"""
    tau = _require_square_free(tau)
    d = module.complex.dim + 1
    if tau not in module.complex:
        return [0] * (d + 1)
    star = module.complex.star(tau)
    sizes = [sum(module.dim(s) for s in star if len(s) == i) for i in range(d + 1)]
    ranks = [
        linalg.rank(koszul_differential(module, tau, i)) if sizes[i] else 0
        for i in range(d + 1)
    ]
    return [
        sizes[i] - ranks[i] - (ranks[i - 1] if i else 0) for i in range(d + 1)
    ]


def is_cm_module_koszul(module: SquareFreeModule) -> bool:
    if module.is_zero():
        return True
    d = module.complex.dim + 1
    for tau in module.faces:
        dims = local_cohomology_dims(module, tau)
        if any(dims[i] for i in range(d)):
            logger.debug(f"local cohomology at {list(tau)} is {dims}")
            return False
    return True


def is_cm_module_graph(module: SquareFreeModule) -> bool:
    """
    Graph criterion: every φ_v = ⊕_e φ_ve is injective, M_∅ -> ⊕ M_v is
    injective and its image is the kernel of ⊕ φ_v.
    """
    if module.complex.dim != 1:
        raise PreconditionError("complex of dimension 1", f"got dimension {module.complex.dim}")
    if module.is_zero():
        return True
    graph = module.graph
    field = module.field
    for vertex in graph.vertices:
        size = module.dim((vertex,))
        if not size:
            continue
        blocks = [module.phi((vertex,), e) for e in graph.incident_edges(vertex)]
        stacked = fold(Matrix.vstack, blocks, Matrix.zeros(0, size, field))
        if not linalg.is_injective(stacked):
            return False
    vertex_total = sum(module.dim((v,)) for v in graph.vertices)
    restriction = fold(
        Matrix.vstack,
        [module.phi((), (v,)) for v in graph.vertices],
        Matrix.zeros(0, module.dim(()), field),
    )
    restriction_rank = linalg.rank(restriction)
    if restriction_rank != module.dim(()):
        return False
    return restriction_rank + linalg.rank(edge_differential(module)) == vertex_total


def is_cm_module(module: SquareFreeModule, method: str = "auto") -> bool:
    if method == "auto":
        method = "graph" if module.complex.dim == 1 else "koszul"
    if method == "graph":
        return is_cm_module_graph(module)
    if method == "koszul":
        return is_cm_module_koszul(module)
    raise ValueError(f"unknown CM method {method!r}")


def omega_dims(module: SquareFreeModule) -> dict[Face, int]:
    """dim (ω_M)_τ = Σ_{τ ⊆ σ} (-1)^{d - |σ|} dim M_σ, valid for CM modules"""
    if not is_cm_module(module):
        raise NotCohenMacaulayError("the canonical module formula needs a CM module")
    d = module.complex.dim + 1
    return {
        tau: sum(
            (-1) ** ((d - len(sigma)) % 2) * module.dim(sigma)
            for sigma in module.complex.star(tau)
        )
        for tau in module.faces
    }


def is_locally_rank_one(module: SquareFreeModule) -> bool:
    return all(module.dim(e) == 1 for e in module.complex.faces_of_size(2))


def riemann_roch_check(module: SquareFreeModule) -> RiemannRochReport:
    if module.complex.dim > 1:
        raise PreconditionError("support is a graph", f"complex has dimension {module.complex.dim}")
    graph = module.graph
    if not graph.is_connected():
        raise PreconditionError("connected graph")
    if not is_locally_rank_one(module):
        raise PreconditionError("locally of rank 1", "some edge piece has dim != 1")
    if not is_cm_module(module):
        raise PreconditionError("Cohen-Macaulay")
    report = RiemannRochReport(
        l=module.global_sections(),
        l_omega=omega_dims(module)[()],
        deg=module.degree(),
        g=genus(graph),
    )
    if not report.holds:
        logger.error(f"Riemann-Roch identity fails: {report.to_json()}")
    return report


def _hom_layout(source: SquareFreeModule, target: SquareFreeModule) -> tuple[dict[Face, int], int]:
    offsets = dict()
    total = 0
    for face in source.faces:
        offsets[face] = total
        total += target.dim(face) * source.dim(face)
    return offsets, total


def _hom_from_vector(
    source: SquareFreeModule, target: SquareFreeModule, vector: Sequence
) -> ModuleHom:
    offsets, _ = _hom_layout(source, target)
    components = dict()
    for face in source.faces:
        nrows, ncols = target.dim(face), source.dim(face)
        start = offsets[face]
        components[face] = Matrix._raw(
            tuple(
                tuple(vector[start + r * ncols : start + (r + 1) * ncols])
                for r in range(nrows)
            ),
            source.field,
            ncols,
        )
    return ModuleHom(source, target, components)


def _hom_vector(hom: ModuleHom) -> Vector:
    return linalg.flatten([hom.component(f) for f in hom.source.faces])


def hom_space(source: SquareFreeModule, target: SquareFreeModule) -> list[ModuleHom]:
    """Basis of Hom(M, N): solutions of ψ_G φᴹ_{FG} = φᴺ_{FG} ψ_F on covering pairs"""
    if source.complex != target.complex:
        raise ModuleValidationError("homomorphisms between modules on different complexes")
    if source.field != target.field:
        raise FieldMismatchError(f"{source.field.name} vs {target.field.name}")
    field = source.field
    offsets, total = _hom_layout(source, target)
    if total == 0:
        return []
    equations = list()
    for low, high in source.complex.covering_pairs():
        left = source.phi(low, high)
        right = target.phi(low, high)
        high_cols, low_cols = source.dim(high), source.dim(low)
        for r in range(target.dim(high)):
            for c in range(low_cols):
                row = [field.zero] * total
                for k in range(high_cols):
                    row[offsets[high] + r * high_cols + k] += left.rows[k][c]
                for k in range(target.dim(low)):
                    row[offsets[low] + k * low_cols + c] -= right.rows[r][k]
                if any(x != 0 for x in row):
                    equations.append(row)
    system = Matrix(equations, field, total)
    return [_hom_from_vector(source, target, v) for v in linalg.nullspace(system)]


def end_space(module: SquareFreeModule) -> list[ModuleHom]:
    return hom_space(module, module)


def to_sympy(x) -> Rational:
    x = Fraction(x)
    return Rational(x.numerator, x.denominator)


def from_sympy(x) -> Fraction:
    x = Rational(x)
    return Fraction(int(x.p), int(x.q))


def minimal_polynomial(hom: ModuleHom) -> list:
    """Monic minimal polynomial of an endomorphism, coefficients from low to high degree"""
    module = hom.source
    identity = ModuleHom.identity(module)
    powers = [_hom_vector(identity)]
    current = identity
    while True:
        current = hom.compose(current)
        vector = _hom_vector(current)
        coordinates = linalg.coordinates(powers, vector, module.field)
        if coordinates is not None:
            return [-c for c in coordinates] + [module.field.one]
        powers.append(vector)


def evaluate_polynomial(poly: Poly, hom: ModuleHom) -> ModuleHom:
    identity = ModuleHom.identity(hom.source)
    coefficients = [from_sympy(c) for c in poly.all_coeffs()]
    result = identity.scale(coefficients[0])
    for c in coefficients[1:]:
        result = hom.compose(result) + identity.scale(c)
    return result


class IndecomposabilityTester:
    """
    Decides indecomposability over Q through End(M).

    A splitting idempotent is read off any endomorphism whose minimal
    polynomial has two coprime factors. End(M) is local, hence M is
    indecomposable, when it is k·id plus the span of nilpotent parts of its
    basis and that span generates a nilpotent algebra.
    """

    def __init__(
        self,
        module: SquareFreeModule,
        samples: int = DEFAULT_INDECOMPOSABLE_SAMPLES,
        seed: int = DEFAULT_SEED,
        logger: Logger = logger,
    ):
        self.module = module
        self.samples = samples
        self.rng = random.Random(seed)
        self.logger = logger
        self.witness: ModuleHom | None = None
        self._x = Symbol("x")

    def run(self) -> bool:
        self.module.field.require_char_zero("indecomposability")
        if self.module.is_zero():
            return False
        basis = end_space(self.module)
        self.logger.debug(f"dim End(M) = {len(basis)}")
        if len(basis) == 1:
            return True
        identity = ModuleHom.identity(self.module)
        nilpotent_parts = list()
        split_free = True
        for hom in basis:
            idempotent, root = self._split(hom)
            if idempotent is not None:
                return False
            if root is None:
                split_free = False
            else:
                nilpotent_parts.append(hom + identity.scale(-root))
        if split_free and self._generates_nilpotent(nilpotent_parts):
            self.logger.debug("End(M) is local")
            return True
        for k in range(self.samples):
            # alternate small and wide coefficient ranges
            bound = 2 if k % 2 == 0 else RANDOM_COEFF_RANGE
            hom = fold(
                ModuleHom.__add__,
                [b.scale(self.rng.randint(-bound, bound)) for b in basis],
            )
            idempotent, _ = self._split(hom)
            if idempotent is not None:
                return False
        raise InconclusiveError("no splitting idempotent and no locality certificate", self.samples)

    def _split(self, hom: ModuleHom) -> tuple[ModuleHom | None, Fraction | None]:
        """A nontrivial idempotent, or the eigenvalue when the minimal polynomial is (x - λ)^m"""
        coefficients = minimal_polynomial(hom)
        poly = Poly([to_sympy(c) for c in reversed(coefficients)], self._x, domain="QQ")
        _, factors = factor_list(poly)
        if len(factors) >= 2:
            head = factors[0][0] ** factors[0][1]
            rest = fold(lambda a, b: a * b, [f**m for f, m in factors[1:]])
            _, t, _ = gcdex(head, rest)
            idempotent = evaluate_polynomial(t * rest, hom)
            self.witness = idempotent
            self.logger.debug(f"splitting idempotent from minimal polynomial {poly.as_expr()}")
            return idempotent, None
        factor = factors[0][0]
        if factor.degree() == 1:
            a, b = factor.all_coeffs()
            return None, from_sympy(-b / a)
        return None, None

    def _generates_nilpotent(self, parts: list[ModuleHom]) -> bool:
        module = self.module
        field = module.field
        length = len(_hom_vector(ModuleHom.identity(module)))
        span = linalg.row_space([_hom_vector(p) for p in parts], length, field)
        generators = [_hom_from_vector(module, module, v) for v in span]
        current = span
        while current:
            products = [
                _hom_vector(_hom_from_vector(module, module, v).compose(g))
                for v in current
                for g in generators
            ]
            following = linalg.row_space(products, length, field)
            if len(following) >= len(current):
                return False
            current = following
        return True


def is_indecomposable(
    module: SquareFreeModule,
    samples: int = DEFAULT_INDECOMPOSABLE_SAMPLES,
    seed: int = DEFAULT_SEED,
) -> bool:
    return IndecomposabilityTester(module, samples, seed).run()


def _is_iso(hom: ModuleHom) -> bool:
    return all(linalg.is_invertible(hom.component(f)) for f in hom.source.faces)


def is_isomorphic(
    first: SquareFreeModule,
    second: SquareFreeModule,
    samples: int = DEFAULT_ISOMORPHISM_SAMPLES,
    symbolic_max_dim: int = DEFAULT_ISOMORPHISM_SYMBOLIC_MAX_DIM,
    seed: int = DEFAULT_SEED,
) -> bool:
    """
    True iff some homomorphism is invertible at every face. Sampled
    combinations certify True. A face where the whole Hom space drops rank
    certifies False, by a common kernel or by an identically vanishing
    determinant on small faces.
    """
    first.field.require_char_zero("isomorphism testing")
    if first.complex != second.complex:
        raise ModuleValidationError("isomorphism between modules on different complexes")
    if any(first.dim(f) != second.dim(f) for f in first.faces):
        return False
    if first.is_zero():
        return True
    basis = hom_space(first, second)
    if not basis:
        return False
    field = first.field
    for face in first.faces:
        size = first.dim(face)
        if not size:
            continue
        stacked = fold(Matrix.vstack, [h.component(face) for h in basis])
        if linalg.rank(stacked) < size:
            logger.debug(f"common kernel at {list(face)}")
            return False
    rng = random.Random(seed)
    for _ in range(samples):
        hom = fold(
            ModuleHom.__add__,
            [h.scale(rng.randint(-RANDOM_COEFF_RANGE, RANDOM_COEFF_RANGE)) for h in basis],
        )
        if _is_iso(hom):
            return True
    if max(first.dim(f) for f in first.faces) > symbolic_max_dim:
        raise InconclusiveError("no invertible homomorphism sampled", samples)
    coefficients = symbols(f"c0:{len(basis)}")
    for face in first.faces:
        size = first.dim(face)
        if not size:
            continue
        generic = SymbolicMatrix.zeros(size, size)
        for c, hom in zip(coefficients, basis):
            generic += c * SymbolicMatrix(
                [[to_sympy(x) for x in row] for row in hom.component(face).rows]
            )
        if expand(generic.det(method="berkowitz")) == 0:
            logger.debug(f"determinant vanishes identically at {list(face)}")
            return False
    # a product of nonzero polynomials is nonzero somewhere over Q
    return True


def build_effective_module(graph: SimplicialGraph, degree: int, field: Field = QQ) -> SquareFreeModule:
    """
    A CM, locally rank 1 module with l = 1 and the given degree. Each of the
    first `degree` chords of the BFS tree is split off at its smaller endpoint,
    which gains one basis vector b_j. The chord map sends b_j to 1 and 1_v to
    0, every other edge sees 1_v only, and M_∅ = k maps to 1_v + Σ b_j.
    """
    require_connected(graph)
    g = genus(graph)
    if not 0 <= degree <= g:
        raise DegreeOutOfRangeError(f"degree {degree} outside [0, {g}]")
    if degree == 0:
        return structure_module(graph, field)
    tree, _ = bfs_tree(graph)
    tree_set = set(tree)
    chords = [e for e in graph.edges if e not in tree_set][:degree]
    split_at: dict[int, list] = {v: [] for v in graph.vertices}
    for chord in chords:
        split_at[chord[0]].append(chord)
    zero, one = field.zero, field.one
    dims: dict[Face, int] = {(): 1}
    maps: dict[tuple[Face, Face], Matrix] = dict()
    for vertex in graph.vertices:
        own = split_at[vertex]
        dims[(vertex,)] = 1 + len(own)
        maps[((), (vertex,))] = Matrix([[one]] * (1 + len(own)), field, 1)
        for edge in graph.incident_edges(vertex):
            if edge in own:
                k = own.index(edge)
                row = [zero] + [one if j == k else zero for j in range(len(own))]
            else:
                row = [one] + [zero] * len(own)
            maps[((vertex,), edge)] = Matrix([row], field)
    for edge in graph.edges:
        dims[edge] = 1
    return SquareFreeModule(graph, dims, maps, field)


def build_min_degree_module(graph: SimplicialGraph, field: Field = QQ) -> SquareFreeModule:
    """M_v = 0 on an independent σ with connected complement, dimension 1 elsewhere; deg = -|σ|"""
    sigma = set(independent_connected_complement(graph))
    dims: dict[Face, int] = {(): 0}
    for vertex in graph.vertices:
        dims[(vertex,)] = 0 if vertex in sigma else 1
    for edge in graph.edges:
        dims[edge] = 1
    maps = {
        (source, target): Matrix.identity(1, field)
        for source, target in graph.covering_pairs()
        if dims[source] and dims[target]
    }
    return SquareFreeModule(graph, dims, maps, field)
