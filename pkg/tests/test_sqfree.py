from fractions import Fraction

import pytest

from sqfree_bn.algebra.generators import random_module
from sqfree_bn.algebra.omega import build_omega
from sqfree_bn.algebra.simplicial import build_named, genus
from sqfree_bn.algebra.sqfree import (
    IndecomposabilityTester,
    build_effective_module,
    build_min_degree_module,
    cm_completion,
    direct_sum,
    end_space,
    hom_space,
    is_cm_module,
    is_indecomposable,
    is_isomorphic,
    is_locally_rank_one,
    koszul_differential,
    local_cohomology_dims,
    minimal_polynomial,
    omega_dims,
    riemann_roch_check,
    structure_module,
    validate,
    zero_module,
)
from sqfree_bn.models.complex import SimplicialComplex, SimplicialGraph
from sqfree_bn.models.matrix import Matrix
from sqfree_bn.models.module import ModuleHom, SquareFreeModule
from sqfree_bn.utils.exceptions import (
    DegreeOutOfRangeError,
    FieldMismatchError,
    ModuleValidationError,
    NotAFaceError,
    NotCohenMacaulayError,
    NotSquareFreeError,
    PreconditionError,
    UnsupportedFieldError,
)

EDGE = SimplicialGraph(2, [(1, 2)])


def _edge_module(right: int) -> SquareFreeModule:
    one = Matrix([[1]])
    maps = {
        ((), (1,)): one,
        ((), (2,)): one,
        ((1,), (1, 2)): one,
        ((2,), (1, 2)): Matrix([[right]]),
    }
    return SquareFreeModule(EDGE, {f: 1 for f in EDGE.ordered}, maps)


def test_validate_accepts_structure_module(k33):
    assert validate(structure_module(k33))
    assert validate(_edge_module(1))


def test_validate_rejects_non_commuting_square():
    with pytest.raises(ModuleValidationError):
        validate(_edge_module(2))


def test_validate_rejects_bad_data(f5):
    path = build_named("path:3")
    with pytest.raises(NotAFaceError):
        validate(SquareFreeModule(path, {(1, 3): 1}, {}))
    with pytest.raises(NotSquareFreeError):
        validate(SquareFreeModule(EDGE, {(): 1, (1, 2): 1}, {((), (1, 2)): Matrix([[1]])}))
    with pytest.raises(ModuleValidationError):
        validate(SquareFreeModule(EDGE, {(): 1, (1,): 2}, {((), (1,)): Matrix([[1]])}))
    with pytest.raises(FieldMismatchError):
        validate(SquareFreeModule(EDGE, {(): 1, (1,): 1}, {((), (1,)): Matrix([[1]], f5)}))


def test_local_cohomology_of_a_triangle(c3):
    k = structure_module(c3)
    assert local_cohomology_dims(k, ()) == [0, 0, 1]
    assert local_cohomology_dims(k, (1,)) == [0, 0, 1]
    assert local_cohomology_dims(k, (1, 2)) == [0, 0, 1]


def test_local_cohomology_outside_the_complex():
    k = structure_module(build_named("path:3"))
    assert local_cohomology_dims(k, (1, 3)) == [0, 0, 0]
    with pytest.raises(NotSquareFreeError):
        local_cohomology_dims(k, (1, 1))


def test_koszul_complex_is_a_complex(petersen):
    k = structure_module(petersen)
    for tau in ((), (1,)):
        first = koszul_differential(k, tau, 0)
        second = koszul_differential(k, tau, 1)
        assert (second @ first).is_zero()


def test_cm_modules():
    assert is_cm_module(structure_module(build_named("k33")))
    disconnected = structure_module(SimplicialGraph(4, [(1, 2), (3, 4)]))
    assert not is_cm_module(disconnected)
    assert not is_cm_module(disconnected, method="koszul")
    assert is_cm_module(zero_module(EDGE))


def test_cm_in_dimension_two():
    triangle = SimplicialComplex([(1, 2, 3)], n=3)
    assert is_cm_module(structure_module(triangle))
    with pytest.raises(PreconditionError):
        is_cm_module(structure_module(triangle), method="graph")


def test_graph_and_koszul_criteria_agree(rng):
    for name in ("cycle:4", "k33", "theta:1,1,1", "bowtie"):
        graph = build_named(name)
        for _ in range(15):
            module = random_module(graph, rng)
            assert is_cm_module(module, "graph") == is_cm_module(module, "koszul")


@pytest.mark.parametrize("name", ["cycle:3", "cycle:6", "k33", "petersen", "heawood", "complete:4"])
def test_omega_dims_of_structure_module(name):
    graph = build_named(name)
    k = structure_module(graph)
    dims = omega_dims(k)
    assert dims[()] == genus(graph)
    for vertex in graph.vertices:
        assert dims[(vertex,)] == graph.valency(vertex) - 1
    for edge in graph.edges:
        assert dims[edge] == 1
    for tau, dim in dims.items():
        assert local_cohomology_dims(k, tau)[2] == dim


def test_omega_dims_needs_cm():
    with pytest.raises(NotCohenMacaulayError):
        omega_dims(structure_module(SimplicialGraph(4, [(1, 2), (3, 4)])))


def test_riemann_roch_on_petersen(petersen):
    report = riemann_roch_check(structure_module(petersen))
    assert report.to_json() == {"l": 1, "l_omega": 6, "deg": 0, "g": 6, "holds": True}


@pytest.mark.parametrize("name", ["cycle:5", "k33", "petersen", "theta:0,2,3"])
def test_riemann_roch_on_the_canonical_module(name):
    graph = build_named(name)
    report = riemann_roch_check(build_omega(graph).module)
    assert report.holds
    assert report.l == genus(graph)
    assert report.deg == 2 * genus(graph) - 2
    assert report.l_omega == 1


def test_riemann_roch_preconditions():
    with pytest.raises(PreconditionError):
        riemann_roch_check(structure_module(SimplicialGraph(4, [(1, 2), (3, 4)])))
    with pytest.raises(PreconditionError):
        riemann_roch_check(zero_module(EDGE))


def test_direct_sum_and_zero_module(k33):
    k = structure_module(k33)
    doubled = direct_sum(k, k)
    assert all(doubled.dim(f) == 2 for f in k33.ordered)
    assert validate(doubled)
    assert not is_indecomposable(doubled)
    assert not is_indecomposable(zero_module(k33))
    assert direct_sum(k, zero_module(k33)).dims == k.dims


def test_structure_module_is_indecomposable(k33, petersen):
    assert is_indecomposable(structure_module(k33))
    assert is_indecomposable(structure_module(petersen))
    assert is_indecomposable(build_omega(k33).module)


def test_indecomposability_needs_characteristic_zero(f5, k33):
    with pytest.raises(UnsupportedFieldError):
        is_indecomposable(structure_module(k33, f5))


def test_splitting_idempotent_is_found(c3):
    k = structure_module(c3)
    tester = IndecomposabilityTester(direct_sum(k, k))
    assert not tester.run()
    witness = tester.witness
    assert witness.is_natural()
    square = witness.compose(witness)
    assert all(square.component(f) == witness.component(f) for f in c3.ordered)


def test_minimal_polynomial():
    k = structure_module(EDGE)
    doubled = direct_sum(k, k)
    projection = ModuleHom(
        doubled, doubled, {f: Matrix([[1, 0], [0, 0]]) for f in EDGE.ordered}
    )
    assert minimal_polynomial(projection) == [0, -1, 1]
    assert minimal_polynomial(ModuleHom.identity(k)) == [-1, 1]


def test_hom_spaces(k33):
    k = structure_module(k33)
    omega = build_omega(k33)
    assert len(end_space(k)) == 1
    assert len(hom_space(k, omega.module)) == 4
    assert all(h.is_natural() for h in hom_space(k, omega.module))


def test_isomorphism(k33, c3):
    k = structure_module(k33)
    assert is_isomorphic(k, k)
    assert not is_isomorphic(k, build_omega(k33).module)
    one = Matrix([[1]])
    half = Matrix([[Fraction(1, 2)]])
    maps = {((v,), e): one for e in c3.edges for v in e}
    twisted = dict(maps)
    twisted[((2,), (2, 3))] = Matrix([[2]])
    other = dict(maps)
    other[((2,), (2, 3))] = half
    dims = {f: 1 for f in c3.ordered if f}
    first = cm_completion(c3, dims, twisted)
    second = cm_completion(c3, dims, other)
    assert first.dim(()) == 0
    assert not is_isomorphic(first, second)
    assert is_isomorphic(first, first)


def test_isomorphism_needs_characteristic_zero(f5, c3):
    k = structure_module(c3, f5)
    with pytest.raises(UnsupportedFieldError):
        is_isomorphic(k, k)


@pytest.mark.parametrize("name", ["cycle:3", "k33"])
def test_effective_modules_of_every_degree(name):
    graph = build_named(name)
    for degree in range(genus(graph) + 1):
        module = build_effective_module(graph, degree)
        assert validate(module)
        assert module.degree() == degree
        assert module.global_sections() == 1
        assert is_locally_rank_one(module)
        assert is_cm_module(module)
        assert is_indecomposable(module)
        assert riemann_roch_check(module).holds
    with pytest.raises(DegreeOutOfRangeError):
        build_effective_module(graph, genus(graph) + 1)


@pytest.mark.parametrize("name, s", [("cycle:3", 1), ("k33", 2)])
def test_min_degree_module(name, s):
    graph = build_named(name)
    module = build_min_degree_module(graph)
    assert validate(module)
    assert module.degree() == -s
    assert is_cm_module(module)
    assert is_indecomposable(module)


def test_numerical_invariants(k33, c3):
    k = structure_module(k33)
    assert k.multi_degree() == (0,) * 6
    assert k.degree() == 0
    assert k.global_sections() == 1
    omega_c3 = build_omega(c3).module
    assert omega_c3.degree() == 0
    assert omega_c3.global_sections() == 1
    omega_k33 = build_omega(k33).module
    assert omega_k33.multi_degree() == (1,) * 6
    assert omega_k33.global_sections() == 4
    assert build_effective_module(k33, 3).summary() == {
        "multi_degree": [0, 2, 1, 0, 0, 0],
        "degree": 3,
        "l": 1,
    }
