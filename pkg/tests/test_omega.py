from fractions import Fraction

import pytest

from sqfree_bn.algebra.brill_noether import certificate_for
from sqfree_bn.algebra.omega import (
    build_omega,
    degree_of_generated,
    general_section,
    omega_generated_in_degree_zero,
    submodule_generated,
)
from sqfree_bn.algebra.simplicial import simple_cycles
from sqfree_bn.algebra.sqfree import (
    is_cm_module,
    is_indecomposable,
    is_isomorphic,
    structure_module,
    validate,
)
from sqfree_bn.models.cycle import CycleVector
from sqfree_bn.utils.exceptions import PreconditionError, UnsupportedFieldError


def test_omega_of_k33(k33):
    omega = build_omega(k33)
    assert omega.genus == 4
    assert omega.dim(()) == 4
    assert all(omega.dim((v,)) == 2 for v in k33.vertices)
    assert all(omega.dim(e) == 1 for e in k33.edges)
    assert validate(omega.module)
    assert is_cm_module(omega.module)
    assert omega.module.degree() == 2 * 4 - 2


def test_generation_in_degree_zero(k33, bowtie):
    assert omega_generated_in_degree_zero(build_omega(k33))
    assert not omega_generated_in_degree_zero(build_omega(bowtie))


def test_general_section_is_deterministic(petersen):
    omega = build_omega(petersen)
    first = general_section(omega, seed=7)
    assert first == general_section(omega, seed=7)
    assert first.is_cycle()
    assert len(first.support) == petersen.e


def test_general_section_preconditions(bowtie, k33, f5):
    with pytest.raises(PreconditionError):
        general_section(build_omega(bowtie))
    with pytest.raises(UnsupportedFieldError):
        general_section(build_omega(k33, f5))


def test_general_section_generates_structure_module(k33):
    omega = build_omega(k33)
    section = general_section(omega)
    sub = submodule_generated(omega, [section])
    assert validate(sub)
    assert sub.dim(()) == 1
    assert is_isomorphic(sub, structure_module(k33))
    assert sub.embedding.is_natural()
    assert degree_of_generated(omega, [section]) == 0


def test_submodule_of_a_simple_cycle(k33):
    omega = build_omega(k33)
    square = CycleVector.from_vertex_cycle(k33, [1, 4, 2, 5])
    sub = submodule_generated(omega, [square])
    assert sub.dim(()) == 1
    assert [v for v in k33.vertices if sub.dim((v,))] == [1, 2, 4, 5]
    assert degree_of_generated(omega, [square]) == 0
    assert is_cm_module(sub)


def test_empty_submodule_is_zero(k33):
    omega = build_omega(k33)
    assert submodule_generated(omega, []).is_zero()
    assert degree_of_generated(omega, []) == 0


def test_coordinates_need_a_cycle(k33):
    omega = build_omega(k33)
    chain = CycleVector(k33, tuple([1] + [0] * (k33.e - 1)))
    with pytest.raises(PreconditionError):
        omega.coordinates(chain)


def _flow(graph, flows):
    """Cycle from directed edge values {(a, b): x}, x flowing from a to b"""
    coeffs = [0] * graph.e
    for (a, b), x in flows.items():
        coeffs[graph.edge_index[(min(a, b), max(a, b))]] = x if a < b else -x
    cycle = CycleVector(graph, tuple(Fraction(c) for c in coeffs))
    assert cycle.is_cycle()
    return cycle


def test_k33_pencil_of_degree_three(k33):
    # supports {1, 2} x {4, 5, 6} and {1, 3} x {4, 5, 6}, equal on the star of 1
    omega = build_omega(k33)
    first = CycleVector.from_vertex_cycle(k33, [1, 4, 2, 5]) + CycleVector.from_vertex_cycle(
        k33, [1, 5, 2, 6]
    ).scale(2)
    second = CycleVector.from_vertex_cycle(k33, [1, 4, 3, 5]) + CycleVector.from_vertex_cycle(
        k33, [1, 5, 3, 6]
    ).scale(2)
    assert omega.restrict(first, (1,)) == omega.restrict(second, (1,))
    module = submodule_generated(omega, [first, second])
    assert degree_of_generated(omega, [first, second]) == module.degree() == 3
    assert module.dim(()) == 2
    certificate = certificate_for(omega, [first, second])
    assert certificate.verified
    assert (certificate.degree, certificate.r) == (3, 1)


def test_petersen_pencil_of_degree_four(petersen):
    # both cycles agree on the stars of the adjacent vertices 1 and 2
    omega = build_omega(petersen)
    shared = {(1, 2): 4, (1, 5): -1, (1, 6): -3, (2, 3): 2, (2, 7): 2}
    first = _flow(petersen, {**shared, (5, 4): -1, (3, 4): 2, (4, 9): 1, (6, 9): -3, (7, 9): 2})
    second = _flow(
        petersen, {**shared, (5, 10): -1, (7, 10): 2, (6, 8): -3, (3, 8): 2, (8, 10): -1}
    )
    assert set(first.support) | set(second.support) == set(petersen.edges)
    module = submodule_generated(omega, [first, second])
    assert degree_of_generated(omega, [first, second]) == module.degree() == 4
    certificate = certificate_for(omega, [first, second])
    assert certificate.verified
    assert (certificate.degree, certificate.r) == (4, 1)


def test_modules_containing_the_general_section_are_indecomposable(k33):
    omega = build_omega(k33)
    section = general_section(omega)
    walks = simple_cycles(k33)
    generators = [
        [section],
        [section, CycleVector.from_vertex_cycle(k33, walks[0])],
        [section] + [CycleVector.from_vertex_cycle(k33, w) for w in walks[:2]],
        [section] + [CycleVector.from_vertex_cycle(k33, w) for w in walks[-3:]],
        [section] + list(omega.basis),
    ]
    for cycles in generators:
        module = submodule_generated(omega, cycles)
        assert is_indecomposable(module), [c.support for c in cycles]
