import pytest

from sqfree_bn.algebra import homology
from sqfree_bn.algebra.omega import build_omega, omega_generated_in_degree_zero
from sqfree_bn.algebra.simplicial import build_named, genus, is_two_connected
from sqfree_bn.models.complex import SimplicialComplex, SimplicialGraph
from sqfree_bn.utils.exceptions import NotAFaceError
from tests.conftest import CUT_VERTEX, TWO_CONNECTED


def test_reduced_homology_of_a_cycle(c4):
    assert [homology.reduced_homology(c4, i).dim for i in (-1, 0, 1)] == [0, 0, 1]


def test_reduced_homology_counts_components():
    graph = SimplicialGraph(4, [(1, 2), (3, 4)])
    assert homology.reduced_homology(graph, 0).dim == 1
    assert homology.reduced_homology(graph, 1).dim == 0


def test_empty_complex_has_homology_in_degree_minus_one():
    assert homology.homology([()], -1).dim == 1


def test_hollow_and_filled_triangle():
    hollow = SimplicialComplex([(1, 2), (1, 3), (2, 3)], n=3)
    filled = SimplicialComplex([(1, 2, 3)], n=3)
    assert homology.reduced_homology(hollow, 1).dim == 1
    assert homology.reduced_homology(filled, 1).dim == 0


def test_relative_homology_at_faces(k33):
    for vertex in k33.vertices:
        assert homology.relative_homology(k33, (vertex,), 1).dim == k33.valency(vertex) - 1
    for edge in k33.edges:
        assert homology.relative_homology(k33, edge, 1).dim == 1
    assert homology.relative_homology(k33, (), 1).dim == genus(k33)
    with pytest.raises(NotAFaceError):
        homology.relative_homology(k33, (1, 2, 3), 1)


def test_restriction_from_the_cycle_space(k33):
    matrix = homology.natural_restriction(k33, (1,))
    assert matrix.shape == (2, 4)


def test_link_homology(k33):
    assert homology.link_homology(k33, (1,), 0).dim == 2
    assert homology.link_homology(k33, (1, 4), -1).dim == 1


def test_reisner_criterion_on_graphs(k33):
    assert homology.is_cm_complex(k33)
    assert not homology.is_cm_complex(SimplicialGraph(4, [(1, 2), (3, 4)]))


def test_reisner_criterion_in_dimension_two():
    sphere = SimplicialComplex([(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)], n=4)
    pinched = SimplicialComplex([(1, 2, 3), (3, 4, 5)], n=5)
    assert homology.is_cm_complex(sphere)
    assert not homology.is_cm_complex(pinched)


@pytest.mark.parametrize("name", TWO_CONNECTED + CUT_VERTEX)
def test_two_cm_matches_two_connected_and_omega_generation(name):
    graph = build_named(name)
    expected = is_two_connected(graph)
    assert homology.is_two_cm_complex(graph) == expected
    assert omega_generated_in_degree_zero(build_omega(graph)) == expected


@pytest.mark.parametrize("name", ["k33", "petersen", "cycle:5", "bowtie", "theta:1,1,1"])
def test_long_exact_sequence_is_exact(name):
    graph = build_named(name)
    assert all(homology.long_exact_sequence_defect(graph, f) == 0 for f in graph.ordered if f)


def test_homology_over_prime_field(f5, petersen):
    assert homology.reduced_homology(petersen, 1, f5).dim == 6
