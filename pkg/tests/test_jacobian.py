from fractions import Fraction
from itertools import product

import pytest

from sqfree_bn.algebra.generators import holonomy_grid, random_holonomies
from sqfree_bn.algebra.jacobian import (
    classify_cycle_graph,
    cycle_module,
    is_cycle_graph,
    jacobian_is_isomorphic,
    module_from_holonomies,
    normalize_genus0,
    tree_normalize,
)
from sqfree_bn.algebra.simplicial import build_named, genus
from sqfree_bn.algebra.sqfree import cm_completion, is_isomorphic, structure_module, zero_module
from sqfree_bn.models.complex import SimplicialGraph
from sqfree_bn.models.matrix import Matrix
from sqfree_bn.models.module import SquareFreeModule
from sqfree_bn.utils.exceptions import (
    DecomposableModuleError,
    DimensionMismatchError,
    NotAFaceError,
    PreconditionError,
    ZeroHolonomyError,
)


@pytest.mark.parametrize("name", ["cycle:3", "k33", "petersen", "theta:1,1,1"])
def test_structure_module_has_trivial_holonomy(name):
    graph = build_named(name)
    form = tree_normalize(structure_module(graph))
    assert len(form.chords) == genus(graph)
    assert len(form.tree_edges) == graph.v - 1
    assert all(h == 1 for h in form.holonomies)


def test_triangle_holonomy():
    form = tree_normalize(cycle_module(3, 1, 2, edge=(2, 3)))
    assert form.holonomies == (Fraction(1, 2),)
    assert form.to_json() == {"tree_edges": [[1, 2], [1, 3]], "chords": [[2, 3, "1/2"]]}
    # a twist on a tree edge is moved onto the chord
    assert tree_normalize(cycle_module(3, 2, 3)).holonomies == (Fraction(2, 3),)


def test_theta_has_two_holonomies(theta):
    assert len(tree_normalize(structure_module(theta)).holonomies) == 2


@pytest.mark.parametrize("name", ["cycle:3", "cycle:5", "theta:1,1,1"])
def test_holonomies_round_trip(name, rng):
    graph = build_named(name)
    for _ in range(100):
        holonomies = random_holonomies(graph, rng)
        module = module_from_holonomies(graph, holonomies)
        assert tree_normalize(module).holonomies == tuple(holonomies)


def test_holonomies_by_chord(theta):
    form = tree_normalize(structure_module(theta))
    values = {chord: Fraction(i + 2) for i, chord in enumerate(form.chords)}
    module = module_from_holonomies(theta, values)
    assert tree_normalize(module).holonomies == tuple(values[c] for c in form.chords)


def test_bad_holonomies(c3, theta):
    with pytest.raises(ZeroHolonomyError):
        module_from_holonomies(c3, [0])
    with pytest.raises(DimensionMismatchError):
        module_from_holonomies(theta, [1])
    with pytest.raises(DimensionMismatchError):
        module_from_holonomies(theta, {(1, 2): 1})
    with pytest.raises(ZeroHolonomyError):
        tree_normalize(cycle_module(3, 0, 1))


def test_line_bundle_preconditions(k33):
    with pytest.raises(PreconditionError):
        tree_normalize(zero_module(k33))
    with pytest.raises(PreconditionError):
        jacobian_is_isomorphic(structure_module(k33), structure_module(build_named("cycle:6")))


@pytest.mark.parametrize(
    "name, values",
    [
        ("cycle:3", [1, 2, -1, Fraction(1, 2)]),
        ("cycle:5", [1, 2, -1, Fraction(1, 2), 3]),
        ("theta:1,1,1", [1, -1, 2]),
    ],
)
def test_holonomy_agrees_with_isomorphism(name, values):
    graph = build_named(name)
    count = genus(graph)
    modules = [module_from_holonomies(graph, h) for h in holonomy_grid(values, count)]
    for first, second in product(modules, repeat=2):
        assert jacobian_is_isomorphic(first, second) == is_isomorphic(first, second)


def test_cycle_graphs(c4, theta):
    assert is_cycle_graph(c4)
    assert not is_cycle_graph(theta)
    assert not is_cycle_graph(build_named("path:4"))
    with pytest.raises(PreconditionError):
        classify_cycle_graph(structure_module(theta))


def test_classify_generic_points(c4):
    assert classify_cycle_graph(structure_module(c4)).to_json() == {
        "point": ["1", "1"],
        "edge": None,
    }
    assert classify_cycle_graph(cycle_module(4, 2, 3)).point == (Fraction(2, 3), 1)
    with pytest.raises(NotAFaceError):
        cycle_module(4, 1, 1, edge=(1, 3))


def test_classify_degenerate_points():
    at_smaller = classify_cycle_graph(cycle_module(4, 0, 1, edge=(1, 2)))
    at_larger = classify_cycle_graph(cycle_module(4, 1, 0, edge=(1, 2)))
    elsewhere = classify_cycle_graph(cycle_module(4, 0, 1, edge=(2, 3)))
    assert at_smaller.point == (0, 1) and at_smaller.edge == (1, 2)
    assert at_larger.point == (1, 0) and at_larger.edge == (1, 2)
    assert elsewhere.point == (0, 1) and elsewhere.edge == (2, 3)
    assert elsewhere.is_degenerate
    assert not is_isomorphic(cycle_module(4, 0, 1, edge=(1, 2)), cycle_module(4, 0, 1, edge=(2, 3)))


def test_closing_edge_follows_the_walk():
    # the walk 1, 2, 3, 4 crosses (1, 4) from 4 to 1
    assert classify_cycle_graph(cycle_module(4, 2, 3, edge=(1, 4))).point == (Fraction(3, 2), 1)
    head_zero = classify_cycle_graph(cycle_module(4, 0, 1, edge=(1, 4)))
    tail_zero = classify_cycle_graph(cycle_module(4, 1, 0, edge=(1, 4)))
    assert head_zero.point == (1, 0) and head_zero.edge == (1, 4)
    assert tail_zero.point == (0, 1) and tail_zero.edge == (1, 4)


def test_two_zero_maps_split_the_cycle():
    with pytest.raises(DecomposableModuleError):
        classify_cycle_graph(cycle_module(4, 0, 0))


@pytest.mark.parametrize("s, t", [(1, 1), (2, 2), (2, 3), (-1, 1), (5, 1)])
def test_sections_exist_exactly_at_the_trivial_point(s, t):
    module = cycle_module(5, s, t)
    assert module.global_sections() == (1 if s == t else 0)
    assert classify_cycle_graph(module).point == (Fraction(s, t), 1)


def _path_module():
    graph = build_named("path:3")
    maps = {
        ((1,), (1, 2)): Matrix([[2]]),
        ((2,), (1, 2)): Matrix([[3]]),
        ((2,), (2, 3)): Matrix([[5]]),
        ((3,), (2, 3)): Matrix([[7]]),
    }
    dims = {f: 1 for f in graph.ordered if f}
    return cm_completion(graph, dims, maps)


def test_normalize_on_a_tree():
    module = _path_module()
    assert module.global_sections() == 1
    normalized, scalings = normalize_genus0(module)
    assert all(m == Matrix.identity(1) for m in normalized.maps.values())
    assert is_isomorphic(normalized, structure_module(module.graph))
    for source, target in module.complex.covering_pairs():
        assert module.phi(source, target).entry(0, 0) * scalings[source] == scalings[target]


def test_normalize_structure_module_is_trivial():
    graph = build_named("path:4")
    normalized, scalings = normalize_genus0(structure_module(graph))
    assert set(scalings.values()) == {1}
    assert normalized.dims == structure_module(graph).dims


def test_normalize_errors(c3):
    with pytest.raises(PreconditionError):
        normalize_genus0(structure_module(c3))
    edge = SimplicialGraph(2, [(1, 2)])
    one = Matrix([[1]])
    zero_map = cm_completion(
        edge, {(1,): 1, (2,): 1, (1, 2): 1}, {((1,), (1, 2)): one, ((2,), (1, 2)): Matrix([[0]])}
    )
    with pytest.raises(DecomposableModuleError):
        normalize_genus0(zero_map)
    wide = SquareFreeModule(
        edge,
        {(): 2, (1,): 1, (2,): 1, (1, 2): 1},
        {
            ((), (1,)): Matrix([[1, 0]]),
            ((), (2,)): Matrix([[1, 0]]),
            ((1,), (1, 2)): one,
            ((2,), (1, 2)): one,
        },
    )
    with pytest.raises(DecomposableModuleError):
        normalize_genus0(wide)
