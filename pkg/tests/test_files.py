import pytest
import rapidjson

from sqfree_bn.algebra.jacobian import cycle_module
from sqfree_bn.algebra.omega import build_omega
from sqfree_bn.algebra.simplicial import build_named
from sqfree_bn.algebra.sqfree import structure_module, validate
from sqfree_bn.models.field import prime_field
from sqfree_bn.models.files import module_to_json, parse_module, read_graph, read_module
from sqfree_bn.utils.exceptions import InputFormatError
from sqfree_bn.utils.helpers import face_key, parse_face_key, parse_map_key


def _same(first, second):
    assert first.complex == second.complex
    assert first.field == second.field
    for face in first.faces:
        assert first.dim(face) == second.dim(face)
    for source, target in first.complex.covering_pairs():
        assert first.phi(source, target) == second.phi(source, target)


@pytest.mark.parametrize(
    "build",
    [
        lambda: structure_module(build_named("k33")),
        lambda: build_omega(build_named("k33")).module,
        lambda: cycle_module(4, "2/3", 5),
        lambda: structure_module(build_named("k33"), prime_field(7)),
    ],
)
def test_module_json_survives_parsing(build):
    module = build()
    data = module_to_json(module)
    _same(module, parse_module(rapidjson.loads(rapidjson.dumps(data))))


def test_module_json_layout(c3):
    data = module_to_json(structure_module(c3))
    assert data["graph"] == {"n": 3, "edges": [[1, 2], [1, 3], [2, 3]]}
    assert data["field"] == "Q"
    assert data["dims"]["[]"] == 1
    assert data["maps"]["[2]->[2,3]"] == [["1"]]


def test_read_files(tmp_path):
    graph_file = tmp_path / "graph.json"
    graph_file.write_text('{"n": 4, "edges": [[1, 2], [2, 3], [3, 4], [1, 4]]}')
    graph = read_graph(graph_file)
    assert graph.v == 4 and graph.e == 4
    module_file = tmp_path / "module.json"
    module_file.write_text(rapidjson.dumps(module_to_json(structure_module(graph))))
    assert validate(read_module(module_file))


def test_bad_graph_files(tmp_path):
    path = tmp_path / "graph.json"
    path.write_text('{"n": 3, "edges": [[1, 4]]}')
    with pytest.raises(InputFormatError) as e:
        read_graph(path)
    assert e.value.field == "edges"
    path.write_text('{"n": 3, "edges": [[1, 2], [1, 2]]}')
    with pytest.raises(InputFormatError):
        read_graph(path)
    path.write_text("{not json")
    with pytest.raises(InputFormatError) as e:
        read_graph(path)
    assert e.value.field == "json"
    with pytest.raises(InputFormatError) as e:
        read_graph(tmp_path / "missing.json")
    assert e.value.field == "path"


def test_bad_module_data():
    graph = {"n": 2, "edges": [[1, 2]]}
    with pytest.raises(InputFormatError) as e:
        parse_module({"graph": graph, "dims": {"[2,1]": 1}})
    assert e.value.field == "dims"
    with pytest.raises(InputFormatError):
        parse_module({"graph": graph, "dims": {"[3]": 1}})
    with pytest.raises(InputFormatError):
        parse_module({"graph": graph, "field": "Fp:4", "dims": {}})
    with pytest.raises(InputFormatError):
        parse_module({"graph": graph, "dims": {"[1]": 1}, "maps": {"[1]=>[1,2]": [["1"]]}})
    with pytest.raises(InputFormatError):
        parse_module({"graph": graph, "dims": {"[1]": 1, "[1,2]": 1}, "maps": {"[1]->[1,2]": [["x"]]}})


def test_face_keys():
    assert face_key((2, 1)) == "[1,2]"
    assert parse_face_key("[]") == ()
    assert parse_face_key(" [ 1, 3 ] ") == (1, 3)
    assert parse_map_key("[1] -> [1,2]") == ((1,), (1, 2))
    with pytest.raises(InputFormatError):
        parse_face_key("[1,1]")
