from pathlib import Path
from typing import Any

from pydantic import BaseModel, Field, ValidationError, conint, validator

from sqfree_bn.models.complex import SimplicialGraph
from sqfree_bn.models.field import Field as ScalarField
from sqfree_bn.models.field import parse_field
from sqfree_bn.models.matrix import Matrix
from sqfree_bn.models.module import SquareFreeModule
from sqfree_bn.utils.exceptions import InputFormatError
from sqfree_bn.utils.helpers import face_key, load_json, map_key, parse_face_key, parse_map_key


class GraphFile(BaseModel):
    n: conint(ge=0)
    edges: list[tuple[int, int]] = Field(default_factory=list)

    @validator("edges")
    def edges_in_range(cls, edges, values):
        n = values.get("n", 0)
        seen = set()
        for i, j in edges:
            if not 1 <= i < j <= n:
                raise ValueError(f"edge [{i}, {j}] needs 1 <= i < j <= {n}")
            if (i, j) in seen:
                raise ValueError(f"duplicate edge [{i}, {j}]")
            seen.add((i, j))
        return edges

    def to_graph(self) -> SimplicialGraph:
        return SimplicialGraph(self.n, self.edges)


class ModuleFile(BaseModel):
    graph: GraphFile
    field: str = "Q"
    dims: dict[str, conint(ge=0)]
    maps: dict[str, list[list[str]]] = Field(default_factory=dict)

    @validator("field")
    def known_field(cls, value):
        try:
            parse_field(value)
        except InputFormatError as e:
            raise ValueError(str(e))
        return value

    @validator("dims")
    def face_keys(cls, dims):
        for key in dims:
            try:
                parse_face_key(key)
            except InputFormatError as e:
                raise ValueError(str(e))
        return dims

    @validator("maps")
    def covering_keys(cls, maps):
        for key in maps:
            try:
                parse_map_key(key)
            except InputFormatError as e:
                raise ValueError(str(e))
        return maps

    def to_module(self) -> SquareFreeModule:
        graph = self.graph.to_graph()
        field = parse_field(self.field)
        dims = dict()
        for key, dim in self.dims.items():
            face = parse_face_key(key)
            if face not in graph:
                raise InputFormatError(f"dims.{key}", "not a face of the graph")
            dims[face] = dim
        maps = dict()
        for key, rows in self.maps.items():
            source, target = parse_map_key(key)
            for face in (source, target):
                if face not in graph:
                    raise InputFormatError(f"maps.{key}", f"{list(face)} is not a face")
            ncols = dims.get(source, 0)
            try:
                maps[(source, target)] = Matrix.from_strings(rows, field, ncols)
            except InputFormatError as e:
                raise InputFormatError(f"maps.{key}", str(e))
            except Exception as e:
                raise InputFormatError(f"maps.{key}", f"bad matrix: {e}")
        return SquareFreeModule(graph, dims, maps, field)


def _parse(model: type[BaseModel], data: Any, label: str) -> BaseModel:
    try:
        return model.parse_obj(data)
    except ValidationError as e:
        error = e.errors()[0]
        location = ".".join(str(x) for x in error["loc"])
        raise InputFormatError(location or label, error["msg"])


def read_graph(path: str | Path) -> SimplicialGraph:
    return _parse(GraphFile, load_json(path), "graph").to_graph()


def read_module(path: str | Path) -> SquareFreeModule:
    return _parse(ModuleFile, load_json(path), "module").to_module()


def parse_module(data: Any) -> SquareFreeModule:
    return _parse(ModuleFile, data, "module").to_module()


def module_to_json(module: SquareFreeModule) -> dict:
    field: ScalarField = module.field
    dims = {face_key(f): module.dim(f) for f in module.faces}
    maps = dict()
    for source, target in module.complex.covering_pairs():
        if module.dim(source) and module.dim(target):
            maps[map_key(source, target)] = module.phi(source, target).to_strings()
    return {
        "graph": module.graph.to_json(),
        "field": field.name,
        "dims": dims,
        "maps": maps,
    }
