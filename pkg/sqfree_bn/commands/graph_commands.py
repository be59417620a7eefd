import math

from sqfree_bn.algebra import homology
from sqfree_bn.algebra.girth_table import girth_table
from sqfree_bn.algebra.omega import build_omega, omega_generated_in_degree_zero
from sqfree_bn.algebra.simplicial import (
    girth,
    is_reduced,
    is_two_connected,
    max_independent_connected_complement,
    reduce,
)
from sqfree_bn.utils.decorators import arg, command, log_command
from sqfree_bn.utils.helpers import face_key, parse_face_key


class GraphCommands:
    def __init__(self, cli):
        self.cli = cli

    @command("graph-info", "Vertices, edges, genus, girth, 2-connectivity and s")
    @log_command("graph-info")
    def graph_info(self, args):
        graph = self.cli.load_graph(args)
        connected = graph.is_connected()
        value = girth(graph)
        self.cli.emit(
            {
                "v": graph.v,
                "e": graph.e,
                "genus": 1 - graph.v + graph.e if connected else None,
                "girth": None if value == math.inf else value,
                "two_connected": is_two_connected(graph),
                "s": max_independent_connected_complement(graph) if connected else None,
            },
            args,
        )

    @command("reduce", "Smooth valency-2 vertices until the graph is reduced")
    @log_command("reduce")
    def reduce_graph(self, args):
        graph = self.cli.load_graph(args)
        reduced, renaming = reduce(graph)
        self.cli.emit(
            {
                "already_reduced": is_reduced(graph),
                "graph": reduced.to_json(),
                "renaming": {str(old): new for old, new in sorted(renaming.items())},
            },
            args,
        )

    @command(
        "homology",
        "Reduced Betti numbers, and relative and link homology at a face",
        arg("--face", help='a face such as "[1,2]"'),
        inputs=("graph", "field"),
    )
    @log_command("homology")
    def homology_dims(self, args):
        graph = self.cli.load_graph(args)
        field = self.cli.field(args)
        degrees = range(-1, graph.dim + 1)
        payload = {
            "field": field.name,
            "reduced": {str(i): homology.reduced_homology(graph, i, field).dim for i in degrees},
        }
        if args.face is not None:
            face = parse_face_key(args.face)
            payload["face"] = face_key(face)
            payload["relative"] = {
                str(i): homology.relative_homology(graph, face, i, field).dim for i in degrees
            }
            payload["link"] = {
                str(i): homology.link_homology(graph, face, i, field).dim for i in degrees
            }
        self.cli.emit(payload, args)

    @command("two-cm", "CM and 2-CM tests with the matching graph conditions", inputs=("graph", "field"))
    @log_command("two-cm")
    def two_cm(self, args):
        graph = self.cli.load_graph(args)
        field = self.cli.field(args)
        generated = None
        if graph.is_connected():
            generated = omega_generated_in_degree_zero(build_omega(graph, field))
        self.cli.emit(
            {
                "cm": homology.is_cm_complex(graph, field),
                "two_cm": homology.is_two_cm_complex(graph, field),
                "two_connected": is_two_connected(graph),
                "omega_generated_in_degree_zero": generated,
            },
            args,
        )

    @command(
        "girth-table",
        "Numerical data (g, v, w) of graphs whose girth exceeds the gonality bound",
        arg("--k", type=int, default=3, help="minimum valency"),
        arg("--g-min", type=int, default=4),
        arg("--g-max", type=int, default=12),
        arg("--sharpened", action="store_true", help="use the even-girth vertex bound"),
        inputs=(),
    )
    @log_command("girth-table")
    def exceptional_girths(self, args):
        table = girth_table(args.k, args.g_max, args.sharpened, args.g_min)
        self.cli.emit(table.to_json(), args)


def setup(cli):
    cli.add_group(GraphCommands(cli))
