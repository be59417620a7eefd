from sqfree_bn.algebra.jacobian import classify_cycle_graph, normalize_genus0, tree_normalize
from sqfree_bn.algebra.sqfree import validate
from sqfree_bn.models.files import module_to_json
from sqfree_bn.utils.decorators import command, log_command
from sqfree_bn.utils.helpers import face_key


class JacobianCommands:
    def __init__(self, cli):
        self.cli = cli

    @command(
        "jacobian-normalize",
        "Gauge fix a multidegree 0 module along the BFS tree and report its holonomies",
        inputs=("module",),
    )
    @log_command("jacobian-normalize")
    def normalize(self, args):
        module = self.cli.load_module(args)
        validate(module)
        form = tree_normalize(module)
        payload = form.to_json()
        if not form.chords:
            normalized, scalings = normalize_genus0(module)
            payload["normalized"] = module_to_json(normalized)
            payload["scalings"] = {
                face_key(f): module.field.format(c) for f, c in sorted(scalings.items())
            }
        self.cli.emit(payload, args)

    @command(
        "jacobian-classify",
        "The P¹ class of an n-gon module, with the distinguished edge at (0,1) and (1,0)",
        inputs=("module",),
    )
    @log_command("jacobian-classify")
    def classify(self, args):
        module = self.cli.load_module(args)
        validate(module)
        self.cli.emit(classify_cycle_graph(module).to_json(), args)


def setup(cli):
    cli.add_group(JacobianCommands(cli))
