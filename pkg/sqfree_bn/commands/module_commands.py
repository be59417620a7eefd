from sqfree_bn.algebra.sqfree import (
    build_effective_module,
    build_min_degree_module,
    is_cm_module,
    is_indecomposable,
    is_locally_rank_one,
    omega_dims,
    riemann_roch_check,
    validate,
)
from sqfree_bn.models.files import module_to_json
from sqfree_bn.settings.const import ExitCodes
from sqfree_bn.utils.decorators import arg, command, log_command
from sqfree_bn.utils.exceptions import InconclusiveError
from sqfree_bn.utils.helpers import face_key


class ModuleCommands:
    def __init__(self, cli):
        self.cli = cli

    @command(
        "module-info",
        "Validate a module and report its degree, l, CM, rank and indecomposability",
        inputs=("module", "seed"),
    )
    @log_command("module-info")
    def module_info(self, args):
        module = self.cli.load_module(args)
        validate(module)
        seed = self.cli.seed(args)
        payload = {
            "valid": True,
            **module.summary(),
            "cm": is_cm_module(module),
            "locally_rank_one": is_locally_rank_one(module),
        }
        code = ExitCodes.OK
        if module.field.is_char_zero:
            try:
                payload["indecomposable"] = is_indecomposable(
                    module, self.cli.config.indecomposable_samples, seed
                )
            except InconclusiveError as e:
                self.cli.logger.warning(f"[module-info] {e}")
                payload["indecomposable"] = "inconclusive"
                code = ExitCodes.INCONCLUSIVE
        else:
            payload["indecomposable"] = None
        payload["seed"] = seed
        payload["module"] = module_to_json(module)
        self.cli.emit(payload, args)
        return code

    @command("omega-dims", "Dimensions of the canonical module of a CM module", inputs=("module",))
    @log_command("omega-dims")
    def canonical_dims(self, args):
        module = self.cli.load_module(args)
        validate(module)
        dims = omega_dims(module)
        self.cli.emit({face_key(f): d for f, d in dims.items()}, args)

    @command("rr-check", "Check l(M) - l(ω_M) = 1 + deg M - g", inputs=("module",))
    @log_command("rr-check")
    def rr_check(self, args):
        module = self.cli.load_module(args)
        validate(module)
        self.cli.emit(riemann_roch_check(module).to_json(), args)

    @command(
        "build-effective",
        "Build a CM, locally rank 1 module with l = 1 of a given degree",
        arg("--degree", type=int, required=True, help="degree in [0, g]"),
        inputs=("graph", "field"),
    )
    @log_command("build-effective")
    def build_effective(self, args):
        graph = self.cli.load_graph(args)
        module = build_effective_module(graph, args.degree, self.cli.field(args))
        self.cli.emit(module_to_json(module), args)

    @command(
        "build-min-degree",
        "Build an indecomposable module of the least degree -s",
        inputs=("graph", "field"),
    )
    @log_command("build-min-degree")
    def build_min_degree(self, args):
        graph = self.cli.load_graph(args)
        module = build_min_degree_module(graph, self.cli.field(args))
        self.cli.emit(module_to_json(module), args)


def setup(cli):
    cli.add_group(ModuleCommands(cli))
