from sqfree_bn.algebra.omega import build_omega, general_section, omega_generated_in_degree_zero
from sqfree_bn.models.files import module_to_json
from sqfree_bn.utils.decorators import command, log_command


class OmegaCommands:
    def __init__(self, cli):
        self.cli = cli

    @command("omega", "The canonical module of k[Δ] with its cycle basis", inputs=("graph", "field"))
    @log_command("omega")
    def canonical(self, args):
        graph = self.cli.load_graph(args)
        omega = build_omega(graph, self.cli.field(args))
        self.cli.emit(
            {
                "genus": omega.genus,
                "generated_in_degree_zero": omega_generated_in_degree_zero(omega),
                "basis": [c.to_json() for c in omega.basis],
                "module": module_to_json(omega.module),
            },
            args,
        )

    @command(
        "general-section",
        "A cycle u_N with nonzero coefficient on every edge",
        inputs=("graph", "seed"),
    )
    @log_command("general-section")
    def section(self, args):
        graph = self.cli.load_graph(args)
        seed = self.cli.seed(args)
        config = self.cli.config
        section = general_section(
            build_omega(graph),
            seed,
            config.general_section_draws,
            config.coefficient_scale,
        )
        self.cli.emit({"seed": seed, "section": section.to_json()}, args)


def setup(cli):
    cli.add_group(OmegaCommands(cli))
