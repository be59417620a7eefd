from sqfree_bn.algebra.brill_noether import GonalitySearch, clifford_index, verify_certificate
from sqfree_bn.utils.decorators import arg, command, log_command


class SeriesCommands:
    def __init__(self, cli):
        self.cli = cli

    def _search(self, graph, seed: int) -> GonalitySearch:
        config = self.cli.config
        return GonalitySearch(
            graph,
            seed,
            cycle_cap=config.cycle_cap,
            samples=config.indecomposable_samples,
            draws=config.general_section_draws,
            scale=config.coefficient_scale,
            deletion_depth=config.gonality_deletion_depth,
            logger=self.cli.logger,
        )

    @command(
        "gonality",
        "Least d with a g¹_d, with a re-verified certificate",
        arg("--no-verify", action="store_true", help="skip re-verifying the certificate"),
        inputs=("graph", "seed"),
    )
    @log_command("gonality")
    def pencils(self, args):
        graph = self.cli.load_graph(args)
        search = self._search(graph, self.cli.seed(args))
        result = search.run()
        payload = result.to_json()
        if not args.no_verify:
            payload["reverified"] = verify_certificate(
                search.omega,
                result.certificate,
                self.cli.config.indecomposable_samples,
                result.seed,
            )
        self.cli.emit(payload, args)

    @command(
        "clifford",
        "Clifford index over the certified pencils and short cycle triples",
        inputs=("graph", "seed"),
    )
    @log_command("clifford")
    def clifford_bound(self, args):
        graph = self.cli.load_graph(args)
        seed = self.cli.seed(args)
        config = self.cli.config
        search = self._search(graph, seed)
        search.run()
        result = clifford_index(
            graph,
            seed,
            config.clifford_max_triples,
            config.clifford_cycle_length_slack,
            search=search,
            logger=self.cli.logger,
        )
        self.cli.emit(result.to_json(), args)


def setup(cli):
    cli.add_group(SeriesCommands(cli))
