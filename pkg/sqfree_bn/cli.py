import argparse
import importlib
import inspect
import sys
from logging import Logger
from pathlib import Path
from typing import Callable, Sequence

from sqfree_bn.algebra.simplicial import build_named
from sqfree_bn.models.complex import SimplicialGraph
from sqfree_bn.models.field import Field, parse_field
from sqfree_bn.models.files import read_graph, read_module
from sqfree_bn.models.module import SquareFreeModule
from sqfree_bn.settings.config import Config
from sqfree_bn.settings.const import NAMED_BUILDERS, ExitCodes
from sqfree_bn.utils.decorators import CommandSpec
from sqfree_bn.utils.exceptions import (
    InconclusiveError,
    InputFormatError,
    SqfreeError,
    UsageError,
)
from sqfree_bn.utils.helpers import dump_json, render_text


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


class SqfreeCli:
    def __init__(self, config: Config, logger: Logger):
        self.config = config
        self.logger = logger
        self.load_groups = [
            c.stem
            for c in sorted((Path(__file__).parent / "commands").glob("*.py"))
            if not c.stem.startswith("_")
        ]
        self.groups = dict()
        self.handlers: dict[str, tuple[CommandSpec, Callable]] = dict()

    def setup(self):
        for group in self.load_groups:
            self.logger.debug(f"Loading {group}")
            module = importlib.import_module(f"sqfree_bn.commands.{group}")
            module.setup(self)
        self.logger.debug("Command groups loaded!")

    def add_group(self, group):
        self.groups[type(group).__name__] = group
        for _, method in inspect.getmembers(group, predicate=inspect.ismethod):
            spec = getattr(method, "__command__", None)
            if spec is None:
                continue
            if spec.name in self.handlers:
                raise ValueError(f"duplicate command {spec.name}")
            self.handlers[spec.name] = (spec, method)

    def build_parser(self) -> argparse.ArgumentParser:
        parser = _Parser(
            prog="sqfree-bn",
            description="Square-free modules on simplicial graphs",
        )
        parser.add_argument("--config", help="path to a YAML config file")
        subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
        subparsers.required = True
        for name in sorted(self.handlers):
            spec, _ = self.handlers[name]
            sub = subparsers.add_parser(name, help=spec.brief, description=spec.brief)
            self._add_inputs(sub, spec.inputs)
            for argument in spec.arguments:
                sub.add_argument(*argument.flags, **argument.options)
            sub.add_argument("--format", choices=("json", "text"), default="json")
        return parser

    @staticmethod
    def _add_inputs(parser: argparse.ArgumentParser, inputs: Sequence[str]):
        if "graph" in inputs:
            source = parser.add_mutually_exclusive_group()
            source.add_argument("--graph", help="graph JSON file")
            source.add_argument(
                "--builder", help=f"named graph, one of {', '.join(NAMED_BUILDERS)}"
            )
        if "module" in inputs:
            parser.add_argument("--module", required=True, help="module JSON file")
        if "field" in inputs:
            parser.add_argument("--field", help="Q or Fp:<p>")
        if "seed" in inputs:
            parser.add_argument("--seed", type=int, help="seed for randomized steps")

    def load_graph(self, args) -> SimplicialGraph:
        if getattr(args, "builder", None):
            return build_named(args.builder)
        if getattr(args, "graph", None):
            return read_graph(args.graph)
        raise InputFormatError("graph", "one of --graph or --builder is required")

    def load_module(self, args) -> SquareFreeModule:
        return read_module(args.module)

    def field(self, args) -> Field:
        return parse_field(getattr(args, "field", None) or self.config.default_field)

    def seed(self, args) -> int:
        seed = getattr(args, "seed", None)
        if seed is None:
            return self.config.default_seed
        if not 0 <= seed < 2**64:
            raise InputFormatError("seed", "must fit in an unsigned 64-bit integer")
        return seed

    def emit(self, payload: dict, args):
        if args.format == "text":
            print(render_text(payload))
        else:
            print(dump_json(payload))

    def invoke(self, argv: Sequence[str]) -> int:
        parser = self.build_parser()
        try:
            args = parser.parse_args(list(argv))
        except UsageError as e:
            print(e, file=sys.stderr)
            return ExitCodes.USAGE_ERROR
        _, handler = self.handlers[args.command]
        try:
            code = handler(args)
        except InconclusiveError as e:
            print(f"inconclusive: {e.reason}", file=sys.stderr)
            return ExitCodes.INCONCLUSIVE
        except InputFormatError as e:
            print(f"input error: {e}", file=sys.stderr)
            return ExitCodes.USAGE_ERROR
        except SqfreeError as e:
            print(f"error: {e}", file=sys.stderr)
            return ExitCodes.DOMAIN_ERROR
        return code if isinstance(code, int) else ExitCodes.OK
