import time
from dataclasses import dataclass, field
from functools import wraps
from typing import Any, Callable

from sqfree_bn.utils.exceptions import InconclusiveError, SqfreeError


@dataclass
class Argument:
    flags: tuple[str, ...]
    options: dict[str, Any] = field(default_factory=dict)


def arg(*flags: str, **options) -> Argument:
    return Argument(flags, options)


@dataclass
class CommandSpec:
    name: str
    brief: str
    arguments: tuple[Argument, ...]
    inputs: tuple[str, ...]


def command(
    name: str, brief: str, *arguments: Argument, inputs: tuple[str, ...] = ("graph",)
) -> Callable:
    """
    Marks a command group method as a CLI subcommand.

    Parameters
    ----------
    inputs: which shared input flags the subcommand takes ("graph", "module", "field", "seed")
    """

    def dec(func: Callable) -> Callable:
        func.__command__ = CommandSpec(name, brief, tuple(arguments), inputs)
        return func

    return dec


def log_command(command_name: str | None = None) -> Callable:
    def dec(func: Callable) -> Callable:
        @wraps(func)
        def wrapped(group, args, *rest, **kwargs):
            logger = group.cli.logger
            cmd_name = command_name or func.__name__
            logger.debug(
                f"[{cmd_name}] args: "
                + ", ".join(f"{k}={v}" for k, v in sorted(vars(args).items()))
            )
            start = time.perf_counter()
            try:
                result = func(group, args, *rest, **kwargs)
            except InconclusiveError as e:
                logger.warning(f"[{cmd_name}] {e}")
                raise
            except SqfreeError as e:
                logger.error(f"[{cmd_name}] {type(e).__name__}: {e}")
                raise
            logger.info(f"[{cmd_name}] finished in {time.perf_counter() - start:.3f}s")
            return result

        return wrapped

    return dec
