import argparse
import logging
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Sequence

BASE_DIR = Path(__file__).resolve().parent.parent
if str(BASE_DIR) not in sys.path:
    sys.path.append(str(BASE_DIR))

from pydantic import ValidationError

from sqfree_bn.cli import SqfreeCli
from sqfree_bn.settings.config import Config, get_config
from sqfree_bn.settings.const import ExitCodes

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def setup_logging(config: Config) -> logging.Logger:
    # library modules log under the package logger, commands under this one
    root = logging.getLogger("sqfree_bn")
    root.setLevel(logging.DEBUG if config.debug else logging.INFO)
    for handler in list(root.handlers):
        root.removeHandler(handler)
        handler.close()
    if config.debug:
        handler = logging.StreamHandler(stream=sys.stderr)
    else:
        try:
            config.log_file.parent.mkdir(parents=True, exist_ok=True)
            handler = RotatingFileHandler(
                filename=config.log_file,
                encoding="utf-8",
                mode="a",
                maxBytes=config.log_max_bytes,
                backupCount=config.log_backup_count,
            )
        except OSError:
            handler = logging.StreamHandler(stream=sys.stderr)
            handler.setLevel(logging.WARNING)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root.addHandler(handler)
    return logging.getLogger(__name__)


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, rest = pre.parse_known_args(argv)
    try:
        config = get_config(known.config)
    except (FileNotFoundError, ValidationError) as e:
        print(f"config error: {e}", file=sys.stderr)
        return ExitCodes.USAGE_ERROR
    logger = setup_logging(config)
    cli = SqfreeCli(config, logger)
    cli.setup()
    return cli.invoke(rest)


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
