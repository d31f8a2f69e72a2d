import logging
import os
import sys
from typing import Optional, Sequence

import dotenv
from pydantic import ValidationError

from modules.cli import serialize
from modules.cli.args import create_parser
from modules.cli.commands import dispatch
from modules.cli.render import make_console, render
from modules.utils import env
from modules.utils.constants import DEFAULT_ENV_FILE
from modules.utils.log import setup_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def _diagnostic(e: BaseException) -> str:
    if isinstance(e, ValidationError):
        err = e.errors()[0]
        return str(err["msg"]).removeprefix("Value error, ")
    return str(e).splitlines()[0] if str(e) else type(e).__name__


def run(argv: Optional[Sequence[str]] = None, stdout=None) -> int:
    """0 when every verification passed, 1 on verification failures, 2 on bad input."""
    stdout = stdout or sys.stdout
    parser = create_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    setup_logging(env.get_and_update_env(args, "log_level", "INFO", str))
    as_json = env.get_and_update_env(args, "json", False, bool)
    try:
        result = dispatch(args)
    except (ValueError, ArithmeticError, KeyError) as e:
        # library errors (InvalidColouring, NotRegular, LevelCountMismatch, ...) and bad parameters
        print(f"error: {type(e).__name__}: {_diagnostic(e)}", file=sys.stderr)
        logger.debug("command failed", exc_info=True)
        return EXIT_USAGE

    if as_json:
        stdout.write(serialize.dumps(result.command, result.data, result.passed).decode())
        stdout.write("\n")
    else:
        render(result, make_console(stdout))
    if not result.passed:
        logger.info("%s: verification failures present", result.command)
    return EXIT_OK if result.passed else EXIT_FAILED


if __name__ == "__main__":
    dotenv.load_dotenv(
        dotenv_path=os.getenv("ENV_FILE", DEFAULT_ENV_FILE),
    )
    sys.exit(run())
