import logging
import sys
from typing import Sequence

from dotenv import load_dotenv

from .cli import create_parser
from .core.config import Settings
from .core.error_handler import exit_code_for
from .core.log import setup_logging

logger = logging.getLogger(__name__)


def main(argv: Sequence[str] | None = None) -> int:
    """Parse the command line, dispatch to the subcommand and return its exit code."""
    load_dotenv()
    app_settings = Settings()
    setup_logging(app_settings)
    try:
        args = create_parser(app_settings).parse_args(argv)
        setup_logging(app_settings, quiet=getattr(args, "quiet", False))
        logger.debug("running %s", args.command)
        return args.handler(args, app_settings)
    except Exception as exc:
        return exit_code_for(exc)


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
