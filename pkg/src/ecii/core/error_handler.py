import logging

from .exceptions import EciiException

logger = logging.getLogger(__name__)


def exit_code_for(exc: BaseException) -> int:
    """
    Map any exception raised by a command to its process exit code.
    Engine errors carry their own code; everything else is internal (3).
    """
    if isinstance(exc, EciiException):
        logger.error("%s", exc.detail)
        return exc.exit_code
    logger.exception("Unhandled error: %s", exc)
    return 3
