import logging
import sys

from .config import LoggingSettings

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def setup_logging(settings: LoggingSettings, quiet: bool = False) -> None:
    """Configure the root logger once per process."""
    level = logging.DEBUG if settings.DEBUG else settings.LOG_LEVEL
    if quiet:
        level = logging.WARNING
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)
