import argparse
from pathlib import Path
from typing import Any

from ..core.exceptions import ConfigException


class ArgumentParser(argparse.ArgumentParser):
    """Usage errors surface as config errors (exit 1) instead of argparse's exit 2."""

    def error(self, message: str) -> Any:
        raise ConfigException(message)


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {value}")
    return value


def size_list(text: str) -> list[int]:
    """``100,1000`` -> [100, 1000]; every size must be positive."""
    return [positive_int(part.strip()) for part in text.split(",") if part.strip()]


def sibling(path: Path, suffix: str) -> Path:
    """``fam.conf`` + ``.results.tsv`` -> ``fam.conf.results.tsv``."""
    return path.with_name(path.name + suffix)
