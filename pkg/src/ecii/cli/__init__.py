import argparse

from ..core.config import AppSettings
from . import bench, materialize, run, verify
from .common import ArgumentParser


def create_parser(settings: AppSettings) -> argparse.ArgumentParser:
    parser = ArgumentParser(prog=settings.APP_NAME, description=settings.APP_DESCRIPTION)
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {settings.APP_VERSION}"
    )
    subparsers = parser.add_subparsers(
        dest="command", required=True, parser_class=ArgumentParser
    )
    for command in (run, verify, bench, materialize):
        sub = command.register(subparsers)
        sub.add_argument(
            "--quiet", action="store_true", help="only log warnings and errors"
        )
    return parser


__all__ = ["create_parser"]
