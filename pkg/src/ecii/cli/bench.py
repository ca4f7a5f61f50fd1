import argparse
import logging
import sys
from pathlib import Path

from ..core.config import Settings
from ..formats.report import render_bench
from ..services.bench import run_bench
from .common import positive_int, size_list

logger = logging.getLogger(__name__)


def register(subparsers: argparse._SubParsersAction) -> argparse.ArgumentParser:
    parser = subparsers.add_parser(
        "bench", help="time the pipeline on synthetic family knowledge bases"
    )
    parser.add_argument(
        "--sizes", required=True, type=size_list, help="individual counts, e.g. 100,1000"
    )
    parser.add_argument(
        "--reps", type=positive_int, default=3, help="repetitions per size (default 3)"
    )
    parser.add_argument("--seed", type=int, default=0, help="generator seed")
    parser.add_argument("--out", type=Path, help="timing table (default: stdout)")
    parser.set_defaults(handler=handle)
    return parser


def handle(args: argparse.Namespace, settings: Settings) -> int:
    rows = run_bench(args.sizes, args.reps, args.seed, settings)
    table = render_bench(rows)
    if args.out is None:
        sys.stdout.write(table)
    else:
        args.out.write_text(table, encoding="utf-8")
        logger.info("wrote %s", args.out)
    for row in rows:
        if not row.invocations_ok:
            logger.warning("size %d: materializer ran more than once per run", row.size)
    return 0
