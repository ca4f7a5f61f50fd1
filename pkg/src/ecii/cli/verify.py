import argparse
import logging
from pathlib import Path

from ..core.config import Settings
from ..formats.kb import kb_hash
from ..formats.report import render_verification
from ..models.examples import build_example_set
from ..repositories import ConfigRepository, KnowledgeBaseRepository, ResultsRepository
from ..services.verification import verify_report
from .common import sibling

logger = logging.getLogger(__name__)

VERIFY_SUFFIX = ".verify.tsv"


def register(subparsers: argparse._SubParsersAction) -> argparse.ArgumentParser:
    parser = subparsers.add_parser(
        "verify", help="re-score a result file with the canonical-model oracle"
    )
    parser.add_argument("--config", required=True, type=Path, help="job config file")
    parser.add_argument(
        "--results", required=True, type=Path, help="result file written by 'run'"
    )
    parser.add_argument(
        "--out", type=Path, help=f"agreement table (default: <results>{VERIFY_SUFFIX})"
    )
    parser.set_defaults(handler=handle)
    return parser


def handle(args: argparse.Namespace, settings: Settings) -> int:
    cfg = ConfigRepository(settings).get(args.config)
    kb = KnowledgeBaseRepository().get(cfg.kb_path)
    examples = build_example_set(kb, cfg.positives, cfg.negatives)
    report = ResultsRepository().get(args.results)

    rows = verify_report(kb, examples, report)
    out = args.out or sibling(args.results, VERIFY_SUFFIX)
    out.write_text(render_verification(kb_hash(kb), rows), encoding="utf-8")
    logger.info("wrote %s", out)

    agreeing = sum(1 for row in rows if row.agree)
    print(f"{agreeing}/{len(rows)} agree")
    # disagreements are findings, not failures
    return 0
