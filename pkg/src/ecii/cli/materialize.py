import argparse
import logging
from pathlib import Path

from ..core.config import Settings
from ..formats.kb import kb_hash
from ..formats.materialization import EnrichmentKey, dump_materialization
from ..models.config import JobConfig
from ..repositories import ConfigRepository, KnowledgeBaseRepository
from ..services.enrich import enrich_kb, enumerate_expressions
from ..services.materialize import MaterializationService

logger = logging.getLogger(__name__)


def register(subparsers: argparse._SubParsersAction) -> argparse.ArgumentParser:
    parser = subparsers.add_parser(
        "materialize", help="precompute atomic memberships for reuse with 'run --mat'"
    )
    parser.add_argument("--kb", required=True, type=Path, help="knowledge base file")
    parser.add_argument("--out", required=True, type=Path, help="dump file")
    parser.add_argument(
        "--config",
        type=Path,
        help="take n1, n2 and expressionCap from this job config",
    )
    parser.set_defaults(handler=handle)
    return parser


def _enrichment(args: argparse.Namespace, settings: Settings) -> EnrichmentKey:
    if args.config is not None:
        cfg = ConfigRepository(settings).get(args.config)
        return EnrichmentKey(cfg.n1, cfg.n2, cfg.expression_cap)
    defaults = JobConfig.model_fields
    return EnrichmentKey(
        defaults["n1"].default, defaults["n2"].default, settings.ECII_EXPRESSION_CAP
    )


def handle(args: argparse.Namespace, settings: Settings) -> int:
    kb = KnowledgeBaseRepository().get(args.kb)
    key = _enrichment(args, settings)
    enriched = enrich_kb(kb, enumerate_expressions(kb, key.n1, key.n2, key.cap))
    m = MaterializationService().materialize(enriched)

    args.out.write_text(dump_materialization(m, kb_hash(kb), key), encoding="utf-8")
    logger.info(
        "wrote %s: %d memberships for %d individuals",
        args.out,
        len(m.memberships),
        len(m.individuals),
    )
    return 0
