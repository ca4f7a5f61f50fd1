import argparse
import logging
import time
from pathlib import Path

from ..core.config import Settings
from ..models.examples import build_example_set
from ..repositories import (
    ConfigRepository,
    KnowledgeBaseRepository,
    MaterializationRepository,
    ResultsRepository,
)
from ..services.induction import InductionService
from .common import positive_int, sibling

logger = logging.getLogger(__name__)

RESULTS_SUFFIX = ".results.tsv"


def register(subparsers: argparse._SubParsersAction) -> argparse.ArgumentParser:
    parser = subparsers.add_parser("run", help="induce class expressions for a job")
    parser.add_argument("--config", required=True, type=Path, help="job config file")
    parser.add_argument(
        "--out", type=Path, help=f"result file (default: <config>{RESULTS_SUFFIX})"
    )
    parser.add_argument(
        "--alpha3", action="store_true", help="also score solutions with the oracle"
    )
    parser.add_argument(
        "--mat", type=Path, help="load this materialization dump instead of computing one"
    )
    parser.add_argument(
        "--max-solutions", type=positive_int, help="override maxSolutions"
    )
    parser.set_defaults(handler=handle)
    return parser


def handle(args: argparse.Namespace, settings: Settings) -> int:
    started = time.perf_counter()
    cfg = ConfigRepository(settings).get(args.config)
    overrides: dict[str, object] = {}
    if args.alpha3:
        overrides["compute_alpha3"] = True
    if args.max_solutions is not None:
        overrides["max_solutions"] = args.max_solutions
    if overrides:
        cfg = cfg.model_copy(update=overrides)

    kb = KnowledgeBaseRepository().get(cfg.kb_path)
    examples = build_example_set(kb, cfg.positives, cfg.negatives)
    dump = MaterializationRepository().get(args.mat) if args.mat else None
    parse_ms = (time.perf_counter() - started) * 1000.0

    result = InductionService(settings).run(kb, examples, cfg, dump, parse_ms)
    out = args.out or sibling(args.config, RESULTS_SUFFIX)
    ResultsRepository().save(out, result.report)
    logger.info("wrote %s", out)

    best = result.report.best
    if best is None:
        print("no solutions")
    else:
        alpha3 = f", alpha3={float(best.alpha3)}" if best.alpha3 is not None else ""
        print(
            f"rank 1: {best.expression} "
            f"(alpha2={float(best.alpha2)}, length {best.length}{alpha3})"
        )
    t = result.report.timings
    print(
        f"time: parse {t.parse:.1f} ms, enrich {t.enrich:.1f} ms, "
        f"materialize {t.materialize:.1f} ms, induce {t.induce:.1f} ms, "
        f"total {t.total:.1f} ms"
    )
    return 0
