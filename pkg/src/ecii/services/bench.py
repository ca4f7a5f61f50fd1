import logging
import time
from fractions import Fraction
from typing import Sequence

from ..core.config import Settings, settings
from ..core.exceptions import ConfigException
from ..formats.kb import parse_kb, serialize_kb
from ..models.config import JobConfig
from ..models.examples import build_example_set
from ..models.report import BenchRow, PhaseTimings
from .induction import InductionService
from .synthetic import generate_family_kb

logger = logging.getLogger(__name__)


def _mean(samples: Sequence[PhaseTimings]) -> PhaseTimings:
    return PhaseTimings(
        **{
            phase: sum(getattr(s, phase) for s in samples) / len(samples)
            for phase in PhaseTimings.PHASES
        }
    )


def run_bench(
    sizes: Sequence[int],
    repetitions: int = 3,
    seed: int = 0,
    app_settings: Settings = settings,
) -> list[BenchRow]:
    """
    Time the full pipeline on synthetic family KBs, one row per size.

    Each repetition re-parses the serialized KB, so the parse phase is measured
    as it would be for a file on disk.
    """
    if repetitions < 1:
        raise ConfigException(f"repetitions must be positive, got {repetitions}")
    for size in sizes:
        if size < 1:
            raise ConfigException(f"bench sizes must be positive, got {size}")

    rows = []
    for size in sizes:
        family = generate_family_kb(size, seed)
        text = serialize_kb(family.kb)
        cfg = JobConfig(
            kb=f"synthetic-{size}.kb",
            positives=family.positives,
            negatives=family.negatives,
            expressionCap=app_settings.ECII_EXPRESSION_CAP,
        )
        samples: list[PhaseTimings] = []
        invocations_ok = True
        best = Fraction(0)
        for rep in range(repetitions):
            started = time.perf_counter()
            kb = parse_kb(text)
            examples = build_example_set(kb, cfg.positives, cfg.negatives)
            parse_ms = (time.perf_counter() - started) * 1000.0
            result = InductionService(app_settings).run(
                kb, examples, cfg, parse_ms=parse_ms
            )
            report = result.report
            samples.append(report.timings)
            invocations_ok &= report.materializer_invocations == 1
            if report.best is not None:
                best = report.best.alpha2
            logger.info(
                "size %d rep %d: induce %.1f ms, total %.1f ms",
                size,
                rep + 1,
                report.timings.induce,
                report.timings.total,
            )
        rows.append(
            BenchRow(
                size=size,
                repetitions=repetitions,
                mean=_mean(samples),
                best_alpha2=best,
                invocations_ok=invocations_ok,
            )
        )
    return rows
