import logging
import time
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from ..core.config import Settings, resolve_workers, settings
from ..core.exceptions import InductionException, StaleArtifactException
from ..formats.kb import kb_hash
from ..formats.materialization import EnrichmentKey, MaterializationDump
from ..models.config import JobConfig
from ..models.examples import ExampleSet
from ..models.knowledge_base import KnowledgeBase
from ..models.materialization import Materialization
from ..models.report import PhaseTimings, ResultReport, SolutionRow
from .enrich import enrich_kb, enumerate_expressions
from .extensions import compute_fill_sets
from .materialize import MaterializationService
from .oracle import alpha3
from .scoring import common_types
from .search import (
    Renderer,
    ScoredSolution,
    role_candidates,
    stage3_solutions,
    top_level_disjunctions,
)

logger = logging.getLogger(__name__)

SUMMARY_SIZE = 5


def _ms(start: float) -> float:
    return (time.perf_counter() - start) * 1000.0


@dataclass(frozen=True)
class InductionResult:
    report: ResultReport
    solutions: tuple[ScoredSolution, ...]
    enriched: KnowledgeBase
    materialization: Materialization


def alpha3_summary(solutions: Sequence[ScoredSolution]) -> Fraction | None:
    """Mean α3 over the first few solutions that reach the best α2."""
    if not solutions or any(s.alpha3 is None for s in solutions):
        return None
    best = solutions[0].alpha2
    top = [s for s in solutions if s.alpha2 == best][:SUMMARY_SIZE]
    return sum((s.alpha3 for s in top if s.alpha3 is not None), Fraction(0)) / len(top)


def enrichment_key(cfg: JobConfig) -> EnrichmentKey:
    return EnrichmentKey(cfg.n1, cfg.n2, cfg.expression_cap)


class InductionService:
    """Runs one induction job: enrich, materialize once, assemble, score."""

    def __init__(self, app_settings: Settings = settings) -> None:
        self.settings = app_settings
        self.materializer = MaterializationService()

    def enrich(self, kb: KnowledgeBase, cfg: JobConfig) -> KnowledgeBase:
        exprs = enumerate_expressions(kb, cfg.n1, cfg.n2, cfg.expression_cap)
        return enrich_kb(kb, exprs)

    def materialize(
        self,
        kb: KnowledgeBase,
        enriched: KnowledgeBase,
        examples: ExampleSet,
        cfg: JobConfig,
        dump: MaterializationDump | None = None,
    ) -> Materialization:
        if dump is None:
            return self.materializer.materialize(enriched, examples.individuals)
        if dump.kb_hash != kb_hash(kb):
            raise StaleArtifactException(
                "materialization dump was produced from a different knowledge base"
            )
        if dump.enrichment != enrichment_key(cfg):
            raise StaleArtifactException(
                f"materialization dump was enriched with {dump.enrichment}, "
                f"the job uses {enrichment_key(cfg)}"
            )
        return self.materializer.load(dump, enriched)

    def search(
        self,
        enriched: KnowledgeBase,
        examples: ExampleSet,
        cfg: JobConfig,
        m: Materialization,
    ) -> list[ScoredSolution]:
        renderer = Renderer(enriched.fresh_definitions)
        fills = compute_fill_sets(examples)
        excluded = (
            frozenset() if cfg.keep_common_types else common_types(examples, m)
        )
        per_role = role_candidates(
            cfg, fills, m, renderer, excluded, resolve_workers(self.settings)
        )
        disjunctions = (
            top_level_disjunctions(examples, cfg, m, renderer, excluded)
            if not fills.roles
            else []
        )
        logger.info(
            "assembling solutions from %d role(s)%s",
            len(per_role),
            f" and {len(disjunctions)} top-level disjunction(s)" if disjunctions else "",
        )
        return stage3_solutions(
            examples, cfg, per_role, m, fills, renderer, excluded, disjunctions
        )

    def score_alpha3(
        self,
        kb: KnowledgeBase,
        examples: ExampleSet,
        solutions: Sequence[ScoredSolution],
    ) -> list[ScoredSolution]:
        out = []
        for s in solutions:
            value = alpha3(s.expression, examples, kb)
            if (s.alpha2 == 1) != (value == 1):
                logger.warning(
                    "α2=%s but α3=%s for %s", float(s.alpha2), float(value), s.text
                )
            out.append(replace(s, alpha3=value))
        return out

    def run(
        self,
        kb: KnowledgeBase,
        examples: ExampleSet,
        cfg: JobConfig,
        dump: MaterializationDump | None = None,
        parse_ms: float = 0.0,
    ) -> InductionResult:
        """
        Execute the pipeline for one job.

        Args:
            kb: The original knowledge base
            examples: Positive and negative examples drawn from ``kb``
            cfg: Search parameters
            dump: A precomputed materialization to load instead of computing one
            parse_ms: Time already spent reading inputs, carried into the report
        """
        started = time.perf_counter()
        self.materializer = MaterializationService()

        phase = time.perf_counter()
        enriched = self.enrich(kb, cfg)
        enrich_ms = _ms(phase)

        phase = time.perf_counter()
        m = self.materialize(kb, enriched, examples, cfg, dump)
        materialize_ms = _ms(phase)

        phase = time.perf_counter()
        search_cfg = cfg
        if cfg.alpha3_rerank > cfg.max_solutions:
            search_cfg = cfg.model_copy(update={"max_solutions": cfg.alpha3_rerank})
        solutions = self.search(enriched, examples, search_cfg, m)
        if cfg.alpha3_rerank:
            head = self.score_alpha3(kb, examples, solutions[: cfg.alpha3_rerank])
            head.sort(key=lambda s: (-(s.alpha3 or 0), -s.alpha2, s.length, s.text))
            solutions = head + solutions[cfg.alpha3_rerank :]
        solutions = solutions[: cfg.max_solutions]
        if cfg.wants_alpha3:
            solutions = [
                s if s.alpha3 is not None else self.score_alpha3(kb, examples, [s])[0]
                for s in solutions
            ]
        induce_ms = _ms(phase)

        if self.materializer.invocations != 1:
            raise InductionException(
                f"materializer ran {self.materializer.invocations} times in one run"
            )

        timings = PhaseTimings(
            parse=parse_ms,
            enrich=enrich_ms,
            materialize=materialize_ms,
            induce=induce_ms,
            total=parse_ms + _ms(started),
        )
        report = ResultReport(
            kb_hash=kb_hash(kb),
            solutions=[
                SolutionRow(
                    rank=rank,
                    alpha2=s.alpha2,
                    length=s.length,
                    expression=s.text,
                    alpha3=s.alpha3,
                )
                for rank, s in enumerate(solutions, start=1)
            ],
            timings=timings,
            materializer_invocations=self.materializer.invocations,
            alpha3_top=alpha3_summary(solutions) if cfg.wants_alpha3 else None,
        )
        if solutions:
            logger.info(
                "best solution %s (α2=%s, length %d)",
                solutions[0].text,
                float(solutions[0].alpha2),
                solutions[0].length,
            )
        return InductionResult(report, tuple(solutions), enriched, m)


def run_induction(kb: KnowledgeBase, examples: ExampleSet, cfg: JobConfig) -> ResultReport:
    return InductionService().run(kb, examples, cfg).report
