import logging

from ..core.exceptions import ConfigException, StaleArtifactException
from ..formats.expression import parse_solution
from ..formats.kb import kb_hash
from ..models.examples import ExampleSet
from ..models.knowledge_base import KnowledgeBase
from ..models.report import ResultReport, VerificationRow
from .oracle import alpha3

logger = logging.getLogger(__name__)


def verify_report(
    kb: KnowledgeBase, examples: ExampleSet, report: ResultReport
) -> list[VerificationRow]:
    """
    Re-score every reported solution with the oracle.

    Disagreements between α2 and α3 are returned (and logged), not raised.

    Raises:
        StaleArtifactException: the report was produced from another KB
        ConfigException: the report holds no solutions
    """
    if report.kb_hash != kb_hash(kb):
        raise StaleArtifactException(
            "results were produced from a different knowledge base"
        )
    if not report.solutions:
        raise ConfigException("results file contains no solutions")

    rows = []
    for solution in report.solutions:
        expr = parse_solution(solution.expression, kb)
        value = alpha3(expr, examples, kb)
        agree = (solution.alpha2 == 1) == (value == 1)
        if not agree:
            logger.warning(
                "rank %d disagrees: α2=%s, α3=%s for %s",
                solution.rank,
                float(solution.alpha2),
                float(value),
                solution.expression,
            )
        rows.append(
            VerificationRow(
                candidate=solution.expression,
                alpha2=solution.alpha2,
                alpha3=value,
                agree=agree,
            )
        )
    return rows
