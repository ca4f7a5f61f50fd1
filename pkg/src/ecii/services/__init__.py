from .bench import run_bench
from .induction import InductionResult, InductionService, run_induction
from .materialize import MaterializationService
from .verification import verify_report

__all__ = [
    "InductionResult",
    "InductionService",
    "MaterializationService",
    "run_bench",
    "run_induction",
    "verify_report",
]
