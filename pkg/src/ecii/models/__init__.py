from .candidates import (
    CandidateClass,
    HornClause,
    NegatedDisjunct,
    SolutionCandidate,
    horn,
    to_expression,
)
from .concepts import (
    TOP,
    Atomic,
    AtomicConcept,
    ConceptExpression,
    Conj,
    Disj,
    Exists,
    Neg,
    Role,
    canonicalize,
    expr_length,
)
from .config import JobConfig
from .examples import Example, ExampleSet, build_example_set, validate_star_shaped
from .knowledge_base import (
    Equivalence,
    KnowledgeBase,
    RelAssertion,
    Subconcept,
    TypeAssertion,
)
from .materialization import Materialization
from .report import ResultReport, SolutionRow

__all__ = [
    "Atomic",
    "AtomicConcept",
    "CandidateClass",
    "ConceptExpression",
    "Conj",
    "Disj",
    "Equivalence",
    "Example",
    "ExampleSet",
    "Exists",
    "HornClause",
    "JobConfig",
    "KnowledgeBase",
    "Materialization",
    "Neg",
    "NegatedDisjunct",
    "RelAssertion",
    "ResultReport",
    "Role",
    "SolutionCandidate",
    "SolutionRow",
    "Subconcept",
    "TOP",
    "TypeAssertion",
    "build_example_set",
    "canonicalize",
    "expr_length",
    "horn",
    "to_expression",
    "validate_star_shaped",
]
