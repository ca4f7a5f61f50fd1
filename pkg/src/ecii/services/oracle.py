"""
Reference semantics for checking the engine.

Expressions are evaluated in the canonical (least) model of the knowledge base:
atomic memberships are the fixpoint of the asserted types under the TBox over
every individual, ∃R.C needs a named R-successor satisfying C, and ¬C holds
wherever C is absent from that model. This is not open-world entailment: under
open-world semantics a negated class is essentially never entailed for an EL
knowledge base, and α3 would degenerate.

The implementation shares nothing with the bitset materializer on purpose so
the two can be compared.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ..core.exceptions import InductionException
from ..models.candidates import SolutionCandidate, to_expression
from ..models.concepts import (
    TOP_NAME,
    Atomic,
    AtomicConcept,
    ConceptExpression,
    Conj,
    Disj,
    Exists,
    Neg,
    expand_definitions,
)
from ..models.examples import ExampleSet
from ..models.knowledge_base import KnowledgeBase
from .extensions import compute_fill_sets, extension_solution
from .materialize import MaterializationService

logger = logging.getLogger(__name__)


class CanonicalModel:
    """Least model of a knowledge base over all of its individuals."""

    def __init__(self, kb: KnowledgeBase):
        self.kb = kb
        self.types: dict[str, set[AtomicConcept]] = {
            a: set(kb.asserted_types(a)) for a in kb.individuals
        }
        top = kb.concept(TOP_NAME)
        for types in self.types.values():
            types.add(top)
        self._saturate()

    def _saturate(self) -> None:
        changed = True
        while changed:
            changed = False
            for a, types in self.types.items():
                for axiom in self.kb.subsumptions:
                    if axiom.sub in types and axiom.sup not in types:
                        types.add(axiom.sup)
                        changed = True
                for eq in self.kb.equivalences:
                    if eq.concept not in types and self._satisfies(eq.definition, a):
                        types.add(eq.concept)
                        changed = True
                    if eq.concept in types:
                        parts = (
                            eq.definition.children
                            if isinstance(eq.definition, Conj)
                            else (eq.definition,)
                        )
                        for part in parts:
                            if isinstance(part, Atomic) and part.concept not in types:
                                types.add(part.concept)
                                changed = True

    def _satisfies(self, expr: ConceptExpression, a: str) -> bool:
        if isinstance(expr, Atomic):
            return expr.concept in self.types[a]
        if isinstance(expr, Conj):
            return all(self._satisfies(c, a) for c in expr.children)
        if isinstance(expr, Disj):
            return any(self._satisfies(c, a) for c in expr.children)
        if isinstance(expr, Neg):
            return not self._satisfies(expr.child, a)
        if isinstance(expr, Exists):
            return any(
                self._satisfies(expr.filler, rel.object)
                for rel in self.kb.outgoing(a)
                if rel.role == expr.role
            )
        raise InductionException(f"unsupported construct: {expr!r}")

    def holds(self, expr: ConceptExpression, a: str) -> bool:
        if a not in self.types:
            raise InductionException(f"unknown individual '{a}'")
        return self._satisfies(expr, a)


@lru_cache(maxsize=8)
def canonical_model(kb: KnowledgeBase) -> CanonicalModel:
    return CanonicalModel(kb)


def entails_instance(kb: KnowledgeBase, expr: ConceptExpression, a: str) -> bool:
    """Whether ``a`` belongs to ``expr`` in the canonical model of ``kb``."""
    expanded = expand_definitions(expr, kb.fresh_definitions)
    return canonical_model(kb).holds(expanded, a)


def alpha3(expr: ConceptExpression, examples: ExampleSet, kb: KnowledgeBase) -> Fraction:
    """(|P_S| + |N_S|) / |P ∪ N| under the canonical model."""
    model = canonical_model(kb)
    expanded = expand_definitions(expr, kb.fresh_definitions)
    positive = sum(1 for a in examples.positive_individuals if model.holds(expanded, a))
    negative = sum(
        1 for b in examples.negative_individuals if not model.holds(expanded, b)
    )
    return Fraction(positive + negative, len(examples.individuals))


@dataclass(frozen=True)
class TheoremVerdict:
    approximate: bool
    solution: bool
    counterexample: str | None = None

    @property
    def agree(self) -> bool:
        return self.approximate == self.solution


def check_theorem(
    kb: KnowledgeBase, candidate: SolutionCandidate, examples: ExampleSet
) -> TheoremVerdict:
    """
    Compare the extension-based check (P ⊆ ↓S, N ∩ ↓S = ∅) with the
    oracle's solution check for one candidate.
    """
    m = MaterializationService().materialize(kb, examples.individuals)
    fills = compute_fill_sets(examples)
    covered = extension_solution(candidate, m, fills)
    approximate = examples.positive_individuals <= covered and not (
        examples.negative_individuals & covered
    )

    model = canonical_model(kb)
    expr = expand_definitions(to_expression(candidate), kb.fresh_definitions)
    entailed = {a for a in examples.individuals if model.holds(expr, a)}
    solution = examples.positive_individuals <= entailed and not (
        examples.negative_individuals & entailed
    )

    counterexample = None
    if approximate != solution:
        differing = sorted((covered ^ entailed) & examples.individuals)
        counterexample = differing[0] if differing else None
        logger.warning(
            "extension check and oracle disagree on %s (individual %s)",
            expr.key,
            counterexample,
        )
    return TheoremVerdict(approximate, solution, counterexample)
