"""
The three tiers of candidate forms assembled by the search:

    Horn clause       B ⊓ ¬(D1 ⊔ … ⊔ Dk)
    candidate class   H1 ⊔ … ⊔ Hm
    solution          A ⊓ ∃R1.C1 ⊓ … ⊓ ∃Rl.Cl     (or a top-level ⊔ of Horn clauses)
"""

from dataclasses import dataclass, field
from typing import Mapping

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
    expand_definitions,
)


@dataclass(frozen=True, slots=True)
class NegatedDisjunct:
    negated: frozenset[AtomicConcept] = frozenset()

    def __post_init__(self) -> None:
        if any(c.is_top for c in self.negated):
            raise ValueError("the top concept cannot be negated in a Horn clause")

    def __len__(self) -> int:
        return len(self.negated)


@dataclass(frozen=True, slots=True)
class HornClause:
    head: AtomicConcept
    neg: NegatedDisjunct = field(default_factory=NegatedDisjunct)

    def __post_init__(self) -> None:
        if self.head in self.neg.negated:
            raise ValueError(f"head '{self.head}' occurs in its own negated disjunct")

    @property
    def length(self) -> int:
        return 1 + len(self.neg)

    def to_expression(self) -> ConceptExpression:
        head: ConceptExpression = Atomic(self.head)
        if not self.neg.negated:
            return head
        negated = tuple(Atomic(c) for c in self.neg.negated)
        inner = negated[0] if len(negated) == 1 else Disj(negated)
        return canonicalize(Conj((head, Neg(inner))))


def horn(head: AtomicConcept, *negated: AtomicConcept) -> HornClause:
    return HornClause(head, NegatedDisjunct(frozenset(negated)))


@dataclass(frozen=True, slots=True)
class CandidateClass:
    clauses: frozenset[HornClause]

    def __post_init__(self) -> None:
        if not self.clauses:
            raise ValueError("a candidate class needs at least one Horn clause")

    @classmethod
    def of(cls, *clauses: HornClause) -> "CandidateClass":
        return cls(frozenset(clauses))

    def to_expression(self) -> ConceptExpression:
        return canonicalize(Disj(tuple(h.to_expression() for h in self.clauses)))


@dataclass(frozen=True, slots=True)
class SolutionCandidate:
    """
    A ⊓ ⊓ᵢ ∃Rᵢ.Cᵢ, restrictions kept sorted by role name.

    ``disjunction`` is only used when the examples carry no role assertions;
    the candidate is then the bare candidate class (top is ⊤, no restrictions).
    """

    top: AtomicConcept = TOP
    restrictions: tuple[tuple[Role, CandidateClass], ...] = ()
    disjunction: CandidateClass | None = None

    def __post_init__(self) -> None:
        ordered = tuple(sorted(self.restrictions, key=lambda rc: rc[0].name))
        roles = [role for role, _ in ordered]
        if len(set(roles)) != len(roles):
            raise ValueError("a solution candidate restricts each role at most once")
        if self.disjunction is not None and (self.restrictions or not self.top.is_top):
            raise ValueError("a top-level disjunction cannot carry a top or restrictions")
        object.__setattr__(self, "restrictions", ordered)

    @classmethod
    def of(
        cls,
        top: AtomicConcept = TOP,
        restrictions: Mapping[Role, CandidateClass] | None = None,
    ) -> "SolutionCandidate":
        return cls(top, tuple((restrictions or {}).items()))

    @property
    def restriction_map(self) -> dict[Role, CandidateClass]:
        return dict(self.restrictions)

    @property
    def roles(self) -> tuple[Role, ...]:
        return tuple(role for role, _ in self.restrictions)


def to_expression(
    s: SolutionCandidate,
    definitions: Mapping[AtomicConcept, ConceptExpression] | None = None,
) -> ConceptExpression:
    """
    Lower a solution candidate to the expression algebra.

    ⊤ conjuncts and empty negated disjuncts are elided; the result is canonical.
    With ``definitions`` the fresh enrichment names are expanded as well.
    """
    if s.disjunction is not None:
        expr = s.disjunction.to_expression()
    else:
        parts: list[ConceptExpression] = [Atomic(s.top)]
        parts.extend(Exists(role, cc.to_expression()) for role, cc in s.restrictions)
        expr = canonicalize(Conj(tuple(parts))) if len(parts) > 1 else parts[0]
    if definitions:
        return expand_definitions(expr, definitions)
    return expr
