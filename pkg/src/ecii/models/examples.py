from dataclasses import dataclass, field
from typing import Iterable

from ..core.exceptions import (
    ConfigException,
    NonStarShapedException,
    UndeclaredEntityException,
)
from .concepts import Role
from .knowledge_base import KnowledgeBase, RelAssertion, Statement, TypeAssertion


@dataclass(frozen=True, slots=True)
class Example:
    individual: str
    local_abox: frozenset[Statement] = frozenset()

    def fillers(self) -> dict[Role, frozenset[str]]:
        """Role → set of fillers, read off the local ABox."""
        out: dict[Role, set[str]] = {}
        for st in self.local_abox:
            if isinstance(st, RelAssertion) and st.subject == self.individual:
                out.setdefault(st.role, set()).add(st.object)
        return {role: frozenset(objs) for role, objs in out.items()}


@dataclass(frozen=True, slots=True)
class StarShapeReport:
    individual: str
    offenders: tuple[Statement, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.offenders


def validate_star_shaped(ex: Example) -> StarShapeReport:
    """
    Check that every local statement has the form A(a), R(a,b) or B(b),
    where a is the example individual and b one of its fillers.
    """
    a = ex.individual
    fillers = {
        st.object
        for st in ex.local_abox
        if isinstance(st, RelAssertion) and st.subject == a
    }
    offenders = []
    for st in ex.local_abox:
        if isinstance(st, TypeAssertion):
            ok = st.individual == a or st.individual in fillers
        else:
            ok = st.subject == a
        if not ok:
            offenders.append(st)
    return StarShapeReport(a, tuple(sorted(offenders, key=str)))


def local_abox(kb: KnowledgeBase, individual: str) -> frozenset[Statement]:
    """
    The part of the ABox around one example: its types, its outgoing role
    assertions, the fillers' types and the fillers' own outgoing assertions
    (the latter break the star shape and are reported by validation).
    """
    statements: set[Statement] = {
        TypeAssertion(individual, c) for c in kb.asserted_types(individual)
    }
    for rel in kb.outgoing(individual):
        statements.add(rel)
        statements.update(
            TypeAssertion(rel.object, c) for c in kb.asserted_types(rel.object)
        )
        if rel.object != individual:
            statements.update(kb.outgoing(rel.object))
    return frozenset(statements)


@dataclass(frozen=True)
class ExampleSet:
    positives: tuple[Example, ...]
    negatives: tuple[Example, ...]
    pooled_abox: frozenset[Statement] = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        if not self.positives:
            raise ConfigException("empty example set: no positive examples")
        if not self.negatives:
            raise ConfigException("empty example set: no negative examples")
        shared = self.positive_individuals & self.negative_individuals
        if shared:
            raise ConfigException(
                "individuals are both positive and negative: "
                + ", ".join(sorted(shared))
            )
        pooled: set[Statement] = set()
        for ex in self.all_examples:
            pooled |= ex.local_abox
        object.__setattr__(self, "pooled_abox", frozenset(pooled))

    @property
    def all_examples(self) -> tuple[Example, ...]:
        return self.positives + self.negatives

    @property
    def positive_individuals(self) -> frozenset[str]:
        return frozenset(ex.individual for ex in self.positives)

    @property
    def negative_individuals(self) -> frozenset[str]:
        return frozenset(ex.individual for ex in self.negatives)

    @property
    def individuals(self) -> frozenset[str]:
        return self.positive_individuals | self.negative_individuals


def build_example_set(
    kb: KnowledgeBase, positives: Iterable[str], negatives: Iterable[str]
) -> ExampleSet:
    """Derive star-shaped examples for the named individuals from the KB's ABox."""

    def examples(names: Iterable[str]) -> tuple[Example, ...]:
        out = []
        for name in sorted(set(names)):
            if name not in kb.individuals:
                raise UndeclaredEntityException("individual", name)
            ex = Example(name, local_abox(kb, name))
            report = validate_star_shaped(ex)
            if not report.valid:
                raise NonStarShapedException(name, report.offenders)
            out.append(ex)
        return tuple(out)

    return ExampleSet(examples(positives), examples(negatives))
