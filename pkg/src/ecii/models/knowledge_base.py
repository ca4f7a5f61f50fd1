from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Union

from ..core.exceptions import (
    DuplicateDeclarationException,
    UndeclaredEntityException,
    UnsupportedAxiomException,
)
from .concepts import (
    TOP,
    TOP_NAME,
    Atomic,
    AtomicConcept,
    ConceptExpression,
    Conj,
    Exists,
    Role,
    atoms_of,
    roles_of,
)


@dataclass(frozen=True, slots=True)
class TypeAssertion:
    individual: str
    concept: AtomicConcept

    def __str__(self) -> str:
        return f"{self.concept.name}({self.individual})"


@dataclass(frozen=True, slots=True)
class RelAssertion:
    subject: str
    role: Role
    object: str

    def __str__(self) -> str:
        return f"{self.role.name}({self.subject},{self.object})"


Statement = Union[TypeAssertion, RelAssertion]


@dataclass(frozen=True, slots=True)
class Subconcept:
    sub: AtomicConcept
    sup: AtomicConcept


@dataclass(frozen=True, slots=True)
class Equivalence:
    concept: AtomicConcept
    definition: ConceptExpression


Axiom = Union[Subconcept, Equivalence]


def is_definition_grammar(expr: ConceptExpression) -> bool:
    """True for expressions built from atomics with ⊓ and ∃ only."""
    if isinstance(expr, Atomic):
        return True
    if isinstance(expr, Exists):
        return is_definition_grammar(expr.filler)
    if isinstance(expr, Conj):
        return all(is_definition_grammar(c) for c in expr.children)
    return False


@dataclass(frozen=True)
class KnowledgeBase:
    """
    Declarations, TBox and ABox of one ontology.

    Construction validates every reference and the supported axiom fragment;
    the top concept is always present. Use ``KnowledgeBase.build`` to inject it.
    """

    concepts: frozenset[AtomicConcept]
    roles: frozenset[Role]
    individuals: frozenset[str]
    axioms: frozenset[Axiom] = frozenset()
    type_assertions: frozenset[TypeAssertion] = frozenset()
    rel_assertions: frozenset[RelAssertion] = frozenset()

    _concept_index: dict[str, AtomicConcept] = field(
        init=False, compare=False, repr=False
    )
    _role_index: dict[str, Role] = field(init=False, compare=False, repr=False)
    _outgoing: dict[str, tuple[RelAssertion, ...]] = field(
        init=False, compare=False, repr=False
    )
    _asserted: dict[str, frozenset[AtomicConcept]] = field(
        init=False, compare=False, repr=False
    )

    def __post_init__(self) -> None:
        concept_index = {c.name: c for c in self.concepts}
        role_index = {r.name: r for r in self.roles}
        if TOP_NAME not in concept_index or not concept_index[TOP_NAME].is_top:
            raise UnsupportedAxiomException("knowledge base lacks the top concept")
        for name in role_index:
            if name in concept_index:
                raise DuplicateDeclarationException(name)
        object.__setattr__(self, "_concept_index", concept_index)
        object.__setattr__(self, "_role_index", role_index)
        self._validate()

        outgoing: dict[str, list[RelAssertion]] = defaultdict(list)
        for rel in self.rel_assertions:
            outgoing[rel.subject].append(rel)
        asserted: dict[str, set[AtomicConcept]] = defaultdict(set)
        for ta in self.type_assertions:
            asserted[ta.individual].add(ta.concept)
        object.__setattr__(
            self,
            "_outgoing",
            {
                a: tuple(sorted(rels, key=lambda r: (r.role.name, r.object)))
                for a, rels in outgoing.items()
            },
        )
        object.__setattr__(
            self, "_asserted", {a: frozenset(cs) for a, cs in asserted.items()}
        )

    @classmethod
    def build(
        cls,
        concepts: Iterable[AtomicConcept] = (),
        roles: Iterable[Role] = (),
        individuals: Iterable[str] = (),
        axioms: Iterable[Axiom] = (),
        type_assertions: Iterable[TypeAssertion] = (),
        rel_assertions: Iterable[RelAssertion] = (),
    ) -> "KnowledgeBase":
        declared = {c for c in concepts if not c.is_top}
        for c in declared:
            if c.name == TOP_NAME:
                raise DuplicateDeclarationException(TOP_NAME)
        return cls(
            concepts=frozenset(declared | {TOP}),
            roles=frozenset(roles),
            individuals=frozenset(individuals),
            axioms=frozenset(axioms),
            type_assertions=frozenset(type_assertions),
            rel_assertions=frozenset(rel_assertions),
        )

    def _validate(self) -> None:
        for axiom in self.axioms:
            if isinstance(axiom, Subconcept):
                self._check_concept(axiom.sub)
                self._check_concept(axiom.sup)
                continue
            self._check_concept(axiom.concept)
            if axiom.concept.is_top:
                raise UnsupportedAxiomException("the top concept cannot be defined")
            if not is_definition_grammar(axiom.definition):
                raise UnsupportedAxiomException(
                    f"definition of '{axiom.concept}' uses constructors other than "
                    "conjunction and existential restriction"
                )
            for c in atoms_of(axiom.definition):
                self._check_concept(c)
            for r in roles_of(axiom.definition):
                self.role(r.name)
        for ta in self.type_assertions:
            self._check_individual(ta.individual)
            self._check_concept(ta.concept)
        for rel in self.rel_assertions:
            self._check_individual(rel.subject)
            self.role(rel.role.name)
            self._check_individual(rel.object)

    def _check_concept(self, concept: AtomicConcept) -> None:
        self.concept(concept.name)

    def _check_individual(self, name: str) -> None:
        if name not in self.individuals:
            raise UndeclaredEntityException("individual", name)

    def concept(self, name: str) -> AtomicConcept:
        try:
            return self._concept_index[name]
        except KeyError:
            raise UndeclaredEntityException("concept", name) from None

    def role(self, name: str) -> Role:
        try:
            return self._role_index[name]
        except KeyError:
            raise UndeclaredEntityException("role", name) from None

    def has_concept(self, name: str) -> bool:
        return name in self._concept_index

    def has_role(self, name: str) -> bool:
        return name in self._role_index

    @property
    def named_concepts(self) -> tuple[AtomicConcept, ...]:
        """Declared concepts without ⊤ and without enrichment names, sorted."""
        return tuple(
            sorted(
                (c for c in self.concepts if not c.is_top and not c.is_fresh),
                key=lambda c: c.name,
            )
        )

    @property
    def sorted_concepts(self) -> tuple[AtomicConcept, ...]:
        return tuple(sorted(self.concepts, key=lambda c: c.name))

    @property
    def sorted_roles(self) -> tuple[Role, ...]:
        return tuple(sorted(self.roles, key=lambda r: r.name))

    @property
    def subsumptions(self) -> tuple[Subconcept, ...]:
        return tuple(a for a in self.axioms if isinstance(a, Subconcept))

    @property
    def equivalences(self) -> tuple[Equivalence, ...]:
        return tuple(
            sorted(
                (a for a in self.axioms if isinstance(a, Equivalence)),
                key=lambda a: a.concept.name,
            )
        )

    @property
    def fresh_definitions(self) -> dict[AtomicConcept, ConceptExpression]:
        return {
            a.concept: a.definition for a in self.equivalences if a.concept.is_fresh
        }

    def outgoing(self, individual: str) -> tuple[RelAssertion, ...]:
        return self._outgoing.get(individual, ())

    def asserted_types(self, individual: str) -> frozenset[AtomicConcept]:
        return self._asserted.get(individual, frozenset())

    def extended(
        self, concepts: Iterable[AtomicConcept], axioms: Iterable[Axiom]
    ) -> "KnowledgeBase":
        """A new knowledge base with extra declarations and axioms."""
        return KnowledgeBase(
            concepts=self.concepts | frozenset(concepts),
            roles=self.roles,
            individuals=self.individuals,
            axioms=self.axioms | frozenset(axioms),
            type_assertions=self.type_assertions,
            rel_assertions=self.rel_assertions,
        )

    def with_assertions(
        self,
        type_assertions: Iterable[TypeAssertion] = (),
        rel_assertions: Iterable[RelAssertion] = (),
    ) -> "KnowledgeBase":
        return KnowledgeBase(
            concepts=self.concepts,
            roles=self.roles,
            individuals=self.individuals,
            axioms=self.axioms,
            type_assertions=self.type_assertions | frozenset(type_assertions),
            rel_assertions=self.rel_assertions | frozenset(rel_assertions),
        )
