"""
Synthetic family knowledge bases for scaling runs.

Parents have children (never grandchildren), so every parent is a star-shaped
example. Children of the planted parents, and only those, are Artists; the
expression ``hasChild some Artist`` therefore separates positives from
negatives exactly.
"""

import random
from dataclasses import dataclass

from ..core.exceptions import ConfigException
from ..models.concepts import Atomic, AtomicConcept, Exists, Role
from ..models.knowledge_base import (
    Equivalence,
    KnowledgeBase,
    RelAssertion,
    Subconcept,
    TypeAssertion,
)

MIN_SIZE = 4
MAX_EXAMPLES_PER_SIDE = 50


@dataclass(frozen=True)
class FamilyKB:
    kb: KnowledgeBase
    positives: frozenset[str]
    negatives: frozenset[str]


def generate_family_kb(size: int, seed: int = 0) -> FamilyKB:
    """
    A family KB with ``size`` individuals, about a third of them parents.

    Raises:
        ConfigException: size below the smallest usable family
    """
    if size < MIN_SIZE:
        raise ConfigException(f"synthetic size must be at least {MIN_SIZE}, got {size}")
    rng = random.Random(seed)

    person, male, female = (AtomicConcept(n) for n in ("Person", "Male", "Female"))
    parent, artist = AtomicConcept("Parent"), AtomicConcept("Artist")
    has_child = Role("hasChild")

    parents = [f"p{i}" for i in range(max(2, size // 3))]
    children = [f"c{i}" for i in range(size - len(parents))]
    planted = set(rng.sample(parents, len(parents) // 2))

    types: list[TypeAssertion] = []
    rels: list[RelAssertion] = []
    for individual in parents + children:
        types.append(TypeAssertion(individual, rng.choice((male, female))))
    for i, child in enumerate(children):
        owner = parents[i % len(parents)]
        rels.append(RelAssertion(owner, has_child, child))
        if owner in planted:
            types.append(TypeAssertion(child, artist))

    kb = KnowledgeBase.build(
        concepts=(person, male, female, parent, artist),
        roles=(has_child,),
        individuals=parents + children,
        axioms=(
            Subconcept(male, person),
            Subconcept(female, person),
            Subconcept(artist, person),
            Equivalence(parent, Exists(has_child, Atomic(person))),
        ),
        type_assertions=types,
        rel_assertions=rels,
    )
    positives = sorted(planted)[:MAX_EXAMPLES_PER_SIDE]
    negatives = sorted(set(parents) - planted)[:MAX_EXAMPLES_PER_SIDE]
    return FamilyKB(kb, frozenset(positives), frozenset(negatives))
