"""
Enrichment: enumerate bounded expressions C ::= B | C ⊓ C | ∃R.C and add one
fresh equivalence per expression.

For canonical expressions of this grammar the number of ⊓ symbols is always
the number of atoms minus one, so the enumeration proceeds level by level on
expression length (1 … n1 + 1) with the ∃ count bounded by n2.
"""

import logging
from functools import lru_cache
from typing import Iterator, Sequence

from ..models.concepts import (
    FRESH_PREFIX,
    Atomic,
    AtomicConcept,
    ConceptExpression,
    Conj,
    Exists,
    Role,
    order_key,
)
from ..models.knowledge_base import Equivalence, KnowledgeBase

logger = logging.getLogger(__name__)


class _Grammar:
    """Canonical expressions of exact (length, ∃ count), memoized."""

    def __init__(self, atoms: Sequence[AtomicConcept], roles: Sequence[Role]):
        self.atoms = tuple(Atomic(a) for a in atoms)
        self.roles = tuple(roles)
        self.exprs = lru_cache(maxsize=None)(self._exprs)
        self.units = lru_cache(maxsize=None)(self._units)

    def _units(self, length: int, exists: int) -> tuple[ConceptExpression, ...]:
        """Atomics and existential restrictions (anything but a conjunction)."""
        if length == 1 and exists == 0:
            return self.atoms
        if exists == 0:
            return ()
        return tuple(
            Exists(role, filler)
            for role in self.roles
            for filler in self.exprs(length, exists - 1)
        )

    def _exprs(self, length: int, exists: int) -> tuple[ConceptExpression, ...]:
        out = list(self.units(length, exists))
        if length >= 2:
            out.extend(self._conjunctions(length, exists))
        return tuple(sorted(out, key=order_key))

    def _conjunctions(self, length: int, exists: int) -> Iterator[ConceptExpression]:
        pool = [
            (unit, ln, ex)
            for ln in range(1, length)
            for ex in range(exists + 1)
            for unit in self.units(ln, ex)
        ]
        pool.sort(key=lambda item: order_key(item[0]))

        def pick(start: int, left_len: int, left_ex: int, chosen: list) -> Iterator:
            if left_len == 0:
                if left_ex == 0 and len(chosen) >= 2:
                    yield Conj(tuple(chosen))
                return
            for i in range(start, len(pool)):
                unit, ln, ex = pool[i]
                if ln > left_len or ex > left_ex:
                    continue
                chosen.append(unit)
                yield from pick(i + 1, left_len - ln, left_ex - ex, chosen)
                chosen.pop()

        yield from pick(0, length, exists, [])


def enumerate_expressions(
    kb: KnowledgeBase, n1: int, n2: int, cap: int = 0
) -> list[ConceptExpression]:
    """
    All canonical expressions over the named concepts and roles with at most
    n1 conjunctions and n2 existentials, bare atomics excluded.

    Output is ordered by (length, serialized form). With ``cap`` > 0 the list
    is truncated to ``cap`` entries and a warning is logged.
    """
    grammar = _Grammar(kb.named_concepts, kb.sorted_roles)
    out: list[ConceptExpression] = []
    truncated = False
    for length in range(1, n1 + 2):
        if cap and len(out) >= cap:
            truncated = True
            break
        level = [
            expr
            for exists in range(n2 + 1)
            for expr in grammar.exprs(length, exists)
            if not isinstance(expr, Atomic)
        ]
        level.sort(key=lambda e: e.key)
        if cap and len(out) + len(level) > cap:
            level = level[: cap - len(out)]
            truncated = True
        out.extend(level)
    if truncated:
        logger.warning(
            "enrichment truncated to %d expressions (n1=%d, n2=%d)", cap, n1, n2
        )
    return out


def fresh_name(kb: KnowledgeBase, i: int) -> str:
    name = f"{FRESH_PREFIX}{i}"
    if not kb.has_concept(name) and not kb.has_role(name):
        return name
    j = 1
    while kb.has_concept(f"{name}_{j}") or kb.has_role(f"{name}_{j}"):
        j += 1
    logger.warning("fresh name %s is taken; using %s_%d", name, name, j)
    return f"{name}_{j}"


def enrich_kb(kb: KnowledgeBase, exprs: Sequence[ConceptExpression]) -> KnowledgeBase:
    """𝓞′: the KB plus one ``_ECII_i ≡ Cᵢ`` per expression, numbered from 0."""
    concepts: list[AtomicConcept] = []
    axioms: list[Equivalence] = []
    for i, expr in enumerate(exprs):
        concept = AtomicConcept(fresh_name(kb, i), is_fresh=True)
        concepts.append(concept)
        axioms.append(Equivalence(concept, expr))
    logger.debug("enriched knowledge base with %d definitions", len(axioms))
    return kb.extended(concepts, axioms)
