import logging
from collections import defaultdict
from dataclasses import dataclass
from threading import Lock
from typing import Iterable

from ..core.exceptions import UndeclaredEntityException
from ..formats.materialization import MaterializationDump
from ..models.concepts import (
    Atomic,
    AtomicConcept,
    ConceptExpression,
    Conj,
    Exists,
    Role,
    atoms_of,
)
from ..models.knowledge_base import KnowledgeBase
from ..models.materialization import Materialization
from ..utils.bitset import Indexer, iter_bits

logger = logging.getLogger(__name__)


def relevant_closure(kb: KnowledgeBase, seeds: Iterable[str]) -> frozenset[str]:
    """
    The seed individuals plus everything reachable from them along role
    assertions. An empty seed set stands for all individuals.
    """
    seeds = set(seeds)
    if not seeds:
        return kb.individuals
    reached = set(seeds)
    frontier = list(seeds)
    while frontier:
        a = frontier.pop()
        for rel in kb.outgoing(a):
            if rel.object not in reached:
                reached.add(rel.object)
                frontier.append(rel.object)
    return frozenset(reached)


@dataclass(frozen=True, slots=True)
class _Rule:
    """``target`` gains the individuals satisfying ``source``."""

    target: AtomicConcept
    source: ConceptExpression


def _rules(kb: KnowledgeBase) -> list[_Rule]:
    rules = [_Rule(a.sup, Atomic(a.sub)) for a in kb.subsumptions]
    for eq in kb.equivalences:
        rules.append(_Rule(eq.concept, eq.definition))
        conjuncts = (
            eq.definition.children
            if isinstance(eq.definition, Conj)
            else (eq.definition,)
        )
        # A ≡ B ⊓ C entails A ⊑ B; existential conjuncts need anonymous
        # individuals and are not materialized
        for part in conjuncts:
            if isinstance(part, Atomic):
                rules.append(_Rule(part.concept, Atomic(eq.concept)))
    return rules


class _Fixpoint:
    def __init__(self, kb: KnowledgeBase, individuals: Indexer[str]):
        self.individuals = individuals
        self.ext: dict[AtomicConcept, int] = {c: 0 for c in kb.concepts}
        self.predecessors: dict[Role, dict[int, int]] = defaultdict(
            lambda: defaultdict(int)
        )
        for rel in kb.rel_assertions:
            if rel.subject in individuals and rel.object in individuals:
                b = individuals.index(rel.object)
                self.predecessors[rel.role][b] |= 1 << individuals.index(rel.subject)
        self._preimages: dict[tuple[Role, int], int] = {}

    def preimage(self, role: Role, mask: int) -> int:
        key = (role, mask)
        cached = self._preimages.get(key)
        if cached is not None:
            return cached
        by_object = self.predecessors.get(role, {})
        out = 0
        for b in iter_bits(mask):
            out |= by_object.get(b, 0)
        self._preimages[key] = out
        return out

    def evaluate(self, expr: ConceptExpression) -> int:
        if isinstance(expr, Atomic):
            return self.ext[expr.concept]
        if isinstance(expr, Conj):
            mask = self.individuals.full
            for child in expr.children:
                mask &= self.evaluate(child)
                if not mask:
                    break
            return mask
        if isinstance(expr, Exists):
            filler = self.evaluate(expr.filler)
            return self.preimage(expr.role, filler) if filler else 0
        raise TypeError(f"unsupported constructor in definition: {expr.key}")

    def run(self, rules: list[_Rule]) -> int:
        """Apply the rules until nothing changes; returns the number of rounds."""
        watchers: dict[AtomicConcept, list[_Rule]] = defaultdict(list)
        for rule in rules:
            for concept in atoms_of(rule.source):
                watchers[concept].append(rule)

        pending = list(rules)
        queued = set(range(len(pending)))
        order = {id(rule): i for i, rule in enumerate(rules)}
        rounds = 0
        while pending:
            rounds += 1
            batch, pending = pending, []
            queued.clear()
            for rule in batch:
                gained = self.evaluate(rule.source) & ~self.ext[rule.target]
                if not gained:
                    continue
                self.ext[rule.target] |= gained
                for follower in watchers.get(rule.target, ()):
                    i = order[id(follower)]
                    if i not in queued:
                        queued.add(i)
                        pending.append(follower)
        return rounds


class MaterializationService:
    """Builds or loads the one membership table an induction run works on."""

    def __init__(self) -> None:
        self.invocations = 0
        self._lock = Lock()

    def _count(self) -> None:
        with self._lock:
            self.invocations += 1

    def materialize(
        self, kb: KnowledgeBase, relevant: Iterable[str] = ()
    ) -> Materialization:
        """
        Least fixpoint of: asserted types hold; A ⊑ B propagates; A ≡ C holds
        wherever C evaluates to true over the role assertions.

        Args:
            kb: The (enriched) knowledge base
            relevant: Example individuals; the table covers them and everything
                reachable from them. Empty means every individual.
        """
        self._count()
        scope = relevant_closure(kb, relevant)
        for name in scope:
            if name not in kb.individuals:
                raise UndeclaredEntityException("individual", name)
        individuals = Indexer(sorted(scope))
        fixpoint = _Fixpoint(kb, individuals)
        for concept in kb.concepts:
            if concept.is_top:
                fixpoint.ext[concept] = individuals.full
        for ta in kb.type_assertions:
            if ta.individual in individuals:
                fixpoint.ext[ta.concept] |= 1 << individuals.index(ta.individual)

        rounds = fixpoint.run(_rules(kb))
        logger.debug(
            "materialized %d individuals over %d concepts in %d rounds",
            len(individuals),
            len(fixpoint.ext),
            rounds,
        )
        return Materialization(individuals, fixpoint.ext)

    def load(self, dump: MaterializationDump, kb: KnowledgeBase) -> Materialization:
        """
        Take a precomputed table verbatim. Every individual is put into the top
        concept; a table that misses asserted types or is not closed under the
        subsumptions is accepted with a warning.

        Raises:
            UndeclaredEntityException: the table names an unknown individual or concept
        """
        self._count()
        individuals = Indexer(sorted(kb.individuals))
        ext: dict[AtomicConcept, int] = {c: 0 for c in kb.concepts}
        for individual, concept_name, line in dump.memberships:
            if individual not in individuals:
                raise UndeclaredEntityException("individual", individual, line)
            if not kb.has_concept(concept_name):
                raise UndeclaredEntityException("concept", concept_name, line)
            ext[kb.concept(concept_name)] |= 1 << individuals.index(individual)
        for concept in kb.concepts:
            if concept.is_top:
                ext[concept] = individuals.full

        missing = sum(
            1
            for ta in kb.type_assertions
            if not ext[ta.concept] >> individuals.index(ta.individual) & 1
        )
        if missing:
            logger.warning(
                "loaded materialization lacks %d asserted type(s)", missing
            )
        unclosed = [
            f"{a.sub} ⊑ {a.sup}"
            for a in kb.subsumptions
            if ext[a.sub] & ~ext[a.sup]
        ]
        if unclosed:
            logger.warning(
                "loaded materialization is not closed under %s", ", ".join(sorted(unclosed))
            )
        return Materialization(individuals, ext)


def extension_atomic(m: Materialization, concept: AtomicConcept) -> frozenset[str]:
    """↓B read off the table."""
    return m.extension(concept)
