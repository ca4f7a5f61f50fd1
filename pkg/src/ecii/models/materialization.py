from dataclasses import dataclass, field
from typing import Iterable, Mapping

from ..core.exceptions import UndeclaredEntityException
from ..utils.bitset import Indexer, popcount
from .concepts import AtomicConcept


@dataclass(frozen=True)
class Materialization:
    """
    Atomic-concept memberships of a set of individuals.

    Extensions are bit masks over ``individuals``; ``types`` is their transpose.
    The table is immutable once built and safe to share between threads.
    """

    individuals: Indexer[str]
    extensions: Mapping[AtomicConcept, int]
    _by_name: dict[str, AtomicConcept] = field(init=False, compare=False, repr=False)
    _types: dict[str, frozenset[AtomicConcept]] = field(
        init=False, compare=False, repr=False
    )

    def __post_init__(self) -> None:
        object.__setattr__(self, "extensions", dict(self.extensions))
        object.__setattr__(self, "_by_name", {c.name: c for c in self.extensions})
        types: dict[str, set[AtomicConcept]] = {a: set() for a in self.individuals.items}
        for concept, mask in self.extensions.items():
            for a in self.individuals.members(mask):
                types[a].add(concept)
        object.__setattr__(
            self, "_types", {a: frozenset(cs) for a, cs in types.items()}
        )

    @property
    def concepts(self) -> tuple[AtomicConcept, ...]:
        return tuple(sorted(self.extensions, key=lambda c: c.name))

    def concept(self, name: str) -> AtomicConcept:
        try:
            return self._by_name[name]
        except KeyError:
            raise UndeclaredEntityException("concept", name) from None

    def mask(self, concept: AtomicConcept) -> int:
        try:
            return self.extensions[concept]
        except KeyError:
            raise UndeclaredEntityException("concept", concept.name) from None

    def extension(self, concept: AtomicConcept) -> frozenset[str]:
        return frozenset(self.individuals.members(self.mask(concept)))

    def types(self, individual: str) -> frozenset[AtomicConcept]:
        return self._types.get(individual, frozenset())

    def mask_of(self, individuals: Iterable[str]) -> int:
        return self.individuals.mask(individuals)

    def members(self, mask: int) -> frozenset[str]:
        return frozenset(self.individuals.members(mask))

    def size(self, concept: AtomicConcept) -> int:
        return popcount(self.mask(concept))

    @property
    def memberships(self) -> list[tuple[str, str]]:
        """Every (individual, concept name) pair, sorted."""
        return sorted(
            (a, c.name) for a, concepts in self._types.items() for c in concepts
        )
