"""
Fill sets and the extensions of Horn clauses, candidate classes and solution
candidates, computed from the materialization without further reasoning.

Each public function has a ``*_mask`` twin working on bit masks over the
materialization's individual index; the search uses those.
"""

from dataclasses import dataclass, field
from typing import Mapping

from ..core.exceptions import InductionException
from ..models.candidates import CandidateClass, HornClause, SolutionCandidate
from ..models.concepts import Role
from ..models.examples import ExampleSet
from ..models.materialization import Materialization
from ..utils.bitset import iter_bits


@dataclass(frozen=True)
class RoleFillers:
    """R̄⁺, R̄⁻ and R̄ for one role."""

    positive: frozenset[str]
    negative: frozenset[str]

    @property
    def all(self) -> frozenset[str]:
        return self.positive | self.negative


@dataclass(frozen=True)
class FillSets:
    per_example: Mapping[tuple[str, Role], frozenset[str]]
    per_role: Mapping[Role, RoleFillers]
    roles: tuple[Role, ...]
    _owners: dict[Role, dict[str, frozenset[str]]] = field(
        init=False, compare=False, repr=False
    )

    def __post_init__(self) -> None:
        owners: dict[Role, dict[str, set[str]]] = {}
        for (a, role), fillers in self.per_example.items():
            by_filler = owners.setdefault(role, {})
            for b in fillers:
                by_filler.setdefault(b, set()).add(a)
        object.__setattr__(
            self,
            "_owners",
            {
                role: {b: frozenset(a) for b, a in by_filler.items()}
                for role, by_filler in owners.items()
            },
        )

    def fillers(self, individual: str, role: Role) -> frozenset[str]:
        return self.per_example.get((individual, role), frozenset())

    def owners(self, role: Role, filler: str) -> frozenset[str]:
        """Example individuals that have ``filler`` as an R-filler."""
        return self._owners.get(role, {}).get(filler, frozenset())


def compute_fill_sets(examples: ExampleSet) -> FillSets:
    per_example: dict[tuple[str, Role], frozenset[str]] = {}
    positive: dict[Role, set[str]] = {}
    negative: dict[Role, set[str]] = {}
    for side, pooled in ((examples.positives, positive), (examples.negatives, negative)):
        for ex in side:
            for role, fillers in ex.fillers().items():
                if not fillers:
                    continue
                per_example[(ex.individual, role)] = fillers
                pooled.setdefault(role, set()).update(fillers)
    roles = tuple(sorted(set(positive) | set(negative), key=lambda r: r.name))
    per_role = {
        role: RoleFillers(
            frozenset(positive.get(role, ())), frozenset(negative.get(role, ()))
        )
        for role in roles
    }
    return FillSets(per_example, per_role, roles)


def inverse_fillers(
    role: Role, individuals: frozenset[str], fills: FillSets
) -> frozenset[str]:
    """R⁻(X): the example individuals with at least one R-filler in X."""
    out: set[str] = set()
    for b in individuals:
        out |= fills.owners(role, b)
    return frozenset(out)


def inverse_fillers_mask(
    role: Role, mask: int, fills: FillSets, m: Materialization
) -> int:
    out = 0
    items = m.individuals.items
    for i in iter_bits(mask):
        owners = fills.owners(role, items[i])
        if owners:
            out |= m.mask_of(owners)
    return out


def extension_horn_mask(h: HornClause, m: Materialization) -> int:
    mask = m.mask(h.head)
    for d in h.neg.negated:
        mask &= ~m.mask(d)
    return mask


def extension_horn(h: HornClause, m: Materialization) -> frozenset[str]:
    """↓head minus the union of ↓D over the negated disjunct."""
    return m.members(extension_horn_mask(h, m))


def extension_candidate_class_mask(c: CandidateClass, m: Materialization) -> int:
    mask = 0
    for h in c.clauses:
        mask |= extension_horn_mask(h, m)
    return mask


def extension_candidate_class(c: CandidateClass, m: Materialization) -> frozenset[str]:
    return m.members(extension_candidate_class_mask(c, m))


def extension_solution_mask(
    s: SolutionCandidate, m: Materialization, fills: FillSets
) -> int:
    if s.disjunction is not None:
        return extension_candidate_class_mask(s.disjunction, m)
    mask = m.mask(s.top)
    for role, cc in s.restrictions:
        if role not in fills.per_role:
            raise InductionException(f"role '{role}' does not occur in the examples")
        mask &= inverse_fillers_mask(
            role, extension_candidate_class_mask(cc, m), fills, m
        )
    return mask


def extension_solution(
    s: SolutionCandidate, m: Materialization, fills: FillSets
) -> frozenset[str]:
    """↓A ∩ ⋂ᵢ Rᵢ⁻(↓Cᵢ)."""
    return m.members(extension_solution_mask(s, m, fills))
