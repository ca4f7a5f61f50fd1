from fractions import Fraction

from ..core.exceptions import InductionException
from ..models.candidates import HornClause, SolutionCandidate
from ..models.concepts import AtomicConcept, Role
from ..models.examples import ExampleSet
from ..models.materialization import Materialization
from ..utils.bitset import popcount
from .extensions import FillSets, extension_horn_mask, extension_solution_mask


def accuracy(covered: int, positive: int, negative: int, universe: int) -> Fraction:
    """(|positive ∩ covered| + |negative \\ covered|) / |universe| over bit masks."""
    total = popcount(universe)
    if total == 0:
        raise InductionException("accuracy over an empty set of individuals")
    hits = popcount(positive & covered) + popcount(negative & ~covered)
    return Fraction(hits, total)


class RoleScorer:
    """α1 over the fillers of one role, as bit masks."""

    def __init__(self, role: Role, fills: FillSets, m: Materialization):
        fillers = fills.per_role.get(role)
        if fillers is None or not fillers.all:
            raise InductionException(f"role '{role}' has no fillers in the examples")
        self.role = role
        self.positive = m.mask_of(fillers.positive)
        self.negative = m.mask_of(fillers.negative)
        self.universe = self.positive | self.negative

    def score(self, mask: int) -> Fraction:
        return accuracy(mask, self.positive, self.negative, self.universe)


class ExampleScorer:
    """α2 over the example individuals, as bit masks."""

    def __init__(self, examples: ExampleSet, m: Materialization):
        self.positive = m.mask_of(examples.positive_individuals)
        self.negative = m.mask_of(examples.negative_individuals)
        self.universe = self.positive | self.negative

    def score(self, mask: int) -> Fraction:
        return accuracy(mask, self.positive, self.negative, self.universe)

    def separates(self, mask: int) -> bool:
        return self.positive & ~mask == 0 and self.negative & mask == 0


def alpha1(h: HornClause, role: Role, fills: FillSets, m: Materialization) -> Fraction:
    return RoleScorer(role, fills, m).score(extension_horn_mask(h, m))


def alpha2(
    s: SolutionCandidate, examples: ExampleSet, m: Materialization, fills: FillSets
) -> Fraction:
    return ExampleScorer(examples, m).score(extension_solution_mask(s, m, fills))


def is_approximate_solution(
    s: SolutionCandidate, examples: ExampleSet, m: Materialization, fills: FillSets
) -> bool:
    """P ⊆ ↓S and N ∩ ↓S = ∅."""
    return ExampleScorer(examples, m).separates(extension_solution_mask(s, m, fills))


def common_types(examples: ExampleSet, m: Materialization) -> frozenset[AtomicConcept]:
    """Types shared by at least one positive and at least one negative example."""
    positive: set[AtomicConcept] = set()
    for a in examples.positive_individuals:
        positive |= m.types(a)
    negative: set[AtomicConcept] = set()
    for b in examples.negative_individuals:
        negative |= m.types(b)
    return frozenset(positive & negative)
