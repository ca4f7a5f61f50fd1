import pytest

from src.ecii.core.exceptions import InductionException
from src.ecii.formats.kb import parse_kb
from src.ecii.models.candidates import CandidateClass, SolutionCandidate, horn
from src.ecii.models.concepts import TOP, Role
from src.ecii.models.examples import build_example_set
from src.ecii.models.knowledge_base import RelAssertion
from src.ecii.services.extensions import (
    compute_fill_sets,
    extension_candidate_class,
    extension_horn,
    extension_solution,
    inverse_fillers,
)

EVERYONE = {"alice", "bob", "carol", "dave"}


class TestFillSets:
    """R(a), R̄⁺, R̄⁻ and R̄."""

    def test_fam_fillers(self, fam_kb, fam_fills):
        """Test hasChild: R̄⁺ = {carol}, R̄⁻ = {dave}."""
        fillers = fam_fills.per_role[fam_kb.role("hasChild")]
        assert fillers.positive == {"carol"}
        assert fillers.negative == {"dave"}
        assert fillers.all == {"carol", "dave"}
        assert fam_fills.fillers("alice", fam_kb.role("hasChild")) == {"carol"}

    def test_no_role_assertions(self):
        """Test that examples without edges give no roles."""
        kb = parse_kb("concept A\nind x\nind y\ntype x A\n")
        fills = compute_fill_sets(build_example_set(kb, {"x"}, {"y"}))
        assert fills.roles == ()

    def test_shared_filler(self, fam_kb):
        """Test that a filler of both sides is in R̄⁺ and R̄⁻."""
        has_child = fam_kb.role("hasChild")
        kb = fam_kb.with_assertions(rel_assertions=[RelAssertion("bob", has_child, "carol")])
        fills = compute_fill_sets(build_example_set(kb, {"alice"}, {"bob"}))
        fillers = fills.per_role[has_child]
        assert "carol" in fillers.positive & fillers.negative


class TestInverseFillers:
    """R⁻(X)."""

    def test_single_filler(self, fam_kb, fam_fills):
        """Test hasChild⁻({carol}) = {alice}."""
        assert inverse_fillers(fam_kb.role("hasChild"), frozenset({"carol"}), fam_fills) == {
            "alice"
        }

    def test_empty(self, fam_kb, fam_fills):
        """Test R⁻(∅) = ∅."""
        assert inverse_fillers(fam_kb.role("hasChild"), frozenset(), fam_fills) == set()

    def test_both_fillers(self, fam_kb, fam_fills):
        """Test hasChild⁻({carol, dave}) = {alice, bob}."""
        got = inverse_fillers(fam_kb.role("hasChild"), frozenset({"carol", "dave"}), fam_fills)
        assert got == {"alice", "bob"}


class TestHornAndClassExtensions:
    """Extensions of Horn clauses and candidate classes."""

    def test_empty_negation(self, fam_kb, fam_materialization):
        """Test ↓(Female ⊓ ¬∅) = {alice, carol}."""
        h = horn(fam_kb.concept("Female"))
        assert extension_horn(h, fam_materialization) == {"alice", "carol"}

    def test_negated_male(self, fam_kb, fam_materialization):
        """Test ↓(Person ⊓ ¬Male) = {alice, carol}."""
        h = horn(fam_kb.concept("Person"), fam_kb.concept("Male"))
        assert extension_horn(h, fam_materialization) == {"alice", "carol"}

    def test_top_minus_person(self, fam_kb, fam_materialization):
        """Test ↓(⊤ ⊓ ¬Person) = ∅."""
        h = horn(TOP, fam_kb.concept("Person"))
        assert extension_horn(h, fam_materialization) == set()

    def test_singleton_class(self, fam_kb, fam_materialization):
        """Test ↓{Female} = {alice, carol}."""
        cc = CandidateClass.of(horn(fam_kb.concept("Female")))
        assert extension_candidate_class(cc, fam_materialization) == {"alice", "carol"}

    def test_union(self, fam_kb, fam_materialization):
        """Test ↓{Female, Male} covers all four."""
        cc = CandidateClass.of(horn(fam_kb.concept("Female")), horn(fam_kb.concept("Male")))
        assert extension_candidate_class(cc, fam_materialization) == EVERYONE

    def test_class_is_union_of_clauses(self, fam_kb, fam_materialization):
        """Test that a class extension equals the union of clause extensions."""
        clauses = [
            horn(fam_kb.concept("Person"), fam_kb.concept("Male")),
            horn(fam_kb.concept("Parent"), fam_kb.concept("Female")),
            horn(TOP, fam_kb.concept("Person")),
        ]
        union = set()
        for h in clauses:
            union |= extension_horn(h, fam_materialization)
        cc = CandidateClass(frozenset(clauses))
        assert extension_candidate_class(cc, fam_materialization) == union


class TestSolutionExtension:
    """↓S = ↓A ∩ ⋂ Rᵢ⁻(↓Cᵢ)."""

    def test_person_with_daughter(self, fam_kb, fam_materialization, fam_fills):
        """Test ↓(Person ⊓ ∃hasChild.Female) = {alice}."""
        s = SolutionCandidate.of(
            fam_kb.concept("Person"),
            {fam_kb.role("hasChild"): CandidateClass.of(horn(fam_kb.concept("Female")))},
        )
        assert extension_solution(s, fam_materialization, fam_fills) == {"alice"}

    def test_top_alone(self, fam_materialization, fam_fills):
        """Test ↓⊤ is everyone in the table."""
        assert extension_solution(SolutionCandidate(), fam_materialization, fam_fills) == EVERYONE

    def test_empty_intersection(self, fam_kb, fam_materialization, fam_fills):
        """Test ↓(Female ⊓ ∃hasChild.Male) = ∅."""
        s = SolutionCandidate.of(
            fam_kb.concept("Female"),
            {fam_kb.role("hasChild"): CandidateClass.of(horn(fam_kb.concept("Male")))},
        )
        assert extension_solution(s, fam_materialization, fam_fills) == set()

    def test_role_absent_from_examples(self, fam_kb, fam_materialization, fam_fills):
        """Test that restricting a role the examples never use is an error."""
        s = SolutionCandidate.of(TOP, {Role("likes"): CandidateClass.of(horn(TOP))})
        with pytest.raises(InductionException):
            extension_solution(s, fam_materialization, fam_fills)
