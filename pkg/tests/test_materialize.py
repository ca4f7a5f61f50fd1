import logging

import pytest

from src.ecii.core.exceptions import UndeclaredEntityException
from src.ecii.formats.kb import kb_hash, parse_kb
from src.ecii.formats.materialization import (
    EnrichmentKey,
    dump_materialization,
    parse_materialization,
)
from src.ecii.models.concepts import TOP, Atomic, Exists
from src.ecii.models.knowledge_base import TypeAssertion
from src.ecii.services.enrich import enrich_kb
from src.ecii.services.materialize import (
    MaterializationService,
    extension_atomic,
    relevant_closure,
)

from .conftest import FAM_KB


def names(concepts):
    return {c.name for c in concepts}


class TestMaterialize:
    """Forward chaining to the least fixpoint."""

    def test_types_of_alice(self, fam_materialization):
        """Test types(alice) = {Female, Person, Parent, ⊤}."""
        assert names(fam_materialization.types("alice")) == {
            "Female",
            "Person",
            "Parent",
            "Thing",
        }

    def test_parent_extension(self, fam_kb, fam_materialization):
        """Test ↓Parent = {alice, bob}."""
        parent = fam_kb.concept("Parent")
        assert extension_atomic(fam_materialization, parent) == {"alice", "bob"}

    def test_female_extension(self, fam_kb, fam_materialization):
        """Test ↓Female = {alice, carol}."""
        female = fam_kb.concept("Female")
        assert extension_atomic(fam_materialization, female) == {"alice", "carol"}

    def test_top_extension(self, fam_materialization):
        """Test ↓⊤ holds everyone."""
        assert extension_atomic(fam_materialization, TOP) == {
            "alice",
            "bob",
            "carol",
            "dave",
        }

    def test_no_axioms(self):
        """Test that without axioms the types are the asserted ones plus ⊤."""
        kb = parse_kb("concept A\nconcept B\nind x\ntype x A\n")
        m = MaterializationService().materialize(kb)
        assert names(m.types("x")) == {"A", "Thing"}

    def test_unsatisfied_fresh_definition(self, fam_kb):
        """Test that a fresh concept nobody satisfies has an empty extension."""
        has_child = fam_kb.role("hasChild")
        definition = Exists(has_child, Exists(has_child, Atomic(fam_kb.concept("Male"))))
        enriched = enrich_kb(fam_kb, [definition])
        m = MaterializationService().materialize(enriched)
        assert extension_atomic(m, enriched.concept("_ECII_0")) == frozenset()

    def test_chained_definitions(self):
        """Test that definitions fire on memberships derived by other rules."""
        kb = parse_kb(
            "concept A\nconcept B\nconcept C\nconcept D\nrole r\n"
            "ind x\nind y\nind z\n"
            "sub A B\nequiv C (some r B)\nequiv D (some r C)\n"
            "type z A\nrel y r z\nrel x r y\n"
        )
        m = MaterializationService().materialize(kb)
        assert extension_atomic(m, kb.concept("D")) == {"x"}
        assert extension_atomic(m, kb.concept("C")) == {"y"}

    def test_defined_name_implies_atomic_conjuncts(self):
        """Test A ≡ B ⊓ C makes asserted A members into B and C."""
        kb = parse_kb(
            "concept A\nconcept B\nconcept C\nrole r\nind x\n"
            "equiv A (and B (some r C))\ntype x A\n"
        )
        m = MaterializationService().materialize(kb)
        assert names(m.types("x")) == {"A", "B", "Thing"}

    def test_transpose_coherence(self, fam_materialization):
        """Test a ∈ ↓B ⟺ B ∈ types(a)."""
        m = fam_materialization
        for concept in m.concepts:
            for a in m.individuals.items:
                assert (a in m.extension(concept)) == (concept in m.types(a))

    def test_relevant_closure(self, fam_kb):
        """Test that the scope follows role assertions from the seeds."""
        assert relevant_closure(fam_kb, {"alice"}) == {"alice", "carol"}
        assert relevant_closure(fam_kb, ()) == fam_kb.individuals

    def test_scope_restricted_to_relevant(self, fam_kb):
        """Test that only relevant individuals are indexed."""
        m = MaterializationService().materialize(fam_kb, {"bob"})
        assert set(m.individuals.items) == {"bob", "dave"}

    def test_unknown_relevant_individual(self, fam_kb):
        """Test that relevant individuals must be declared."""
        with pytest.raises(UndeclaredEntityException):
            MaterializationService().materialize(fam_kb, {"zoe"})

    def test_invocations_counted(self, fam_kb):
        """Test that every materialization counts once."""
        service = MaterializationService()
        service.materialize(fam_kb)
        service.materialize(fam_kb)
        assert service.invocations == 2

    def test_monotone_in_abox(self, fam_kb):
        """Test that adding an assertion keeps every derived membership."""
        before = MaterializationService().materialize(fam_kb)
        kb = fam_kb.with_assertions(
            type_assertions=[TypeAssertion("dave", fam_kb.concept("Parent"))]
        )
        after = MaterializationService().materialize(kb)
        assert set(before.memberships) <= set(after.memberships)
        assert ("dave", "Parent") in after.memberships


class TestLoadMaterialization:
    """Loading precomputed tables."""

    def test_round_trip(self, fam_kb):
        """Test that a dump of the materialization loads back identical."""
        service = MaterializationService()
        m = service.materialize(fam_kb)
        text = dump_materialization(m, kb_hash(fam_kb), EnrichmentKey(0, 0, 0))
        loaded = service.load(parse_materialization(text), fam_kb)
        assert loaded.memberships == m.memberships
        assert loaded.individuals.items == m.individuals.items
        assert service.invocations == 2

    def test_empty_table_warns(self, fam_kb, caplog):
        """Test that a table missing asserted types is accepted with a warning."""
        dump = parse_materialization("# ecii-mat v1\n")
        with caplog.at_level(logging.WARNING):
            m = MaterializationService().load(dump, fam_kb)
        assert "lacks" in caplog.text
        assert names(m.types("alice")) == {"Thing"}

    def test_unclosed_table_warns(self, fam_kb, caplog):
        """Test that a table not closed under subsumption is flagged."""
        dump = parse_materialization(
            "# ecii-mat v1\n"
            "type alice Female\ntype bob Male\ntype carol Female\ntype dave Male\n"
        )
        with caplog.at_level(logging.WARNING):
            MaterializationService().load(dump, fam_kb)
        assert "not closed" in caplog.text

    def test_unknown_individual(self, fam_kb):
        """Test that a table naming an unknown individual is rejected."""
        dump = parse_materialization("# ecii-mat v1\ntype zoe Female\n")
        with pytest.raises(UndeclaredEntityException) as exc:
            MaterializationService().load(dump, fam_kb)
        assert exc.value.detail.startswith("line 2:")

    def test_unknown_concept(self):
        """Test that a table naming an unknown concept is rejected."""
        kb = parse_kb(FAM_KB)
        dump = parse_materialization("# ecii-mat v1\ntype alice Unicorn\n")
        with pytest.raises(UndeclaredEntityException):
            MaterializationService().load(dump, kb)
