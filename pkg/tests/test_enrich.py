import logging
from itertools import product

import pytest

from src.ecii.formats.kb import parse_kb
from src.ecii.models.concepts import (
    Atomic,
    Conj,
    Exists,
    canonicalize,
    count_conjunctions,
    count_existentials,
    expr_length,
)
from src.ecii.models.knowledge_base import Equivalence
from src.ecii.services.enrich import enrich_kb, enumerate_expressions, fresh_name


def brute_force(kb, n1, n2):
    """Every tree of binary ⊓ and ∃ within the bounds, canonicalized, atomics removed."""
    atoms = [Atomic(c) for c in kb.named_concepts]
    roles = kb.sorted_roles
    trees = {(0, 0): set(atoms)}
    for total in range(1, n1 + n2 + 1):
        for c in range(0, min(n1, total) + 1):
            e = total - c
            if e > n2:
                continue
            out = set()
            if e > 0:
                out |= {Exists(r, t) for r in roles for t in trees.get((c, e - 1), ())}
            for c1, e1 in product(range(c), range(e + 1)):
                left, right = trees.get((c1, e1), ()), trees.get((c - 1 - c1, e - e1), ())
                out |= {Conj((x, y)) for x in left for y in right}
            trees[(c, e)] = out
    found = {canonicalize(t) for level in trees.values() for t in level}
    return {t for t in found if not isinstance(t, Atomic)}


@pytest.fixture
def two_atoms_one_role():
    return parse_kb("concept A\nconcept B\nrole r\n")


class TestEnumerateExpressions:
    """Bounded enumeration of enrichment expressions."""

    def test_single_existential(self):
        """Test atoms {A}, roles {r}, n1=0, n2=1 gives {∃r.A}."""
        kb = parse_kb("concept A\nrole r\n")
        a = Atomic(kb.concept("A"))
        assert enumerate_expressions(kb, 0, 1) == [Exists(kb.role("r"), a)]

    def test_single_conjunction(self):
        """Test atoms {A,B}, no roles, n1=1, n2=0 gives {A ⊓ B}."""
        kb = parse_kb("concept A\nconcept B\n")
        a, b = Atomic(kb.concept("A")), Atomic(kb.concept("B"))
        assert enumerate_expressions(kb, 1, 0) == [Conj((a, b))]

    def test_nothing_without_connectives(self, two_atoms_one_role):
        """Test that n1=n2=0 gives nothing."""
        assert enumerate_expressions(two_atoms_one_role, 0, 0) == []

    @pytest.mark.parametrize("n1,n2", [(1, 1), (2, 1), (1, 2), (2, 2)])
    def test_matches_brute_force(self, two_atoms_one_role, n1, n2):
        """Test the enumeration against an independent generate-all-then-filter."""
        got = enumerate_expressions(two_atoms_one_role, n1, n2)
        assert set(got) == brute_force(two_atoms_one_role, n1, n2)
        assert len(got) == len(set(got))

    def test_bounds_hold(self, two_atoms_one_role):
        """Test that every expression respects both occurrence bounds."""
        for expr in enumerate_expressions(two_atoms_one_role, 2, 2):
            assert count_conjunctions(expr) <= 2
            assert count_existentials(expr) <= 2
            assert canonicalize(expr) == expr

    def test_top_is_not_enumerated(self, fam_kb):
        """Test that ⊤ does not occur in enrichment expressions."""
        for expr in enumerate_expressions(fam_kb, 1, 1):
            assert "Thing" not in expr.key

    def test_deterministic_order(self, fam_kb):
        """Test that the order is by length, then serialized form."""
        exprs = enumerate_expressions(fam_kb, 2, 2)
        assert exprs == enumerate_expressions(fam_kb, 2, 2)
        keys = [(expr_length(e), e.key) for e in exprs]
        assert keys == sorted(keys)

    def test_cap_truncates_with_warning(self, fam_kb, caplog):
        """Test that the cap keeps the first expressions and warns."""
        full = enumerate_expressions(fam_kb, 2, 2)
        with caplog.at_level(logging.WARNING):
            capped = enumerate_expressions(fam_kb, 2, 2, cap=5)
        assert capped == full[:5]
        assert "truncated" in caplog.text


class TestEnrichKB:
    """Fresh equivalences for enumerated expressions."""

    def test_fresh_equivalence(self, fam_kb):
        """Test that FAM with {∃hasChild.Female} gains _ECII_0."""
        expr = Exists(fam_kb.role("hasChild"), Atomic(fam_kb.concept("Female")))
        enriched = enrich_kb(fam_kb, [expr])
        fresh = enriched.concept("_ECII_0")
        assert fresh.is_fresh
        assert Equivalence(fresh, expr) in enriched.axioms
        assert not fam_kb.has_concept("_ECII_0")

    def test_no_expressions(self, fam_kb):
        """Test that an empty list leaves the KB equal."""
        assert enrich_kb(fam_kb, []) == fam_kb

    def test_deterministic(self, fam_kb):
        """Test that the same input gives the same enriched KB."""
        exprs = enumerate_expressions(fam_kb, 1, 1)
        assert enrich_kb(fam_kb, exprs) == enrich_kb(fam_kb, exprs)

    def test_fresh_definitions(self, fam_kb):
        """Test that the enriched KB exposes its fresh definitions."""
        exprs = enumerate_expressions(fam_kb, 1, 1)
        enriched = enrich_kb(fam_kb, exprs)
        expected = {enriched.concept(f"_ECII_{i}"): e for i, e in enumerate(exprs)}
        assert enriched.fresh_definitions == expected

    def test_name_collision(self, caplog):
        """Test that a taken fresh name is suffixed with a warning."""
        kb = parse_kb("concept _ECII_0\nconcept A\n")
        with caplog.at_level(logging.WARNING):
            name = fresh_name(kb, 0)
        assert name == "_ECII_0_1"
        assert "taken" in caplog.text
