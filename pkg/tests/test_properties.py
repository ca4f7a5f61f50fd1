"""
Property-based tests over randomly generated knowledge bases.

Individuals come in two groups: owners (the only subjects of role assertions,
and the only examples) and fillers (role objects with types but no outgoing
assertions). Every generated example is therefore star-shaped.
"""

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from src.ecii.formats.expression import parse_solution, render_solution
from src.ecii.formats.kb import kb_hash, parse_kb, serialize_kb
from src.ecii.models.candidates import (
    CandidateClass,
    HornClause,
    NegatedDisjunct,
    SolutionCandidate,
)
from src.ecii.models.concepts import (
    TOP,
    Atomic,
    AtomicConcept,
    Conj,
    Disj,
    Exists,
    Neg,
    Role,
    canonicalize,
)
from src.ecii.models.config import JobConfig
from src.ecii.models.examples import build_example_set
from src.ecii.models.knowledge_base import (
    Equivalence,
    KnowledgeBase,
    RelAssertion,
    Subconcept,
    TypeAssertion,
)
from src.ecii.services.extensions import compute_fill_sets, extension_horn
from src.ecii.services.induction import InductionService
from src.ecii.services.materialize import MaterializationService
from src.ecii.services.oracle import check_theorem
from src.ecii.services.scoring import alpha2, is_approximate_solution


def property_settings(max_examples: int) -> settings:
    return settings(
        max_examples=max_examples,
        deadline=None,
        suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
    )


@st.composite
def knowledge_bases(draw, with_definitions: bool = False):
    """A small KB plus a positive and a negative example set drawn from its owners."""
    concepts = [AtomicConcept(f"C{i}") for i in range(draw(st.integers(1, 6)))]
    roles = [Role(f"r{i}") for i in range(draw(st.integers(0, 2)))]
    owners = [f"o{i}" for i in range(draw(st.integers(2, 6)))]
    fillers = [f"f{i}" for i in range(draw(st.integers(0, 12 - len(owners))))]
    individuals = owners + fillers

    pairs = st.tuples(st.sampled_from(concepts), st.sampled_from(concepts))
    axioms: list = [
        Subconcept(a, b) for a, b in draw(st.lists(pairs, max_size=6)) if a != b
    ]
    if with_definitions:
        defined = draw(st.lists(st.sampled_from(concepts), max_size=2, unique=True))
        for concept in defined:
            if roles and draw(st.booleans()):
                role = draw(st.sampled_from(roles))
                definition = Exists(role, Atomic(draw(st.sampled_from(concepts))))
            else:
                parts = draw(st.lists(st.sampled_from(concepts), min_size=2, max_size=2))
                definition = canonicalize(Conj(tuple(Atomic(c) for c in parts)))
            if definition != Atomic(concept):
                axioms.append(Equivalence(concept, definition))

    types = draw(
        st.lists(
            st.builds(TypeAssertion, st.sampled_from(individuals), st.sampled_from(concepts)),
            max_size=2 * len(individuals),
        )
    )
    rels: list[RelAssertion] = []
    if roles and fillers:
        rels = draw(
            st.lists(
                st.builds(
                    RelAssertion,
                    st.sampled_from(owners),
                    st.sampled_from(roles),
                    st.sampled_from(fillers),
                ),
                max_size=2 * len(owners),
            )
        )

    kb = KnowledgeBase.build(
        concepts=concepts,
        roles=roles,
        individuals=individuals,
        axioms=axioms,
        type_assertions=types,
        rel_assertions=rels,
    )
    order = draw(st.permutations(owners))
    split = draw(st.integers(1, len(order) - 1))
    rest = draw(st.integers(split + 1, len(order)))
    return kb, frozenset(order[:split]), frozenset(order[split:rest])


def horn_clauses(concepts: list[AtomicConcept]):
    heads = st.sampled_from([TOP] + concepts)

    @st.composite
    def build(draw):
        head = draw(heads)
        negated = draw(st.frozensets(st.sampled_from(concepts), max_size=2))
        return HornClause(head, NegatedDisjunct(negated - {head}))

    return build()


def candidate_classes(concepts: list[AtomicConcept]):
    return st.frozensets(horn_clauses(concepts), min_size=1, max_size=2).map(CandidateClass)


@st.composite
def solution_candidates(draw, concepts: list[AtomicConcept], roles: list[Role]):
    """Candidates over the given names; roles must occur in the examples."""
    if not roles:
        if draw(st.booleans()):
            return SolutionCandidate(disjunction=draw(candidate_classes(concepts)))
        return SolutionCandidate(draw(st.sampled_from([TOP] + concepts)))
    top = draw(st.sampled_from([TOP] + concepts))
    chosen = draw(st.lists(st.sampled_from(roles), max_size=len(roles), unique=True))
    return SolutionCandidate.of(top, {role: draw(candidate_classes(concepts)) for role in chosen})


@st.composite
def expressions(draw, concepts: list[AtomicConcept], roles: list[Role], depth: int = 3):
    leaf = st.sampled_from(concepts).map(Atomic)
    if depth == 0:
        return draw(leaf)
    kinds = ["atomic", "and", "or", "not"] + (["some"] if roles else [])
    kind = draw(st.sampled_from(kinds))
    if kind == "atomic":
        return draw(leaf)
    if kind == "not":
        return Neg(draw(expressions(concepts, roles, depth - 1)))
    if kind == "some":
        return Exists(draw(st.sampled_from(roles)), draw(expressions(concepts, roles, depth - 1)))
    children = draw(st.lists(expressions(concepts, roles, depth - 1), min_size=2, max_size=3))
    return (Conj if kind == "and" else Disj)(tuple(children))


def _names(kb: KnowledgeBase) -> list[AtomicConcept]:
    return [c for c in kb.sorted_concepts if not c.is_top]


class TestFormatProperties:
    """Text formats against generated inputs."""

    @property_settings(500)
    @given(knowledge_bases(with_definitions=True))
    def test_kb_round_trip(self, generated):
        """Test that serializing a parsed KB reproduces the text and hash."""
        kb, _, _ = generated
        text = serialize_kb(kb)
        again = parse_kb(text)
        assert serialize_kb(again) == text
        assert kb_hash(again) == kb_hash(kb)

    @property_settings(500)
    @given(st.data())
    def test_rendered_solutions_reparse(self, data):
        """Test that rendering and re-parsing yields the canonical expression."""
        concepts = [AtomicConcept(f"C{i}") for i in range(4)]
        roles = [Role("r0"), Role("r1")]
        kb = KnowledgeBase.build(concepts=concepts, roles=roles)
        expr = canonicalize(data.draw(expressions(concepts, roles)))
        assert parse_solution(render_solution(expr), kb) == expr


class TestSearchProperties:
    """Extension-based checks against the oracle and each other."""

    @property_settings(1000)
    @given(knowledge_bases(), st.data())
    def test_extension_check_agrees_with_oracle(self, generated, data):
        """Test that approximate solutions and oracle solutions coincide."""
        kb, positives, negatives = generated
        examples = build_example_set(kb, positives, negatives)
        roles = sorted(compute_fill_sets(examples).per_role, key=lambda r: r.name)
        candidate = data.draw(solution_candidates(_names(kb), roles))
        verdict = check_theorem(kb, candidate, examples)
        assert verdict.agree, verdict.counterexample

    @property_settings(300)
    @given(knowledge_bases(), st.data())
    def test_alpha2_one_iff_approximate_solution(self, generated, data):
        """Test α2 = 1 exactly for candidates that separate the examples."""
        kb, positives, negatives = generated
        examples = build_example_set(kb, positives, negatives)
        m = MaterializationService().materialize(kb, examples.individuals)
        fills = compute_fill_sets(examples)
        roles = sorted(fills.per_role, key=lambda r: r.name)
        candidate = data.draw(solution_candidates(_names(kb), roles))
        assert (alpha2(candidate, examples, m, fills) == 1) == is_approximate_solution(
            candidate, examples, m, fills
        )

    @property_settings(300)
    @given(knowledge_bases(), st.data())
    def test_horn_extension_shrinks_with_negation(self, generated, data):
        """Test that negating one more concept never grows a Horn clause's extension."""
        kb, _, _ = generated
        m = MaterializationService().materialize(kb)
        concepts = _names(kb)
        h = data.draw(horn_clauses(concepts))
        extra = data.draw(st.sampled_from(concepts))
        if extra == h.head:
            return
        wider = HornClause(h.head, NegatedDisjunct(h.neg.negated | {extra}))
        assert extension_horn(wider, m) <= extension_horn(h, m)

    @property_settings(100)
    @given(knowledge_bases(with_definitions=True), st.booleans())
    def test_induced_solutions_alpha2_one_iff_approximate(self, generated, keep_common):
        """Test α2 = 1 exactly for separating candidates among induced solutions."""
        kb, positives, negatives = generated
        examples = build_example_set(kb, positives, negatives)
        cfg = JobConfig(
            kb="generated.kb",
            positives=positives,
            negatives=negatives,
            n1=1,
            n2=1,
            k4=10,
            k5=10,
            maxSolutions=50,
            keepCommonTypes=keep_common,
        )
        result = InductionService().run(kb, examples, cfg)
        fills = compute_fill_sets(examples)
        for s in result.solutions:
            approximate = is_approximate_solution(
                s.candidate, examples, result.materialization, fills
            )
            assert (s.alpha2 == 1) == approximate, s.text
            assert s.alpha2 == alpha2(s.candidate, examples, result.materialization, fills)


class TestMaterializationProperties:
    """The fixpoint as the ABox grows."""

    @property_settings(1000)
    @given(knowledge_bases(with_definitions=True), st.data())
    def test_more_assertions_never_remove_memberships(self, generated, data):
        """Test monotonicity of the materialization under added assertions."""
        kb, _, _ = generated
        concepts = _names(kb)
        individuals = sorted(kb.individuals)
        added = data.draw(
            st.lists(
                st.builds(TypeAssertion, st.sampled_from(individuals), st.sampled_from(concepts)),
                min_size=1,
                max_size=4,
            )
        )
        before = set(MaterializationService().materialize(kb).memberships)
        after = set(MaterializationService().materialize(kb.with_assertions(added)).memberships)
        assert before <= after

    @property_settings(1000)
    @given(knowledge_bases(with_definitions=True), st.data())
    def test_more_role_assertions_never_remove_memberships(self, generated, data):
        """Test monotonicity of the materialization under added role assertions."""
        kb, _, _ = generated
        roles = sorted(kb.roles, key=lambda r: r.name)
        if not roles:
            return
        individuals = sorted(kb.individuals)
        added = data.draw(
            st.lists(
                st.builds(
                    RelAssertion,
                    st.sampled_from(individuals),
                    st.sampled_from(roles),
                    st.sampled_from(individuals),
                ),
                min_size=1,
                max_size=4,
            )
        )
        before = set(MaterializationService().materialize(kb).memberships)
        grown = kb.with_assertions(rel_assertions=added)
        after = set(MaterializationService().materialize(grown).memberships)
        assert before <= after

    @property_settings(500)
    @given(knowledge_bases(with_definitions=True))
    def test_result_is_closed_under_the_axioms(self, generated):
        """Test that applying the axioms to the result derives nothing new."""
        kb, _, _ = generated
        m = MaterializationService().materialize(kb)

        def holds(expr, individual):
            if isinstance(expr, Atomic):
                return individual in m.extension(expr.concept)
            if isinstance(expr, Conj):
                return all(holds(child, individual) for child in expr.children)
            return any(
                holds(expr.filler, rel.object)
                for rel in kb.outgoing(individual)
                if rel.role == expr.role
            )

        for t in kb.type_assertions:
            assert t.individual in m.extension(t.concept)
        for axiom in kb.subsumptions:
            assert m.extension(axiom.sub) <= m.extension(axiom.sup)
        for axiom in kb.equivalences:
            satisfied = {a for a in kb.individuals if holds(axiom.definition, a)}
            assert satisfied <= m.extension(axiom.concept)

    @property_settings(300)
    @given(knowledge_bases(with_definitions=True))
    def test_asserting_the_result_changes_nothing(self, generated):
        """Test that materializing again from every derived type is a no-op."""
        kb, _, _ = generated
        m = MaterializationService().materialize(kb)
        derived = [
            TypeAssertion(a, c)
            for a in sorted(kb.individuals)
            for c in m.types(a)
            if not c.is_top
        ]
        again = MaterializationService().materialize(kb.with_assertions(derived))
        assert again.memberships == m.memberships
