"""
The three assembly stages of the induction.

    (I)   per role: Horn clauses over the atomic classes seen among its fillers,
          scored by α1, best k4 kept
    (II)  per role: disjunctions of up to k2 of those clauses, best k5 kept
    (III) solutions A ⊓ ∃R1.C1 ⊓ … over up to k3 roles, scored by α2

Stages (I) and (II) rank every enumerated candidate. With ``pruneSignatures``
the pools are first reduced to one representative per coverage signature and
negations disjoint from the head are skipped; the kept lists then hold one
entry per extension instead of the exact top k.

Stage (III) groups tops and restrictions by extension and keeps up to
``maxSolutions`` members per group, which leaves its ranked output unchanged.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, groupby, product
from math import comb
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from ..formats.expression import render_solution
from ..models.candidates import (
    CandidateClass,
    HornClause,
    NegatedDisjunct,
    SolutionCandidate,
    to_expression,
)
from ..models.concepts import (
    TOP,
    Atomic,
    AtomicConcept,
    ConceptExpression,
    Conj,
    Exists,
    Role,
    canonicalize,
    expand_definitions,
    expr_length,
)
from ..models.config import JobConfig
from ..models.examples import ExampleSet
from ..models.materialization import Materialization
from ..utils.bitset import iter_bits
from ..utils.ranking import best_per_signature, select_top
from .extensions import FillSets
from .scoring import ExampleScorer, RoleScorer

logger = logging.getLogger(__name__)


class Renderer:
    """Expanded expressions, their lengths and rendered texts, memoized."""

    def __init__(self, definitions: Mapping[AtomicConcept, ConceptExpression]):
        self.definitions = definitions
        self._expanded: dict[ConceptExpression, ConceptExpression] = {}
        self._text: dict[ConceptExpression, str] = {}
        self._solutions: dict[SolutionCandidate, ConceptExpression] = {}

    def expand(self, expr: ConceptExpression) -> ConceptExpression:
        out = self._expanded.get(expr)
        if out is None:
            out = expand_definitions(expr, self.definitions)
            self._expanded[expr] = out
        return out

    def text(self, expr: ConceptExpression) -> str:
        out = self._text.get(expr)
        if out is None:
            out = render_solution(self.expand(expr))
            self._text[expr] = out
        return out

    def length(self, expr: ConceptExpression) -> int:
        return expr_length(self.expand(expr))

    def concept_text(self, concept: AtomicConcept) -> str:
        return self.text(Atomic(concept))

    def concept_length(self, concept: AtomicConcept) -> int:
        return self.length(Atomic(concept))

    def solution(self, s: SolutionCandidate) -> ConceptExpression:
        out = self._solutions.get(s)
        if out is None:
            out = to_expression(s, self.definitions)
            self._solutions[s] = out
        return out


@dataclass(frozen=True, slots=True)
class ScoredHorn:
    clause: HornClause
    mask: int
    score: Fraction

    @property
    def length(self) -> int:
        return self.clause.length


@dataclass(frozen=True, slots=True)
class ScoredClass:
    candidate: CandidateClass
    mask: int
    score: Fraction
    length: int


@dataclass(frozen=True, slots=True)
class ScoredSolution:
    candidate: SolutionCandidate
    alpha2: Fraction
    length: int
    expression: ConceptExpression
    text: str
    alpha3: Fraction | None = None


def class_length(clauses: Iterable[HornClause]) -> int:
    """Atomic classes of the disjunction; a bare ⊤ clause absorbs the rest."""
    clauses = list(clauses)
    if any(h.head.is_top and not h.neg.negated for h in clauses):
        return 1
    return sum(h.length for h in clauses)


# stage (I)


def count_horn_clauses(pool_size: int, k1: int) -> int:
    """|H₀| = Σ_{j<k1} n·C(n−1, j) for a pool of n atomic classes."""
    n = pool_size
    return sum(n * comb(n - 1, j) for j in range(k1)) if n else 0


def count_top_headed(pool_size: int, k1: int) -> int:
    """Clauses ⊤ ⊓ ¬(D1 ⊔ … ⊔ Dj) over a pool of n classes: Σ_{j<k1} C(n, j)."""
    return sum(comb(pool_size, j) for j in range(k1))


def enumerate_horn_clauses(
    heads: Sequence[AtomicConcept],
    negatable: Sequence[AtomicConcept],
    k1: int,
    compatible: Callable[[AtomicConcept, AtomicConcept], bool] | None = None,
) -> Iterator[HornClause]:
    """
    Every B ⊓ ¬(D1 ⊔ … ⊔ Dj) with B from ``heads``, distinct Dᵢ from
    ``negatable`` other than B, and 1 + j ≤ k1.

    ``compatible(B, D)`` can exclude negations that cannot change the extension.
    """
    for head in heads:
        options = [
            d
            for d in negatable
            if d != head and (compatible is None or compatible(head, d))
        ]
        for j in range(min(k1 - 1, len(options)) + 1):
            for negated in combinations(options, j):
                yield HornClause(head, NegatedDisjunct(frozenset(negated)))


def filler_pool(
    universe: int,
    m: Materialization,
    excluded: frozenset[AtomicConcept],
    renderer: Renderer,
    prune: bool = False,
) -> list[AtomicConcept]:
    """
    Atomic classes other than ⊤ with at least one member in ``universe``,
    minus ``excluded``. With ``prune``, one per signature over ``universe``.
    """
    present = [
        c
        for c in m.concepts
        if not c.is_top and c not in excluded and m.mask(c) & universe
    ]
    if prune:
        present = best_per_signature(
            present,
            signature=lambda c: m.mask(c) & universe,
            key=lambda c: (renderer.concept_length(c),),
            text=renderer.concept_text,
        )
    return sorted(present, key=lambda c: c.name)


def _horn_pool(
    heads: Sequence[AtomicConcept],
    negatable: Sequence[AtomicConcept],
    universe: int,
    score: Callable[[int], Fraction],
    k1: int,
    k4: int,
    m: Materialization,
    renderer: Renderer,
    prune: bool = False,
) -> list[ScoredHorn]:
    masks = {c: m.mask(c) & universe for c in set(heads) | set(negatable)}

    def compatible(head: AtomicConcept, d: AtomicConcept) -> bool:
        return bool(masks[head] & masks[d])

    scored = []
    for clause in enumerate_horn_clauses(
        heads, negatable, k1, compatible if prune else None
    ):
        mask = masks[clause.head]
        for d in clause.neg.negated:
            mask &= ~masks[d]
        scored.append(ScoredHorn(clause, mask, score(mask)))

    def text(h: ScoredHorn) -> str:
        return renderer.text(h.clause.to_expression())

    if prune:
        scored = best_per_signature(
            scored, signature=lambda h: h.mask, key=lambda h: (h.length,), text=text
        )
    return select_top(scored, k4, key=lambda h: (-h.score, h.length), text=text)


def stage1_horn_clauses(
    role: Role,
    cfg: JobConfig,
    fills: FillSets,
    m: Materialization,
    renderer: Renderer,
    excluded: frozenset[AtomicConcept] = frozenset(),
) -> list[ScoredHorn]:
    """
    H_R: the best k4 Horn clauses over the role's fillers by α1. ⊤ heads
    clauses unless it is excluded; it is never negated.
    """
    scorer = RoleScorer(role, fills, m)
    pool = filler_pool(
        scorer.universe, m, excluded, renderer, prune=cfg.prune_signatures
    )
    heads = pool if TOP in excluded else [TOP, *pool]
    if not heads:
        logger.warning("role '%s' dropped: no admissible classes among its fillers", role)
        return []
    logger.debug(
        "role %s: %d atomic classes, %d Horn clauses",
        role,
        len(heads),
        count_horn_clauses(len(pool), cfg.k1)
        + (0 if TOP in excluded else count_top_headed(len(pool), cfg.k1)),
    )
    return _horn_pool(
        heads,
        pool,
        scorer.universe,
        scorer.score,
        cfg.k1,
        cfg.k4,
        m,
        renderer,
        prune=cfg.prune_signatures,
    )


# stage (II)


def _class_pool(
    clauses: Sequence[ScoredHorn],
    score: Callable[[int], Fraction],
    k2: int,
    k5: int,
    renderer: Renderer,
    prune: bool = False,
) -> list[ScoredClass]:
    scored = []
    for size in range(1, min(k2, len(clauses)) + 1):
        for chosen in combinations(clauses, size):
            mask = 0
            for h in chosen:
                mask |= h.mask
            candidate = CandidateClass(frozenset(h.clause for h in chosen))
            scored.append(
                ScoredClass(
                    candidate,
                    mask,
                    score(mask),
                    class_length(candidate.clauses),
                )
            )

    def text(c: ScoredClass) -> str:
        return renderer.text(c.candidate.to_expression())

    if prune:
        scored = best_per_signature(
            scored, signature=lambda c: c.mask, key=lambda c: (c.length,), text=text
        )
    return select_top(scored, k5, key=lambda c: (-c.score, c.length), text=text)


def stage2_candidate_classes(
    role: Role,
    horn_clauses: Sequence[ScoredHorn],
    cfg: JobConfig,
    fills: FillSets,
    m: Materialization,
    renderer: Renderer,
) -> list[ScoredClass]:
    """C_R: the best k5 disjunctions of up to k2 clauses from H_R."""
    if not horn_clauses:
        return []
    scorer = RoleScorer(role, fills, m)
    return _class_pool(
        horn_clauses,
        scorer.score,
        cfg.k2,
        cfg.k5,
        renderer,
        prune=cfg.prune_signatures,
    )


def role_candidates(
    cfg: JobConfig,
    fills: FillSets,
    m: Materialization,
    renderer: Renderer,
    excluded: frozenset[AtomicConcept],
    workers: int = 1,
) -> dict[Role, list[ScoredClass]]:
    """Stages (I) and (II) for every role, one task per role."""

    def run(role: Role) -> list[ScoredClass]:
        if not fills.per_role[role].all:
            logger.warning("role '%s' skipped: no fillers", role)
            return []
        horn = stage1_horn_clauses(role, cfg, fills, m, renderer, excluded)
        return stage2_candidate_classes(role, horn, cfg, fills, m, renderer)

    if workers <= 1 or len(fills.roles) <= 1:
        results = [run(role) for role in fills.roles]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, fills.roles))
    return {role: classes for role, classes in zip(fills.roles, results) if classes}


def top_level_disjunctions(
    examples: ExampleSet,
    cfg: JobConfig,
    m: Materialization,
    renderer: Renderer,
    excluded: frozenset[AtomicConcept],
) -> list[ScoredClass]:
    """
    Disjunctions of Horn clauses over the examples' own types, for example
    sets without role assertions. ⊤ is admissible as a clause head.
    """
    scorer = ExampleScorer(examples, m)
    seen: set[AtomicConcept] = set()
    for a in examples.individuals:
        seen |= m.types(a)
    negatable = filler_pool(
        scorer.universe,
        m,
        excluded | (frozenset(m.concepts) - seen),
        renderer,
        prune=cfg.prune_signatures,
    )
    heads = [TOP, *negatable]
    clauses = _horn_pool(
        heads,
        negatable,
        scorer.universe,
        scorer.score,
        cfg.k1,
        cfg.k4,
        m,
        renderer,
        prune=cfg.prune_signatures,
    )
    return _class_pool(
        clauses, scorer.score, cfg.k2, cfg.k5, renderer, prune=cfg.prune_signatures
    )


# stage (III)


@dataclass(frozen=True, slots=True)
class _Group:
    """Interchangeable parts sharing one extension mask over the examples."""

    mask: int
    members: tuple


def _top_groups(
    examples_mask: int,
    m: Materialization,
    excluded: frozenset[AtomicConcept],
    keep: int,
    renderer: Renderer,
) -> list[_Group]:
    admissible = [c for c in m.concepts if c.is_top or c not in excluded]
    groups: dict[int, list[AtomicConcept]] = {}
    for c in admissible:
        groups.setdefault(m.mask(c) & examples_mask, []).append(c)
    out = []
    for mask, members in groups.items():
        chosen = select_top(
            members,
            keep,
            key=lambda c: (renderer.concept_length(c),),
            text=renderer.concept_text,
        )
        out.append(_Group(mask, tuple(chosen)))
    return out


def _restriction_groups(
    per_role: Mapping[Role, Sequence[ScoredClass]],
    k3: int,
    fills: FillSets,
    m: Materialization,
    keep: int,
    renderer: Renderer,
) -> list[_Group]:
    """
    Every choice of up to k3 roles with one candidate class each, grouped by
    the set of examples it admits. The empty choice admits every example.
    """
    roles = sorted(per_role, key=lambda r: r.name)
    owner_masks = {
        role: {
            m.individuals.index(b): m.mask_of(fills.owners(role, b))
            for b in fills.per_role[role].all
        }
        for role in roles
    }

    def inverse(role: Role, mask: int) -> int:
        out = 0
        table = owner_masks[role]
        for i in iter_bits(mask):
            out |= table.get(i, 0)
        return out

    inverse_of = {
        (role, sc.candidate): inverse(role, sc.mask)
        for role in roles
        for sc in per_role[role]
    }

    combos: list[tuple[int, tuple[tuple[Role, ScoredClass], ...]]] = [
        (m.individuals.full, ())
    ]
    for size in range(1, min(k3, len(roles)) + 1):
        for subset in combinations(roles, size):
            for choice in product(*(per_role[r] for r in subset)):
                mask = m.individuals.full
                for role, sc in zip(subset, choice):
                    mask &= inverse_of[(role, sc.candidate)]
                    if not mask:
                        break
                combos.append((mask, tuple(zip(subset, choice))))

    def expression(restrictions: tuple[tuple[Role, ScoredClass], ...]) -> ConceptExpression:
        if not restrictions:
            return Atomic(TOP)
        parts = tuple(Exists(r, sc.candidate.to_expression()) for r, sc in restrictions)
        return canonicalize(Conj(parts)) if len(parts) > 1 else parts[0]

    groups: dict[int, list[tuple]] = {}
    for mask, restrictions in combos:
        groups.setdefault(mask, []).append(restrictions)
    out = []
    for mask, members in groups.items():
        chosen = select_top(
            members,
            keep,
            key=lambda rs: (sum(renderer.length(sc.candidate.to_expression()) for _, sc in rs),),
            text=lambda rs: renderer.text(expression(rs)),
        )
        out.append(
            _Group(
                mask,
                tuple(
                    tuple((role, sc.candidate) for role, sc in restrictions)
                    for restrictions in chosen
                ),
            )
        )
    return out


def stage3_solutions(
    examples: ExampleSet,
    cfg: JobConfig,
    per_role: Mapping[Role, Sequence[ScoredClass]],
    m: Materialization,
    fills: FillSets,
    renderer: Renderer,
    excluded: frozenset[AtomicConcept] = frozenset(),
    disjunctions: Sequence[ScoredClass] = (),
) -> list[ScoredSolution]:
    """
    The best ``maxSolutions`` solutions by (α2 desc, length asc, text asc);
    solutions that render identically are reported once.
    """
    scorer = ExampleScorer(examples, m)
    keep = cfg.max_solutions
    tops = _top_groups(scorer.universe, m, excluded, keep, renderer)
    restrictions = _restriction_groups(per_role, cfg.k3, fills, m, keep, renderer)

    levels: dict[Fraction, list[SolutionCandidate]] = {}
    level_pairs: dict[Fraction, list[tuple[_Group, _Group]]] = {}
    for top in tops:
        for restriction in restrictions:
            score = scorer.score(top.mask & restriction.mask)
            level_pairs.setdefault(score, []).append((top, restriction))
    for sc in disjunctions:
        levels.setdefault(sc.score, []).append(
            SolutionCandidate(disjunction=sc.candidate)
        )

    def candidates(score: Fraction) -> list[SolutionCandidate]:
        out = list(levels.get(score, ()))
        for top, restriction in level_pairs.get(score, ()):
            for concept in top.members:
                for chosen in restriction.members:
                    out.append(SolutionCandidate(concept, chosen))
        return out

    solutions: list[ScoredSolution] = []
    seen: set[str] = set()
    for score in sorted(set(levels) | set(level_pairs), reverse=True):
        pool = [(s, renderer.solution(s)) for s in candidates(score)]
        pool.sort(key=lambda item: expr_length(item[1]))
        for length, group in groupby(pool, key=lambda item: expr_length(item[1])):
            ranked = sorted(
                ((render_solution(expr), s, expr) for s, expr in group),
                key=lambda item: item[0],
            )
            for text, s, expr in ranked:
                if text in seen:
                    continue
                seen.add(text)
                solutions.append(ScoredSolution(s, score, length, expr, text))
                if len(solutions) >= keep:
                    return solutions
    return solutions
