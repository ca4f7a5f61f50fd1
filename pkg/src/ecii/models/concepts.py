"""
Concept expression algebra.

Expressions are immutable and hashable. ``canonicalize`` brings them into the
normal form used everywhere else: n-ary connectives flattened, children
deduplicated and ordered (atomic first, then by serialized form), and the
unit/absorption laws for the top concept applied.
"""

from dataclasses import dataclass, field
from typing import Mapping, Protocol, Union

TOP_NAME = "Thing"
FRESH_PREFIX = "_ECII_"


@dataclass(frozen=True, slots=True)
class AtomicConcept:
    name: str
    is_top: bool = field(default=False, compare=False)
    is_fresh: bool = field(default=False, compare=False)

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class Role:
    name: str

    def __str__(self) -> str:
        return self.name


TOP = AtomicConcept(TOP_NAME, is_top=True)


@dataclass(frozen=True, slots=True)
class Atomic:
    concept: AtomicConcept
    key: str = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "key", self.concept.name)


@dataclass(frozen=True, slots=True)
class Conj:
    children: tuple["ConceptExpression", ...]
    key: str = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        inner = " ".join(c.key for c in self.children)
        object.__setattr__(self, "key", f"(and {inner})")


@dataclass(frozen=True, slots=True)
class Disj:
    children: tuple["ConceptExpression", ...]
    key: str = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        inner = " ".join(c.key for c in self.children)
        object.__setattr__(self, "key", f"(or {inner})")


@dataclass(frozen=True, slots=True)
class Neg:
    child: "ConceptExpression"
    key: str = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "key", f"(not {self.child.key})")


@dataclass(frozen=True, slots=True)
class Exists:
    role: Role
    filler: "ConceptExpression"
    key: str = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "key", f"(some {self.role.name} {self.filler.key})")


ConceptExpression = Union[Atomic, Conj, Disj, Neg, Exists]

THING = Atomic(TOP)


class Signature(Protocol):
    """Anything that resolves names to declared entities (a knowledge base)."""

    def concept(self, name: str) -> AtomicConcept: ...

    def role(self, name: str) -> Role: ...


def order_key(expr: ConceptExpression) -> tuple[int, str]:
    """Canonical child order: atomic before compound, then serialized form."""
    return (0 if isinstance(expr, Atomic) else 1, expr.key)


def canonicalize(
    expr: ConceptExpression, signature: Signature | None = None
) -> ConceptExpression:
    """
    Normalize an expression.

    Args:
        expr: The expression to normalize
        signature: When given, every concept and role name must be declared in it

    Returns:
        The canonical form; idempotent and semantically equivalent
    """
    if isinstance(expr, Atomic):
        if signature is not None and not expr.concept.is_top:
            signature.concept(expr.concept.name)
        return expr
    if isinstance(expr, Neg):
        return Neg(canonicalize(expr.child, signature))
    if isinstance(expr, Exists):
        if signature is not None:
            signature.role(expr.role.name)
        return Exists(expr.role, canonicalize(expr.filler, signature))
    if isinstance(expr, (Conj, Disj)):
        kind = type(expr)
        flat: dict[str, ConceptExpression] = {}
        for child in expr.children:
            normal = canonicalize(child, signature)
            parts = normal.children if isinstance(normal, kind) else (normal,)
            for part in parts:
                flat[part.key] = part
        if kind is Conj:
            flat.pop(TOP_NAME, None)
            if not flat:
                return THING
        elif TOP_NAME in flat:
            return THING
        items = sorted(flat.values(), key=order_key)
        if len(items) == 1:
            return items[0]
        return kind(tuple(items))
    raise TypeError(f"not a concept expression: {expr!r}")


def conjoin(*exprs: ConceptExpression) -> ConceptExpression:
    return canonicalize(Conj(tuple(exprs)))


def disjoin(*exprs: ConceptExpression) -> ConceptExpression:
    return canonicalize(Disj(tuple(exprs)))


def expr_length(expr: ConceptExpression) -> int:
    """Number of atomic-concept occurrences (the top concept counts as one)."""
    if isinstance(expr, Atomic):
        return 1
    if isinstance(expr, Neg):
        return expr_length(expr.child)
    if isinstance(expr, Exists):
        return expr_length(expr.filler)
    return sum(expr_length(c) for c in expr.children)


def count_conjunctions(expr: ConceptExpression) -> int:
    """Occurrences of the binary conjunction symbol (an n-ary node counts n-1)."""
    if isinstance(expr, Atomic):
        return 0
    if isinstance(expr, Neg):
        return count_conjunctions(expr.child)
    if isinstance(expr, Exists):
        return count_conjunctions(expr.filler)
    own = len(expr.children) - 1 if isinstance(expr, Conj) else 0
    return own + sum(count_conjunctions(c) for c in expr.children)


def count_existentials(expr: ConceptExpression) -> int:
    if isinstance(expr, Atomic):
        return 0
    if isinstance(expr, Neg):
        return count_existentials(expr.child)
    if isinstance(expr, Exists):
        return 1 + count_existentials(expr.filler)
    return sum(count_existentials(c) for c in expr.children)


def atoms_of(expr: ConceptExpression) -> frozenset[AtomicConcept]:
    if isinstance(expr, Atomic):
        return frozenset({expr.concept})
    if isinstance(expr, Neg):
        return atoms_of(expr.child)
    if isinstance(expr, Exists):
        return atoms_of(expr.filler)
    return frozenset().union(*(atoms_of(c) for c in expr.children))


def roles_of(expr: ConceptExpression) -> frozenset[Role]:
    if isinstance(expr, Atomic):
        return frozenset()
    if isinstance(expr, Neg):
        return roles_of(expr.child)
    if isinstance(expr, Exists):
        return frozenset({expr.role}) | roles_of(expr.filler)
    return frozenset().union(*(roles_of(c) for c in expr.children))


def expand_definitions(
    expr: ConceptExpression,
    definitions: Mapping[AtomicConcept, ConceptExpression],
) -> ConceptExpression:
    """Replace fresh enrichment names by their defining expressions."""
    if not definitions:
        return expr

    def substitute(e: ConceptExpression) -> ConceptExpression:
        if isinstance(e, Atomic):
            return definitions.get(e.concept, e)
        if isinstance(e, Neg):
            return Neg(substitute(e.child))
        if isinstance(e, Exists):
            return Exists(e.role, substitute(e.filler))
        return type(e)(tuple(substitute(c) for c in e.children))

    return canonicalize(substitute(expr))
