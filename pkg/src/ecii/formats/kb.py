"""
Line-based knowledge base format.

    concept <N>            role <N>            ind <N>
    sub <A> <B>            A ⊑ B
    equiv <A> <s-expr>     A ≡ s-expr, s-expr ::= name | (and e e …) | (some role e)
    type <ind> <concept>   rel <ind> <role> <ind>
    # comment

Every name must be declared on an earlier line. ``Thing`` is the built-in top
concept and cannot be declared.
"""

import hashlib
import re

from ..core.exceptions import (
    DuplicateDeclarationException,
    KBSyntaxException,
    UndeclaredEntityException,
    UnsupportedAxiomException,
)
from ..models.concepts import TOP, TOP_NAME, Atomic, AtomicConcept, Role
from ..models.knowledge_base import (
    Axiom,
    Equivalence,
    KnowledgeBase,
    RelAssertion,
    Subconcept,
    TypeAssertion,
)
from .expression import KEYWORDS, NAME_PATTERN, parse_sexpr

_NAME = re.compile(rf"^{NAME_PATTERN}$")


class _Declarations:
    """Signature under construction; resolves names in declaration order."""

    def __init__(self) -> None:
        self.concepts: dict[str, AtomicConcept] = {TOP_NAME: TOP}
        self.roles: dict[str, Role] = {}
        self.individuals: set[str] = set()
        self.line: int | None = None

    def concept(self, name: str) -> AtomicConcept:
        try:
            return self.concepts[name]
        except KeyError:
            raise UndeclaredEntityException("concept", name, self.line) from None

    def role(self, name: str) -> Role:
        try:
            return self.roles[name]
        except KeyError:
            raise UndeclaredEntityException("role", name, self.line) from None

    def individual(self, name: str) -> str:
        if name not in self.individuals:
            raise UndeclaredEntityException("individual", name, self.line)
        return name

    def declare(self, kind: str, name: str) -> None:
        if not _NAME.match(name) or name in KEYWORDS:
            raise KBSyntaxException(f"invalid {kind} name {name!r}", self.line)
        taken = name in self.concepts or name in self.roles or name in self.individuals
        if taken:
            raise DuplicateDeclarationException(name, self.line)
        if kind == "concept":
            self.concepts[name] = AtomicConcept(name)
        elif kind == "role":
            self.roles[name] = Role(name)
        else:
            self.individuals.add(name)


def _strip_comment(raw: str) -> str:
    return raw.split("#", 1)[0].strip()


def parse_kb(text: str) -> KnowledgeBase:
    """
    Parse the line-based format into a validated knowledge base.

    Raises:
        KBSyntaxException: malformed line (with its line number)
        UndeclaredEntityException: reference to a name not declared earlier
        DuplicateDeclarationException: a name declared twice
        UnsupportedAxiomException: axiom outside the supported fragment
    """
    decl = _Declarations()
    axioms: list[Axiom] = []
    types: list[TypeAssertion] = []
    rels: list[RelAssertion] = []

    for number, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue
        decl.line = number
        keyword, *tail = line.split(None, 1)
        rest = tail[0].strip() if tail else ""
        args = rest.split()

        if keyword in ("concept", "role", "ind"):
            _arity(args, 1, keyword, number)
            decl.declare("individual" if keyword == "ind" else keyword, args[0])
        elif keyword == "sub":
            if "(" in rest:
                raise UnsupportedAxiomException(
                    f"line {number}: subsumptions must relate two atomic concepts"
                )
            _arity(args, 2, keyword, number)
            axioms.append(Subconcept(decl.concept(args[0]), decl.concept(args[1])))
        elif keyword == "equiv":
            if not args:
                raise KBSyntaxException("equiv needs a concept and a definition", number)
            if args[0].startswith("("):
                raise UnsupportedAxiomException(
                    f"line {number}: the defined side of an equivalence must be atomic"
                )
            name, _, definition_text = rest.partition(" ")
            concept = decl.concept(name)
            if concept.is_top:
                raise UnsupportedAxiomException(
                    f"line {number}: the top concept cannot be defined"
                )
            if not definition_text.strip():
                raise KBSyntaxException("equiv needs a definition", number)
            definition = parse_sexpr(definition_text, decl, number)
            if definition == Atomic(concept):
                raise UnsupportedAxiomException(
                    f"line {number}: '{name}' is defined as itself"
                )
            axioms.append(Equivalence(concept, definition))
        elif keyword == "type":
            _arity(args, 2, keyword, number)
            types.append(
                TypeAssertion(decl.individual(args[0]), decl.concept(args[1]))
            )
        elif keyword == "rel":
            _arity(args, 3, keyword, number)
            rels.append(
                RelAssertion(
                    decl.individual(args[0]),
                    decl.role(args[1]),
                    decl.individual(args[2]),
                )
            )
        else:
            raise KBSyntaxException(f"unknown statement {keyword!r}", number)

    return KnowledgeBase.build(
        concepts=decl.concepts.values(),
        roles=decl.roles.values(),
        individuals=decl.individuals,
        axioms=axioms,
        type_assertions=types,
        rel_assertions=rels,
    )


def _arity(args: list[str], n: int, keyword: str, line: int) -> None:
    if len(args) != n:
        raise KBSyntaxException(
            f"'{keyword}' expects {n} argument{'s' if n > 1 else ''}, got {len(args)}",
            line,
        )


def serialize_kb(kb: KnowledgeBase) -> str:
    """
    Write a knowledge base back to the line format.

    Sections appear in a fixed order and lines are sorted inside each section,
    so the output is byte-stable and ``parse_kb`` restores an equal KB.
    """
    lines: list[str] = []
    lines += sorted(f"concept {c.name}" for c in kb.concepts if not c.is_top)
    lines += sorted(f"role {r.name}" for r in kb.roles)
    lines += sorted(f"ind {i}" for i in kb.individuals)
    lines += sorted(f"sub {a.sub.name} {a.sup.name}" for a in kb.subsumptions)
    lines += sorted(
        f"equiv {a.concept.name} {a.definition.key}" for a in kb.equivalences
    )
    lines += sorted(f"type {t.individual} {t.concept.name}" for t in kb.type_assertions)
    lines += sorted(
        f"rel {r.subject} {r.role.name} {r.object}" for r in kb.rel_assertions
    )
    return "".join(f"{line}\n" for line in lines)


def kb_hash(kb: KnowledgeBase) -> str:
    """sha256 of the canonical serialization; identifies a KB across files."""
    return hashlib.sha256(serialize_kb(kb).encode("utf-8")).hexdigest()
