from typing import Iterable, Union


class EciiException(Exception):
    """Root of all engine errors; ``exit_code`` is what the CLI returns."""

    exit_code: int = 3
    default_detail: str = "Internal error"

    def __init__(self, detail: Union[str, None] = None):
        self.detail = detail or self.default_detail
        super().__init__(self.detail)


class ConfigException(EciiException):
    exit_code = 1
    default_detail = "Invalid job configuration"

    def __init__(self, detail: Union[str, None] = None, line: int | None = None):
        if line is not None:
            detail = f"line {line}: {detail}"
        self.line = line
        super().__init__(detail)


class KBSyntaxException(EciiException):
    exit_code = 1
    default_detail = "Syntax error"

    def __init__(self, detail: Union[str, None] = None, line: int | None = None):
        if line is not None:
            detail = f"line {line}: {detail}"
        self.line = line
        super().__init__(detail)


class KnowledgeBaseException(EciiException):
    exit_code = 2
    default_detail = "Knowledge base is semantically invalid"


class UndeclaredEntityException(KnowledgeBaseException):
    def __init__(self, kind: str, name: str, line: int | None = None):
        self.kind = kind
        self.name = name
        detail = f"undeclared {kind} '{name}'"
        if line is not None:
            detail = f"line {line}: {detail}"
        super().__init__(detail)


class DuplicateDeclarationException(KnowledgeBaseException):
    def __init__(self, name: str, line: int | None = None):
        self.name = name
        detail = f"duplicate declaration of '{name}'"
        if line is not None:
            detail = f"line {line}: {detail}"
        super().__init__(detail)


class UnsupportedAxiomException(KnowledgeBaseException):
    default_detail = "Axiom outside the supported fragment"


class NonStarShapedException(KnowledgeBaseException):
    def __init__(self, individual: str, offenders: Iterable[object]):
        self.individual = individual
        self.offenders = tuple(offenders)
        listed = ", ".join(str(o) for o in self.offenders)
        super().__init__(f"example '{individual}' is not star-shaped: {listed}")


class StaleArtifactException(KnowledgeBaseException):
    default_detail = "Artifact was produced from a different knowledge base"


class InductionException(EciiException):
    exit_code = 3
    default_detail = "Induction failed"
