from fractions import Fraction
from typing import ClassVar, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator


class PhaseTimings(BaseModel):
    """Wall-clock milliseconds per pipeline phase."""

    parse: float = 0.0
    enrich: float = 0.0
    materialize: float = 0.0
    induce: float = 0.0
    total: float = 0.0

    PHASES: ClassVar[tuple[str, ...]] = ("parse", "enrich", "materialize", "induce", "total")


class SolutionRow(BaseModel):
    """One ranked line of a result file."""

    rank: int = Field(..., ge=1)
    alpha2: Fraction
    length: int = Field(..., ge=1)
    expression: str
    alpha3: Optional[Fraction] = None

    model_config = ConfigDict(arbitrary_types_allowed=True)

    @field_validator("alpha2", "alpha3")
    @classmethod
    def check_unit_interval(cls, v: Optional[Fraction]) -> Optional[Fraction]:
        if v is not None and not 0 <= v <= 1:
            raise ValueError("accuracy must lie in [0, 1]")
        return v


class ResultReport(BaseModel):
    kb_hash: str
    solutions: list[SolutionRow] = Field(default_factory=list)
    timings: PhaseTimings = Field(default_factory=PhaseTimings)
    materializer_invocations: int = Field(default=0, ge=0)
    alpha3_top: Optional[Fraction] = None

    model_config = ConfigDict(arbitrary_types_allowed=True)

    @field_validator("solutions")
    @classmethod
    def check_ranks(cls, v: list[SolutionRow]) -> list[SolutionRow]:
        ranks = [row.rank for row in v]
        if any(b <= a for a, b in zip(ranks, ranks[1:])):
            raise ValueError("ranks must be strictly increasing")
        return v

    @property
    def best(self) -> Optional[SolutionRow]:
        return self.solutions[0] if self.solutions else None


class VerificationRow(BaseModel):
    candidate: str
    alpha2: Fraction
    alpha3: Fraction
    agree: bool

    model_config = ConfigDict(arbitrary_types_allowed=True)


class BenchRow(BaseModel):
    size: int = Field(..., ge=1)
    repetitions: int = Field(..., ge=1)
    mean: PhaseTimings
    best_alpha2: Fraction
    invocations_ok: bool

    model_config = ConfigDict(arbitrary_types_allowed=True)

    @property
    def single_sample(self) -> bool:
        return self.repetitions == 1
