from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

DEFAULT_EXPRESSION_CAP = 10_000


class JobConfig(BaseModel):
    """One induction job: the knowledge base, the examples and search parameters."""

    kb_path: Path = Field(..., alias="kb")
    positives: frozenset[str] = Field(..., min_length=1)
    negatives: frozenset[str] = Field(..., min_length=1)
    n1: int = Field(default=3, ge=0, description="max ⊓ occurrences in enrichment")
    n2: int = Field(default=3, ge=0, description="max ∃ occurrences in enrichment")
    k1: int = Field(default=3, ge=1, description="max atomic classes per Horn clause")
    k2: int = Field(default=3, ge=0, description="max Horn clauses per candidate class")
    k3: int = Field(default=3, ge=0, description="max roles per solution")
    k4: int = Field(default=50, ge=0, description="Horn clauses kept per role")
    k5: int = Field(default=50, ge=0, description="candidate classes kept per role")
    keep_common_types: bool = Field(default=False, alias="keepCommonTypes")
    max_solutions: int = Field(default=10, ge=1, alias="maxSolutions")
    compute_alpha3: bool = Field(default=False, alias="computeAlpha3")
    expression_cap: int = Field(
        default=DEFAULT_EXPRESSION_CAP, ge=0, alias="expressionCap"
    )
    alpha3_rerank: int = Field(default=0, ge=0, alias="alpha3Rerank")
    prune_signatures: bool = Field(default=False, alias="pruneSignatures")

    model_config = ConfigDict(populate_by_name=True, extra="forbid", frozen=True)

    @field_validator("positives", "negatives", mode="before")
    @classmethod
    def strip_names(cls, v: object) -> object:
        if isinstance(v, (list, tuple, set, frozenset)):
            return frozenset(str(name).strip() for name in v if str(name).strip())
        return v

    @model_validator(mode="after")
    def check_examples_disjoint(self) -> "JobConfig":
        shared = self.positives & self.negatives
        if shared:
            raise ValueError(
                "individuals are both positive and negative: "
                + ", ".join(sorted(shared))
            )
        return self

    @property
    def wants_alpha3(self) -> bool:
        return self.compute_alpha3 or self.alpha3_rerank > 0
