"""
Data models used throughout the verifier.
Pydantic models for run configuration, report items and command outputs.
"""
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.config import DEFAULT_PRIMES, DEFAULT_SAMPLES, DEFAULT_SEED, DP4_JOBS, REPORT_SCHEMA, parse_primes

Status = Literal["pass", "fail", "flagged"]


class RunConfig(BaseModel):
    """Configuration of one verification run"""
    primes: List[int] = Field(default_factory=lambda: parse_primes(DEFAULT_PRIMES))
    random_samples: int = Field(default=DEFAULT_SAMPLES, ge=1)
    seed: int = DEFAULT_SEED
    suites: List[str] = Field(default_factory=lambda: ["all"])
    jobs: int = Field(default=DP4_JOBS, ge=1)


class ReportItem(BaseModel):
    """Outcome of one checked claim"""
    check_id: str
    paper_anchor: str
    suite: str = ""
    status: Status
    expected: Any = None
    actual: Any = None
    evidence: Dict[str, Any] = Field(default_factory=dict)
    elapsed_ms: float = 0.0

    @model_validator(mode="after")
    def flagged_items_carry_evidence(self):
        if self.status == "flagged" and not self.evidence:
            raise ValueError(f"Flagged item {self.check_id} has no evidence attached")
        return self


class ReportSummary(BaseModel):
    """Status counts of a report"""
    total: int = 0
    passed: int = 0
    failed: int = 0
    flagged: int = 0


class Report(BaseModel):
    """A complete verification report"""
    model_config = ConfigDict(populate_by_name=True)

    report_schema: str = Field(default=REPORT_SCHEMA, alias="schema")
    config: RunConfig
    items: List[ReportItem] = Field(default_factory=list)
    summary: ReportSummary = Field(default_factory=ReportSummary)

    def summarize(self) -> "Report":
        self.summary = ReportSummary(
            total=len(self.items),
            passed=sum(1 for i in self.items if i.status == "pass"),
            failed=sum(1 for i in self.items if i.status == "fail"),
            flagged=sum(1 for i in self.items if i.status == "flagged"),
        )
        return self

    @property
    def exit_code(self) -> int:
        return 1 if any(i.status == "fail" for i in self.items) else 0


class SupportPoint(BaseModel):
    """One point of L ∩ C_v^∨ (a squarefree factor of the gcd)"""
    multiplicity: int
    degree: int = 1
    factor: str = ""
    parameter: Optional[List[str]] = None


class LineClassificationResult(BaseModel):
    """Output of the classify-line command"""
    vertex: str
    plane: str
    type: str
    normal_bundle: str
    support_points: List[SupportPoint] = Field(default_factory=list)
    family_dim: Optional[int] = None
    planes: List[str] = Field(default_factory=list)
    meets_S: str = "empty"
    flags: List[str] = Field(default_factory=list)


class CountResult(BaseModel):
    """Output of the count command"""
    variety: str
    q: int
    count: int
    method: Optional[str] = None
    histogram: Dict[str, int] = Field(default_factory=dict)
    elapsed_ms: float = 0.0


class ChainStep(BaseModel):
    """One step of a Poincare polynomial chain (coefficients in q = t^2)"""
    label: str
    polynomial: List[int]
    note: str = ""


class ChainComparison(BaseModel):
    """Chain result compared with its expected polynomial"""
    chain: str
    contracted: int
    result: List[int]
    target: Optional[List[int]] = None
    palindromic: bool
    matches: Optional[bool] = None
    status: Status
    steps: List[ChainStep] = Field(default_factory=list)
