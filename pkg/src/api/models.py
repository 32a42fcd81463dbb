from pydantic import BaseModel, Field
from typing import Dict, Any, List, Optional


class SuiteRequest(BaseModel):
    """Parameters shared by every verification suite"""
    ell: Optional[int] = Field(default=None, ge=1, le=8, description="Number of symplectic pairs (l); settings default when omitted")
    max_weight: Optional[str] = Field(default=None, description="Weight truncation as an integer or half-integer, e.g. '5/2'")
    bound: Optional[int] = Field(default=None, ge=0, le=20, description="Box bound for the classification search")
    type: str = Field(default="C", pattern="^(A|C)$", description="Root system type for tensor/branch")
    rank: Optional[int] = Field(default=None, ge=1, le=8, description="Root system rank for tensor")
    lhs: Optional[str] = Field(default=None, description="Left Dynkin labels, comma separated")
    rhs: Optional[str] = Field(default=None, description="Right Dynkin labels, comma separated")
    coset: Optional[str] = Field(default=None, description="Named coset for the commutant suite")


class CheckModel(BaseModel):
    """Outcome of a single check"""
    name: str = Field(..., description="Human-readable check name")
    paper_anchor: str = Field(..., description="Identifier of the statement the check verifies")
    status: str = Field(..., pattern="^(pass|fail|skip)$", description="pass, fail or skip")
    details: Dict[str, Any] = Field(default_factory=dict, description="Computed values or the failure message")
    elapsed_ms: int = Field(default=0, description="Wall time in milliseconds (0 unless timings are recorded)")


class Report(BaseModel):
    """Report of one suite run"""
    command: str = Field(..., description="Suite that was run")
    parameters: Dict[str, Any] = Field(default_factory=dict, description="Resolved suite parameters")
    checks: List[CheckModel] = Field(default_factory=list, description="Checks in execution order")

    @property
    def passed(self) -> bool:
        return all(check.status != "fail" for check in self.checks)


class SeriesResponse(BaseModel):
    """Graded dimensions of a reference character"""
    kind: str = Field(..., description="heisenberg, heisenberg-plus or fock")
    rank: int = Field(..., description="Rank or number of pairs")
    order: str = Field(..., description="Truncation weight")
    coefficients: Dict[str, int] = Field(..., description="Dimension at each weight")


class ErrorResponse(BaseModel):
    """Error response model"""
    error: str = Field(..., description="Error type")
    message: str = Field(..., description="Error message")
    details: Optional[Dict[str, Any]] = Field(default=None, description="Additional error details")
