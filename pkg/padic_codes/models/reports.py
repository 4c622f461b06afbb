"""Report models; every exact number is stored as rational text ("a/b")."""

from typing import Dict, List, Optional

from pydantic import BaseModel, Field


class ViolationRow(BaseModel):
    """One failed condition of a code."""

    condition: str = Field(..., description="Condition label: i, ii, iii, SCI or SCN")
    j: int = Field(..., ge=1, description="First vector (1-based)")
    k: Optional[int] = Field(None, ge=1, description="Second vector for pair conditions")
    value: str = Field(..., description="Offending value as exact text")
    verdict: str = Field("fail", description="fail or indeterminate")


class ValidationSummary(BaseModel):
    """Outcome of validating a code file."""

    kind: str = Field(..., description="padic or real")
    prime: str = Field(..., description="Prime, or 'real'")
    dim: int = Field(..., ge=1)
    size: int = Field(..., ge=1)
    separation: str = Field(..., description="cos_theta=a/b or theta=<radians>")
    valid: bool
    indeterminate: bool = False
    conditions: Dict[str, str] = Field(default_factory=dict)
    violations: List[ViolationRow] = Field(default_factory=list)


class SearchSummary(BaseModel):
    """Largest code found for a separation, with its witness."""

    prime: int
    dim: int
    separation: str
    level: str = Field(..., description="Effective level, 'infeasible' or 'unbounded'")
    size: int
    lower_bound_only: bool = False
    exact_code: bool = True
    vertices: int = 0
    edges: int = 0
    witness: List[List[str]] = Field(default_factory=list)


class SearchStats(BaseModel):
    """Scheduling-dependent counters; kept out of the main report."""

    p: int
    d: int
    level: str
    vertices: int
    edges: int
    clique: int
    nodes: int
    millis: int


class CertificateSummary(BaseModel):
    """Hypothesis checks and the implied bound of a certificate."""

    code_size: int
    form: str
    synthesized: bool = False
    hypotheses_ok: bool
    sum_ok: bool
    pair_sum: str
    tail_ok: bool
    tail_failures: List[str] = Field(default_factory=list)
    bound: Optional[str] = None
    implied_n_cap: Optional[int] = None
    special_case: bool = False
    special_cap: Optional[int] = None
    certificate: Optional[str] = Field(None, description="Certificate text when synthesized")


class DelsarteSummary(BaseModel):
    dim_param: int
    cos_theta: str
    coefficients: List[str]
    nonpositive_ok: bool
    coefficients_ok: bool
    failing_coefficients: List[int] = Field(default_factory=list)
    value_at_one: str
    bound: Optional[str] = None


class RealPfenderSummary(BaseModel):
    code_size: int
    hypotheses_ok: bool
    sum_ok: bool
    pair_sum: str
    tail_ok: bool
    tail_failures: List[str] = Field(default_factory=list)
    bound: Optional[str] = None
    implied_n_cap: Optional[int] = None


class OrthogonalityRow(BaseModel):
    j: int
    k: int
    dim_param: int
    defect: float
    nodes: int
    tolerance: float
