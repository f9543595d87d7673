from pydantic import BaseModel, Field, model_validator
from typing import Any, Dict, List, Optional

class VerificationReport(BaseModel):
    """Outcome of one check; a failing report always carries a witness"""
    check: str
    passed: bool
    witness: Optional[Any] = None
    metrics: Dict[str, Any] = Field(default_factory=dict)
    note: Optional[str] = None

    @model_validator(mode="after")
    def _failing_report_has_witness(self):
        if not self.passed and self.witness is None:
            raise ValueError(f"failing report '{self.check}' must carry a witness")
        return self

class GroupClosureReport(BaseModel):
    order: int
    orbits: List[List[str]]
    vertex_transitive: bool

class RunManifest(BaseModel):
    """Record of one certify run, enough to replay and compare it"""
    command: List[str]
    target: str
    parameters: Dict[str, Any] = Field(default_factory=dict)
    inputs: Dict[str, str] = Field(default_factory=dict)
    outputs: Dict[str, str] = Field(default_factory=dict)
    reports: List[VerificationReport] = Field(default_factory=list)
    timings: Dict[str, float] = Field(default_factory=dict)
    passed: bool = True

    def first_failure(self) -> Optional[VerificationReport]:
        return next((r for r in self.reports if not r.passed), None)
