from typing import Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from graph_models import Cycle, PeriodResult
from spectral_models import CirclePoint, Eigenvalue, PerronResult


class TableStats(BaseModel):
    """Size and grading summary of the verified table"""
    dimension: int
    fano_index: int
    anticanonical_multiple: int
    degree_histogram: Tuple[int, ...]
    poincare_symmetric: bool
    edge_count: int


class LemmaSection(BaseModel):
    """Graph criterion fields of a report"""
    nonnegative: bool
    strongly_connected: bool
    component_count: int
    r_cycle: Optional[Cycle] = None
    period: Optional[PeriodResult] = None
    published_witness_valid: Optional[bool] = Field(
        None, description="Whether the table's recorded witness cycle validates; null if none"
    )
    holds: bool


class SpectralSection(BaseModel):
    """Direct spectral fields of a report"""
    delta0: float
    delta0_multiplicity: int
    eigenvalues: Tuple[Eigenvalue, ...]
    max_residual: float
    circle_classification: Tuple[CirclePoint, ...]
    perron: Optional[PerronResult] = None
    holds: bool


class VerificationReport(BaseModel):
    """Machine-readable result of one verify run"""
    schema_version: Literal[1] = 1
    tool_version: str
    dataset: str
    source: str
    tolerance: float
    fano_index_override: Optional[int] = None
    grading_ok: bool
    table: TableStats
    lemma_route: Optional[LemmaSection] = None
    spectral_route: Optional[SpectralSection] = None
    holds: bool
    timings: Dict[str, float] = Field(default_factory=dict, description="Seconds per stage")

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "schema_version": 1,
                "tool_version": "1.0.0",
                "dataset": "p1",
                "source": "bundled:p1",
                "tolerance": 1e-9,
                "grading_ok": True,
                "table": {
                    "dimension": 2,
                    "fano_index": 2,
                    "anticanonical_multiple": 2,
                    "degree_histogram": [1, 1],
                    "poincare_symmetric": True,
                    "edge_count": 2
                },
                "holds": True
            }
        }
    )


class EigenvalueRow(BaseModel):
    """One line of the eigs table"""
    eigenvalue: Eigenvalue
    modulus: float
    nearest_k: int
    nearest_circle_point: Eigenvalue
    on_circle: bool = Field(..., description="|lambda| within tol * delta0 of delta0")


class EigenvalueTable(BaseModel):
    """All eigenvalues of c1-hat with their spectral-circle bookkeeping"""
    schema_version: Literal[1] = 1
    dataset: str
    fano_index: int
    delta0: float
    rows: List[EigenvalueRow]


class DatasetOutcome(BaseModel):
    """One line of a verify-all run"""
    dataset: str
    exit_code: int
    holds: Optional[bool] = None
    error: Optional[str] = None
    report: Optional[VerificationReport] = None
