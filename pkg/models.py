from typing import Dict, List, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


class BasisElement(BaseModel):
    """One class of the graded cohomology basis"""
    model_config = ConfigDict(frozen=True)

    name: str = Field(..., description="Identifier, e.g. 'one', 'h', 'a1'")
    degree: int = Field(..., ge=0, description="Complex cohomological degree")


class QTerm(BaseModel):
    """A single term C * q^d * target of a Chevalley row"""
    model_config = ConfigDict(frozen=True)

    coefficient: int = Field(..., ge=1, description="Positive structure constant")
    q_power: int = Field(..., ge=0, description="Power d of the quantum parameter")
    target: str = Field(..., description="Name of the target basis element")


class ChevalleyTable(BaseModel):
    """Graded quantum Chevalley table h * alpha for every basis element alpha"""
    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "example": {
                "name": "p1",
                "fano_index": 2,
                "anticanonical_multiple": 2,
                "basis": [{"name": "one", "degree": 0}, {"name": "h", "degree": 1}],
                "rows": {
                    "one": [{"coefficient": 1, "q_power": 0, "target": "h"}],
                    "h": [{"coefficient": 1, "q_power": 1, "target": "one"}]
                }
            }
        }
    )

    name: str = Field("unnamed", description="Dataset name")
    description: Optional[str] = Field(None, description="Free-text description")
    basis: Tuple[BasisElement, ...] = Field(..., min_length=1, description="Ordered basis, file order")
    fano_index: int = Field(..., ge=1, description="Fano index r")
    anticanonical_multiple: int = Field(..., ge=1, description="m with c1 = m * h")
    rows: Dict[str, Tuple[QTerm, ...]] = Field(..., description="h * alpha for each basis name")
    witness: Optional[Tuple[str, ...]] = Field(
        None, description="Published r-cycle v0 ... v0, if the source records one"
    )

    @model_validator(mode="after")
    def _check_structure(self) -> "ChevalleyTable":
        names = [element.name for element in self.basis]
        if len(set(names)) != len(names):
            raise ValueError("Basis names must be unique")
        known = set(names)
        for source, terms in self.rows.items():
            if source not in known:
                raise ValueError(f"Row for unknown basis element '{source}'")
            for term in terms:
                if term.target not in known:
                    raise ValueError(f"Row '{source}' targets unknown element '{term.target}'")
        missing = known - set(self.rows)
        if missing:
            raise ValueError(f"Basis elements without a row: {sorted(missing)}")
        return self

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def names(self) -> List[str]:
        return [element.name for element in self.basis]

    def index_of(self, name: str) -> int:
        """Position of a basis element in file order"""
        return self.names.index(name)

    def degree_of(self, name: str) -> int:
        for element in self.basis:
            if element.name == name:
                return element.degree
        raise KeyError(name)

    def with_fano_index(self, fano_index: int) -> "ChevalleyTable":
        """
        Copy of the table with a different Fano index (negative controls only)

        Raises:
            pydantic.ValidationError: if fano_index is not a positive integer
        """
        return ChevalleyTable.model_validate({**self.model_dump(), "fano_index": fano_index})


class OperatorMatrix(BaseModel):
    """Exact integer matrix of c1-hat; entries[j][i] is the coefficient of alpha_j in c1-hat(alpha_i)"""
    model_config = ConfigDict(frozen=True)

    dim: int = Field(..., ge=1, description="Matrix size n")
    entries: Tuple[Tuple[int, ...], ...] = Field(..., description="Row-major exact integers")
    labels: Tuple[str, ...] = Field((), description="Basis names in file order")

    @model_validator(mode="after")
    def _check_shape(self) -> "OperatorMatrix":
        if len(self.entries) != self.dim or any(len(row) != self.dim for row in self.entries):
            raise ValueError(f"Operator matrix must be {self.dim}x{self.dim}")
        if self.labels and len(self.labels) != self.dim:
            raise ValueError("Label count does not match matrix size")
        return self

    def as_exact(self) -> np.ndarray:
        """Object-dtype array of Python ints, safe for exact matrix products"""
        return np.array([[int(value) for value in row] for row in self.entries], dtype=object)

    def as_float(self) -> np.ndarray:
        return np.array(self.entries, dtype=float)

    def trace(self) -> int:
        return sum(self.entries[i][i] for i in range(self.dim))

    def column(self, i: int) -> Tuple[int, ...]:
        return tuple(row[i] for row in self.entries)


class GradingViolation(BaseModel):
    """A term whose q-power disagrees with the degree bookkeeping"""
    model_config = ConfigDict(frozen=True)

    source: str
    target: str
    q_power: int = Field(..., description="q-power written in the table")
    expected: Union[int, Literal["non-integral", "negative"]] = Field(
        ..., description="(deg(source) + 1 - deg(target)) / r, or why it is not a valid q-power"
    )


class GradingReport(BaseModel):
    """Result of checking deg(target) = deg(source) + 1 - r * d for every term"""
    model_config = ConfigDict(frozen=True)

    ok: bool
    violations: Tuple[GradingViolation, ...] = ()
    degree_histogram: Tuple[int, ...] = Field(..., description="Basis count per degree 0..top")
    poincare_symmetric: bool = Field(..., description="Histogram is a palindrome")
