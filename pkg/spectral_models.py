from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from graph_models import Cycle, PeriodResult


class CharPoly(BaseModel):
    """Exact monic characteristic polynomial det(lambda*I - M)"""
    model_config = ConfigDict(frozen=True)

    degree: int = Field(..., ge=1)
    coefficients: Tuple[int, ...] = Field(..., description="c_0 .. c_n, ascending powers")

    @model_validator(mode="after")
    def _check_monic(self) -> "CharPoly":
        if len(self.coefficients) != self.degree + 1:
            raise ValueError("Expected degree + 1 coefficients")
        if self.coefficients[-1] != 1:
            raise ValueError("Characteristic polynomial must be monic")
        return self

    def descending(self) -> List[int]:
        return list(reversed(self.coefficients))

    def evaluate(self, z: complex) -> complex:
        """Horner evaluation in floating point"""
        value = 0j
        for c in reversed(self.coefficients):
            value = value * z + c
        return value

    def derivative_at(self, z: complex) -> complex:
        value = 0j
        for power in range(self.degree, 0, -1):
            value = value * z + power * self.coefficients[power]
        return value

    def scale_at(self, modulus: float) -> float:
        """sum |c_i| |z|^i, the natural scale of p(z)"""
        return float(sum(abs(c) * modulus ** i for i, c in enumerate(self.coefficients)))

    def derivative_scale_at(self, modulus: float) -> float:
        return float(sum(
            i * abs(c) * modulus ** (i - 1) for i, c in enumerate(self.coefficients) if i > 0
        ))


class Eigenvalue(BaseModel):
    """A complex eigenvalue in JSON-friendly form"""
    model_config = ConfigDict(frozen=True)

    real: float
    imag: float

    @classmethod
    def of(cls, value: complex) -> "Eigenvalue":
        return cls(real=float(value.real), imag=float(value.imag))

    @property
    def value(self) -> complex:
        return complex(self.real, self.imag)

    @property
    def modulus(self) -> float:
        return abs(self.value)


class Spectrum(BaseModel):
    """All n eigenvalues of c1-hat, with repetition"""
    model_config = ConfigDict(frozen=True)

    eigenvalues: Tuple[Eigenvalue, ...]
    delta0: float = Field(..., ge=0, description="Spectral radius, max |lambda|")
    residuals: Tuple[float, ...] = Field(..., description="|p(lambda)| / sum |c_i| |lambda|^i per root")
    iterations: int = Field(0, ge=0, description="Aberth sweeps used by the slowest factor")

    def values(self) -> List[complex]:
        return [eigenvalue.value for eigenvalue in self.eigenvalues]


class PerronResult(BaseModel):
    """Dominant eigenpair from power iteration on M + I"""
    model_config = ConfigDict(frozen=True)

    perron_value: float
    perron_vector: Tuple[float, ...] = Field(..., description="Positive, unit max entry")
    iterations: int


class CirclePoint(BaseModel):
    """Position of a max-modulus eigenvalue relative to delta0 * exp(2 pi i k / r)"""
    model_config = ConfigDict(frozen=True)

    eigenvalue: Eigenvalue
    k: int = Field(..., ge=0)
    distance: float = Field(..., ge=0)
    matched: bool


class LemmaRoute(BaseModel):
    """Graph criterion: nonnegativity, strong connectivity, an r-cycle"""
    model_config = ConfigDict(frozen=True)

    nonnegative: bool
    strongly_connected: bool
    component_count: int
    r_cycle: Optional[Cycle] = None
    period: Optional[PeriodResult] = None
    holds: bool


class SpectralRoute(BaseModel):
    """Property O checked directly on the computed spectrum"""
    model_config = ConfigDict(frozen=True)

    delta0: float
    delta0_multiplicity: int = Field(..., ge=0)
    delta0_simple: bool
    spectrum: Spectrum
    circle_classification: Tuple[CirclePoint, ...]
    perron: Optional[PerronResult] = None
    holds: bool


class PropertyOVerdict(BaseModel):
    """Outcome of both verification routes for one table"""
    model_config = ConfigDict(frozen=True)

    fano_index: int
    lemma_route: LemmaRoute
    spectral_route: SpectralRoute
    holds: bool
