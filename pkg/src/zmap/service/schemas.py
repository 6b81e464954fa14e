"""Request and response models for the compute service.

The exponent field accepts either a float or a rational string like
"2/3"; rationals are kept exact so the high-precision oracle can consume
them without double rounding.
"""

from __future__ import annotations

from fractions import Fraction

from pydantic import BaseModel, Field, field_validator


def parse_exponent(a) -> tuple[float, Fraction | None]:
    """Normalize an exponent given as float or rational string.

    Returns (float value, exact Fraction when one was given).
    """
    if isinstance(a, str):
        frac = Fraction(a)  # handles "2/3" and decimal strings
        value = float(frac)
    else:
        value = float(a)
        frac = None
    if not 0.0 < value < 2.0:
        raise ValueError(f"exponent a must lie in (0,2), got {value}")
    return value, frac


class _ExponentMixin(BaseModel):
    a: float | str = "2/3"

    @field_validator("a")
    @classmethod
    def _check_exponent(cls, v):
        parse_exponent(v)  # raises on bad input
        return v


class LatticeRequest(_ExponentMixin):
    N: int = Field(default=49, ge=1, le=200)
    method: str = Field(default="stable",
                        pattern="^(naive|stable|backward|oracle)$")
    precision_bits: int | None = Field(default=None, ge=53, le=4096)
    alternative: bool = False  # naive only: constraint-filled rows/columns


class LatticeResponse(BaseModel):
    a: float
    N: int
    method: str
    values: list[list[float]]  # rows [n, m, re, im]
    max_cross_ratio_residual: float
    max_constraint_residual: float
    tolerance_met: bool
    declared_tolerance: float


class ValueRequest(_ExponentMixin):
    n: int = Field(default=6, ge=0)
    m: int = Field(default=8, ge=0)
    method: str = Field(default="rhp", pattern="^(rhp|stable|oracle)$")
    N0: int = Field(default=42, ge=8, le=2000)
    r_inner: float = Field(default=0.5, gt=0.0, lt=1.0)
    r_outer: float = Field(default=3.0, gt=1.0)
    precision_bits: int | None = Field(default=None, ge=53, le=4096)


class ValueResponse(BaseModel):
    n: int
    m: int
    a: float
    method: str
    value_re: float
    value_im: float
    estimated_error: float
    tolerance_met: bool
    diagnostics: dict


class PainleveRequest(_ExponentMixin):
    N: int = Field(default=300, ge=10, le=5000)
    include_values: bool = False


class PainleveResponse(BaseModel):
    a: float
    N: int
    iters: int
    final_residual: float
    max_modulus_error: float
    x0_re: float
    x0_im: float
    x0_seed_error: float  # |x_0 - e^{i a pi/4}|, recovered not imposed
    values: list[list[float]] | None = None  # rows [n, re, im, mod_err]
    tolerance_met: bool


class ModelRequest(BaseModel):
    m: int = Field(default=100, ge=0, le=2000)
    method: str = Field(default="both", pattern="^(nystrom|spectral|both)$")
    N0: int | None = Field(default=None, ge=8)
    K: int | None = None


class NystromReport(BaseModel):
    N0: int
    y0_error: float
    identity_error: float
    condition_estimate: float
    residual: float


class SpectralReport(BaseModel):
    K: int
    rows: int
    cols: int
    y0_error: float
    residual: float


class ModelResponse(BaseModel):
    m: int
    nystrom: NystromReport | None = None
    spectral: SpectralReport | None = None
    tolerance_met: bool


class InstabilityRequest(_ExponentMixin):
    N: int = Field(default=49, ge=10, le=200)


class InstabilitySeries(BaseModel):
    name: str
    points: list[list[float]]  # rows [n, error]


class InstabilityResponse(BaseModel):
    a: float
    N: int
    naive_diagonal: InstabilitySeries
    dpii_forward: InstabilitySeries
    modulus_indicator: InstabilitySeries
    tolerance_met: bool


class CompareRequest(_ExponentMixin):
    points: list[tuple[int, int]] = Field(default=[(2, 2), (4, 4), (6, 8)])
    N0: int = Field(default=42, ge=8, le=2000)
    jobs: int = Field(default=1, ge=1, le=32)

    @field_validator("points")
    @classmethod
    def _check_parity(cls, pts):
        for n, m in pts:
            if (n + m) % 2 != 0 or n + m < 2:
                raise ValueError(f"point ({n},{m}) needs even n+m >= 2")
        return pts


class CompareRow(BaseModel):
    n: int
    m: int
    stable_re: float
    stable_im: float
    rhp_re: float
    rhp_im: float
    asymptotic_re: float
    asymptotic_im: float
    stable_vs_rhp: float
    stable_vs_asymptotic: float


class CompareResponse(BaseModel):
    a: float
    rows: list[CompareRow]
    max_stable_vs_rhp: float
    tolerance_met: bool


class ErrorReport(BaseModel):
    error: str
    message: str
