"""Lattice data model and the two defining local relations.

A discrete conformal map is a complex lattice function whose elementary
quadrilaterals all have cross-ratio -1; the map Z^a is singled out by a
non-autonomous constraint coupling each site to its four neighbours and by
the initial values f(0,0)=0, f(1,0)=1, f(0,1)=exp(i*a*pi/2).  This module
provides those two relations as solvable local equations, the large-index
asymptotics with its Gamma-function constant, and residual diagnostics for
complete lattices.

All scalar operations are written against the plain arithmetic protocol so
they accept Python ``complex`` as well as ``mpmath.mpc`` values; the high
precision path is used by the evolution oracle.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DegenerateQuad, DegenerateStencil

EPS_DEGENERATE = 1e-14  # one decade above double-precision roundoff

# Lanczos approximation, g=7, 9 terms.  Relative error below 1e-13 on the
# real intervals used here: (0,2) for the asymptotic constant and the
# positive integers for factorials.
_LANCZOS_G = 7.0
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


class MethodTag(str, Enum):
    """Which algorithm produced a lattice."""

    NAIVE = "naive"
    STABLE = "stable"
    RHP = "rhp"
    ORACLE = "oracle"
    BACKWARD = "backward"


def gamma_real(x: float) -> float:
    """Gamma function for real x, Lanczos form with reflection for x < 1/2."""
    if x < 0.5:
        # reflection keeps the approximation on the well-conditioned side
        return math.pi / (math.sin(math.pi * x) * gamma_real(1.0 - x))
    x = x - 1.0
    acc = _LANCZOS_COEFFS[0]
    for i, c in enumerate(_LANCZOS_COEFFS[1:], start=1):
        acc += c / (x + i)
    t = x + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (x + 0.5) * math.exp(-t) * acc


def asymptotic_constant(a: float) -> float:
    """The real constant c_a = Gamma(1-a/2)/Gamma(1+a/2), 0 < a < 2."""
    if not 0.0 < a < 2.0:
        raise ValueError(f"exponent a must lie in (0,2), got {a}")
    return gamma_real(1.0 - a / 2.0) / gamma_real(1.0 + a / 2.0)


@dataclass(frozen=True)
class AsymptoticParams:
    """Exponent together with its asymptotic prefactor."""

    a: float
    c_a: float

    @classmethod
    def for_exponent(cls, a: float) -> "AsymptoticParams":
        return cls(a=a, c_a=asymptotic_constant(a))


def _scale(*values) -> float:
    return max(1.0, *(float(abs(v)) for v in values))


def cross_ratio(A, B, D, C):
    """Cross-ratio (A-B)(D-C) / ((B-D)(C-A)) of one lattice quadrilateral.

    Arguments are ordered counterclockwise from the lower-left corner:
    A=f(n,m), B=f(n+1,m), D=f(n+1,m+1), C=f(n,m+1).  A discrete conformal
    map has value -1 on every cell.
    """
    s = _scale(A, B, C, D)
    if abs(B - D) < EPS_DEGENERATE * s or abs(C - A) < EPS_DEGENERATE * s:
        raise DegenerateQuad("cross-ratio denominator vanishes")
    return ((A - B) * (D - C)) / ((B - D) * (C - A))


def solve_cross_ratio_fourth(A, B, C):
    """Fourth corner D making the cell (A, B, D, C) have cross-ratio -1.

    Closed form D = (A(B+C) - 2BC) / (2A - B - C).
    """
    s = _scale(A, B, C)
    den = 2 * A - B - C
    if abs(den) < EPS_DEGENERATE * s:
        raise DegenerateQuad("fourth-corner denominator 2A-B-C vanishes")
    return (A * (B + C) - 2 * B * C) / den


def solve_constraint(n: int, m: int, a, f, unknown: str,
                     west=None, east=None, north=None, south=None):
    """Solve the non-autonomous constraint at site (n,m) for one neighbour.

    The constraint reads

        a*f = 2n (E-f)(f-W)/(E-W) + 2m (N-f)(f-S)/(N-S)

    with E,W,N,S the east/west/north/south neighbours.  ``unknown`` selects
    which neighbour is returned ("east" solves for E, "north" for N).  On
    the boundary rows m=0 (east solve) and n=0 (north solve) the transverse
    term is absent and only the in-line neighbours are needed.
    """
    if n < 0 or m < 0:
        raise ValueError("lattice indices must be non-negative")
    if unknown == "east":
        if n < 1:
            raise DegenerateStencil("east solve needs n >= 1", cell=(n, m))
        if west is None:
            raise ValueError("east solve requires the west neighbour")
        S = a * f
        if m > 0:
            if north is None or south is None:
                raise ValueError("interior east solve requires north and south")
            den_t = north - south
            if abs(den_t) < EPS_DEGENERATE * _scale(f, north, south):
                raise DegenerateStencil("transverse denominator N-S vanishes", cell=(n, m))
            S = S - 2 * m * (north - f) * (f - south) / den_t
        den = 2 * n * (f - west) - S
        if abs(den) < EPS_DEGENERATE * _scale(f, west, S):
            raise DegenerateStencil("east-solve denominator vanishes", cell=(n, m))
        return (2 * n * f * (f - west) - S * west) / den
    if unknown == "north":
        if m < 1:
            raise DegenerateStencil("north solve needs m >= 1", cell=(n, m))
        if south is None:
            raise ValueError("north solve requires the south neighbour")
        S = a * f
        if n > 0:
            if east is None or west is None:
                raise ValueError("interior north solve requires east and west")
            den_t = east - west
            if abs(den_t) < EPS_DEGENERATE * _scale(f, east, west):
                raise DegenerateStencil("transverse denominator E-W vanishes", cell=(n, m))
            S = S - 2 * n * (east - f) * (f - west) / den_t
        den = 2 * m * (f - south) - S
        if abs(den) < EPS_DEGENERATE * _scale(f, south, S):
            raise DegenerateStencil("north-solve denominator vanishes", cell=(n, m))
        return (2 * m * f * (f - south) - S * south) / den
    raise ValueError(f"unknown slot must be 'east' or 'north', got {unknown!r}")


def constraint_residual(n: int, m: int, a, f, west=None, east=None,
                        north=None, south=None):
    """Residual |a*f - RHS| / (1 + |a*f|) of the constraint at (n,m)."""
    rhs = 0 * f
    if n > 0:
        den = east - west
        if abs(den) < EPS_DEGENERATE * _scale(east, west):
            raise DegenerateStencil("E-W vanishes in residual", cell=(n, m))
        rhs = rhs + 2 * n * (east - f) * (f - west) / den
    if m > 0:
        den = north - south
        if abs(den) < EPS_DEGENERATE * _scale(north, south):
            raise DegenerateStencil("N-S vanishes in residual", cell=(n, m))
        rhs = rhs + 2 * m * (north - f) * (f - south) / den
    return float(abs(a * f - rhs)) / (1.0 + float(abs(a * f)))


_SQRT_HALF = math.sqrt(0.5)
_EIGHTH_PHASES = (
    1 + 0j,
    complex(_SQRT_HALF, _SQRT_HALF),
    1j,
    complex(-_SQRT_HALF, _SQRT_HALF),
    -1 + 0j,
    complex(-_SQRT_HALF, -_SQRT_HALF),
    -1j,
    complex(_SQRT_HALF, -_SQRT_HALF),
)


def unit_phase(t: float) -> complex:
    """e^{i pi t}, exact on the eighth-turn grid.

    Floating-point cos(pi/2) is 6e-17 rather than 0; seeding the lattice
    with that residue is enough to trigger the forward instability even at
    a=1, so the axis and half-axis cases are returned in their correctly
    rounded symmetric form.
    """
    r = t % 2.0
    quadrupled = 4.0 * r
    if quadrupled == round(quadrupled):
        return _EIGHTH_PHASES[int(round(quadrupled)) % 8]
    return cmath.exp(1j * math.pi * r)


def initial_values(a: float):
    """The three seed values f(0,0), f(1,0), f(0,1)."""
    return 0.0 + 0.0j, 1.0 + 0.0j, unit_phase(a / 2.0)


def asymptotic_value(n: int, m: int, a: float) -> complex:
    """Large-index approximation c_a ((n+im)/2)^a, principal branch."""
    if n == 0 and m == 0:
        raise ValueError("asymptotics undefined at the origin")
    return asymptotic_constant(a) * ((n + 1j * m) / 2.0) ** a


@dataclass
class Lattice:
    """Grid of lattice values f(n,m) for 0 <= n,m <= N.

    ``values`` is an (N+1, N+1) array indexed [n, m]; dtype is complex128
    for double-precision methods and object (mpmath.mpc) for the high
    precision oracle, with ``precision_bits`` recording the arithmetic it
    was built in.
    """

    a: float
    N: int
    values: np.ndarray
    method_tag: MethodTag
    precision_bits: int = 53
    a_exact: object = None  # Fraction preserving the exponent beyond doubles

    def value(self, n: int, m: int):
        return self.values[n, m]

    def to_complex_array(self) -> np.ndarray:
        if self.values.dtype == np.complex128:
            return self.values
        return np.array([[complex(v) for v in row] for row in self.values],
                        dtype=np.complex128)


def lattice_residuals(lat: Lattice) -> tuple[float, float]:
    """Worst cross-ratio and constraint residuals over the whole lattice.

    Returns (max |cross_ratio + 1|, max scaled constraint residual); the
    second maximum runs over all interior five-point stencils and the
    reduced boundary stencils on the two axes.  High-precision lattices are
    evaluated in their own arithmetic.
    """
    if lat.values.dtype == object:
        import mpmath

        with mpmath.workprec(lat.precision_bits):
            return _residuals_inner(lat)
    return _residuals_inner(lat)


def _residuals_inner(lat: Lattice) -> tuple[float, float]:
    v = lat.values
    N = lat.N
    one = 1 + 0 * v[0, 0]
    max_cr = 0.0
    for n in range(N):
        for mm in range(N):
            try:
                cr = cross_ratio(v[n, mm], v[n + 1, mm], v[n + 1, mm + 1], v[n, mm + 1])
            except DegenerateQuad as exc:
                raise DegenerateQuad(str(exc), cell=(n, mm)) from None
            max_cr = max(max_cr, float(abs(cr + one)))
    max_con = 0.0
    a = lat.a
    if lat.values.dtype == object and lat.a_exact is not None:
        import mpmath

        a = mpmath.mpf(lat.a_exact.numerator) / lat.a_exact.denominator
    for n in range(1, N):
        max_con = max(max_con, constraint_residual(
            n, 0, a, v[n, 0], west=v[n - 1, 0], east=v[n + 1, 0]))
        max_con = max(max_con, constraint_residual(
            0, n, a, v[0, n], south=v[0, n - 1], north=v[0, n + 1]))
    for n in range(1, N):
        for mm in range(1, N):
            max_con = max(max_con, constraint_residual(
                n, mm, a, v[n, mm], west=v[n - 1, mm], east=v[n + 1, mm],
                north=v[n, mm + 1], south=v[n, mm - 1]))
    return max_cr, max_con


def lattice_to_csv(lat: Lattice) -> str:
    """CSV dump with header n,m,re,im and 17 significant digits."""
    lines = ["n,m,re,im"]
    for n in range(lat.N + 1):
        for m in range(lat.N + 1):
            z = complex(lat.values[n, m])
            lines.append(f"{n},{m},{z.real:.17g},{z.imag:.17g}")
    return "\n".join(lines) + "\n"


def lattice_to_json(lat: Lattice) -> str:
    payload = {
        "a": lat.a,
        "N": lat.N,
        "method": lat.method_tag.value,
        "values": [
            [n, m, complex(lat.values[n, m]).real, complex(lat.values[n, m]).imag]
            for n in range(lat.N + 1)
            for m in range(lat.N + 1)
        ],
    }
    return json.dumps(payload)


def lattice_from_json(text: str) -> Lattice:
    payload = json.loads(text)
    N = payload["N"]
    values = np.zeros((N + 1, N + 1), dtype=np.complex128)
    for n, m, re, im in payload["values"]:
        values[n, m] = re + 1j * im
    return Lattice(a=payload["a"], N=N, values=values,
                   method_tag=MethodTag(payload["method"]))
