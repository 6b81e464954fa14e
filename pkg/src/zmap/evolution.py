"""Full-lattice construction by forward, backward and stabilized schemes.

Three ways to populate a Z^a lattice:

* ``evolve_forward_naive``: the textbook forward evolution from the three
  initial values.  In double precision this is the instability demonstrator
  (errors grow exponentially from the diagonal); run at 256 bits or more it
  serves as the reference oracle on a small square.
* ``evolve_stable``: diagonal band from the Painleve boundary value solve,
  then outward sweeps of the five-point constraint.  Numerically stable.
* ``evolve_backward_crossratio``: same diagonal band but cross-ratio cell
  solves toward the boundary; loses accuracy near the axes and exists to
  reproduce that failure.

``dpii_forward_unstable`` runs the raw three-term recurrence for the
separatrix quantities, whose drift off the unit circle is the cheapest
error indicator of the lot.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from . import painleve
from .core import (
    Lattice,
    MethodTag,
    initial_values,
    solve_constraint,
    solve_cross_ratio_fourth,
)
from .errors import DegenerateStencil

ORACLE_MAX_INDEX = 24  # growth rate eats ~2 digits per diagonal step


def _exponent_value(a, hp: bool):
    """The exponent in working arithmetic; Fractions stay exact at high precision."""
    if hp:
        if isinstance(a, Fraction):
            return mpmath.mpf(a.numerator) / a.denominator
        return mpmath.mpf(a)
    return float(a)


def _initials(a, hp: bool):
    if hp:
        av = _exponent_value(a, True)
        return mpmath.mpc(0), mpmath.mpc(1), mpmath.expjpi(av / 2)
    return initial_values(float(a))


def _empty_grid(N: int, hp: bool):
    if hp:
        grid = np.empty((N + 1, N + 1), dtype=object)
        grid[:] = mpmath.mpc(0)
        return grid
    return np.zeros((N + 1, N + 1), dtype=np.complex128)


class _NullContext:
    def __enter__(self):
        return self

    def __exit__(self, *exc):
        return False


def evolve_forward_naive(a, N: int, precision_bits: int = 53,
                         alternative: bool = False) -> Lattice:
    """Forward evolution from the initial values, square by square.

    Each step k -> k+1 computes the two boundary values from the
    constraint, then fills the new row, column and corner from cross-ratio
    cells.  With ``alternative=True`` the row and column interiors come
    from the constraint instead and only the band next to the diagonal is
    completed by cross-ratios (visually the same instability).

    ``precision_bits`` selects the arithmetic; 53 is hardware doubles,
    anything above runs under mpmath.  The high-precision path is the
    oracle and is capped at indices <= 24 where its digits are certain.
    """
    hp = precision_bits > 53
    if hp and N > ORACLE_MAX_INDEX:
        raise ValueError(
            f"oracle domain is capped at N <= {ORACLE_MAX_INDEX}, got {N}")
    ctx = mpmath.workprec(precision_bits) if hp else _NullContext()
    with ctx:
        av = _exponent_value(a, hp)
        grid = _empty_grid(N, hp)
        f00, f10, f01 = _initials(a, hp)
        grid[0, 0] = f00
        if N >= 1:
            grid[1, 0] = f10
            grid[0, 1] = f01
            grid[1, 1] = solve_cross_ratio_fourth(grid[0, 0], grid[1, 0], grid[0, 1])
        for k in range(1, N):
            _extend_square(grid, k, av, alternative)
        method = MethodTag.ORACLE if hp else MethodTag.NAIVE
        return Lattice(a=float(a), N=N, values=grid, method_tag=method,
                       precision_bits=precision_bits,
                       a_exact=a if isinstance(a, Fraction) else None)


def _extend_square(grid, k: int, a, alternative: bool) -> None:
    """Grow the known square 0..k to 0..k+1 (requires k >= 1)."""
    grid[k + 1, 0] = solve_constraint(k, 0, a, grid[k, 0], "east",
                                      west=grid[k - 1, 0])
    grid[0, k + 1] = solve_constraint(0, k, a, grid[0, k], "north",
                                      south=grid[0, k - 1])
    if alternative:
        for m in range(1, k):
            grid[k + 1, m] = solve_constraint(
                k, m, a, grid[k, m], "east", west=grid[k - 1, m],
                north=grid[k, m + 1], south=grid[k, m - 1])
        for n in range(1, k):
            grid[n, k + 1] = solve_constraint(
                n, k, a, grid[n, k], "north", south=grid[n, k - 1],
                east=grid[n + 1, k], west=grid[n - 1, k])
        grid[k + 1, k] = solve_cross_ratio_fourth(
            grid[k, k - 1], grid[k + 1, k - 1], grid[k, k])
        grid[k, k + 1] = solve_cross_ratio_fourth(
            grid[k - 1, k], grid[k, k], grid[k - 1, k + 1])
    else:
        for m in range(1, k + 1):
            grid[k + 1, m] = solve_cross_ratio_fourth(
                grid[k, m - 1], grid[k + 1, m - 1], grid[k, m])
        for n in range(1, k + 1):
            grid[n, k + 1] = solve_cross_ratio_fourth(
                grid[n - 1, k], grid[n, k], grid[n - 1, k + 1])
    grid[k + 1, k + 1] = solve_cross_ratio_fourth(
        grid[k, k], grid[k + 1, k], grid[k, k + 1])


def _seed_diagonals(grid, N: int, a: float) -> None:
    """Fill the three central diagonals from the Painleve solve."""
    size = painleve.select_bvp_size(N, a)
    sol = painleve.solve_bvp(a, size)
    triples = painleve.reconstruct_diagonals(sol)
    for t in triples[: N + 1]:
        n = t.n
        grid[n, n] = t.f_diag
        if n + 1 <= N:
            grid[n + 1, n] = t.f_sub
            grid[n, n + 1] = t.f_super
    f00, f10, f01 = initial_values(a)
    grid[0, 0] = f00
    if N >= 1:
        grid[1, 0] = f10
        grid[0, 1] = f01


def evolve_stable(a: float, N: int) -> Lattice:
    """Stable lattice: Painleve diagonal band plus outward constraint sweeps.

    With the square 0..k and its bordering diagonal entries known, the row
    entry f(k+1,m) solves the constraint centered at (k,m) and the column
    entry f(n,k+1) the mirrored one, sweeping from the diagonal down to the
    boundary stencils on the axes.
    """
    a = float(a)
    grid = _empty_grid(N, hp=False)
    _seed_diagonals(grid, N, a)
    for k in range(1, N):
        for m in range(k - 1, -1, -1):
            if m == 0:
                grid[k + 1, 0] = solve_constraint(k, 0, a, grid[k, 0], "east",
                                                  west=grid[k - 1, 0])
            else:
                grid[k + 1, m] = solve_constraint(
                    k, m, a, grid[k, m], "east", west=grid[k - 1, m],
                    north=grid[k, m + 1], south=grid[k, m - 1])
        for n in range(k - 1, -1, -1):
            if n == 0:
                grid[0, k + 1] = solve_constraint(0, k, a, grid[0, k], "north",
                                                  south=grid[0, k - 1])
            else:
                grid[n, k + 1] = solve_constraint(
                    n, k, a, grid[n, k], "north", south=grid[n, k - 1],
                    east=grid[n + 1, k], west=grid[n - 1, k])
    return Lattice(a=a, N=N, values=grid, method_tag=MethodTag.STABLE)


def evolve_backward_crossratio(a: float, N: int) -> Lattice:
    """Diagnostic scheme: diagonal band plus cross-ratio solves outward.

    Identical seeding to the stable scheme, but each missing value is the
    boundary-ward corner of a cross-ratio cell.  Develops instabilities
    spreading from the axes once N is large enough.
    """
    a = float(a)
    grid = _empty_grid(N, hp=False)
    _seed_diagonals(grid, N, a)
    for k in range(1, N):
        for m in range(k - 1, -1, -1):
            # cell (k,m): corners f(k,m), f(k+1,m)=unknown, f(k+1,m+1), f(k,m+1)
            grid[k + 1, m] = solve_cross_ratio_fourth(
                grid[k, m + 1], grid[k, m], grid[k + 1, m + 1])
        for n in range(k - 1, -1, -1):
            grid[n, k + 1] = solve_cross_ratio_fourth(
                grid[n + 1, k], grid[n, k], grid[n + 1, k + 1])
    return Lattice(a=a, N=N, values=grid, method_tag=MethodTag.BACKWARD)


@dataclass
class EvolutionReport:
    """A lattice with its per-diagonal error series against a reference."""

    lattice: Lattice
    errors: np.ndarray  # |f(n,n) - ref(n,n)| for n = 2..N
    method_tag: MethodTag


def diagonal_error_series(lat: Lattice, reference: Lattice) -> np.ndarray:
    """Errors |f(n,n) - ref(n,n)| for n = 2..N (length N-1)."""
    N = min(lat.N, reference.N)
    return np.array([
        abs(complex(lat.values[n, n]) - complex(reference.values[n, n]))
        for n in range(2, N + 1)
    ])


def compare_to_reference(lat: Lattice, reference: Lattice) -> EvolutionReport:
    return EvolutionReport(lattice=lat,
                           errors=diagonal_error_series(lat, reference),
                           method_tag=lat.method_tag)


def dpii_forward_unstable(a, N: int, precision_bits: int = 53):
    """Forward recursion of the separatrix recurrence from its two seeds.

    Returns (x_0..x_N, modulus error series | |x_n|-1 |).  In double
    precision the drift off the unit circle mirrors the true error growth;
    at 256 bits the output doubles as an oracle for small n.

    The iteration runs in the rotated variable y_n = x_n e^{-i pi/4}, an
    algebraically identical restatement of the recurrence whose a=1 fixed
    point y=1 is exact in floating point (the unrotated form re-seeds its
    own instability from the representation error of e^{i pi/4}).
    """
    hp = precision_bits > 53
    ctx = mpmath.workprec(precision_bits) if hp else _NullContext()
    with ctx:
        av = _exponent_value(a, hp)
        if hp:
            y0 = mpmath.expjpi((av - 1) / 4)
            i_unit = mpmath.mpc(0, 1)
            omega = mpmath.expjpi(mpmath.mpf(1) / 4)
        else:
            from .core import unit_phase

            y0 = unit_phase((float(a) - 1.0) / 4.0)
            i_unit = 1j
            omega = unit_phase(0.25)
        # rotated second seed: y1 = y0 (i y0^2 + a - 1) / (i (i (a-1) y0^2 + 1))
        den = i_unit * (i_unit * (av - 1) * y0 * y0 + 1)
        if abs(den) < 1e-14:
            raise DegenerateStencil("second-seed denominator vanishes")
        y1 = y0 * (i_unit * y0 * y0 + av - 1) / den
        ys = [y0, y1]
        for n in range(1, N):
            yp, yc = ys[n - 1], ys[n]
            s2 = 1 + yp * yc
            if abs(s2) < 1e-14:
                raise DegenerateStencil(f"forward recurrence stalls at n={n}")
            rhs = av * yc + n * (yc * yc - i_unit) * (yp + i_unit * yc) / s2
            lead = (n + 1) * (yc * yc + i_unit)
            if abs(lead) < 1e-14:
                raise DegenerateStencil(f"leading factor vanishes at n={n}")
            t = rhs / lead
            den = 1 - t * yc
            if abs(den) < 1e-14:
                raise DegenerateStencil(f"update denominator vanishes at n={n}")
            ys.append((t + i_unit * yc) / den)
        mod_err = np.array([float(abs(abs(y) - 1)) for y in ys])
        xs = [omega * y for y in ys]
        if not hp:
            xs = np.array([complex(x) for x in xs])
    return xs, mod_err


def error_series_to_csv(errors: np.ndarray, first_n: int = 2) -> str:
    """CSV dump with header n,error."""
    lines = ["n,error"]
    for i, e in enumerate(errors):
        lines.append(f"{first_n + i},{e:.17g}")
    return "\n".join(lines) + "\n"
