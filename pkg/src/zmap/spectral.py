"""Laurent-coefficient solver for the circle model problem.

On the unit circle the singular integral equation for the jump G turns
into a discrete convolution system: the Cauchy projection acts diagonally
on Laurent modes (0 on non-negative powers, -1 on negative ones), so the
unknown coefficient matrices satisfy

    U_k + sum_j [k-j < 0] A_j U_{k-j} = A_k        (k in Z)

with A_k the coefficients of G - I.  A square truncation of this system
inherits the positive index of the triangular subproblem and is singular
by construction; the solver therefore works with a rectangular truncation
(more rows than unknowns) solved by least squares, which recovers the full
non-triangular solution.  A Fredholm regulator built from G^{-1} is
available for operator studies.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import IllConditioned, ShapeViolation, TailNotResolved
from .rhp import least_squares_qr, model_contour, _unimodular_inverse

TAIL_RATIO = 1e-13


@dataclass
class LaurentSeries:
    """Coefficients c_k for k in [-cutoff, cutoff], stored in that order.

    Entries may be scalars or 2x2 matrices; ``coeffs[cutoff + k]`` is c_k.
    """

    coeffs: np.ndarray
    cutoff: int

    def coefficient(self, k: int):
        if abs(k) > self.cutoff:
            return np.zeros_like(self.coeffs[0])
        return self.coeffs[self.cutoff + k]

    def tail_magnitude(self) -> float:
        edge = np.concatenate([self.coeffs[:3], self.coeffs[-3:]])
        return float(np.max(np.abs(edge)))

    def max_magnitude(self) -> float:
        return float(np.max(np.abs(self.coeffs)))


def laurent_coefficients(f, K: int, samples: int | None = None) -> LaurentSeries:
    """Laurent coefficients of a circle function by a uniform Fourier sum.

    Evaluates f at M >= 4K+8 roots of unity and reads the coefficients off
    the discrete Fourier transform.  Raises TailNotResolved when the
    outermost coefficients have not decayed below 1e-13 of the peak, which
    signals that the cutoff is too small for the function.
    """
    M = samples if samples is not None else 4 * K + 8
    if M < 4 * K + 8:
        raise ValueError("need at least 4K+8 samples")
    nodes = np.exp(2j * np.pi * np.arange(M) / M)
    vals = np.stack([np.asarray(f(z), dtype=np.complex128) for z in nodes])
    all_coeffs = np.fft.fft(vals, axis=0) / M
    order = [(k % M) for k in range(-K, K + 1)]
    series = LaurentSeries(coeffs=all_coeffs[order], cutoff=K)
    peak = series.max_magnitude()
    if peak > 0.0 and series.tail_magnitude() > TAIL_RATIO * peak:
        raise TailNotResolved(
            f"coefficients at |k| in [{K - 2},{K}] have not decayed "
            f"({series.tail_magnitude():.2e} vs peak {peak:.2e})")
    return series


def cauchy_minus_action(series: LaurentSeries) -> LaurentSeries:
    """Boundary Cauchy projection: c_k -> -c_k for k<0, 0 for k>=0."""
    out = np.zeros_like(series.coeffs)
    out[: series.cutoff] = -series.coeffs[: series.cutoff]
    return LaurentSeries(coeffs=out, cutoff=series.cutoff)


@dataclass
class SieSystem:
    """Truncated convolution system with its index bookkeeping."""

    matrix: np.ndarray
    rows: np.ndarray    # block row indices k
    cols: np.ndarray    # block column indices c


def sie_operator_matrix(data: LaurentSeries, row_range: tuple[int, int],
                        col_range: tuple[int, int]) -> SieSystem:
    """Raw truncation of U |-> U_k + sum_{c<0} A_{k-c} U_c, any shape.

    Blocks are 2x2 acting on one stacked solution column; both solution
    columns share this matrix.  No shape guard; used for operator studies
    (determinant growth, preconditioning) as well as by the solver.
    """
    rows = np.arange(row_range[0], row_range[1] + 1)
    cols = np.arange(col_range[0], col_range[1] + 1)
    nr, nc = len(rows), len(cols)
    matrix = np.zeros((2 * nr, 2 * nc), dtype=np.complex128)
    for i, k in enumerate(rows):
        for j, c in enumerate(cols):
            block = np.zeros((2, 2), dtype=np.complex128)
            if k == c:
                block += np.eye(2)
            if c < 0 and abs(k - c) <= data.cutoff:
                block += data.coefficient(k - c)
            matrix[2 * i:2 * i + 2, 2 * j:2 * j + 2] = block
    return SieSystem(matrix=matrix, rows=rows, cols=cols)


def assemble_sie(data: LaurentSeries, row_range: tuple[int, int],
                 col_range: tuple[int, int]) -> SieSystem:
    """Rectangular truncation for solving; rows must strictly exceed columns."""
    nr = row_range[1] - row_range[0] + 1
    nc = col_range[1] - col_range[0] + 1
    if nr <= nc:
        raise ShapeViolation(
            f"need more rows than columns, got {nr} x {nc} blocks")
    return sie_operator_matrix(data, row_range, col_range)


def sie_rhs(data: LaurentSeries, rows: np.ndarray) -> np.ndarray:
    """Right-hand side blocks A_k stacked over the row indices."""
    rhs = np.zeros((2 * len(rows), 2), dtype=np.complex128)
    for i, k in enumerate(rows):
        if abs(k) <= data.cutoff:
            rhs[2 * i:2 * i + 2, :] = data.coefficient(k)
    return rhs


def precondition_sie(inverse_data: LaurentSeries, system: SieSystem) -> SieSystem:
    """Left-multiply by the regulator operator built from G^{-1} data.

    The composition is identity plus a compact perturbation, so singular
    values of the preconditioned truncation cluster at 1.
    """
    reg = sie_operator_matrix(inverse_data,
                              (int(system.rows[0]), int(system.rows[-1])),
                              (int(system.rows[0]), int(system.rows[-1])))
    return SieSystem(matrix=reg.matrix @ system.matrix,
                     rows=system.rows, cols=system.cols)


def model_jump_series(m: int, K: int, inverse: bool = False) -> LaurentSeries:
    """Laurent data of the model jump G - I (or G^{-1} - I)."""
    contour = model_contour(m)
    jump = contour.jumps[0]

    def f(z):
        g = jump(np.asarray([z]))[0]
        if inverse:
            g = _unimodular_inverse(g)
        return g - np.eye(2)

    return laurent_coefficients(f, K)


def spectral_solve_model(m: int, K: int):
    """Solve the model problem in coefficient space; returns (U, Y0).

    Columns live on [-K, K]; the row window extends max(2m, 2) blocks
    further down, which over-determines the truncation by at least the
    index of the triangular subproblem and removes its spurious kernel.
    Y(0) = I + U_0 because the interior Cauchy transform of the series
    keeps only the constant coefficient at z=0.
    """
    if K < m + 20:
        raise ValueError("cutoff must be at least m + 20")
    data = model_jump_series(m, min(K, m + 20))
    extra = max(2 * m, 2)
    system = assemble_sie(data, (-K - extra, K), (-K, K))
    rhs = sie_rhs(data, system.rows)
    X, residual, condition = least_squares_qr(system.matrix, rhs)
    if condition > 1e8:
        raise IllConditioned(
            f"spectral truncation condition {condition:.3e} exceeds 1e8")
    ncols = len(system.cols)
    coeffs = np.empty((ncols, 2, 2), dtype=np.complex128)
    coeffs[:, 0, :] = X[0::2, :]
    coeffs[:, 1, :] = X[1::2, :]
    U = LaurentSeries(coeffs=coeffs, cutoff=K)
    Y0 = np.eye(2) + U.coefficient(0)
    return U, Y0


def spectral_solve_model_square(m: int, K: int):
    """Square truncation of the same system, kept for the failure study.

    Returns (condition_number, Y0) from a minimum-norm least-squares
    solve.  For m >= 1 the matrix is numerically singular (the triangular
    subproblem contributes an exact finite-support kernel), so either the
    condition number blows up or the recovered 12-entry collapses to 0.
    """
    data = model_jump_series(m, min(K, m + 20))
    system = sie_operator_matrix(data, (-K, K), (-K, K))
    rhs = sie_rhs(data, system.rows)
    condition = float(np.linalg.cond(system.matrix))
    X, *_ = np.linalg.lstsq(system.matrix, rhs, rcond=None)
    ncols = len(system.cols)
    coeffs = np.empty((ncols, 2, 2), dtype=np.complex128)
    coeffs[:, 0, :] = X[0::2, :]
    coeffs[:, 1, :] = X[1::2, :]
    U = LaurentSeries(coeffs=coeffs, cutoff=K)
    Y0 = np.eye(2) + U.coefficient(0)
    return condition, Y0


def equation_residual(data: LaurentSeries, U: LaurentSeries,
                      rows: tuple[int, int]) -> float:
    """Max rowwise residual of the convolution equation for a solution U."""
    worst = 0.0
    for k in range(rows[0], rows[1] + 1):
        acc = U.coefficient(k).astype(np.complex128).copy()
        for c in range(-U.cutoff, 0):
            if abs(k - c) <= data.cutoff:
                acc += data.coefficient(k - c) @ U.coefficient(c)
        rhs = data.coefficient(k) if abs(k) <= data.cutoff else np.zeros((2, 2))
        worst = max(worst, float(np.max(np.abs(acc - rhs))))
    return worst


def coefficients_to_csv(U: LaurentSeries) -> str:
    """CSV dump with header k,entry,re,im covering all four matrix entries."""
    lines = ["k,entry,re,im"]
    for k in range(-U.cutoff, U.cutoff + 1):
        c = U.coefficient(k)
        for (i, j), label in zip(((0, 0), (0, 1), (1, 0), (1, 1)),
                                 ("11", "12", "21", "22")):
            z = complex(c[i, j])
            lines.append(f"{k},{label},{z.real:.17g},{z.imag:.17g}")
    return "\n".join(lines) + "\n"
