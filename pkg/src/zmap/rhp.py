"""Riemann-Hilbert route to single Z^a values, and the circle model problem.

The map value f(n,m) is encoded in a 2x2 Riemann-Hilbert problem with
lower triangular jump data on three circles: two small circles around the
branch points +-1 and one large circle restoring the standard
normalization at infinity.  Reversing the small circles (and inverting
their jump) yields a contour system bounding a domain to its left, whose
right boundary values satisfy a Fredholm integral equation of the second
kind with a smooth kernel.  That equation has a nontrivial kernel of known
dimension, so the Nystrom discretization (composite trapezoidal rule) is
augmented with moment conditions and solved as a least-squares problem.
Postprocessing is a Cauchy integral; an LU-style ratio at z=0 extracts the
map value.

The orthogonal-polynomial model problem on the unit circle has the same
triangular structure and a closed-form solution; it validates every moving
part at tolerances far below the Z^a noise floor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.linalg import qr, solve_triangular

from .errors import (
    AmbiguousWinding,
    BranchPointEvaluation,
    ExtractionDegenerate,
    GeometryViolation,
    IllConditioned,
    ParityViolation,
    ResidualTooLarge,
    SingularBasisChange,
    TooCloseToContour,
)

_EPS = 1e-14
DEFAULT_R_INNER = 0.5
DEFAULT_R_OUTER = 3.0
CONDITION_LIMIT = 1e8


@dataclass(frozen=True)
class OrientedCircle:
    """Circle |z - center| = radius, orientation +1 ccw / -1 cw."""

    center: complex
    radius: float
    orientation: int

    def nodes(self, count: int) -> np.ndarray:
        j = np.arange(count)
        return self.center + self.radius * np.exp(2j * np.pi * j / count)

    def weights(self, count: int) -> np.ndarray:
        """Trapezoidal weights absorbing 1/(2 pi i) and the contour element."""
        j = np.arange(count)
        w = (self.radius / count) * np.exp(2j * np.pi * j / count)
        return self.orientation * w

    def signed_distance(self, z: complex) -> float:
        return abs(z - self.center) - self.radius


@dataclass
class ContourSystem:
    """Oriented circles with their jump matrices and analytic derivatives.

    ``jumps[i]`` and ``jump_derivs[i]`` map an array of points on circle i
    to arrays of 2x2 matrices.  ``condition_count`` moment conditions are
    imposed on the circle indexed by ``condition_circle``.
    """

    circles: list[OrientedCircle]
    jumps: list[Callable[[np.ndarray], np.ndarray]]
    jump_derivs: list[Callable[[np.ndarray], np.ndarray]]
    condition_count: int
    condition_circle: int

    def circle_of(self, zeta: complex) -> int:
        """Index of the circle the point lies on (nearest by distance)."""
        dists = [abs(c.signed_distance(zeta)) for c in self.circles]
        k = int(np.argmin(dists))
        if dists[k] > 1e-8 * self.circles[k].radius:
            raise ValueError(f"{zeta} does not lie on the contour")
        return k


def _as_points(zeta) -> np.ndarray:
    return np.atleast_1d(np.asarray(zeta, dtype=np.complex128))


def _unimodular_inverse(g: np.ndarray) -> np.ndarray:
    """Adjugate inverse, exact for det = 1 jump matrices."""
    inv = np.empty_like(g)
    inv[..., 0, 0] = g[..., 1, 1]
    inv[..., 0, 1] = -g[..., 0, 1]
    inv[..., 1, 0] = -g[..., 1, 0]
    inv[..., 1, 1] = g[..., 0, 0]
    return inv


def _g1_factor(zeta: np.ndarray, n: int, m: int, a: float) -> np.ndarray:
    """Scalar 21-entry of the original jump on the small circles.

    The power zeta^{-a/2} carries its branch cut on the negative imaginary
    axis so the factor is analytic near both circles.
    """
    return (np.exp(0.25j * a * np.pi)
            * np.exp(-(a / 2.0) * np.log(zeta / 1j))
            * (zeta - 1.0) ** (-m) * (zeta + 1.0) ** (-n))


def _g1_logderiv(zeta: np.ndarray, n: int, m: int, a: float) -> np.ndarray:
    return -(a / 2.0) / zeta - m / (zeta - 1.0) - n / (zeta + 1.0)


def jump_G1(zeta: complex, n: int, m: int, a: float) -> np.ndarray:
    """Original lower triangular jump on the circles around +-1."""
    for point in (1.0, -1.0, 0.0):
        if abs(zeta - point) < _EPS * max(1.0, abs(zeta)):
            raise BranchPointEvaluation(f"jump data singular at {point}")
    g = np.eye(2, dtype=np.complex128)
    g[1, 0] = complex(_g1_factor(_as_points(zeta), n, m, a)[0])
    return g


def jump_G2(zeta: complex, n: int, m: int) -> np.ndarray:
    """Diagonal normalization jump on the outer circle."""
    if (n + m) % 2 != 0:
        raise ParityViolation(f"n+m must be even, got n={n}, m={m}")
    if abs(zeta) < _EPS:
        raise BranchPointEvaluation("jump data singular at 0")
    p = (n + m) // 2
    return np.diag([zeta ** p, zeta ** (-p)]).astype(np.complex128)


def build_sigma(n: int, m: int, a: float,
                r_inner: float = DEFAULT_R_INNER,
                r_outer: float = DEFAULT_R_OUTER) -> ContourSystem:
    """Contour system bounding the working domain to its left.

    Two clockwise circles around +-1 carry the inverted triangular jump
    (negated 21-entry); the counterclockwise outer circle carries the
    diagonal jump.  Moment conditions live on the outer circle, one per
    power up to (n+m)/2.
    """
    if (n + m) % 2 != 0:
        raise ParityViolation(f"n+m must be even, got n={n}, m={m}")
    if not 0.0 < r_inner < 1.0 - _EPS:
        raise GeometryViolation(f"inner radius {r_inner} must lie in (0,1)")
    if r_outer <= 1.0 + r_inner:
        raise GeometryViolation(
            f"outer radius {r_outer} must exceed 1 + r_inner = {1 + r_inner}")
    p = (n + m) // 2

    def inner_jump(zeta: np.ndarray) -> np.ndarray:
        g = np.zeros(zeta.shape + (2, 2), dtype=np.complex128)
        g[..., 0, 0] = 1.0
        g[..., 1, 1] = 1.0
        g[..., 1, 0] = -_g1_factor(zeta, n, m, a)
        return g

    def inner_deriv(zeta: np.ndarray) -> np.ndarray:
        g = np.zeros(zeta.shape + (2, 2), dtype=np.complex128)
        g[..., 1, 0] = -_g1_factor(zeta, n, m, a) * _g1_logderiv(zeta, n, m, a)
        return g

    def outer_jump(zeta: np.ndarray) -> np.ndarray:
        g = np.zeros(zeta.shape + (2, 2), dtype=np.complex128)
        g[..., 0, 0] = zeta ** p
        g[..., 1, 1] = zeta ** (-p)
        return g

    def outer_deriv(zeta: np.ndarray) -> np.ndarray:
        g = np.zeros(zeta.shape + (2, 2), dtype=np.complex128)
        g[..., 0, 0] = p * zeta ** (p - 1)
        g[..., 1, 1] = -p * zeta ** (-p - 1)
        return g

    circles = [
        OrientedCircle(center=-1.0 + 0j, radius=r_inner, orientation=-1),
        OrientedCircle(center=+1.0 + 0j, radius=r_inner, orientation=-1),
        OrientedCircle(center=0.0 + 0j, radius=r_outer, orientation=+1),
    ]
    return ContourSystem(circles=circles,
                         jumps=[inner_jump, inner_jump, outer_jump],
                         jump_derivs=[inner_deriv, inner_deriv, outer_deriv],
                         condition_count=p,
                         condition_circle=2)


def model_contour(m: int) -> ContourSystem:
    """Unit-circle model problem with jump [[z^m, 0], [e^z, z^-m]]."""
    if m < 0:
        raise ValueError("model order must be non-negative")

    def jump(zeta: np.ndarray) -> np.ndarray:
        g = np.zeros(zeta.shape + (2, 2), dtype=np.complex128)
        g[..., 0, 0] = zeta ** m
        g[..., 1, 0] = np.exp(zeta)
        g[..., 1, 1] = zeta ** (-m)
        return g

    def deriv(zeta: np.ndarray) -> np.ndarray:
        g = np.zeros(zeta.shape + (2, 2), dtype=np.complex128)
        g[..., 0, 0] = m * zeta ** (m - 1)
        g[..., 1, 0] = np.exp(zeta)
        g[..., 1, 1] = -m * zeta ** (-m - 1)
        return g

    circle = OrientedCircle(center=0.0 + 0j, radius=1.0, orientation=+1)
    return ContourSystem(circles=[circle], jumps=[jump], jump_derivs=[deriv],
                         condition_count=m, condition_circle=0)


def fredholm_kernel(zeta: complex, eta: complex, system: ContourSystem) -> np.ndarray:
    """Smooth kernel G^{-1}(zeta) (G(eta) - G(zeta)) / (eta - zeta).

    The diagonal is the removable-singularity limit G^{-1}(zeta) G'(zeta),
    taken whenever the two points are within 1e-8 radii of each other.
    """
    ci = system.circle_of(zeta)
    cj = system.circle_of(eta)
    zv = _as_points(zeta)
    ev = _as_points(eta)
    g_z = system.jumps[ci](zv)[0]
    if abs(eta - zeta) < 1e-8 * system.circles[ci].radius:
        gp = system.jump_derivs[ci](zv)[0]
        return _unimodular_inverse(g_z) @ gp
    g_e = system.jumps[cj](ev)[0]
    return _unimodular_inverse(g_z) @ (g_e - g_z) / (eta - zeta)


@dataclass
class NystromSolution:
    """Discrete boundary values of the Fredholm equation at the nodes."""

    nodes: np.ndarray            # all quadrature nodes, concatenated per circle
    weights: np.ndarray          # matching orientation-signed weights
    phi_minus: np.ndarray        # (len(nodes), 2, 2) boundary values
    lsq_condition_estimate: float
    residual: float              # inf-norm least-squares residual
    node_circle: np.ndarray      # circle index per node
    nodes_per_circle: int
    meets_sampling_condition: bool
    jump_at_nodes: np.ndarray = field(repr=False, default=None)

    def max_amplitude(self) -> float:
        return float(np.max(np.abs(self.phi_minus)))


def _gather_nodes(system: ContourSystem, per_circle: int):
    nodes, weights, which = [], [], []
    for idx, circle in enumerate(system.circles):
        nodes.append(circle.nodes(per_circle))
        weights.append(circle.weights(per_circle))
        which.append(np.full(per_circle, idx))
    return (np.concatenate(nodes), np.concatenate(weights),
            np.concatenate(which))


def _kernel_matrix(system: ContourSystem, nodes: np.ndarray,
                   which: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """All-pairs kernel blocks K[i, j] plus the jump values at the nodes."""
    M = len(nodes)
    g = np.empty((M, 2, 2), dtype=np.complex128)
    gp = np.empty((M, 2, 2), dtype=np.complex128)
    for idx in range(len(system.circles)):
        sel = which == idx
        g[sel] = system.jumps[idx](nodes[sel])
        gp[sel] = system.jump_derivs[idx](nodes[sel])
    ginv = _unimodular_inverse(g)
    diff = g[None, :, :, :] - g[:, None, :, :]
    denom = nodes[None, :] - nodes[:, None]
    np.fill_diagonal(denom, 1.0)
    K = np.einsum("iab,ijbc->ijac", ginv, diff) / denom[:, :, None, None]
    K[np.arange(M), np.arange(M)] = np.einsum("iab,ibc->iac", ginv, gp)
    return K, g


def _condition_rows(system: ContourSystem, nodes: np.ndarray,
                    weights: np.ndarray, which: np.ndarray) -> np.ndarray:
    """Moment-condition rows acting on the second component of each node."""
    q = system.condition_count
    M = len(nodes)
    rows = np.zeros((q, 2 * M), dtype=np.complex128)
    sel = which == system.condition_circle
    zs = nodes[sel]
    ws = weights[sel]
    cols = np.flatnonzero(sel) * 2 + 1
    for k in range(1, q + 1):
        rows[k - 1, cols] = ws * zs ** (-k)
    return rows


def nystrom_square_matrix(system: ContourSystem, per_circle: int) -> np.ndarray:
    """Plain (unconditioned) Nystrom matrix for one solution column.

    Singular once the quadrature resolves the kernel of the integral
    equation; exposed for the rank diagnostics.
    """
    nodes, weights, which = _gather_nodes(system, per_circle)
    K, _ = _kernel_matrix(system, nodes, which)
    M = len(nodes)
    blocks = -weights[None, :, None, None] * K
    blocks[np.arange(M), np.arange(M)] += np.eye(2)
    return blocks.transpose(0, 2, 1, 3).reshape(2 * M, 2 * M)


def _estimate_condition(R: np.ndarray, iterations: int = 80) -> float:
    """2-norm condition estimate of a triangular factor by power iteration."""
    n = R.shape[0]
    v = np.linspace(1.0, 2.0, n).astype(np.complex128)
    v /= np.linalg.norm(v)
    for _ in range(iterations):
        w = R @ v
        v = R.conj().T @ w
        nv = np.linalg.norm(v)
        if nv == 0.0:
            return np.inf
        v /= nv
    sigma_max = math.sqrt(nv)
    v = np.linspace(1.0, 2.0, n).astype(np.complex128)
    v /= np.linalg.norm(v)
    try:
        for _ in range(iterations):
            w = solve_triangular(R, v, trans="C")
            v = solve_triangular(R, w)
            nv = np.linalg.norm(v)
            if not np.isfinite(nv) or nv == 0.0:
                return np.inf
            v /= nv
    except (np.linalg.LinAlgError, ValueError):
        return np.inf
    sigma_min = 1.0 / math.sqrt(nv)
    return sigma_max / sigma_min


def least_squares_qr(A: np.ndarray, B: np.ndarray,
                     exact_condition_below: int = 700,
                     refine_steps: int = 1):
    """Least squares via economic QR, with a 2-norm condition estimate.

    Returns (X, residual_inf, condition).  One step of residual refinement
    recovers the digits the triangular solve loses on the badly scaled
    three-circle systems.  Small systems get the exact singular-value
    condition number, large ones a power-iteration estimate on the
    triangular factor.
    """
    Q, R = qr(A, mode="economic")
    X = solve_triangular(R, Q.conj().T @ B)
    for _ in range(refine_steps):
        X = X + solve_triangular(R, Q.conj().T @ (B - A @ X))
    residual = float(np.max(np.abs(A @ X - B)))
    if A.shape[1] <= exact_condition_below:
        s = np.linalg.svd(R, compute_uv=False)
        condition = float(s[0] / s[-1]) if s[-1] > 0 else np.inf
    else:
        condition = float(_estimate_condition(R))
    return X, residual, condition


def nystrom_solve(system: ContourSystem, N0: int,
                  residual_limit: float | None = None,
                  condition_limit: float = CONDITION_LIMIT) -> NystromSolution:
    """Solve the conditioned Fredholm system with N0 nodes per circle.

    Discretizes the integral equation at the trapezoidal nodes, appends
    the moment-condition rows on the designated circle and solves the two
    matrix columns as independent complex least-squares problems of shape
    (2*nodes + conditions) x (2*nodes).

    ``meets_sampling_condition`` records whether N0 clears the heuristic
    threshold below which spectral convergence has not set in yet; running
    under it is allowed (the convergence studies need it) but the result
    only carries pre-asymptotic accuracy.
    """
    if N0 < 8:
        raise ValueError("need at least 8 nodes per circle")
    nodes, weights, which = _gather_nodes(system, N0)
    K, g = _kernel_matrix(system, nodes, which)
    M = len(nodes)
    blocks = -weights[None, :, None, None] * K
    blocks[np.arange(M), np.arange(M)] += np.eye(2)
    A_sq = blocks.transpose(0, 2, 1, 3).reshape(2 * M, 2 * M)
    cond_rows = _condition_rows(system, nodes, weights, which)
    A = np.vstack([A_sq, cond_rows])
    q = system.condition_count
    B = np.zeros((2 * M + q, 2), dtype=np.complex128)
    B[0:2 * M:2, 0] = 1.0
    B[1:2 * M:2, 1] = 1.0
    if q >= 1:
        B[2 * M, 1] = 1.0
    X, residual, condition = least_squares_qr(A, B)
    if condition > condition_limit:
        raise IllConditioned(
            f"least-squares condition estimate {condition:.3e} exceeds "
            f"{condition_limit:.1e}")
    if residual_limit is not None and residual > residual_limit:
        raise ResidualTooLarge(
            f"least-squares residual {residual:.3e} exceeds {residual_limit:.1e}")
    phi = np.empty((M, 2, 2), dtype=np.complex128)
    phi[:, 0, :] = X[0:2 * M:2, :]
    phi[:, 1, :] = X[1:2 * M:2, :]
    return NystromSolution(
        nodes=nodes, weights=weights, phi_minus=phi,
        lsq_condition_estimate=condition, residual=residual,
        node_circle=which, nodes_per_circle=N0,
        meets_sampling_condition=N0 >= system.condition_count + 8,
        jump_at_nodes=g)


def offnode_residual(system: ContourSystem, sol: NystromSolution) -> float:
    """Worst residual of the integral equation at inter-node midpoints.

    The boundary values are trigonometrically interpolated to the
    midpoints of each circle (they are smooth periodic functions of the
    circle parameter), the integral term is evaluated by the solved
    quadrature sum, and the defect against the identity right-hand side is
    returned.  Measures discretization quality independently of the
    collocation points.
    """
    worst = 0.0
    N0 = sol.nodes_per_circle
    freqs = np.fft.fftfreq(N0, d=1.0 / N0)
    shift = np.exp(1j * freqs * np.pi / N0)  # half a node spacing
    for idx, circle in enumerate(system.circles):
        sel = sol.node_circle == idx
        phi = sol.phi_minus[sel]
        phi_mid = np.fft.ifft(np.fft.fft(phi, axis=0)
                              * shift[:, None, None], axis=0)
        theta = 2.0 * np.pi * (np.arange(N0) + 0.5) / N0
        mids = circle.center + circle.radius * np.exp(1j * theta)
        for p, zeta in enumerate(mids):
            K_row = np.stack([fredholm_kernel(complex(zeta), complex(e), system)
                              for e in sol.nodes])
            integral = np.einsum("j,jab->ab", sol.weights,
                                 np.einsum("jab,jbc->jac", K_row, sol.phi_minus))
            defect = phi_mid[p] - integral - np.eye(2)
            worst = max(worst, float(np.max(np.abs(defect))))
    return worst


def in_positive_domain(system: ContourSystem, z: complex) -> bool:
    """Whether z lies in the bounded domain to the left of every circle."""
    for circle in system.circles:
        inside = circle.signed_distance(z) < 0
        if circle.orientation == +1 and not inside:
            return False
        if circle.orientation == -1 and inside:
            return False
    return True


def evaluate_solution(sol: NystromSolution, system: ContourSystem,
                      z: complex) -> np.ndarray:
    """Reconstruct the RHP solution at z off the contour by Cauchy integrals."""
    min_radius = min(c.radius for c in system.circles)
    closest = min(abs(c.signed_distance(z)) for c in system.circles)
    if closest < 0.05 * min_radius:
        raise TooCloseToContour(
            f"z={z} is within {closest:.3e} of the contour")
    cauchy = sol.weights / (sol.nodes - z)
    if in_positive_domain(system, z):
        gphi = np.einsum("jab,jbc->jac", sol.jump_at_nodes, sol.phi_minus)
        return np.einsum("j,jab->ab", cauchy, gphi)
    return np.eye(2) - np.einsum("j,jab->ab", cauchy, sol.phi_minus)


ZA_CONDITION_LIMIT = 1e15


def za_solve(n: int, m: int, a: float, N0: int = 42,
             r_inner: float = DEFAULT_R_INNER,
             r_outer: float = DEFAULT_R_OUTER,
             residual_limit: float | None = None):
    """Contour system, Nystrom solution and X(0) for the Z^a problem.

    The jump data on the outer circle span a dynamic range of order
    r_outer^(n+m), so the least-squares matrix is legitimately far worse
    conditioned than the model problem; the guard is therefore the edge of
    double precision rather than the model-problem threshold.
    """
    if (n + m) % 2 != 0:
        raise ParityViolation(f"n+m must be even, got n={n}, m={m}")
    if n + m < 2:
        raise ValueError("need n+m >= 2")
    system = build_sigma(n, m, a, r_inner, r_outer)
    sol = nystrom_solve(system, N0, residual_limit=residual_limit,
                        condition_limit=ZA_CONDITION_LIMIT)
    X0 = evaluate_solution(sol, system, 0.0 + 0.0j)
    return system, sol, X0


def za_value(n: int, m: int, a: float, N0: int = 42,
             r_inner: float = DEFAULT_R_INNER,
             r_outer: float = DEFAULT_R_OUTER,
             residual_limit: float | None = None) -> complex:
    """Z^a_{n,m} via the conditioned Nystrom solve and LU extraction at 0."""
    _, _, X0 = za_solve(n, m, a, N0, r_inner, r_outer, residual_limit)
    if abs(X0[0, 0]) < 1e-10:
        raise ExtractionDegenerate(f"X_11(0) = {X0[0, 0]} too small")
    return (-1.0) ** (m + 1) * X0[1, 0] / X0[0, 0]


def truncated_exponential(k: int, z: complex) -> complex:
    """Partial Taylor sum e_k(z) = sum_{j<k} z^j / j!, by Horner."""
    if k < 0:
        raise ValueError("order must be non-negative")
    if k == 0:
        return 0.0 + 0.0j
    acc = 1.0 + 0.0j
    for j in range(k - 1, 0, -1):
        acc = 1.0 + acc * z / j
    return acc


def model_exact_solution(m: int, z: complex) -> np.ndarray:
    """Closed-form model solution, inner and outer branch."""
    z = complex(z)
    if abs(z) > 1.0:
        e = truncated_exponential(m, -z)
        return np.array([[1.0, -z ** (-m) * e], [0.0, 1.0]],
                        dtype=np.complex128)
    if z == 0:
        if m == 0:
            return np.array([[1.0, 0.0], [1.0, 1.0]], dtype=np.complex128)
        return np.array([[0.0, -1.0],
                         [1.0, (-1.0) ** m / math.factorial(m)]],
                        dtype=np.complex128)
    e = truncated_exponential(m, -z)
    ez = np.exp(z)
    return np.array([[z ** m, -e], [ez, z ** (-m) * (1.0 - ez * e)]],
                    dtype=np.complex128)


def model_kernel_basis(m: int, N0: int | None = None):
    """Discrete kernel vectors of the unconditioned model Nystrom operator.

    Solves the triangular change of basis z^k = sum_j a_kj z^j e_{m-j}(z)
    in the monomial basis, forms the polynomials p_k and samples the m
    vectors (-2 zeta^{-m} p_k(zeta), zeta^k) at the quadrature nodes.
    Returns (vectors, nodes) with vectors of shape (m, 2*N0) in the same
    component interleaving the Nystrom matrix uses.
    """
    if m < 1:
        raise ValueError("kernel basis needs m >= 1")
    if N0 is None:
        N0 = m + 40
    basis = np.zeros((m, m), dtype=np.float64)
    for j in range(m):
        for i in range(j, m):
            basis[i, j] = 1.0 / math.factorial(i - j)
    if abs(np.prod(np.diag(basis))) < 1e-300:
        raise SingularBasisChange("basis-change matrix has zero diagonal")
    coeffs = solve_triangular(basis, np.eye(m), lower=True)  # column k = a_k
    circle = OrientedCircle(center=0.0 + 0j, radius=1.0, orientation=+1)
    nodes = circle.nodes(N0)
    vectors = np.zeros((m, 2 * N0), dtype=np.complex128)
    powers = nodes[None, :] ** np.arange(m)[:, None]   # powers[j] = nodes^j
    for k in range(m):
        p_k = coeffs[:, k] @ powers
        vectors[k, 0::2] = -2.0 * nodes ** (-m) * p_k
        vectors[k, 1::2] = nodes ** k
    return vectors, nodes


def winding_number(circle: OrientedCircle, g, samples: int = 256) -> int:
    """Winding number of g around 0 along the circle, by the argument principle.

    Quadrature of g'/g with the derivative taken spectrally in the circle
    parameter; result must land within 0.1 of an integer.
    """
    theta = 2.0 * np.pi * np.arange(samples) / samples
    zs = circle.center + circle.radius * np.exp(1j * theta)
    vals = np.asarray([g(z) for z in zs], dtype=np.complex128)
    if np.min(np.abs(vals)) == 0.0:
        raise AmbiguousWinding("g vanishes at a quadrature node")
    freqs = np.fft.fftfreq(samples, d=1.0 / samples)
    dvals = np.fft.ifft(1j * freqs * np.fft.fft(vals))
    w = np.sum(dvals / vals) / (1j * samples)
    w = circle.orientation * w.real
    nearest = round(w)
    if abs(w - nearest) > 0.1:
        raise AmbiguousWinding(
            f"winding quadrature gave {w:.4f}, not close to an integer")
    return int(nearest)
