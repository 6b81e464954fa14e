"""Laurent coefficient machinery and the coefficient-space model solve."""

import math

import numpy as np
import pytest

from zmap import rhp, spectral
from zmap.errors import ShapeViolation, TailNotResolved


class TestLaurentCoefficients:
    def test_monomial_spike(self):
        series = spectral.laurent_coefficients(lambda z: z ** 5, 12)
        assert series.coefficient(5) == pytest.approx(1.0, abs=1e-14)
        others = [series.coefficient(k) for k in range(-12, 13) if k != 5]
        assert np.max(np.abs(others)) <= 1e-14

    def test_exponential_taylor(self):
        series = spectral.laurent_coefficients(np.exp, 25)
        for k in range(0, 18):
            assert series.coefficient(k) == pytest.approx(
                1.0 / math.factorial(k), abs=1e-14)
        assert abs(series.coefficient(-3)) <= 1e-15

    def test_model_jump_entries(self):
        m = 5
        series = spectral.model_jump_series(m, m + 20)
        for k in range(0, 15):
            assert series.coefficient(k)[1, 0] == pytest.approx(
                1.0 / math.factorial(k), abs=1e-13)
        assert series.coefficient(m)[0, 0] == pytest.approx(1.0, abs=1e-13)
        assert series.coefficient(0)[0, 0] == pytest.approx(-1.0, abs=1e-13)
        assert series.coefficient(-m)[1, 1] == pytest.approx(1.0, abs=1e-13)
        assert abs(series.coefficient(2)[0, 1]) <= 1e-14

    def test_unresolved_tail_raises(self):
        with pytest.raises(TailNotResolved):
            spectral.laurent_coefficients(np.exp, 8)

    def test_sample_floor(self):
        with pytest.raises(ValueError):
            spectral.laurent_coefficients(np.exp, 25, samples=30)


class TestCauchyProjection:
    def test_positive_mode_killed(self):
        coeffs = np.zeros(11, dtype=np.complex128)
        coeffs[5 + 2] = 1.0  # zeta^2
        out = spectral.cauchy_minus_action(spectral.LaurentSeries(coeffs, 5))
        assert np.max(np.abs(out.coeffs)) == 0.0

    def test_negative_mode_negated(self):
        coeffs = np.zeros(11, dtype=np.complex128)
        coeffs[5 - 1] = 1.0  # zeta^-1
        out = spectral.cauchy_minus_action(spectral.LaurentSeries(coeffs, 5))
        assert out.coefficient(-1) == -1.0

    def test_mixed_series(self):
        coeffs = np.arange(-3.0, 4.0).astype(np.complex128)
        out = spectral.cauchy_minus_action(spectral.LaurentSeries(coeffs, 3))
        for k in range(-3, 0):
            assert out.coefficient(k) == -(k + 0.0)
        for k in range(0, 4):
            assert out.coefficient(k) == 0.0


class TestAssembly:
    def test_zero_data_gives_identity_pattern(self):
        zero = spectral.LaurentSeries(np.zeros((41, 2, 2), complex), 20)
        system = spectral.assemble_sie(zero, (-25, 20), (-20, 20))
        expected = np.zeros_like(system.matrix)
        for i, k in enumerate(system.rows):
            for j, c in enumerate(system.cols):
                if k == c:
                    expected[2 * i:2 * i + 2, 2 * j:2 * j + 2] = np.eye(2)
        assert np.array_equal(system.matrix, expected)

    def test_bandwidth_matches_data_support(self):
        m = 1
        data = spectral.model_jump_series(m, m + 20)
        system = spectral.assemble_sie(data, (-30, 25), (-25, 25))
        for i, k in enumerate(system.rows):
            for j, c in enumerate(system.cols):
                block = system.matrix[2 * i:2 * i + 2, 2 * j:2 * j + 2]
                if c >= 0 and k != c:
                    assert np.max(np.abs(block)) == 0.0
                coupled = abs(k - c) <= data.cutoff and c < 0
                if not coupled and k != c:
                    assert np.max(np.abs(block)) <= 1e-13

    def test_shape_guard(self):
        data = spectral.model_jump_series(1, 21)
        with pytest.raises(ShapeViolation):
            spectral.assemble_sie(data, (-21, 21), (-21, 21))

    def test_solution_residual_rowwise(self):
        m = 5
        U, _ = spectral.spectral_solve_model(m, m + 20)
        data = spectral.model_jump_series(m, m + 20)
        resid = spectral.equation_residual(data, U, (-m - 45, m + 25))
        assert resid <= 1e-11


class TestPreconditioner:
    def test_identity_jump_is_noop(self):
        data = spectral.model_jump_series(2, 22)
        system = spectral.assemble_sie(data, (-28, 22), (-22, 22))
        zero = spectral.LaurentSeries(np.zeros((45, 2, 2), complex), 22)
        out = spectral.precondition_sie(zero, system)
        assert np.array_equal(out.matrix, system.matrix)

    def test_singular_values_cluster_at_one(self):
        m, K = 5, 25
        data = spectral.model_jump_series(m, K)
        inverse = spectral.model_jump_series(m, K, inverse=True)
        system = spectral.assemble_sie(data, (-K - 2 * m, K), (-K, K))
        before = np.linalg.svd(system.matrix, compute_uv=False)
        after = np.linalg.svd(
            spectral.precondition_sie(inverse, system).matrix,
            compute_uv=False)
        frac_before = np.mean((before >= 0.5) & (before <= 2.0))
        frac_after = np.mean((after >= 0.5) & (after <= 2.0))
        assert frac_after > frac_before

    def test_determinant_bounded_for_triangular_jump(self):
        # unit lower triangular jump: preconditioned square truncations
        # keep their determinant away from zero as the window grows
        def data_fn(z):
            return np.array([[0, 0], [np.exp(z), 0]], dtype=np.complex128)

        def inv_fn(z):
            return np.array([[0, 0], [-np.exp(z), 0]], dtype=np.complex128)

        dets = []
        for W in (10, 20, 30):
            d = spectral.laurent_coefficients(data_fn, W + 20)
            di = spectral.laurent_coefficients(inv_fn, W + 20)
            M = spectral.sie_operator_matrix(d, (-W, W), (-W, W))
            P = spectral.sie_operator_matrix(di, (-W, W), (-W, W))
            sign, logdet = np.linalg.slogdet(P.matrix @ M.matrix)
            dets.append(abs(sign) * math.exp(logdet))
        assert min(dets) >= 0.5


class TestModelSolve:
    def test_m0_one_step(self):
        _, y0 = spectral.spectral_solve_model(0, 20)
        assert y0[1, 0] == pytest.approx(1.0, abs=1e-13)
        assert y0[0, 1] == pytest.approx(0.0, abs=1e-13)

    def test_m100_headline(self):
        _, y0 = spectral.spectral_solve_model(100, 120)
        exact = rhp.model_exact_solution(100, 0.0)
        assert np.linalg.norm(y0 - exact, 2) <= 1e-12

    @pytest.mark.parametrize("m", [1, 5, 20])
    def test_cross_method_agreement(self, m):
        _, y_spec = spectral.spectral_solve_model(m, m + 20)
        system = rhp.model_contour(m)
        sol = rhp.nystrom_solve(system, m + 40)
        y_nys = rhp.evaluate_solution(sol, system, 0.0 + 0.0j)
        assert np.max(np.abs(y_spec - y_nys)) <= 1e-10

    def test_cutoff_guard(self):
        with pytest.raises(ValueError):
            spectral.spectral_solve_model(10, 15)

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_square_truncation_dichotomy(self, m):
        # square windows inherit the index defect: numerically singular,
        # or else they fake a triangular solution with a dead 12-entry
        cond, y_sq = spectral.spectral_solve_model_square(m, m + 20)
        assert cond > 1e12 or abs(y_sq[0, 1]) < 1e-6
        _, y_rect = spectral.spectral_solve_model(m, m + 20)
        assert y_rect[0, 1] == pytest.approx(-1.0, abs=1e-10)

    def test_coefficient_csv(self):
        U, _ = spectral.spectral_solve_model(1, 21)
        text = spectral.coefficients_to_csv(U)
        lines = text.strip().split("\n")
        assert lines[0] == "k,entry,re,im"
        assert len(lines) == 1 + 4 * (2 * 21 + 1)
