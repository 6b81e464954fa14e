"""Forward, backward and stabilized lattice construction."""

import math
from fractions import Fraction

import numpy as np
import pytest

from zmap import core, evolution

Z68_REFERENCE = 3.610326860525178 + 2.568086087959661j


def z1_exact(N):
    return np.array([[n + 1j * m for m in range(N + 1)] for n in range(N + 1)])


class TestNaiveForward:
    def test_exact_at_a1(self):
        lat = evolution.evolve_forward_naive(1.0, 20)
        assert np.max(np.abs(lat.values - z1_exact(20))) <= 1e-12

    def test_alternative_fill_exact_at_a1(self):
        lat = evolution.evolve_forward_naive(1.0, 20, alternative=True)
        assert np.max(np.abs(lat.values - z1_exact(20))) <= 1e-12

    def test_instability_reaches_diagonal_error(self, stable_49):
        lat = evolution.evolve_forward_naive(2 / 3, 49)
        errors = evolution.diagonal_error_series(lat, stable_49)
        by_25 = errors[: 25 - 1]  # series starts at n=2
        assert float(np.max(by_25)) >= 0.1

    def test_error_growth_monotone_within_jitter(self, stable_49):
        lat = evolution.evolve_forward_naive(2 / 3, 49)
        e = evolution.diagonal_error_series(lat, stable_49)[: 24]
        assert e[0] <= 1e-13
        running = e[0]
        for value in e[1:]:
            assert value >= running / 10.0
            running = max(running, value)

    def test_oracle_reproduces_reference_value(self):
        lat = evolution.evolve_forward_naive(Fraction(2, 3), 12,
                                             precision_bits=256)
        assert complex(lat.values[6, 8]) == pytest.approx(Z68_REFERENCE,
                                                          abs=1e-12)

    def test_oracle_residuals(self, oracle_20):
        cr, con = core.lattice_residuals(oracle_20)
        assert cr <= 1e-30
        assert con <= 1e-30

    def test_oracle_domain_cap(self):
        with pytest.raises(ValueError):
            evolution.evolve_forward_naive(Fraction(2, 3), 30,
                                           precision_bits=256)


class TestStable:
    def test_exact_at_a1(self):
        lat = evolution.evolve_stable(1.0, 20)
        assert np.max(np.abs(lat.values - z1_exact(20))) <= 1e-12

    def test_reference_value(self):
        lat = evolution.evolve_stable(2 / 3, 12)
        assert complex(lat.values[6, 8]) == pytest.approx(Z68_REFERENCE,
                                                          abs=1e-9)

    def test_residuals_at_49(self, stable_49):
        cr, con = core.lattice_residuals(stable_49)
        assert max(cr, con) <= 1e-9

    @pytest.mark.parametrize("a", [1 / 3, 2 / 3, 1.0, 1.5])
    def test_agrees_with_oracle(self, a):
        frac = Fraction(a).limit_denominator(10)
        stable = evolution.evolve_stable(a, 20)
        oracle = evolution.evolve_forward_naive(frac, 20, precision_bits=256)
        diff = np.max(np.abs(stable.values - oracle.to_complex_array()))
        assert diff <= 1e-10

    @pytest.mark.parametrize("a", [1 / 3, 2 / 3, 1.5])
    def test_diagonal_symmetry(self, a):
        lat = evolution.evolve_stable(a, 25)
        w = core.unit_phase(a / 2.0)
        v = lat.values
        worst = max(abs(v[m, n] - w * np.conj(v[n, m]))
                    for n in range(26) for m in range(26))
        assert worst <= 1e-9

    def test_initial_values_exact(self, stable_49):
        v = stable_49.values
        assert v[0, 0] == 0
        assert v[1, 0] == 1
        assert v[0, 1] == core.unit_phase(2 / 3 / 2)


class TestBackwardCrossRatio:
    def test_near_exact_at_a1(self):
        # roundoff in the seeded diagonal band is amplified toward the
        # boundary, so bitwise a=1 exactness is out of reach here
        lat = evolution.evolve_backward_crossratio(1.0, 20)
        assert np.max(np.abs(lat.values - z1_exact(20))) <= 1e-6

    def test_small_sizes_agree_with_stable(self):
        st = evolution.evolve_stable(2 / 3, 10)
        bw = evolution.evolve_backward_crossratio(2 / 3, 10)
        assert np.max(np.abs(bw.values - st.values)) <= 1e-8

    def test_boundary_instability_at_49(self, stable_49):
        bw = evolution.evolve_backward_crossratio(2 / 3, 49)
        diff = np.abs(bw.values - stable_49.values)
        boundary = max(float(diff[:, 0].max()), float(diff[0, :].max()))
        assert boundary >= 1e-2


class TestDpiiForward:
    def test_stays_put_at_a1(self):
        _, mod_err = evolution.dpii_forward_unstable(1.0, 50)
        assert float(mod_err.max()) <= 1e-12

    def test_modulus_indicator_grows(self):
        _, mod_err = evolution.dpii_forward_unstable(2 / 3, 30)
        assert float(np.max(mod_err[: 31])) >= 1e-3

    def test_divergence_from_bvp(self, bvp_300):
        xs, _ = evolution.dpii_forward_unstable(2 / 3, 30)
        err = np.abs(np.asarray(xs) - bvp_300.x[:31])
        assert float(err.max()) >= 0.1

    def test_indicator_tracks_true_error(self, bvp_300):
        xs, mod_err = evolution.dpii_forward_unstable(2 / 3, 20)
        err = np.abs(np.asarray(xs) - bvp_300.x[:21])
        for n in range(5, 21):
            if err[n] > 1e-14:
                ratio = mod_err[n] / err[n]
                assert 1e-2 <= ratio <= 1e2

    def test_matches_recurrence(self):
        from zmap import painleve

        xs, _ = evolution.dpii_forward_unstable(2 / 3, 10)
        for n in range(1, 10):
            r = painleve.dpii_residual(xs[n - 1], xs[n], xs[n + 1], n, 2 / 3)
            assert abs(r) <= 1e-12


class TestReports:
    def test_error_series_shape(self, stable_49):
        lat = evolution.evolve_forward_naive(2 / 3, 49)
        report = evolution.compare_to_reference(lat, stable_49)
        assert len(report.errors) == 48
        assert report.method_tag == core.MethodTag.NAIVE
        assert np.all(report.errors >= 0)

    def test_series_csv(self):
        text = evolution.error_series_to_csv(np.array([1e-3, 2e-3]))
        assert text.splitlines()[0] == "n,error"
        assert text.splitlines()[1].startswith("2,")
