"""Fringe fitting and the visibility -> correlation-bound inversion.

All synthetic fringes here are built directly from the fit model
offset*(1 + v*cos(m*theta + phi0)), so the fit layer is tested in isolation
from the interference engine.
"""

import math
from types import SimpleNamespace

import numpy as np
import pytest

import noonfringe.analysis
from noonfringe import (
    BootstrapResult,
    CorrelationEstimate,
    FitConvergenceError,
    FitResult,
    FringeScan,
    InfeasibleVisibilityError,
    bootstrap_kappa_uncertainty,
    fit_fringe,
    kappa_from_visibility,
    self_consistent_calibration,
    sigma_phi_from_visibility,
)

LN2 = math.log(2.0)

THETAS = np.linspace(0.0, math.pi, 100)

# dimensionless dispersion strength that makes (v=0.568, kappa=0.14) exact
T_SELF_CONSISTENT = 7.147083062419402
# -2 ln(0.568)
SIGMA_PHI_SQ_REF = 1.1312677205219717


def model_counts(offset=1000.0, v=0.568, phase=0.244, m=8.0, thetas=THETAS):
    return offset * (1.0 + v * np.cos(m * thetas + phase))


@pytest.fixture(scope="module")
def calibration(delta_omega):
    return T_SELF_CONSISTENT / delta_omega


class TestFringeScan:
    def test_too_few_points_rejected(self):
        with pytest.raises(ValueError, match="8"):
            FringeScan(np.linspace(0, 1, 7), np.ones(7))

    def test_short_span_rejected(self):
        with pytest.raises(ValueError, match="period"):
            FringeScan(np.linspace(0, math.pi / 5, 20), np.ones(20))

    def test_negative_counts_rejected(self):
        counts = np.ones(20)
        counts[3] = -1.0
        with pytest.raises(ValueError, match="nonnegative"):
            FringeScan(np.linspace(0, 1, 20), counts)

    def test_shape_mismatch_rejected(self):
        with pytest.raises(ValueError, match="matching"):
            FringeScan(np.linspace(0, 1, 20), np.ones(19))

    def test_nonpositive_exposure_rejected(self):
        with pytest.raises(ValueError, match="exposure"):
            FringeScan(np.linspace(0, 1, 20), np.ones(20), exposure=0.0)


class TestFitResult:
    def make(self, **kw):
        args = dict(offset=1000.0, visibility=0.5, phase0=0.3, harmonic=8.0,
                    covariance=np.eye(4), residual_rms=1.0)
        args.update(kw)
        return FitResult(**args)

    def test_stderr_indexing(self):
        r = self.make(covariance=np.diag([4.0, 9.0, 16.0, 25.0]))
        assert r.stderr("offset") == 2.0
        assert r.stderr("visibility") == 3.0
        assert r.stderr("phase0") == 4.0
        assert r.stderr("harmonic") == 5.0
        with pytest.raises(KeyError):
            r.stderr("period")

    def test_model_evaluates_the_fitted_fringe(self):
        r = self.make()
        th = np.array([0.0, 0.1])
        expected = 1000.0 * (1.0 + 0.5 * np.cos(8.0 * th + 0.3))
        assert np.allclose(r.model(th), expected, rtol=1e-15)

    def test_visibility_range_enforced(self):
        with pytest.raises(ValueError, match="visibility"):
            self.make(visibility=1.2)

    def test_phase_range_enforced(self):
        with pytest.raises(ValueError, match="phase0"):
            self.make(phase0=-0.1)
        with pytest.raises(ValueError, match="phase0"):
            self.make(phase0=2.0 * math.pi)

    def test_covariance_must_be_symmetric_4x4(self):
        bad = np.eye(4)
        bad[0, 1] = 0.5
        with pytest.raises(ValueError, match="symmetric"):
            self.make(covariance=bad)
        with pytest.raises(ValueError, match="symmetric"):
            self.make(covariance=np.eye(3))

    def test_covariance_must_be_positive_semidefinite(self):
        bad = np.eye(4)
        bad[0, 1] = bad[1, 0] = 2.0     # eigenvalue -1
        with pytest.raises(ValueError, match="semidefinite"):
            self.make(covariance=bad)


class TestCorrelationEstimate:
    def test_bound_kind_is_fixed(self):
        with pytest.raises(ValueError, match="lower bound"):
            CorrelationEstimate(kappa_bar=0.1, sigma_phi_sq=1.0,
                                visibility_used=0.6, phi_prime_used=1e-13,
                                delta_omega_used=2e13, bound_kind="upper bound")

    def test_negative_kappa_rejected(self):
        with pytest.raises(ValueError, match="nonnegative"):
            CorrelationEstimate(kappa_bar=-0.1, sigma_phi_sq=1.0,
                                visibility_used=0.6, phi_prime_used=1e-13,
                                delta_omega_used=2e13)


class TestFitFringe:
    def test_noiseless_recovery_is_exact(self):
        fit = fit_fringe(FringeScan(THETAS, model_counts()))
        assert fit.visibility == pytest.approx(0.568, abs=1e-9)
        assert fit.phase0 == pytest.approx(0.244, abs=1e-9)
        assert fit.harmonic == pytest.approx(8.0, abs=1e-9)
        assert fit.offset == pytest.approx(1000.0, rel=1e-9)
        assert fit.residual_rms < 1e-6
        assert not fit.degenerate

    def test_fixed_harmonic_zeroes_its_covariance(self):
        fit = fit_fringe(FringeScan(THETAS, model_counts()), fix_harmonic=8.0)
        assert fit.harmonic == 8.0
        assert fit.stderr("harmonic") == 0.0
        assert np.all(fit.covariance[3, :] == 0.0)
        assert np.all(fit.covariance[:, 3] == 0.0)
        assert fit.visibility == pytest.approx(0.568, abs=1e-9)

    def test_nonpositive_fix_harmonic_rejected(self):
        with pytest.raises(ValueError, match="fix_harmonic"):
            fit_fringe(FringeScan(THETAS, model_counts()), fix_harmonic=0.0)

    def test_phase_shift_moves_only_the_phase(self):
        a = fit_fringe(FringeScan(THETAS, model_counts(phase=0.3)))
        b = fit_fringe(FringeScan(THETAS, model_counts(phase=0.8)))
        assert b.phase0 - a.phase0 == pytest.approx(0.5, abs=1e-9)
        assert b.visibility == pytest.approx(a.visibility, abs=1e-12)
        assert b.harmonic == pytest.approx(a.harmonic, abs=1e-12)

    def test_count_scale_moves_only_the_offset(self):
        a = fit_fringe(FringeScan(THETAS, model_counts()))
        b = fit_fringe(FringeScan(THETAS, 3.0 * model_counts()))
        assert b.offset == pytest.approx(3.0 * a.offset, rel=1e-9)
        assert b.visibility == pytest.approx(a.visibility, abs=1e-12)
        assert b.phase0 == pytest.approx(a.phase0, abs=1e-12)

    def test_poisson_scatter_matches_the_reported_stderr(self):
        truth = model_counts()
        vs, ses = [], []
        for i in range(150):
            rng = np.random.default_rng(np.random.SeedSequence(entropy=[77, i]))
            fit = fit_fringe(FringeScan(THETAS, rng.poisson(truth).astype(float)))
            vs.append(fit.visibility)
            ses.append(fit.stderr("visibility"))
        ratio = np.std(vs, ddof=1) / np.mean(ses)
        assert abs(ratio - 1.0) < 0.20

    def test_flat_data_is_flagged_degenerate(self):
        rng = np.random.default_rng(3)
        counts = rng.poisson(1000.0, THETAS.size).astype(float)
        fit = fit_fringe(FringeScan(THETAS, counts), fix_harmonic=8.0)
        assert fit.degenerate
        assert fit.visibility < 3.0 * fit.stderr("visibility")

    def test_convergence_failure_carries_the_best_iterate(self, monkeypatch):
        def fake_least_squares(fun, x0, **kwargs):
            x = np.asarray(x0, dtype=float)
            return SimpleNamespace(x=x, success=False, nfev=2000, cost=1.0,
                                   jac=np.ones((THETAS.size, x.size)))

        monkeypatch.setattr(noonfringe.analysis, "least_squares",
                            fake_least_squares)
        with pytest.raises(FitConvergenceError) as err:
            fit_fringe(FringeScan(THETAS, model_counts()))
        assert isinstance(err.value.best, FitResult)
        assert err.value.best.offset > 0


class TestVisibilityInversion:
    def test_sigma_phi_domain(self):
        with pytest.raises(ValueError):
            sigma_phi_from_visibility(0.0)
        with pytest.raises(ValueError):
            sigma_phi_from_visibility(1.0 + 1e-9)
        with pytest.raises(ValueError):
            sigma_phi_from_visibility(-0.5)

    def test_sigma_phi_reference_points(self):
        full = sigma_phi_from_visibility(1.0)
        assert full == 0.0 and math.copysign(1.0, full) == 1.0
        assert sigma_phi_from_visibility(math.exp(-0.5)) == pytest.approx(
            1.0, rel=1e-12)
        assert sigma_phi_from_visibility(0.568) == pytest.approx(
            SIGMA_PHI_SQ_REF, rel=1e-12)

    def test_reference_inversion(self, calibration, delta_omega):
        est = kappa_from_visibility(0.568, calibration, delta_omega)
        assert est.kappa_bar == pytest.approx(0.14, rel=1e-9)
        assert est.sigma_phi_sq == pytest.approx(SIGMA_PHI_SQ_REF, rel=1e-12)
        assert est.bound_kind == "lower bound"
        assert est.visibility_used == 0.568
        assert est.kappa_uncertainty is None

    @pytest.mark.parametrize("kappa", [0.01, 0.1, 0.14, 1.0, 5.0, 37.0])
    def test_round_trip(self, kappa, calibration, delta_omega):
        s2 = (calibration * delta_omega) ** 2 / (8 * LN2) * kappa / (1 + kappa)
        v = math.exp(-s2 / 2.0)
        est = kappa_from_visibility(v, calibration, delta_omega)
        assert est.kappa_bar == pytest.approx(kappa, rel=1e-9)

    def test_full_visibility_means_zero_correlation(self, calibration,
                                                    delta_omega):
        est = kappa_from_visibility(1.0, calibration, delta_omega)
        assert est.kappa_bar == 0.0

    def test_sign_of_the_calibration_slope_is_irrelevant(self, calibration,
                                                         delta_omega):
        plus = kappa_from_visibility(0.568, calibration, delta_omega)
        minus = kappa_from_visibility(0.568, -calibration, delta_omega)
        assert plus.kappa_bar == minus.kappa_bar

    def test_bound_decreases_as_visibility_recovers(self, calibration,
                                                    delta_omega):
        vs = np.linspace(0.2, 0.95, 8)
        kappas = [kappa_from_visibility(v, calibration, delta_omega).kappa_bar
                  for v in vs]
        sigmas = [sigma_phi_from_visibility(v) for v in vs]
        assert all(a > b for a, b in zip(kappas, kappas[1:]))
        assert all(a > b for a, b in zip(sigmas, sigmas[1:]))

    def test_below_the_floor_is_infeasible(self, calibration, delta_omega):
        floor = math.exp(-(calibration * delta_omega) ** 2 / (16.0 * LN2))
        with pytest.raises(InfeasibleVisibilityError) as err:
            kappa_from_visibility(0.005, calibration, delta_omega)
        assert err.value.visibility == 0.005
        assert err.value.floor == pytest.approx(floor, rel=1e-12)
        assert "calibration" in str(err.value) or "phi_prime" in str(err.value)
        # the floor itself needs kappa -> infinity, so it is infeasible too
        with pytest.raises(InfeasibleVisibilityError):
            kappa_from_visibility(floor, calibration, delta_omega)

    def test_zero_slope_rejected(self, delta_omega):
        with pytest.raises(ValueError, match="phi_prime"):
            kappa_from_visibility(0.568, 0.0, delta_omega)

    def test_uncertainty_is_passed_through(self, calibration, delta_omega):
        est = kappa_from_visibility(0.568, calibration, delta_omega,
                                    kappa_uncertainty=0.02)
        assert est.kappa_uncertainty == 0.02


class TestSelfConsistentCalibration:
    def test_reference_value(self):
        assert self_consistent_calibration() == pytest.approx(
            T_SELF_CONSISTENT, rel=1e-12)

    def test_matches_the_inline_formula(self):
        t = self_consistent_calibration(visibility=0.7, kappa=0.5)
        expected = math.sqrt(-2.0 * math.log(0.7) * 8.0 * LN2 * 1.5 / 0.5)
        assert t == pytest.approx(expected, rel=1e-12)

    def test_closes_the_loop(self, delta_omega):
        t = self_consistent_calibration()
        est = kappa_from_visibility(0.568, t / delta_omega, delta_omega)
        assert est.kappa_bar == pytest.approx(0.14, rel=1e-12)

    def test_domain(self):
        with pytest.raises(ValueError):
            self_consistent_calibration(visibility=1.0)
        with pytest.raises(ValueError):
            self_consistent_calibration(kappa=0.0)


class TestBootstrap:
    def test_needs_at_least_100_resamples(self, calibration, delta_omega):
        scan = FringeScan(THETAS, model_counts())
        with pytest.raises(ValueError, match="100"):
            bootstrap_kappa_uncertainty(scan, calibration, 0.0, delta_omega,
                                        n_resamples=99)

    def test_deterministic_for_a_fixed_seed(self, calibration, delta_omega):
        rng = np.random.default_rng(np.random.SeedSequence(entropy=[11]))
        scan = FringeScan(THETAS, rng.poisson(model_counts()).astype(float))
        a = bootstrap_kappa_uncertainty(scan, calibration, 0.063 * calibration,
                                        delta_omega, n_resamples=100, seed=0,
                                        fix_harmonic=8.0)
        b = bootstrap_kappa_uncertainty(scan, calibration, 0.063 * calibration,
                                        delta_omega, n_resamples=100, seed=0,
                                        fix_harmonic=8.0)
        assert a.kappa_std == b.kappa_std
        assert a.kappa_mean == b.kappa_mean
        assert a.failure_fraction == b.failure_fraction

    def test_noiseless_data_has_no_spread(self, calibration, delta_omega):
        scan = FringeScan(THETAS, 1.0 + 0.568 * np.cos(8.0 * THETAS + 0.244),
                          normalized=True)
        out = bootstrap_kappa_uncertainty(scan, calibration, 0.0, delta_omega,
                                          n_resamples=100, seed=1)
        assert out.kappa_std < 1e-9
        assert out.failure_fraction == 0.0
        assert not out.flagged_unreliable
        assert out.kappa_mean == pytest.approx(0.14, rel=1e-6)

    def test_reference_scale_spread(self, calibration, delta_omega):
        rng = np.random.default_rng(np.random.SeedSequence(entropy=[11]))
        scan = FringeScan(THETAS, rng.poisson(model_counts()).astype(float))
        out = bootstrap_kappa_uncertainty(scan, calibration, 0.063 * calibration,
                                          delta_omega, n_resamples=200, seed=0)
        assert isinstance(out, BootstrapResult)
        assert 0.012 < out.kappa_std < 0.030
        assert 0.12 < out.kappa_mean < 0.18
        assert out.failure_fraction == 0.0
        assert not out.flagged_unreliable

    def test_near_floor_estimates_are_flagged_unreliable(self, calibration,
                                                         delta_omega):
        floor = math.exp(-(calibration * delta_omega) ** 2 / (16.0 * LN2))
        truth = 300.0 * (1.0 + 1.05 * floor * np.cos(8.0 * THETAS + 0.244))
        rng = np.random.default_rng(np.random.SeedSequence(entropy=[5]))
        scan = FringeScan(THETAS, rng.poisson(truth).astype(float))
        out = bootstrap_kappa_uncertainty(scan, calibration, 0.0, delta_omega,
                                          n_resamples=200, seed=2,
                                          fix_harmonic=8.0)
        assert out.failure_fraction > 0.10
        assert out.flagged_unreliable
