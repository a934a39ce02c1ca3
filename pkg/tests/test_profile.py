import numpy as np
import pytest

from nls_lab import (
    DomainError,
    ModelParams,
    build_profile,
    closed_form_profile,
    mass_of_wave,
    phi0_from_omega,
)
from conftest import phi0_inside


class TestBuildProfile:
    def test_peak_value_matches_branch(self):
        model = ModelParams(-1, 1, 2, 3)
        prof = build_profile(model, 1.0, 0.05, 50.0)
        assert prof.phi0 == pytest.approx(phi0_from_omega(model, 1.0), abs=1e-10)

    def test_even_and_decreasing(self):
        prof = build_profile(ModelParams(-1, 1, 2, 3), 1.0, 0.05, 50.0)
        n = (len(prof.values) - 1) // 2
        assert np.array_equal(prof.values[:n], prof.values[:n:-1])
        right = prof.values[n:]
        assert np.all(np.diff(right) < 0.0)
        assert np.all(right > 0.0)

    def test_matches_closed_form_on_special_line(self):
        # q = 2p - 1 admits an explicit profile
        model = ModelParams(-1, 1, 2, 3)
        prof = build_profile(model, 1.0, 0.01, 30.0)
        exact = closed_form_profile(model, 1.0, prof.x)
        assert np.max(np.abs(prof.values - exact)) < 1e-8

    def test_matches_closed_form_with_defocusing_tail(self):
        model = ModelParams(2, -1, 2.5, 4)  # omega* ~ 0.816
        prof = build_profile(model, 0.5, 0.01, 30.0)
        exact = closed_form_profile(model, 0.5, prof.x)
        assert np.max(np.abs(prof.values - exact)) < 1e-8

    def test_first_integral_residual(self):
        model = ModelParams(-1, 1, 2, 3)
        prof = build_profile(model, 1.0, 0.05, 50.0)
        v, w = prof.values, prof.phi_x
        residual = (
            -0.5 * w**2
            + 0.5 * prof.omega * v**2
            - model.a_p / (model.p + 1) * v ** (model.p + 1)
            - model.a_q / (model.q + 1) * v ** (model.q + 1)
        )
        assert np.max(np.abs(residual)) <= 1e-8 * prof.phi0**2

    def test_profile_equation_residual_oracle(self):
        # centered second differences on a fine grid recover the profile ODE
        model = ModelParams(-1, 1, 2, 3)
        prof = build_profile(model, 1.0, 5e-4, 22.0)
        v = prof.values
        lhs = (v[:-2] - 2.0 * v[1:-1] + v[2:]) / prof.dx**2
        rhs = prof.omega * v[1:-1] - model.a_p * v[1:-1] ** model.p - model.a_q * v[1:-1] ** model.q
        assert np.max(np.abs(lhs - rhs)) <= 1e-6 * prof.phi0

    def test_insufficient_half_width_rejected(self):
        with pytest.raises(DomainError, match="half_width"):
            build_profile(ModelParams(-1, 1, 2, 3), 1.0, 0.05, 5.0)

    def test_closed_form_requires_special_line(self):
        with pytest.raises(DomainError):
            closed_form_profile(ModelParams(1, 1, 2, 4), 1.0, np.array([0.0]))


class TestMassOfWave:
    def test_agrees_with_grid_quadrature(self):
        model = ModelParams(-1, 1, 2, 3)
        prof = build_profile(model, 1.0, 0.01, 40.0)
        grid_mass = 0.5 * np.trapezoid(prof.values**2, dx=prof.dx)
        assert mass_of_wave(model, 1.0) == pytest.approx(grid_mass, rel=1e-6)

    def test_positive_on_random_models(self, rng):
        for _ in range(100):
            signs = [(1, 1), (1, -1), (-1, 1)][rng.integers(3)]
            p = rng.uniform(1.05, 6.0)
            model = ModelParams(
                signs[0] * rng.uniform(0.25, 4.0),
                signs[1] * rng.uniform(0.25, 4.0),
                p,
                p + rng.uniform(0.1, 3.0),
            )
            from nls_lab import omega_from_phi0

            omega = omega_from_phi0(model, phi0_inside(model, rng.uniform()))
            assert mass_of_wave(model, omega) > 0.0

    def test_increasing_on_stable_branch(self):
        model = ModelParams(-1, 1, 2, 3)  # type S: slope positive everywhere
        omegas = np.geomspace(0.05, 20.0, 12)
        masses = [mass_of_wave(model, om) for om in omegas]
        assert np.all(np.diff(masses) > 0.0)

    def test_profile_consistency_across_sign_cases(self, rng):
        # quadrature mass vs discrete mass of the reconstructed wave
        for _ in range(20):
            signs = [(1, 1), (1, -1), (-1, 1)][rng.integers(3)]
            p = rng.uniform(1.3, 4.0)
            model = ModelParams(
                signs[0] * rng.uniform(0.5, 2.0),
                signs[1] * rng.uniform(0.5, 2.0),
                p,
                p + rng.uniform(0.3, 2.0),
            )
            from nls_lab import frequency_window

            w = frequency_window(model)
            omega = 0.5 * w.omega_star if w.omega_star is not None else rng.uniform(0.5, 2.0)
            prof = build_profile(model, omega, 0.02, 30.0 / np.sqrt(min(omega, 1.0)))
            grid_mass = 0.5 * np.trapezoid(prof.values**2, dx=prof.dx)
            assert mass_of_wave(model, omega) == pytest.approx(grid_mass, rel=1e-6)
