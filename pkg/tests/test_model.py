import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nls_lab import (
    DomainError,
    ModelParams,
    NoStandingWaveError,
    dphi0_domega,
    frequency_window,
    omega_from_phi0,
    phi0_from_omega,
)
from conftest import model_strategy, phi0_inside
from oracles import central_difference


class TestModelParams:
    def test_rejects_bad_exponents(self):
        with pytest.raises(DomainError):
            ModelParams(1, 1, 0.5, 3)
        with pytest.raises(DomainError):
            ModelParams(1, 1, 3, 2)
        with pytest.raises(DomainError):
            ModelParams(1, 1, 2, 2)

    def test_rejects_zero_coefficients(self):
        with pytest.raises(DomainError):
            ModelParams(0, 1, 2, 3)
        with pytest.raises(DomainError):
            ModelParams(1, 0, 2, 3)

    def test_sign_case_labels(self):
        assert ModelParams(1, -1, 2, 3).sign_case == "focusing-defocusing"
        assert ModelParams(-1, 1, 2, 3).sign_case == "defocusing-focusing"


class TestFrequencyWindow:
    def test_both_positive_is_unbounded(self):
        w = frequency_window(ModelParams(1, 1, 2, 3))
        assert w.omega_star is None and w.phi_upper is None and w.phi_lower == 0.0

    def test_defocusing_focusing_lower_edge(self):
        w = frequency_window(ModelParams(-1, 1, 2, 3))
        assert w.phi_lower == pytest.approx(4.0 / 3.0, rel=1e-14)
        assert w.omega_star is None

    def test_focusing_defocusing_upper_edge(self):
        w = frequency_window(ModelParams(2, -1, 3, 5))
        assert w.phi_upper == pytest.approx(math.sqrt(1.5), rel=1e-14)
        assert w.omega_star == pytest.approx(0.75, rel=1e-14)

    def test_no_standing_waves(self):
        with pytest.raises(NoStandingWaveError):
            frequency_window(ModelParams(-1, -1, 2, 3))


class TestOmegaFromPhi0:
    def test_simple_value(self):
        assert omega_from_phi0(ModelParams(2, 3, 3, 5), 1.0) == pytest.approx(2.0, rel=1e-14)

    def test_vanishes_at_lower_edge(self):
        # omega -> 0 as phi0 approaches the a_p < 0 window edge from above
        model = ModelParams(-1, 1, 2, 3)
        lower = frequency_window(model).phi_lower
        for eps in (1e-4, 1e-6, 1e-8):
            assert 0 < omega_from_phi0(model, lower * (1 + eps)) < 10 * eps

    def test_approaches_omega_star_at_upper_edge(self):
        model = ModelParams(2, -1, 3, 5)
        w = frequency_window(model)
        omega = omega_from_phi0(model, w.phi_upper * (1 - 1e-7))
        assert abs(omega - w.omega_star) < 1e-12

    def test_out_of_window_rejected(self):
        model = ModelParams(-1, 1, 2, 3)
        with pytest.raises(DomainError):
            omega_from_phi0(model, 1.0)  # below phi_lower = 4/3
        with pytest.raises(DomainError):
            omega_from_phi0(ModelParams(2, -1, 3, 5), 2.0)  # above phi_upper


class TestPhi0FromOmega:
    def test_inverse_of_simple_value(self):
        assert phi0_from_omega(ModelParams(2, 3, 3, 5), 2.0) == pytest.approx(1.0, rel=1e-12)

    def test_quadratic_case(self):
        # for p=2, q=3 the relation is quadratic in phi0 with explicit root
        phi0 = phi0_from_omega(ModelParams(-1, 1, 2, 3), 1.0)
        assert phi0 == pytest.approx((2.0 + math.sqrt(22.0)) / 3.0, rel=1e-12)

    def test_rejects_omega_outside_window(self):
        with pytest.raises(DomainError):
            phi0_from_omega(ModelParams(1, 1, 2, 3), -1.0)
        with pytest.raises(DomainError):
            phi0_from_omega(ModelParams(2, -1, 3, 5), 0.8)  # above omega_star

    @settings(max_examples=60, deadline=None)
    @given(model=model_strategy(), u1=st.floats(0.01, 0.99), u2=st.floats(0.01, 0.99))
    def test_monotone(self, model, u1, u2):
        w1 = omega_from_phi0(model, phi0_inside(model, min(u1, u2)))
        w2 = omega_from_phi0(model, phi0_inside(model, max(u1, u2)))
        if w1 < w2:
            assert phi0_from_omega(model, w1) < phi0_from_omega(model, w2)


class TestRoundTrip:
    def test_thousand_random_samples(self, rng):
        # all three sign cases, relative 1e-10
        for _ in range(1000):
            signs = [(1, 1), (1, -1), (-1, 1)][rng.integers(3)]
            p = rng.uniform(1.05, 6.0)
            model = ModelParams(
                signs[0] * rng.uniform(0.25, 4.0),
                signs[1] * rng.uniform(0.25, 4.0),
                p,
                p + rng.uniform(0.1, 3.0),
            )
            phi0 = phi0_inside(model, rng.uniform())
            back = phi0_from_omega(model, omega_from_phi0(model, phi0))
            assert abs(back - phi0) <= 1e-10 * phi0


class TestDphi0Domega:
    def test_simple_value(self):
        assert dphi0_domega(ModelParams(2, 3, 3, 5), 1.0) == pytest.approx(1.0 / 6.0, rel=1e-14)

    def test_positive_on_thousand_samples(self, rng):
        for _ in range(1000):
            signs = [(1, 1), (1, -1), (-1, 1)][rng.integers(3)]
            p = rng.uniform(1.05, 6.0)
            model = ModelParams(
                signs[0] * rng.uniform(0.25, 4.0),
                signs[1] * rng.uniform(0.25, 4.0),
                p,
                p + rng.uniform(0.1, 3.0),
            )
            assert dphi0_domega(model, phi0_inside(model, rng.uniform())) > 0.0

    @settings(max_examples=50, deadline=None)
    @given(model=model_strategy(), u=st.floats(0.1, 0.9))
    def test_matches_finite_difference_of_inverse(self, model, u):
        phi0 = phi0_inside(model, u)
        omega = omega_from_phi0(model, phi0)
        h = 1e-6 * max(omega, 1e-3)
        w = frequency_window(model)
        if w.omega_star is not None and omega + h >= w.omega_star:
            return
        if omega - h <= 0:
            return
        fd = central_difference(lambda om: phi0_from_omega(model, om), omega, h)
        assert dphi0_domega(model, phi0) == pytest.approx(fd, rel=1e-6)
