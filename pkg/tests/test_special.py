import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nls_lab import DomainError, beta, h_function, h_function_quadrature, log_gamma
from nls_lab.special import beta_quadrature


class TestLogGamma:
    def test_half_integer_values(self):
        assert log_gamma(0.5) == pytest.approx(0.5 * math.log(math.pi), rel=1e-14)
        assert log_gamma(5.0) == pytest.approx(math.log(24.0), rel=1e-14)

    def test_domain(self):
        with pytest.raises(DomainError):
            log_gamma(0.0)
        with pytest.raises(DomainError):
            log_gamma(-1.5)


class TestBeta:
    def test_known_values(self):
        assert beta(1.0, 0.5) == pytest.approx(2.0, rel=1e-12)
        assert beta(0.5, 0.5) == pytest.approx(math.pi, rel=1e-12)
        assert beta(2.0, 0.5) == pytest.approx(4.0 / 3.0, rel=1e-12)

    @settings(max_examples=200, deadline=None)
    @given(x=st.floats(0.05, 30.0), y=st.floats(0.05, 30.0))
    def test_symmetry(self, x, y):
        assert beta(x, y) == pytest.approx(beta(y, x), rel=1e-12)

    @settings(max_examples=200, deadline=None)
    @given(x=st.floats(0.05, 30.0), y=st.floats(0.05, 30.0))
    def test_recurrence(self, x, y):
        assert beta(x + 1.0, y) == pytest.approx(beta(x, y) * x / (x + y), rel=1e-12)

    def test_quadrature_oracle_agrees(self):
        for x, y in [(0.3, 0.4), (1.5, 2.5), (4.0, 0.6)]:
            assert beta_quadrature(x, y) == pytest.approx(beta(x, y), rel=1e-11)

    def test_domain(self):
        with pytest.raises(DomainError):
            beta(-1.0, 2.0)
        with pytest.raises(DomainError):
            beta(1.0, 0.0)


class TestHFunction:
    def test_exact_value_at_one_one(self):
        assert abs(h_function(1.0, 1.0) - 2.0) < 1e-12

    def test_closed_form_matches_singular_quadrature(self, rng):
        for _ in range(25):
            x = math.exp(rng.uniform(math.log(0.2), math.log(5.0)))
            y = math.exp(rng.uniform(math.log(0.2), math.log(5.0)))
            closed = h_function(x, y)
            direct = h_function_quadrature(x, y)
            assert abs(closed - direct) <= 1e-9 * abs(closed)

    def test_positive(self, rng):
        for _ in range(50):
            x, y = rng.uniform(0.1, 8.0, size=2)
            assert h_function(x, y) > 0.0

    def test_domain(self):
        with pytest.raises(DomainError):
            h_function(0.0, 1.0)
        with pytest.raises(DomainError):
            h_function_quadrature(1.0, -2.0)
