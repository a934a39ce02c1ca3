"""Model parameters and the bijection between frequency and peak amplitude.

The equation i u_t + u_xx + a_p|u|^(p-1)u + a_q|u|^(q-1)u = 0 admits standing
waves e^(i omega t) phi(x) with even, positive, decaying profile phi.  The
peak value phi0 = phi(0) determines omega through

    omega(phi0) = 2 a_p/(p+1) phi0^(p-1) + 2 a_q/(q+1) phi0^(q-1),

a strictly increasing bijection from the admissible peak interval
(phi_lower, phi_upper) onto the admissible frequency interval (0, omega_star).
This module owns that algebra; everything downstream builds on it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.optimize import brentq

from .errors import DomainError, NoStandingWaveError, NumericError


@dataclass(frozen=True)
class ModelParams:
    """The quadruple (a_p, a_q, p, q) defining the double-power nonlinearity.

    Requires 1 < p < q and nonzero coefficients.  Standing-wave operations
    additionally reject the doubly-defocusing case a_p < 0, a_q < 0.
    """

    a_p: float
    a_q: float
    p: float
    q: float

    def __post_init__(self):
        if not (self.a_p != 0.0 and self.a_q != 0.0):
            raise DomainError("coefficients a_p and a_q must be nonzero")
        if not (1.0 < self.p < self.q < math.inf):
            raise DomainError(f"exponents must satisfy 1 < p < q, got p={self.p}, q={self.q}")

    @property
    def sign_case(self) -> str:
        """'focusing'/'defocusing' label of each nonlinearity, lower power first."""
        lo = "focusing" if self.a_p > 0 else "defocusing"
        hi = "focusing" if self.a_q > 0 else "defocusing"
        return f"{lo}-{hi}"

    def has_standing_waves(self) -> bool:
        return not (self.a_p < 0 and self.a_q < 0)


@dataclass(frozen=True)
class FrequencyWindow:
    """Admissible frequency interval (0, omega_star) and peak interval.

    Unbounded ends are tagged with None (never an inf sentinel):
    omega_star is None and phi_upper is None exactly when a_q > 0.
    """

    omega_star: float | None
    phi_lower: float
    phi_upper: float | None

    def __post_init__(self):
        if self.phi_upper is not None and not (self.phi_lower < self.phi_upper):
            raise DomainError("window requires phi_lower < phi_upper")
        if self.omega_star is not None and not (self.omega_star > 0.0):
            raise DomainError("omega_star must be positive when finite")

    def contains_phi0(self, phi0: float) -> bool:
        if not (phi0 > self.phi_lower):
            return False
        return self.phi_upper is None or phi0 < self.phi_upper

    def contains_omega(self, omega: float) -> bool:
        if not (omega > 0.0):
            return False
        return self.omega_star is None or omega < self.omega_star


def _require_waves(model: ModelParams) -> None:
    if not model.has_standing_waves():
        raise NoStandingWaveError(
            "no standing waves: both nonlinearities are defocusing (a_p < 0 and a_q < 0)"
        )


def _omega_raw(model: ModelParams, phi0: float) -> float:
    """omega(phi0) without any window validation."""
    p, q = model.p, model.q
    return (
        2.0 * model.a_p / (p + 1.0) * phi0 ** (p - 1.0)
        + 2.0 * model.a_q / (q + 1.0) * phi0 ** (q - 1.0)
    )


def frequency_window(model: ModelParams) -> FrequencyWindow:
    """Admissible (0, omega_star) x (phi_lower, phi_upper) for the model.

    phi_lower = (-(a_p/a_q)(q+1)/(p+1))^(1/(q-p)) when a_p < 0, else 0.
    phi_upper is unbounded when a_q > 0, else the peak at which
    d(omega)/d(phi0) vanishes; omega_star = omega(phi_upper) there.
    The 1/(q-p) root is taken in log space so nearby exponents cannot
    overflow the direct power.
    """
    _require_waves(model)
    p, q = model.p, model.q
    if model.a_p < 0:
        phi_lower = math.exp(
            math.log(-(model.a_p / model.a_q) * (q + 1.0) / (p + 1.0)) / (q - p)
        )
    else:
        phi_lower = 0.0
    if model.a_q > 0:
        return FrequencyWindow(omega_star=None, phi_lower=phi_lower, phi_upper=None)
    phi_upper = math.exp(
        math.log(-(model.a_p / model.a_q) * (p - 1.0) / (q - 1.0) * (q + 1.0) / (p + 1.0))
        / (q - p)
    )
    return FrequencyWindow(
        omega_star=_omega_raw(model, phi_upper), phi_lower=phi_lower, phi_upper=phi_upper
    )


def omega_from_phi0(model: ModelParams, phi0: float) -> float:
    """Frequency of the standing wave with peak amplitude phi0."""
    window = frequency_window(model)
    if not window.contains_phi0(phi0):
        raise DomainError(
            f"phi0={phi0} outside the admissible peak interval "
            f"({window.phi_lower}, {window.phi_upper if window.phi_upper is not None else 'inf'})"
        )
    return _omega_raw(model, phi0)


def dphi0_domega(model: ModelParams, phi0: float) -> float:
    """Derivative of the peak amplitude along the branch, d(phi0)/d(omega) > 0."""
    window = frequency_window(model)
    if not window.contains_phi0(phi0):
        raise DomainError(f"phi0={phi0} outside the admissible peak interval")
    p, q = model.p, model.q
    denom = (
        2.0 * model.a_p * (p - 1.0) / (p + 1.0) * phi0 ** (p - 2.0)
        + 2.0 * model.a_q * (q - 1.0) / (q + 1.0) * phi0 ** (q - 2.0)
    )
    if denom <= 0.0:
        # mathematically possible only at the a_q < 0 window edge phi_upper
        raise NumericError(f"d(phi0)/d(omega) pole at phi0={phi0} (window edge)")
    return 1.0 / denom


def phi0_from_omega(model: ModelParams, omega: float) -> float:
    """Unique peak amplitude with omega(phi0) = omega.

    Brackets the root using monotonicity of omega(phi0) on the window, then
    hands over to a bisection/secant hybrid.  The bracket grows by doubling
    from max(2 phi_lower, 1) when the window is unbounded above, and is the
    full (phi_lower, phi_upper) otherwise.
    """
    window = frequency_window(model)
    if not window.contains_omega(omega):
        upper = window.omega_star if window.omega_star is not None else "inf"
        raise DomainError(f"omega={omega} outside the admissible interval (0, {upper})")

    def residual(phi: float) -> float:
        return _omega_raw(model, phi) - omega

    lo = window.phi_lower
    if window.phi_upper is not None:
        hi = window.phi_upper
    else:
        hi = max(2.0 * lo, 1.0)
        while residual(hi) < 0.0:
            hi *= 2.0
            if hi > 1e300:
                raise NumericError(f"bracket growth failed for omega={omega}")
    if residual(lo) > 0.0:
        # rounding can push omega(phi_lower) a hair above zero; widen down
        lo = lo * (1.0 - 1e-12) if lo > 0.0 else lo
        if residual(lo) > 0.0:
            raise NumericError(f"failed to bracket phi0 for omega={omega}")
    phi0 = brentq(residual, lo, hi, xtol=1e-300, rtol=8.9e-16, maxiter=200)
    # omega(phi0) is a difference of two power terms; near phi_lower they
    # cancel, so the achievable residual is floored by their rounding noise
    p, q = model.p, model.q
    noise = 4e-16 * (
        abs(2.0 * model.a_p / (p + 1.0)) * phi0 ** (p - 1.0)
        + abs(2.0 * model.a_q / (q + 1.0)) * phi0 ** (q - 1.0)
    )
    if abs(residual(phi0)) > max(1e-12 * max(1.0, omega), noise):
        raise NumericError(f"phi0 root did not converge for omega={omega}")
    return phi0
