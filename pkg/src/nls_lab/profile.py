"""Standing-wave profile reconstruction and the branch mass.

The profile solves -phi'' + omega phi = a_p phi^p + a_q phi^q and carries the
first integral

    phi_x^2 = V(phi) = omega phi^2 - 2 a_p/(p+1) phi^(p+1) - 2 a_q/(q+1) phi^(q+1),

so for x > 0 it satisfies phi_x = -sqrt(V(phi)).  The square root vanishes
at the peak and its phi-derivative blows up like 1/x there, which amplifies
any startup error into a translation of the whole wave; integration
therefore leaves the peak on the even Taylor series of the profile through
x^8 (coefficients from matching orders in phi'' = U(phi)), handing over to
classical fourth-order Runge-Kutta at dx/8 only once the estimated next
series term drops below 1e-13 phi0.  The right half is then mirrored.  On
the line q = 2p - 1 the substitution u = phi^(1-p) linearizes the first
integral and yields the closed-form profile used as an oracle in the tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericError
from .model import ModelParams, phi0_from_omega
from .quadrature import QuadratureConfig
from .slope import mass_from_phi0

__all__ = [
    "Profile",
    "build_profile",
    "closed_form_profile",
    "mass_of_wave",
]


@dataclass(frozen=True)
class Profile:
    """Sampled even profile on the symmetric grid x_i in [-L, L].

    values[i] = phi(x_i); phi_x holds the odd derivative samples consistent
    with the first integral (exactly -sqrt(V(phi)) for x > 0).
    """

    omega: float
    dx: float
    half_width: float
    values: np.ndarray
    phi_x: np.ndarray

    @property
    def x(self) -> np.ndarray:
        n = (len(self.values) - 1) // 2
        return (np.arange(len(self.values)) - n) * self.dx

    @property
    def phi0(self) -> float:
        return float(self.values[(len(self.values) - 1) // 2])


def _potential(model: ModelParams, omega: float):
    p, q = model.p, model.q
    cp = 2.0 * model.a_p / (p + 1.0)
    cq = 2.0 * model.a_q / (q + 1.0)

    def v(phi: float) -> float:
        if phi <= 0.0:
            return 0.0
        return phi * phi * (omega - cp * phi ** (p - 1.0) - cq * phi ** (q - 1.0))

    return v


def build_profile(model: ModelParams, omega: float, dx: float, half_width: float) -> Profile:
    """Integrate the profile ODE onto the grid; mirrors to negative x.

    Requires half_width large enough that phi(L) < 1e-8 phi(0); raises
    DomainError suggesting a larger domain otherwise.
    """
    if dx <= 0.0 or half_width <= 0.0:
        raise DomainError("dx and half_width must be positive")
    n = int(round(half_width / dx))
    if n < 4:
        raise DomainError("grid too coarse: need at least 4 cells per half-width")
    phi0 = phi0_from_omega(model, omega)
    p, q = model.p, model.q
    v = _potential(model, omega)

    def rhs(phi: float) -> float:
        return -math.sqrt(max(v(phi), 0.0))

    def rk4(phi: float, h: float) -> float:
        k1 = rhs(phi)
        k2 = rhs(phi + 0.5 * h * k1)
        k3 = rhs(phi + 0.5 * h * k2)
        k4 = rhs(phi + h * k3)
        return phi + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

    # even Taylor coefficients at the peak from matching phi'' = U(phi), phi'(0)=0
    u0 = omega * phi0 - model.a_p * phi0**p - model.a_q * phi0**q
    u1 = omega - p * model.a_p * phi0 ** (p - 1.0) - q * model.a_q * phi0 ** (q - 1.0)
    u2 = -p * (p - 1.0) * model.a_p * phi0 ** (p - 2.0) - q * (q - 1.0) * model.a_q * phi0 ** (
        q - 2.0
    )
    u3 = -p * (p - 1.0) * (p - 2.0) * model.a_p * phi0 ** (p - 3.0) - q * (q - 1.0) * (
        q - 2.0
    ) * model.a_q * phi0 ** (q - 3.0)
    c2 = 0.5 * u0
    c4 = u1 * c2 / 12.0
    c6 = (u1 * c4 + 0.5 * u2 * c2 * c2) / 30.0
    c8 = (u1 * c6 + u2 * c2 * c4 + u3 * c2**3 / 6.0) / 56.0

    def series(x: float) -> float:
        x2 = x * x
        return phi0 + x2 * (c2 + x2 * (c4 + x2 * (c6 + x2 * c8)))

    def series_tail(x: float) -> float:
        # geometric estimate of the first dropped (x^10) term
        t6 = abs(c6) * x**6
        t8 = abs(c8) * x**8
        return t8 * t8 / t6 if t6 > 0.0 else t8

    k0 = 2
    while k0 + 1 <= n // 2 and series_tail((k0 + 1) * dx) <= 1e-13 * phi0:
        k0 += 1

    right = np.empty(n + 1)
    for i in range(k0 + 1):
        right[i] = series(i * dx)
    phi = right[k0]
    step = dx / 8.0
    for i in range(k0 + 1, n + 1):
        for _ in range(8):
            phi = rk4(phi, step)
        right[i] = phi
    if not np.all(np.isfinite(right)):
        raise NumericError("profile integration produced non-finite values")
    if right[n] >= 1e-8 * phi0:
        raise DomainError(
            f"half_width={half_width} too small: phi(L)={right[n]:.3e} >= 1e-8 phi0; "
            "increase half_width"
        )

    slope_right = -np.sqrt(np.maximum([v(x) for x in right], 0.0))
    slope_right[0] = 0.0
    values = np.concatenate([right[::-1], right[1:]])
    phi_x = np.concatenate([-slope_right[::-1], slope_right[1:]])
    return Profile(omega=omega, dx=dx, half_width=half_width, values=values, phi_x=phi_x)


def closed_form_profile(model: ModelParams, omega: float, x) -> np.ndarray:
    """Exact profile on the line q = 2p - 1.

    With u = phi^(1-p) the first integral becomes u'^2 = (p-1)^2 (omega u^2
    - c_p u - c_q), c_r = 2 a_r/(r+1), solved by a shifted cosh:

        phi(x) = [ c_p/(2 omega) + sqrt(c_p^2/(4 omega^2) + c_q/omega)
                   * cosh((p-1) sqrt(omega) x) ]^(-1/(p-1)).
    """
    p, q = model.p, model.q
    if abs(q - (2.0 * p - 1.0)) > 1e-12:
        raise DomainError("closed-form profile requires q = 2p - 1")
    if omega <= 0.0:
        raise DomainError("closed-form profile requires omega > 0")
    cp = 2.0 * model.a_p / (p + 1.0)
    cq = 2.0 * model.a_q / (q + 1.0)
    disc = cp * cp / (4.0 * omega * omega) + cq / omega
    if disc <= 0.0:
        raise DomainError("no decaying profile at this frequency")
    x = np.asarray(x, dtype=float)
    u = cp / (2.0 * omega) + math.sqrt(disc) * np.cosh((p - 1.0) * math.sqrt(omega) * x)
    return u ** (-1.0 / (p - 1.0))


def mass_of_wave(model: ModelParams, omega: float, cfg: QuadratureConfig | None = None) -> float:
    """Mass M(phi_omega) = (1/2)||phi||_L2^2 via the peak-variable quadrature."""
    phi0 = phi0_from_omega(model, omega)
    return mass_from_phi0(model, phi0, cfg, omega=omega)
