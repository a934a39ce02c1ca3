"""Slope of the mass along the standing-wave branch and its endpoint limits.

With C(phi0) = (1/2) d(phi0)/d(omega) phi0^2 > 0, the mass derivative
factorizes as

    J(omega) = d M(phi_omega)/d omega = C(phi0) F(phi0),

    F(phi0)  = integral_0^1 [(5-p) Phi_p + (5-q) Phi_q]
               / (Phi_p + Phi_q)^(3/2) * s ds,

where Phi_r = 2 a_r/(r+1) phi0^(r+1) (1 - s^(r-1)).  The sign of J decides
orbital stability, so everything here is organized around evaluating F and
its gamma-weighted relatives robustly, including in the zero-frequency
regime (a_p < 0) where the integrand degenerates like s^((5-3p)/2) at s = 0.
There the integral is computed in the variable t = s^(q-p), which turns the
boundary layer into a plain algebraic endpoint singularity that the
double-exponential rule resolves; the exact zero-frequency limit itself
reduces to a Beta-function expression.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError, NoStandingWaveError, NumericError
from .model import (
    ModelParams,
    _omega_raw,
    frequency_window,
    phi0_from_omega,
)
from .quadrature import QuadratureConfig, integrate_01, one_minus_power
from .special import beta


class LimitLabel(str, Enum):
    """Sign/limit classification of an endpoint value of J.

    ZERO_PLUS / ZERO_MINUS mark one-sided vanishing limits, NOT_COVERED marks
    the focusing-defocusing large-frequency regime with p < 5 where no sign
    statement is available.
    """

    POSITIVE = "positive"
    ZERO = "zero"
    NEGATIVE = "negative"
    PLUS_INFINITY = "plus_infinity"
    MINUS_INFINITY = "minus_infinity"
    ZERO_PLUS = "zero_plus"
    ZERO_MINUS = "zero_minus"
    NOT_COVERED = "not_covered"


_LABEL_SIGNS = {
    LimitLabel.POSITIVE: 1,
    LimitLabel.PLUS_INFINITY: 1,
    LimitLabel.ZERO_PLUS: 1,
    LimitLabel.NEGATIVE: -1,
    LimitLabel.MINUS_INFINITY: -1,
    LimitLabel.ZERO_MINUS: -1,
    LimitLabel.ZERO: 0,
}


def label_sign(label: LimitLabel) -> int | None:
    """-1/0/+1 for sign-carrying labels, None for NOT_COVERED."""
    return _LABEL_SIGNS.get(label)


@dataclass(frozen=True)
class SlopeEvaluation:
    """J = C * F at one frequency, with the factors kept separate."""

    omega: float
    phi0: float
    c_factor: float
    f_value: float
    j_value: float
    gamma: float = 0.0


@dataclass(frozen=True)
class ZeroFrequencyResult:
    """Limit of J as omega -> 0.

    value / c_star / c0 are populated on the defocusing-focusing branch with
    p < 7/3, where the limit is finite and explicit; otherwise only the
    sign_label is meaningful.
    """

    sign_label: LimitLabel
    value: float | None = None
    c_star: float | None = None
    c0: float | None = None


def _phi_coefficients(model: ModelParams, phi0: float) -> tuple[float, float]:
    cp = 2.0 * model.a_p / (model.p + 1.0) * phi0 ** (model.p + 1.0)
    cq = 2.0 * model.a_q / (model.q + 1.0) * phi0 ** (model.q + 1.0)
    return cp, cq


def _require_phi0(model: ModelParams, phi0: float) -> None:
    window = frequency_window(model)
    if not window.contains_phi0(phi0):
        raise DomainError(f"phi0={phi0} outside the admissible peak interval")


def _branch_terms(model: ModelParams, phi0: float, omega: float):
    """(s, 1-s) -> (Phi_p, Phi_p + Phi_q), computed without cancellation.

    Phi_p + Phi_q = (c_p + c_q) - c_p s^(p-1) - c_q s^(q-1) with c_p + c_q =
    omega phi0^2; on the a_p < 0 branch c_p and c_q can dwarf their sum (the
    window edge grows like |a_p/a_q|^(1/(q-p))), so the sum is regrouped into
    the exactly equivalent, term-wise positive form

        omega phi0^2 (1 - s^(q-1)) + |c_p| s^(p-1) (1 - s^(q-p)).
    """
    p, q = model.p, model.q
    cp, cq = _phi_coefficients(model, phi0)
    if model.a_p < 0:
        w2 = omega * phi0 * phi0
        mag = -cp

        def terms(s, om):
            pp = cp * one_minus_power(s, om, p - 1.0)
            den = w2 * one_minus_power(s, om, q - 1.0) + mag * s ** (p - 1.0) * one_minus_power(
                s, om, q - p
            )
            return pp, den

    else:

        def terms(s, om):
            pp = cp * one_minus_power(s, om, p - 1.0)
            return pp, pp + cq * one_minus_power(s, om, q - 1.0)

    return terms


def _f_core(model: ModelParams, phi0: float, gamma: float, omega: float):
    """(s, 1-s) -> phi0^gamma [(5-p)Phi_p + (5-q)Phi_q] / (Phi_p+Phi_q)^(3/2).

    The numerator is evaluated as (5-q)(Phi_p+Phi_q) + (q-p)Phi_p, which is
    algebraically identical and inherits the stable denominator grouping.
    """
    p, q = model.p, model.q
    terms = _branch_terms(model, phi0, omega)
    weight = phi0**gamma

    def core(s, om):
        pp, den = terms(s, om)
        num = (5.0 - q) * den + (q - p) * pp
        # num/den stays O(1) near s=1 while den^(3/2) can underflow: divide first
        return weight * (num / den) / np.sqrt(den)

    return core


def _mass_core(model: ModelParams, phi0: float, omega: float):
    """(s, 1-s) -> phi0^3 / sqrt(Phi_p + Phi_q)."""
    terms = _branch_terms(model, phi0, omega)
    amp = phi0**3

    def core(s, om):
        _, den = terms(s, om)
        return amp / np.sqrt(den)

    return core


def _use_peak_substitution(model: ModelParams, phi0: float, omega: float) -> bool:
    """Substitute t = s^(q-p) only when it keeps the small-omega layer endpoint-near.

    On the a_p < 0 branch the integrand degenerates on (s_c, 1) with a cutoff
    layer at s_c = (omega phi0^2 / |c_p|)^(1/(p-1)).  The substitution maps
    the layer to t_c = s_c^(q-p); it helps exactly when t_c stays close to 0
    (always the case for well-separated exponents), and is counterproductive
    when q - p is small enough to push t_c into the interior.
    """
    if model.a_p >= 0 or omega <= 0.0:
        return False
    cp_mag = 2.0 * abs(model.a_p) / (model.p + 1.0) * phi0 ** (model.p + 1.0)
    ratio = omega * phi0 * phi0 / cp_mag
    if ratio >= 1.0:
        return False
    t_layer = ratio ** ((model.q - model.p) / (model.p - 1.0))
    return t_layer <= 0.05


def _integrate_with_s_weight(model: ModelParams, core, phi0: float, omega: float, cfg) -> float:
    """integral_0^1 core(s) * s ds, switching to t = s^(q-p) near zero frequency.

    The substituted form turns the boundary layer into a resolvable algebraic
    endpoint factor t^(2r-1), r = 1/(q-p), evaluated in log space so neither
    s = t^r nor the Jacobian can overflow or hit log(0).
    """
    if not _use_peak_substitution(model, phi0, omega):
        return integrate_01(lambda s, om: core(s, om) * s, cfg)

    r = 1.0 / (model.q - model.p)

    def integrand(t, om_t):
        with np.errstate(divide="ignore", under="ignore"):
            ln_t = np.where(t <= 0.5, np.log(np.maximum(t, 0.0)), np.log1p(-om_t))
            s = np.exp(r * ln_t)
            om_s = one_minus_power(t, om_t, r)
            jac = r * np.exp((2.0 * r - 1.0) * ln_t)
        return core(s, om_s) * jac

    return integrate_01(integrand, cfg)


def f_of_phi0(model: ModelParams, phi0: float, cfg: QuadratureConfig | None = None) -> float:
    """The shape factor F(phi0) whose sign is the sign of the slope J."""
    _require_phi0(model, phi0)
    omega = _omega_raw(model, phi0)
    return _integrate_with_s_weight(model, _f_core(model, phi0, 0.0, omega), phi0, omega, cfg)


def f_gamma(
    model: ModelParams, phi0: float, gamma: float, cfg: QuadratureConfig | None = None
) -> float:
    """Weighted variant F_gamma(phi0) = integral of phi0^gamma * (F integrand)."""
    _require_phi0(model, phi0)
    omega = _omega_raw(model, phi0)
    return _integrate_with_s_weight(model, _f_core(model, phi0, gamma, omega), phi0, omega, cfg)


def i_gamma(model: ModelParams, phi0: float, gamma: float, s):
    """Integrand of F_gamma at fixed s in (0,1) (without the trailing s weight)."""
    s = np.asarray(s, dtype=float)
    out = _f_core(model, phi0, gamma, _omega_raw(model, phi0))(s, 1.0 - s)
    return out if out.ndim else float(out)


def _dI_core(model: ModelParams, phi0: float, gamma: float, omega: float):
    p, q = model.p, model.q
    terms = _branch_terms(model, phi0, omega)
    coeff_p = (5.0 - p) * (2.0 * gamma - (p + 1.0))
    coeff_q = (5.0 - q) * (2.0 * gamma - (q + 1.0))
    cross = 3.0 * (q - p) ** 2
    amp = 0.5 * phi0 ** (gamma - 1.0)

    def core(s, om):
        pp, den = terms(s, om)
        pq = den - pp
        num = (coeff_q * den + (coeff_p - coeff_q) * pp) * den - cross * pp * pq
        # num ~ den^2 near s=1; divide down before the half power to dodge underflow
        return amp * ((num / den) / den) / np.sqrt(den)

    return core


def i_gamma_dphi0(model: ModelParams, phi0: float, gamma: float, s):
    """Partial derivative of the F_gamma integrand with respect to phi0.

    Closed form: (1/2) phi0^(gamma-1) [ ((5-p)(2 gamma - (p+1)) Phi_p
    + (5-q)(2 gamma - (q+1)) Phi_q)(Phi_p + Phi_q) - 3 (q-p)^2 Phi_p Phi_q ]
    / (Phi_p + Phi_q)^(5/2).
    """
    _require_phi0(model, phi0)
    s = np.asarray(s, dtype=float)
    out = _dI_core(model, phi0, gamma, _omega_raw(model, phi0))(s, 1.0 - s)
    return out if out.ndim else float(out)


def df_gamma_dphi0(
    model: ModelParams, phi0: float, gamma: float, cfg: QuadratureConfig | None = None
) -> float:
    """d F_gamma / d phi0, integrating the closed-form integrand derivative."""
    _require_phi0(model, phi0)
    core = _dI_core(model, phi0, gamma, _omega_raw(model, phi0))
    return integrate_01(lambda s, om: core(s, om) * s, cfg)


def slope(model: ModelParams, omega: float, cfg: QuadratureConfig | None = None) -> SlopeEvaluation:
    """Evaluate J(omega) = C(phi0) F(phi0) on the standing-wave branch."""
    phi0 = phi0_from_omega(model, omega)
    # phi0 is already validated through omega; at extreme frequencies it can
    # round onto the window edge, where the derivative is still fine, so the
    # strict re-check of dphi0_domega is skipped here
    p, q = model.p, model.q
    denom = (
        2.0 * model.a_p * (p - 1.0) / (p + 1.0) * phi0 ** (p - 2.0)
        + 2.0 * model.a_q * (q - 1.0) / (q + 1.0) * phi0 ** (q - 2.0)
    )
    if denom <= 0.0:
        raise NumericError(f"branch derivative pole at omega={omega}")
    c_factor = 0.5 / denom * phi0**2
    f_value = _integrate_with_s_weight(model, _f_core(model, phi0, 0.0, omega), phi0, omega, cfg)
    return SlopeEvaluation(
        omega=omega, phi0=phi0, c_factor=c_factor, f_value=f_value, j_value=c_factor * f_value
    )


def mass_from_phi0(
    model: ModelParams,
    phi0: float,
    cfg: QuadratureConfig | None = None,
    omega: float | None = None,
) -> float:
    """Mass of the wave with peak phi0: integral_0^1 phi0^3 s / sqrt(Phi_p+Phi_q) ds.

    Callers that already know the exact frequency should pass it; recovering
    it from phi0 loses precision when the power terms nearly cancel.
    """
    _require_phi0(model, phi0)
    if omega is None:
        omega = _omega_raw(model, phi0)
    return _integrate_with_s_weight(model, _mass_core(model, phi0, omega), phi0, omega, cfg)


def j_zero_limit(model: ModelParams) -> ZeroFrequencyResult:
    """Limit of the slope J as omega -> 0, with its sign classification.

    Defocusing-focusing branch (a_p < 0 < a_q), p < 7/3: the limit is finite,

        J_0 = (7 - 2p - q) C_0 B((7-3p)/(2(q-p)), 1/2),
        C_0 = C_star^(-1/2)/(q-p) * C(phi_lower),
        C_star = 2 a_q/(q+1) phi_lower^(q+1),

    so its sign is the sign of 7 - 2p - q.  For p >= 7/3 the limit is -inf.
    Focusing lower power (a_p > 0): only a one-sided label is defined, keyed
    on p against 7/3 and 5 (and on q against 9 when p = 5).
    """
    if not model.has_standing_waves():
        raise NoStandingWaveError("no standing waves: both coefficients negative")
    p, q = model.p, model.q
    if model.a_p < 0:
        if p >= 7.0 / 3.0:
            return ZeroFrequencyResult(sign_label=LimitLabel.MINUS_INFINITY)
        window = frequency_window(model)
        phi_star = window.phi_lower
        c_star = 2.0 * model.a_q / (q + 1.0) * phi_star ** (q + 1.0)
        c_phi_star = phi_star**5 / (2.0 * c_star * (q - p))
        c0 = c_star**-0.5 / (q - p) * c_phi_star
        factor = 7.0 - 2.0 * p - q
        value = factor * c0 * beta((7.0 - 3.0 * p) / (2.0 * (q - p)), 0.5)
        if factor > 0.0:
            label = LimitLabel.POSITIVE
        elif factor < 0.0:
            label = LimitLabel.NEGATIVE
        else:
            label = LimitLabel.ZERO
        return ZeroFrequencyResult(sign_label=label, value=value, c_star=c_star, c0=c0)

    # a_p > 0 (either sign of a_q): labels only
    if p < 7.0 / 3.0:
        return ZeroFrequencyResult(sign_label=LimitLabel.ZERO_PLUS)
    if p == 7.0 / 3.0:
        return ZeroFrequencyResult(sign_label=LimitLabel.POSITIVE)
    if p < 5.0:
        return ZeroFrequencyResult(sign_label=LimitLabel.PLUS_INFINITY)
    if p == 5.0:
        if q < 9.0:
            label = LimitLabel.MINUS_INFINITY if model.a_q > 0 else LimitLabel.PLUS_INFINITY
        elif q == 9.0:
            label = LimitLabel.NEGATIVE if model.a_q > 0 else LimitLabel.POSITIVE
        else:
            label = LimitLabel.ZERO_MINUS if model.a_q > 0 else LimitLabel.ZERO_PLUS
        return ZeroFrequencyResult(sign_label=label)
    return ZeroFrequencyResult(sign_label=LimitLabel.MINUS_INFINITY)


def j_star_limit_sign(model: ModelParams) -> LimitLabel:
    """Sign/limit label of J at the upper end of the frequency window.

    a_q > 0 (window unbounded): keyed on q against 7/3 and 5, with the q = 5
    boundary inheriting the sign of a_p.  a_q < 0: +inf for p >= 5; the
    p < 5 case carries no statement and returns NOT_COVERED.
    """
    if not model.has_standing_waves():
        raise NoStandingWaveError("no standing waves: both coefficients negative")
    p, q = model.p, model.q
    if model.a_q > 0:
        if q < 7.0 / 3.0:
            return LimitLabel.ZERO_PLUS
        if q == 7.0 / 3.0:
            return LimitLabel.POSITIVE
        if q < 5.0:
            return LimitLabel.PLUS_INFINITY
        if q == 5.0:
            return LimitLabel.ZERO_PLUS if model.a_p > 0 else LimitLabel.ZERO_MINUS
        return LimitLabel.MINUS_INFINITY
    if p >= 5.0:
        return LimitLabel.PLUS_INFINITY
    return LimitLabel.NOT_COVERED


def thresholds(model: ModelParams) -> tuple[float, float]:
    """Peak thresholds (phi_01, phi_02) in the doubly-focusing p < 5 < q regime.

    phi_01^(q-p) = -a_p (5-p)(p-1)(q+1)^2 / (a_q (5-q)(q-1)(p+1)^2) bounds the
    region where F is negative; phi_02^(q-p), with the ratio (5+2q-3p)/(5-q)
    in place of (5-p)(q+1)/((5-q)(p+1)), bounds where the weighted integrand
    is decreasing in phi0.  Always phi_01 < phi_02.
    """
    p, q = model.p, model.q
    if not (model.a_p > 0 and model.a_q > 0 and p < 5.0 < q):
        raise DomainError("thresholds are defined only for a_p>0, a_q>0, p < 5 < q")
    power1 = -(
        model.a_p * (5.0 - p) * (p - 1.0) * (q + 1.0) ** 2
    ) / (model.a_q * (5.0 - q) * (q - 1.0) * (p + 1.0) ** 2)
    power2 = (
        -(model.a_p / model.a_q)
        * ((5.0 + 2.0 * q - 3.0 * p) / (5.0 - q))
        * ((q + 1.0) / (p + 1.0))
        * ((p - 1.0) / (q - 1.0))
    )
    phi01 = math.exp(math.log(power1) / (q - p))
    phi02 = math.exp(math.log(power2) / (q - p))
    return phi01, phi02


def monotone_ratio(model: ModelParams, s):
    """h(s) = (1 - s^(q-1)) / (1 - s^(p-1)), increasing from 1 to (q-1)/(p-1).

    The s -> 1 endpoint is evaluated by its limit (q-1)/(p-1) rather than as
    0/0; s -> 0 returns 1.
    """
    p, q = model.p, model.q
    s = np.asarray(s, dtype=float)
    om = 1.0 - s
    with np.errstate(divide="ignore", invalid="ignore"):
        num = one_minus_power(s, om, q - 1.0)
        den = one_minus_power(s, om, p - 1.0)
        out = np.where(s >= 1.0, (q - 1.0) / (p - 1.0), np.where(s <= 0.0, 1.0, num / np.where(den == 0.0, 1.0, den)))
    return out if out.ndim else float(out)
