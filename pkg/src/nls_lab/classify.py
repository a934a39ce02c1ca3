"""Stability classification, critical-frequency search, and the (p,q) sweep.

The stability type over the whole frequency window follows from the signs of
(a_p, a_q) and the positions of p, q relative to 5 and 7-2p.  When the type
has a single transition (US or SU) the critical frequency is located by
doubling a bracket until the slope changes sign (capped at 1e10), then
bisecting.  The transition wave itself is unstable; this is certified by the
second-derivative diagnostic: at the sign change,

    d^2 M / d omega^2 = (d phi0/d omega) C(phi0) phi0^(-gamma) dF_gamma/d phi0,

so its sign is the sign of dF_gamma/dphi0 for the regime's gamma.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum

from .errors import AccuracyError, DomainError, NoStandingWaveError, NumericError
from .model import ModelParams, dphi0_domega, frequency_window, phi0_from_omega
from .quadrature import QuadratureConfig
from .slope import (
    df_gamma_dphi0,
    j_star_limit_sign,
    j_zero_limit,
    label_sign,
    slope,
)

_BRACKET_CAP = 1e10


class StabilityClass(str, Enum):
    """Constant-sign patterns (S, U) or a single transition (SU, US) of the slope."""

    S = "S"
    U = "U"
    SU = "SU"
    US = "US"


class SearchStatus(str, Enum):
    CRITICAL = "critical"
    NO_SIGN_CHANGE = "no_sign_change"
    CAP_EXCEEDED = "cap_exceeded"


class CellStatus(str, Enum):
    CRITICAL = "critical"
    STABLE_ALL = "stable_all"
    UNSTABLE_ALL = "unstable_all"
    CAP_EXCEEDED = "cap_exceeded"
    SKIPPED = "skipped"


@dataclass(frozen=True)
class CriticalPoint:
    """Located sign change of the slope, with the bisection bracket evidence."""

    omega_c: float
    bracket_width: float
    j_left: float
    j_right: float
    d2m_sign: int


@dataclass(frozen=True)
class CriticalSearch:
    """Outcome of find_omega_crit: a critical point, a constant sign, or a cap."""

    status: SearchStatus
    point: CriticalPoint | None = None
    constant_sign: int | None = None


@dataclass(frozen=True)
class GridSpec:
    """Rectangular (p,q) grid, strictly inside (1,5) x (1,5)."""

    p_min: float
    p_max: float
    dp: float
    q_min: float
    q_max: float
    dq: float

    def __post_init__(self):
        if not (1.0 < self.p_min <= self.p_max < 5.0 and 1.0 < self.q_min <= self.q_max < 5.0):
            raise DomainError("grid must lie strictly inside (1,5) x (1,5)")
        if not (self.dp > 0.0 and self.dq > 0.0):
            raise DomainError("grid steps must be positive")

    def p_values(self) -> list[float]:
        n = int(round((self.p_max - self.p_min) / self.dp)) + 1
        return [self.p_min + i * self.dp for i in range(n) if self.p_min + i * self.dp < 5.0]

    def q_values(self) -> list[float]:
        n = int(round((self.q_max - self.q_min) / self.dq)) + 1
        return [self.q_min + j * self.dq for j in range(n) if self.q_min + j * self.dq < 5.0]


@dataclass(frozen=True)
class SurfaceCell:
    p: float
    q: float
    status: CellStatus
    omega_c: float | None = None
    error: str | None = None


@dataclass(frozen=True)
class ArgmaxEntry:
    """Per-q maximizer of omega_c over p; unbounded slices are flagged, not maximized."""

    q: float
    p_max: float | None
    omega_c: float | None
    unbounded: bool


def classify(model: ModelParams) -> StabilityClass:
    """Stability type of the standing-wave family from (sign a_p, sign a_q, p, q)."""
    if not model.has_standing_waves():
        raise NoStandingWaveError("no standing waves: both coefficients negative")
    p, q = model.p, model.q
    if model.a_p > 0 and model.a_q > 0:
        if q <= 5.0:
            return StabilityClass.S
        if p >= 5.0:
            return StabilityClass.U
        return StabilityClass.SU
    if model.a_p > 0 and model.a_q < 0:
        return StabilityClass.S if p <= 5.0 else StabilityClass.US
    # a_p < 0, a_q > 0
    if q <= 7.0 - 2.0 * p:
        return StabilityClass.S
    if q < 5.0:
        return StabilityClass.US
    return StabilityClass.U


def second_derivative_gamma(model: ModelParams) -> float:
    """The weight gamma for which dF_gamma/dphi0 has one sign in the regime."""
    p, q = model.p, model.q
    if model.a_p > 0 and model.a_q > 0:
        return 0.5 * (p + 1.0)
    if model.a_p > 0 and model.a_q < 0:
        return 0.5 * (p + 1.0) if q <= 5.0 else p - q + 3.0
    if 3.0 * q >= 2.0 * p + 5.0:
        return 0.5 * (q + 1.0)
    return p - q + 3.0


def _sign(x: float) -> int:
    return 1 if x > 0.0 else (-1 if x < 0.0 else 0)


def _j_value(model: ModelParams, omega: float, cfg) -> float:
    """Slope value for bracketing, tolerating quadrature shortfalls of certain sign.

    Deep inside the unstable region |J| blows up toward zero frequency and
    the quadrature can miss its relative target while the sign is beyond
    doubt; accept the carried estimate when it dwarfs the error bound.
    """
    try:
        return slope(model, omega, cfg).j_value
    except AccuracyError as exc:
        if abs(exc.estimate) > 1e3 * exc.error_bound:
            phi0 = phi0_from_omega(model, omega)
            return 0.5 * dphi0_domega(model, phi0) * phi0**2 * exc.estimate
        raise


def find_omega_crit(
    model: ModelParams, tol: float = 1e-8, cfg: QuadratureConfig | None = None
) -> CriticalSearch:
    """Two-stage search for the frequency where the slope changes sign.

    Stage 1 fixes the near-zero sign from the analytic zero-frequency limit
    (quadrature degenerates there), then doubles an upper probe from 1 until
    the slope sign flips, capping at 1e10 (or at omega_star(1 - 1e-9) for a
    finite window).  Stage 2 bisects to relative width tol; an exactly zero
    mid value (|J| < 1e-14) is accepted as the root outright.  The returned
    point carries sign(d^2 M/d omega^2) at the root.
    """
    window = frequency_window(model)
    zero = j_zero_limit(model)
    s0 = label_sign(zero.sign_label)
    if s0 == 0:
        s0 = 1  # boundary of the stable region: slope positive for omega > 0
    s1 = label_sign(j_star_limit_sign(model))

    scale = window.omega_star if window.omega_star is not None else 1.0
    omega_lo = 1e-8 * max(1.0, scale)
    hi_cap = None
    if window.omega_star is not None:
        omega_lo = min(omega_lo, window.omega_star * 1e-6)
        hi_cap = window.omega_star * (1.0 - 1e-9)

    j_lo = _j_value(model, omega_lo, cfg)
    bracket = None
    if _sign(j_lo) == -s0:
        # transition below omega_lo: shrink toward zero until the analytic sign
        # shows; an evaluation failing down there means the change is below
        # numerical resolution, i.e. no sign change at any resolvable frequency
        hi, j_hi = omega_lo, j_lo
        lo = omega_lo
        while lo > 1e-15 * max(1.0, scale):
            lo /= 16.0
            try:
                j_probe = _j_value(model, lo, cfg)
            except (DomainError, AccuracyError):
                break
            if _sign(j_probe) == s0:
                bracket = (lo, hi, j_probe, j_hi)
                break
        if bracket is None:
            return CriticalSearch(status=SearchStatus.NO_SIGN_CHANGE, constant_sign=-s0)
    else:
        lo, j_lo_val = omega_lo, j_lo
        omega_hi = 1.0 if hi_cap is None else min(1.0, hi_cap)
        while True:
            j_hi = _j_value(model, omega_hi, cfg)
            if _sign(j_hi) == -s0 or j_hi == 0.0:
                bracket = (lo, omega_hi, j_lo_val, j_hi)
                break
            lo, j_lo_val = omega_hi, j_hi
            if hi_cap is not None and omega_hi >= hi_cap:
                return CriticalSearch(status=SearchStatus.NO_SIGN_CHANGE, constant_sign=s0)
            omega_hi *= 2.0
            if hi_cap is not None:
                omega_hi = min(omega_hi, hi_cap)
            if omega_hi > _BRACKET_CAP:
                if s1 is not None and s1 != s0:
                    return CriticalSearch(status=SearchStatus.CAP_EXCEEDED, constant_sign=s0)
                return CriticalSearch(status=SearchStatus.NO_SIGN_CHANGE, constant_sign=s0)

    lo, hi, j_left, j_right = bracket
    for _ in range(200):
        if hi - lo <= tol * max(1.0, 0.5 * (lo + hi)):
            break
        mid = 0.5 * (lo + hi)
        j_mid = _j_value(model, mid, cfg)
        if abs(j_mid) < 1e-14:
            lo = hi = mid
            break
        if _sign(j_mid) == s0:
            lo, j_left = mid, j_mid
        else:
            hi, j_right = mid, j_mid
    else:
        raise NumericError("bisection failed to reach the requested width")

    omega_c = 0.5 * (lo + hi)
    gamma = second_derivative_gamma(model)
    phi0_c = phi0_from_omega(model, omega_c)
    d2m_sign = _sign(df_gamma_dphi0(model, phi0_c, gamma, cfg))
    return CriticalSearch(
        status=SearchStatus.CRITICAL,
        point=CriticalPoint(
            omega_c=omega_c,
            bracket_width=hi - lo,
            j_left=j_left,
            j_right=j_right,
            d2m_sign=d2m_sign,
        ),
    )


def _cell(a_p: float, a_q: float, p: float, q: float, tol: float) -> SurfaceCell:
    if q <= p:
        return SurfaceCell(p=p, q=q, status=CellStatus.SKIPPED)
    try:
        model = ModelParams(a_p=a_p, a_q=a_q, p=p, q=q)
        kind = classify(model)
        if kind is StabilityClass.S:
            return SurfaceCell(p=p, q=q, status=CellStatus.STABLE_ALL)
        if kind is StabilityClass.U:
            return SurfaceCell(p=p, q=q, status=CellStatus.UNSTABLE_ALL)
        search = find_omega_crit(model, tol=tol)
        if search.status is SearchStatus.CRITICAL:
            return SurfaceCell(
                p=p, q=q, status=CellStatus.CRITICAL, omega_c=search.point.omega_c
            )
        if search.status is SearchStatus.CAP_EXCEEDED:
            return SurfaceCell(p=p, q=q, status=CellStatus.CAP_EXCEEDED)
        status = CellStatus.STABLE_ALL if search.constant_sign > 0 else CellStatus.UNSTABLE_ALL
        return SurfaceCell(p=p, q=q, status=status)
    except Exception as exc:  # record, never abort the sweep
        return SurfaceCell(p=p, q=q, status=CellStatus.SKIPPED, error=str(exc))


def _cell_task(task: tuple[float, float, float, float, float]) -> SurfaceCell:
    return _cell(*task)


def surface_sweep(
    a_p: float,
    a_q: float,
    grid: GridSpec,
    tol: float = 1e-6,
    jobs: int = 1,
) -> list[SurfaceCell]:
    """One SurfaceCell per grid node, in canonical (p,q) order.

    Provably sign-constant cells (types S and U) are classified without any
    bisection.  Cells are independent, so the pool execution order cannot
    change the result; output is sorted by (p, q) regardless of job count.
    """
    tasks = [
        (a_p, a_q, p, q, tol) for p in grid.p_values() for q in grid.q_values()
    ]
    if jobs <= 1:
        cells = [_cell_task(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            cells = list(pool.map(_cell_task, tasks, chunksize=32))
    cells.sort(key=lambda c: (c.p, c.q))
    return cells


def argmax_curve(a_p: float, a_q: float, sweep: list[SurfaceCell]) -> list[ArgmaxEntry]:
    """For each q, the p maximizing omega_c among critical cells.

    Slices containing cap-exceeded cells have no trustworthy finite maximum
    and are flagged unbounded; slices with no transition at all are omitted.
    """
    by_q: dict[float, list[SurfaceCell]] = {}
    for cell in sweep:
        by_q.setdefault(cell.q, []).append(cell)
    entries = []
    for q in sorted(by_q):
        cells = by_q[q]
        if any(c.status is CellStatus.CAP_EXCEEDED for c in cells):
            entries.append(ArgmaxEntry(q=q, p_max=None, omega_c=None, unbounded=True))
            continue
        critical = [c for c in cells if c.status is CellStatus.CRITICAL]
        if not critical:
            continue
        best = max(critical, key=lambda c: c.omega_c)
        entries.append(ArgmaxEntry(q=q, p_max=best.p, omega_c=best.omega_c, unbounded=False))
    return entries


def format_float(x: float) -> str:
    """Canonical 12-significant-digit rendering used by all CSV output."""
    return f"{x:.12g}"


def cells_to_csv(cells: list[SurfaceCell]) -> str:
    """Sweep CSV: header p,q,status,omega_c; omega_c empty unless critical."""
    lines = ["p,q,status,omega_c"]
    for c in cells:
        omega = format_float(c.omega_c) if c.status is CellStatus.CRITICAL else ""
        lines.append(f"{format_float(c.p)},{format_float(c.q)},{c.status.value},{omega}")
    return "\n".join(lines) + "\n"
