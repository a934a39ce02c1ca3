"""Command-line interface: slope scans, classification, sweeps, simulations.

Every command writes its primary output to --out and a) JSON for scalar
answers, b) CSV for series and grids, always with 12-significant-digit
floats and '\n' line endings.  A run manifest (command, parameters, tool
version, wall time) is written next to each output so any result can be
reproduced byte-identically from its recorded parameters.

Exit codes: 0 success, 2 usage/domain error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass

import numpy as np

from .classify import (
    GridSpec,
    SearchStatus,
    StabilityClass,
    cells_to_csv,
    classify,
    find_omega_crit,
    format_float,
    surface_sweep,
)
from .errors import DomainError, NumericError
from .evolve import (
    PerturbationKind,
    PerturbationSpec,
    SimulationConfig,
    evolve,
    initial_data,
)
from .model import ModelParams, frequency_window
from .profile import build_profile
from .slope import j_star_limit_sign, j_zero_limit, slope

try:
    from importlib.metadata import version as _pkg_version

    TOOL_VERSION = _pkg_version("nls-lab")
except Exception:  # not installed; running from a checkout
    TOOL_VERSION = "0.1.0"


@dataclass(frozen=True)
class RunManifest:
    command: str
    parameters: dict
    tool_version: str
    wall_time_seconds: float


def _write_manifest(out_path: str, command: str, parameters: dict, wall_time: float) -> None:
    manifest = RunManifest(
        command=command,
        parameters=parameters,
        tool_version=TOOL_VERSION,
        wall_time_seconds=wall_time,
    )
    payload = {
        "command": manifest.command,
        "parameters": manifest.parameters,
        "tool_version": manifest.tool_version,
        "wall_time_seconds": manifest.wall_time_seconds,
    }
    with open(out_path + ".manifest.json", "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2, sort_keys=False)
        fh.write("\n")


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _model_from_args(args) -> ModelParams:
    return ModelParams(a_p=args.ap, a_q=args.aq, p=args.p, q=args.q)


def _add_model_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--ap", type=float, required=True, help="coefficient of the lower power")
    parser.add_argument("--aq", type=float, required=True, help="coefficient of the higher power")
    parser.add_argument("--p", type=float, required=True, help="lower exponent, 1 < p")
    parser.add_argument("--q", type=float, required=True, help="higher exponent, p < q")


def _parse_grid(text: str) -> GridSpec:
    try:
        p_part, q_part = text.split(",")
        p_min, p_max, dp = (float(v) for v in p_part.split(":"))
        q_min, q_max, dq = (float(v) for v in q_part.split(":"))
    except ValueError as exc:
        raise DomainError(f"bad --grid '{text}': expected pmin:pmax:dp,qmin:qmax:dq") from exc
    return GridSpec(p_min=p_min, p_max=p_max, dp=dp, q_min=q_min, q_max=q_max, dq=dq)


def _parse_perturb(text: str) -> PerturbationSpec:
    try:
        kind_text, eps_text = text.split(":")
        kind = PerturbationKind(kind_text)
        eps = float(eps_text)
    except ValueError as exc:
        kinds = ", ".join(k.value for k in PerturbationKind)
        raise DomainError(f"bad --perturb '{text}': expected kind:eps with kind in {{{kinds}}}") from exc
    return PerturbationSpec(kind=kind, epsilon=eps)


def _resolve_jobs(args) -> int:
    if args.jobs is not None:
        return max(1, args.jobs)
    env = os.environ.get("NLS_LAB_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise DomainError(f"NLS_LAB_JOBS must be an integer, got '{env}'") from exc
    return 1


def _cmd_slope(args) -> int:
    model = _model_from_args(args)
    window = frequency_window(model)
    if args.points < 1:
        raise DomainError("--points must be at least 1")
    if not (0.0 < args.omega_min <= args.omega_max):
        raise DomainError("need 0 < omega-min <= omega-max")
    if window.omega_star is not None and args.omega_max >= window.omega_star:
        raise DomainError(
            f"omega-max {args.omega_max} is not below omega_star={window.omega_star}"
        )
    if args.points == 1:
        omegas = np.array([args.omega_min])
    elif args.log:
        omegas = np.geomspace(args.omega_min, args.omega_max, args.points)
    else:
        omegas = np.linspace(args.omega_min, args.omega_max, args.points)

    lines = ["omega,phi0,C,F,J"]
    for omega in omegas:
        try:
            ev = slope(model, float(omega))
        except NumericError as exc:
            raise NumericError(f"slope evaluation failed at omega={omega}: {exc}") from exc
        lines.append(
            ",".join(
                format_float(v)
                for v in (ev.omega, ev.phi0, ev.c_factor, ev.f_value, ev.j_value)
            )
        )
    _write_text(args.out, "\n".join(lines) + "\n")
    return 0


def _cmd_classify(args) -> int:
    model = _model_from_args(args)
    kind = classify(model)
    payload: dict = {"type": kind.value}
    if kind in (StabilityClass.SU, StabilityClass.US):
        search = find_omega_crit(model, tol=args.tol)
        if search.status is SearchStatus.CRITICAL:
            payload["omega_c"] = float(format_float(search.point.omega_c))
    payload["j0_label"] = j_zero_limit(model).sign_label.value
    payload["jstar_label"] = j_star_limit_sign(model).value
    _write_text(args.out, json.dumps(payload, indent=2) + "\n")
    return 0


def _cmd_surface(args) -> int:
    grid = _parse_grid(args.grid)
    jobs = _resolve_jobs(args)
    if not ModelParams(a_p=args.ap, a_q=args.aq, p=2.0, q=3.0).has_standing_waves():
        raise DomainError("no standing waves: both coefficients negative")
    cells = surface_sweep(args.ap, args.aq, grid, tol=args.tol, jobs=jobs)
    _write_text(args.out, cells_to_csv(cells))
    return 0


def _cmd_profile(args) -> int:
    model = _model_from_args(args)
    prof = build_profile(model, args.omega, args.dx, args.L)
    lines = ["x,phi"]
    for x, phi in zip(prof.x, prof.values):
        lines.append(f"{format_float(x)},{format_float(phi)}")
    _write_text(args.out, "\n".join(lines) + "\n")
    return 0


def _cmd_simulate(args) -> int:
    model = _model_from_args(args)
    spec = _parse_perturb(args.perturb)
    cfg = SimulationConfig(dt=args.dt, dx=args.dx, half_width=args.L, t_final=args.T)
    prof = build_profile(model, args.omega, cfg.dx, cfg.half_width)
    u0 = initial_data(prof, spec)

    series = ["t,mass,energy,sup_norm,mod_distance"]
    snapshots = ["t,x,re_u,im_u"] if args.snapshot_out else None
    x_int = cfg.interior_grid()
    observed = 0
    try:
        for state, diag in evolve(
            model, cfg, u0, observe_every=args.observe_every, reference=prof
        ):
            series.append(
                ",".join(
                    format_float(v)
                    for v in (
                        diag.time,
                        diag.discrete_mass,
                        diag.discrete_energy,
                        diag.sup_norm,
                        diag.modulation_distance,
                    )
                )
            )
            if snapshots is not None and observed % args.snapshot_every == 0:
                t = format_float(diag.time)
                for x, val in zip(x_int, state.field):
                    snapshots.append(
                        f"{t},{format_float(x)},{format_float(val.real)},{format_float(val.imag)}"
                    )
            observed += 1
    except NumericError as exc:
        raise NumericError(f"simulation failed (omega={args.omega}): {exc}") from exc

    _write_text(args.out, "\n".join(series) + "\n")
    if snapshots is not None:
        _write_text(args.snapshot_out, "\n".join(snapshots) + "\n")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nls-lab",
        description="Stability toolkit for standing waves of the double-power 1d NLS",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("slope", help="sample omega -> (phi0, C, F, J) to CSV")
    _add_model_flags(sp)
    sp.add_argument("--omega-min", type=float, required=True)
    sp.add_argument("--omega-max", type=float, required=True)
    sp.add_argument("--points", type=int, required=True)
    sp.add_argument("--log", action="store_true", help="log-spaced frequencies")
    sp.add_argument("--out", default="slope.csv")
    sp.set_defaults(func=_cmd_slope)

    cp = sub.add_parser("classify", help="stability type and endpoint labels to JSON")
    _add_model_flags(cp)
    cp.add_argument("--tol", type=float, default=1e-8, help="critical-frequency tolerance")
    cp.add_argument("--out", default="classify.json")
    cp.set_defaults(func=_cmd_classify)

    su = sub.add_parser("surface", help="critical-frequency sweep over a (p,q) grid to CSV")
    su.add_argument("--ap", type=float, required=True)
    su.add_argument("--aq", type=float, required=True)
    su.add_argument("--grid", required=True, help="pmin:pmax:dp,qmin:qmax:dq")
    su.add_argument("--tol", type=float, default=1e-6)
    su.add_argument("--jobs", type=int, default=None, help="workers (falls back to NLS_LAB_JOBS)")
    su.add_argument("--out", default="surface.csv")
    su.set_defaults(func=_cmd_surface)

    pr = sub.add_parser("profile", help="standing-wave profile to CSV")
    _add_model_flags(pr)
    pr.add_argument("--omega", type=float, required=True)
    pr.add_argument("--L", type=float, default=50.0)
    pr.add_argument("--dx", type=float, default=0.05)
    pr.add_argument("--out", default="profile.csv")
    pr.set_defaults(func=_cmd_profile)

    si = sub.add_parser("simulate", help="evolve a perturbed standing wave, series to CSV")
    _add_model_flags(si)
    si.add_argument("--omega", type=float, required=True)
    si.add_argument("--perturb", default="scale:0", help="kind:eps, e.g. scale:0.01")
    si.add_argument("--L", type=float, default=50.0)
    si.add_argument("--dx", type=float, default=0.05)
    si.add_argument("--dt", type=float, default=1e-3)
    si.add_argument("--T", type=float, default=50.0)
    si.add_argument("--observe-every", type=int, default=100, help="steps between series rows")
    si.add_argument("--snapshot-out", default=None, help="optional field snapshot CSV")
    si.add_argument("--snapshot-every", type=int, default=10, help="observations between snapshots")
    si.add_argument("--out", default="simulate.csv")
    si.set_defaults(func=_cmd_simulate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    started = time.perf_counter()
    try:
        status = args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3
    if status == 0:
        parameters = {
            k: v for k, v in vars(args).items() if k not in ("func", "command") and v is not None
        }
        _write_manifest(
            args.out, args.command, parameters, time.perf_counter() - started
        )
    return status


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
