"""Command-line front end: deterministic CSV/JSON emission.

Subcommands: cpt-table, integrate, classify, gamma, oscillate, dual,
reconstruct.  Every command writes its data artifact to --output (CSV or
JSON with 17-significant-digit decimals) and keeps stdout/stderr for
diagnostics only.  Exit codes: 0 success, 1 domain/library error, 2 usage
error.  A JSON config file may supply any parameter; explicit flags win.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from .cpt import Curvature, f_omega, mu_of_omega, reconstruct_a
from .errors import RvcosmoError
from .friedmann import CosmologyConfig, integrate
from .gammafun import DEFAULT_SCHEDULE, m_functional
from .oscillate import OscillationModel, linear_phase_model, log_phase_model, synth_a, synth_derivatives
from .rvcore import classify
from .sampled import CSV_FLOAT_FMT, SampledFunction, read_csv_columns, write_csv

COMMANDS = ("cpt-table", "integrate", "classify", "gamma", "oscillate", "dual", "reconstruct")

CPT_TABLE_HEADER = ("omega", "F_flat", "F_open", "mu_flat")
OSCILLATE_HEADER = ("t", "a", "a_dot", "a_ddot", "q")

_DEFAULTS = {
    "cpt-table": {"omega_min": 0.01, "omega_max": 0.99, "n": 99, "k": "flat"},
    "integrate": {
        "h0": 1.0, "omega0": None, "omegalambda0": None, "k": "flat",
        "a_init": 1e-6, "a_final": 1e3, "n": 4096,
    },
    "classify": {"input": None},
    "gamma": {"input": None, "builtin": None, "tol": 1e-5},
    "oscillate": {"alpha": None, "beta": None, "phase": "log", "horizon": 1e6, "points": 4096},
    "dual": {"w": None},
    "reconstruct": {"input": None, "k": "flat", "a0": 1.0},
}


@dataclass(frozen=True)
class RunConfig:
    command: str
    parameters: dict
    output_path: str
    format: str

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.format not in ("csv", "json"):
            raise ValueError(f"unknown format {self.format!r}")


def load_config(path) -> RunConfig:
    """Parse and validate a JSON run configuration."""
    with open(path) as fh:
        doc = json.load(fh)
    missing = [key for key in ("command", "output_path") if key not in doc]
    if missing:
        raise ValueError(f"config missing keys: {', '.join(missing)}")
    command = doc["command"]
    fmt = doc.get("format", "json" if command in ("classify", "gamma", "dual") else "csv")
    return RunConfig(
        command=command,
        parameters=dict(doc.get("parameters", {})),
        output_path=doc["output_path"],
        format=fmt,
    )


def _merge_params(command: str, args: argparse.Namespace) -> dict:
    params = dict(_DEFAULTS[command])
    if args.config:
        cfg = load_config(args.config)
        if cfg.command != command:
            raise ValueError(f"config file is for command {cfg.command!r}, not {command!r}")
        for key, value in cfg.parameters.items():
            if key not in params:
                raise ValueError(f"unknown parameter {key!r} for {command}")
            params[key] = value
        if args.output is None:
            args.output = cfg.output_path
    for key in params:
        flag_val = getattr(args, key, None)
        if flag_val is not None:
            params[key] = flag_val
    if args.output is None:
        raise ValueError("--output is required")
    required = [k for k, v in params.items() if v is None]
    if command == "gamma":
        # gamma takes exactly one of input/builtin.
        if set(required) >= {"input", "builtin"}:
            raise ValueError("gamma needs --input or --builtin")
        required = [k for k in required if k not in ("input", "builtin")]
    if required:
        raise ValueError(f"missing required parameters: {', '.join(sorted(required))}")
    for key, value in params.items():
        if isinstance(value, float) and not math.isfinite(value):
            raise ValueError(f"parameter {key} must be finite")
    return params


def _write_json(path, doc) -> None:
    def default(obj):
        if isinstance(obj, (np.floating, np.integer)):
            return obj.item()
        raise TypeError(f"not JSON-serializable: {type(obj)}")

    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True, default=default)
        fh.write("\n")


def _cmd_cpt_table(params, output) -> None:
    omega = np.linspace(float(params["omega_min"]), float(params["omega_max"]), int(params["n"]))
    write_csv(output, CPT_TABLE_HEADER, [
        omega,
        f_omega(omega, Curvature.FLAT),
        f_omega(omega, Curvature.OPEN),
        mu_of_omega(omega, Curvature.FLAT),
    ])


def _cmd_integrate(params, output) -> None:
    cfg = CosmologyConfig(
        H0=float(params["h0"]),
        Omega0=float(params["omega0"]),
        OmegaLambda0=float(params["omegalambda0"]),
        k=Curvature.from_name(str(params["k"])),
    )
    traj = integrate(
        cfg,
        a_init=float(params["a_init"]),
        a_final=float(params["a_final"]),
        n_points=int(params["n"]),
    )
    traj.to_csv(output)


def _cmd_classify(params, output) -> None:
    t, v = read_csv_columns(params["input"], 2)
    result = classify(SampledFunction(t, v))
    _write_json(output, {
        "kind": result.kind.value,
        "index": result.index,
        "index_interval": list(result.index_interval) if result.index_interval else None,
    })


_BUILTIN_MU = {
    "constant": lambda t: 2.0 / 9.0 * np.ones_like(np.asarray(t, dtype=float)),
    "log-decay": lambda t: 1.0 / np.log(np.asarray(t, dtype=float)) ** 2,
    "oscillating": lambda t: 0.25 + 0.3 * np.sin(np.log(np.asarray(t, dtype=float))),
}


def _cmd_gamma(params, output) -> None:
    if params.get("input"):
        t, v = read_csv_columns(params["input"], 2)
        from .sampled import GridSeries

        mu = GridSeries(t, v)
        schedule = [x for x in DEFAULT_SCHEDULE if 100.0 * x <= t[-1]]
        if len(schedule) < 4:
            raise ValueError("sampled mu grid too short for the truncation schedule")
    else:
        name = str(params["builtin"])
        if name not in _BUILTIN_MU:
            raise ValueError(f"unknown builtin {name!r} (choose from {sorted(_BUILTIN_MU)})")
        mu = _BUILTIN_MU[name]
        schedule = DEFAULT_SCHEDULE
    result = m_functional(mu, x_schedule=schedule, tol=float(params["tol"]))
    _write_json(output, {
        "gamma": result.gamma,
        "converged": result.converged,
        "regime": result.regime.value,
        "roots": list(result.roots) if result.roots else None,
        "diagnostics": list(result.diagnostics),
    })


def _phase_model(alpha: float, beta: float, phase: str) -> OscillationModel:
    if phase == "log":
        return log_phase_model(alpha, beta)
    if phase.startswith("linear:"):
        return linear_phase_model(alpha, beta, float(phase.split(":", 1)[1]))
    # Anything else is a CSV u-track; spline it for derivatives.
    from scipy.interpolate import CubicSpline

    t, u = read_csv_columns(phase, 2)
    spline = CubicSpline(t, u)
    return OscillationModel(
        alpha=alpha, beta=beta,
        u=spline, u_dot=spline.derivative(1), u_ddot=spline.derivative(2),
        t0=float(t[0]) if t[0] > 0 else 1.0,
    )


def _cmd_oscillate(params, output) -> None:
    alpha, beta = float(params["alpha"]), float(params["beta"])
    model = _phase_model(alpha, beta, str(params["phase"]))
    grid = np.geomspace(model.t0, float(params["horizon"]), int(params["points"]))
    a = synth_a(model, grid)
    a_dot, a_ddot = synth_derivatives(model, grid)
    q = -a_ddot.values * a.values / np.where(a_dot.values == 0.0, np.inf, a_dot.values ** 2)
    write_csv(output, OSCILLATE_HEADER, [grid, a.values, a_dot.values, a_ddot.values, q])


def _cmd_dual(params, output) -> None:
    from .dualmap import dual_params

    pair = dual_params(float(params["w"]))
    _write_json(output, {
        "w_alpha": pair.w_alpha,
        "w_beta": pair.w_beta,
        "gamma": pair.gamma,
        "alpha": pair.alpha,
        "beta": pair.beta,
        "dual_hubble_coeff": pair.beta,
    })


def _cmd_reconstruct(params, output) -> None:
    t, om = read_csv_columns(params["input"], 2)
    track = SampledFunction(t, om)
    rebuilt = reconstruct_a(track, Curvature.from_name(str(params["k"])), t0=float(t[0]), a0=float(params["a0"]))
    write_csv(output, ("t", "value"), [rebuilt.grid, rebuilt.values])


_RUNNERS = {
    "cpt-table": _cmd_cpt_table,
    "integrate": _cmd_integrate,
    "classify": _cmd_classify,
    "gamma": _cmd_gamma,
    "oscillate": _cmd_oscillate,
    "dual": _cmd_dual,
    "reconstruct": _cmd_reconstruct,
}


def run(config: RunConfig) -> int:
    """Dispatch a validated RunConfig; returns the process exit status."""
    try:
        _RUNNERS[config.command](dict(_DEFAULTS[config.command], **config.parameters), config.output_path)
    except RvcosmoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rvcosmo",
        description="Regular-variation cosmology toolkit: tables, trajectories, classification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="JSON config file; explicit flags override it")
        p.add_argument("--output", help="output artifact path")
        return p

    p = add("cpt-table", "emit the age-function table omega,F_flat,F_open,mu_flat")
    p.add_argument("--omega-min", dest="omega_min", type=float)
    p.add_argument("--omega-max", dest="omega_max", type=float)
    p.add_argument("--n", type=int)
    p.add_argument("--k", choices=["flat", "open"])

    p = add("integrate", "integrate a matter+Lambda background trajectory")
    p.add_argument("--h0", type=float)
    p.add_argument("--omega0", type=float)
    p.add_argument("--omegalambda0", type=float)
    p.add_argument("--k", choices=["flat", "open", "closed"])
    p.add_argument("--a-init", dest="a_init", type=float)
    p.add_argument("--a-final", dest="a_final", type=float)
    p.add_argument("--n", type=int)

    p = add("classify", "classify a sampled track as RV/ER/OR/unbounded")
    p.add_argument("--input", help="CSV with columns t,value")

    p = add("gamma", "estimate the threshold functional M(mu)")
    p.add_argument("--input", help="CSV with columns t,mu")
    p.add_argument("--builtin", choices=sorted(_BUILTIN_MU))
    p.add_argument("--tol", type=float)

    p = add("oscillate", "synthesize a two-power oscillation track")
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--phase", help="'log', 'linear:OMEGA', or a CSV u-track path")
    p.add_argument("--horizon", type=float)
    p.add_argument("--points", type=int)

    p = add("dual", "dual-universe parameter translation")
    p.add_argument("--w", type=float)

    p = add("reconstruct", "rebuild a(t) from an Omega(t) track CSV")
    p.add_argument("--input", help="CSV with columns t,omega")
    p.add_argument("--k", choices=["flat", "open"])
    p.add_argument("--a0", type=float)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        params = _merge_params(args.command, args)
        config = RunConfig(
            command=args.command,
            parameters=params,
            output_path=args.output,
            format="json" if args.command in ("classify", "gamma", "dual") else "csv",
        )
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
