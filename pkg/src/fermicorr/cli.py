"""Command-line front end: parameter sweeps, state dumps, oracle cross-checks
and plot-ready figure datasets.

Exit codes: 0 success, 1 validation or usage error, 2 out-of-regime
parameters, 3 oracle tolerance breach.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, replace

import numpy as np

from .amplitudes import (
    CSV_AMPLITUDE_HEADER,
    DEFAULT_CUTOFF,
    DEFAULT_QUAD_POINTS,
    ModelParams,
    OutOfRegimeError,
    PerturbativeAmplitudes,
    XStateCoefficients,
    assemble,
    compute_amplitudes,
    csv_amplitude_row,
)
from .measures import (
    bell_opt,
    connected_correlation,
    geometric_discord,
    negativity,
    report,
)
from .oracles import (
    DirectionGrid,
    chsh_gridopt,
    discord_bruteforce,
    maxcorr_bruteforce,
    negativity_eig,
)
from .states import random_state, state_from_json, state_to_json

DEFAULT_R_BAR = math.pi / 4.0
DEFAULT_COUPLINGS = (0.02, 0.04, 0.06)
DEFAULT_XI_MIN = 0.0
DEFAULT_XI_MAX = 2.0
DEFAULT_XI_STEPS = 401

SWEEP_HEADER = CSV_AMPLITUDE_HEADER + (
    "sqrtD", "negativity", "conn_corr", "bell_chsh", "bell_opt", "hierarchy_ok",
)

ORACLE_TOLERANCES = {
    "discord": 1e-5,
    "conn_corr": 1e-5,
    "negativity": 1e-12,
    "bell_opt": 1e-4,
}


@dataclass(frozen=True)
class SweepSpec:
    """A (xi, coupling) sweep: grid ranges, coupling list and shared params."""

    xi_min: float
    xi_max: float
    xi_steps: int
    couplings: tuple
    params: ModelParams
    output_path: str = "sweep.csv"

    def __post_init__(self):
        if not (0.0 <= self.xi_min < self.xi_max):
            raise ValueError(
                f"need 0 <= xi_min < xi_max, got [{self.xi_min}, {self.xi_max}]"
            )
        if self.xi_steps < 2:
            raise ValueError(f"xi_steps must be >= 2, got {self.xi_steps}")
        if not self.couplings:
            raise ValueError("couplings must be non-empty")
        if any(k < 0 for k in self.couplings):
            raise ValueError(f"couplings must all be >= 0, got {self.couplings}")

    def xi_grid(self) -> np.ndarray:
        return np.linspace(self.xi_min, self.xi_max, self.xi_steps)


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def write_csv(path: str, header, rows) -> None:
    """Comma-separated values, LF line endings, 17 significant digits."""
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(row[k]) for k in header) + "\n")


def sweep_row(p: ModelParams, xi: float) -> dict:
    """One sweep point: amplitudes, coefficients and the measure report."""
    amps = compute_amplitudes(p, xi)
    coeffs, rho = assemble(p, amps)
    rep = report(rho, coeffs, amps)
    row = csv_amplitude_row(p, amps, coeffs)
    row.update(
        sqrtD=rep.sqrt_discord,
        negativity=rep.negativity,
        conn_corr=rep.connected_corr,
        bell_chsh=rep.bell_chsh,
        bell_opt=rep.bell_opt,
        hierarchy_ok=rep.hierarchy_ok,
    )
    return row


def run_sweep(spec: SweepSpec) -> list[dict]:
    """All sweep rows ordered by (coupling, xi) ascending; deterministic."""
    rows = []
    for coupling in sorted(spec.couplings):
        p = replace(spec.params, coupling=coupling)
        for xi in spec.xi_grid():
            rows.append(sweep_row(p, float(xi)))
    return rows


def state_dump(params: ModelParams, xi: float) -> dict:
    """JSON document for one state: params, amplitudes, coefficients, matrix."""
    amps = compute_amplitudes(params, xi)
    coeffs, rho = assemble(params, amps)
    return {
        "params": {
            "r_bar": params.r_bar,
            "coupling": params.coupling,
            "cutoff": params.cutoff,
            "quad_points": params.quad_points,
            "include_two_photon": params.include_two_photon,
        },
        "amplitudes": {
            "xi": amps.xi,
            "re_A": amps.re_a,
            "re_X": amps.exchange.real,
            "im_X": amps.exchange.imag,
            "u2": amps.u2,
            "v2": amps.v2,
            "re_L": amps.pair_coherence.real,
            "im_L": amps.pair_coherence.imag,
            "g2": amps.g2,
            "two_photon_enabled": amps.two_photon_enabled,
        },
        "coefficients": {
            "rho11": coeffs.rho11,
            "rho22": coeffs.rho22,
            "rho33": coeffs.rho33,
            "rho44": coeffs.rho44,
            "rho14": [coeffs.rho14.real, coeffs.rho14.imag],
            "rho23": [coeffs.rho23.real, coeffs.rho23.imag],
            "c": coeffs.c,
        },
        "rho": state_to_json(rho),
    }


def load_state_dump(doc: dict):
    """Rebuild (params, amplitudes, coefficients, rho) from a state dump."""
    p = ModelParams(**doc["params"])
    a = doc["amplitudes"]
    amps = PerturbativeAmplitudes(
        xi=a["xi"],
        re_a=a["re_A"],
        exchange=complex(a["re_X"], a["im_X"]),
        u2=a["u2"],
        v2=a["v2"],
        pair_coherence=complex(a["re_L"], a["im_L"]),
        g2=a["g2"],
        two_photon_enabled=a["two_photon_enabled"],
    )
    co = doc["coefficients"]
    coeffs = XStateCoefficients(
        rho11=co["rho11"], rho22=co["rho22"], rho33=co["rho33"], rho44=co["rho44"],
        rho14=complex(*co["rho14"]), rho23=complex(*co["rho23"]), c=co["c"],
    )
    return p, amps, coeffs, state_from_json(doc["rho"])


def oracle_check(count: int, seed: int, grid: DirectionGrid) -> dict:
    """Compare every closed-form measure against its brute-force oracle.

    Runs `count` random mixed states through the discord, connected
    correlation and negativity comparisons and `count` random X-shaped
    states through the Bell comparison; reports per-measure maximum
    deviations against the documented tolerances.
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    dev = {k: 0.0 for k in ORACLE_TOLERANCES}
    failures = []
    for i in range(count):
        rho = random_state(seed + i, "mixed")
        d = abs(discord_bruteforce(rho, grid) - geometric_discord(rho))
        c = abs(maxcorr_bruteforce(rho, grid)[0] - connected_correlation(rho))
        n = abs(negativity_eig(rho) - negativity(rho))
        rho_x = random_state(seed + i, "xshape")
        coeffs = XStateCoefficients(
            rho11=rho_x[0, 0].real, rho22=rho_x[1, 1].real,
            rho33=rho_x[2, 2].real, rho44=rho_x[3, 3].real,
            rho14=complex(rho_x[0, 3]), rho23=complex(rho_x[1, 2]), c=1.0,
        )
        b = abs(chsh_gridopt(rho_x, grid) - bell_opt(coeffs))
        for name, value in (("discord", d), ("conn_corr", c), ("negativity", n), ("bell_opt", b)):
            dev[name] = max(dev[name], value)
            if value > ORACLE_TOLERANCES[name]:
                failures.append({"seed": seed + i, "measure": name, "deviation": value})
    return {
        "count": count,
        "seed": seed,
        "max_deviation": dev,
        "tolerance": dict(ORACLE_TOLERANCES),
        "failures": failures,
        "ok": not failures,
    }


FIG1_COLUMNS = ("xi", "K", "sqrtD", "negativity", "conn_corr")
FIG4_COLUMNS = ("xi", "K", "conn_corr", "sqrtD", "negativity")
FIG5_COLUMNS = ("xi", "K", "bell_chsh", "bell_opt", "bell_classical")


def figures(out_dir: str, spec: SweepSpec) -> list[str]:
    """Emit fig1.csv / fig4.csv / fig5.csv plot-ready datasets into out_dir.

    fig1: the three correlation measures vs xi for the given couplings.
    fig4: the same measures on a denser coupling grid (surface data).
    fig5: both Bell parameters vs xi plus the classical threshold column.
    """
    rows = run_sweep(spec)
    paths = []
    path = os.path.join(out_dir, "fig1.csv")
    write_csv(path, FIG1_COLUMNS, rows)
    paths.append(path)

    dense = np.linspace(min(spec.couplings), max(spec.couplings), 9)
    dense_spec = replace(spec, couplings=tuple(float(k) for k in dense))
    path = os.path.join(out_dir, "fig4.csv")
    write_csv(path, FIG4_COLUMNS, run_sweep(dense_spec))
    paths.append(path)

    for row in rows:
        row["bell_classical"] = 2.0
    path = os.path.join(out_dir, "fig5.csv")
    write_csv(path, FIG5_COLUMNS, rows)
    paths.append(path)
    return paths


class _Parser(argparse.ArgumentParser):
    # usage problems must exit 1, not argparse's default 2
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(_fail(f"error: {message}", 1))


def _fail(message: str, code: int) -> int:
    print(message, file=sys.stderr)
    return code


def _add_model_args(sub):
    sub.add_argument("--r-bar", type=float, default=DEFAULT_R_BAR,
                     help="qubit separation in units of v/Omega (default: pi/4)")
    sub.add_argument("--coupling", type=float, action="append", default=None,
                     help="dimensionless coupling K (repeatable; default: 0.02 0.04 0.06)")
    sub.add_argument("--cutoff", type=float, default=DEFAULT_CUTOFF,
                     help="UV cutoff omega_c/Omega (default: %(default)s)")
    sub.add_argument("--quad-points", type=int, default=DEFAULT_QUAD_POINTS,
                     help="time-quadrature node budget (default: %(default)s)")
    sub.add_argument("--two-photon", action=argparse.BooleanOptionalAction, default=True,
                     help="include the two-photon sector weight")


def _add_grid_args(sub):
    sub.add_argument("--xi-min", type=float, default=DEFAULT_XI_MIN)
    sub.add_argument("--xi-max", type=float, default=DEFAULT_XI_MAX)
    sub.add_argument("--xi-steps", type=int, default=DEFAULT_XI_STEPS)


def _model_params(args, coupling: float) -> ModelParams:
    return ModelParams(
        r_bar=args.r_bar,
        coupling=coupling,
        cutoff=args.cutoff,
        quad_points=args.quad_points,
        include_two_photon=args.two_photon,
    )


def _couplings(args) -> tuple:
    return tuple(args.coupling) if args.coupling else DEFAULT_COUPLINGS


def main(argv=None) -> int:
    parser = _Parser(prog="fermicorr",
                     description="Two-qubit correlation dynamics in a 1D vacuum field")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="run a (xi, K) sweep and write CSV")
    _add_model_args(p_sweep)
    _add_grid_args(p_sweep)
    p_sweep.add_argument("--out", default="sweep.csv", help="output CSV path")

    p_state = sub.add_parser("state", help="dump one assembled state as JSON")
    _add_model_args(p_state)
    p_state.add_argument("--xi", type=float, default=1.0, help="dimensionless time")
    p_state.add_argument("--out", default=None, help="output path (default: stdout)")

    p_oracle = sub.add_parser("oracle-check", help="closed forms vs brute-force oracles")
    p_oracle.add_argument("--count", type=int, default=100)
    p_oracle.add_argument("--seed", type=int, default=7)
    p_oracle.add_argument("--polar-steps", type=int, default=24)
    p_oracle.add_argument("--azimuth-steps", type=int, default=48)
    p_oracle.add_argument("--refine-rounds", type=int, default=6)
    p_oracle.add_argument("--out", default=None, help="write the JSON report here")

    p_fig = sub.add_parser("figures", help="emit plot-ready CSV datasets")
    _add_model_args(p_fig)
    _add_grid_args(p_fig)
    p_fig.add_argument("--out", default=".", help="output directory")

    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1

    try:
        if args.command == "sweep":
            spec = SweepSpec(
                xi_min=args.xi_min, xi_max=args.xi_max, xi_steps=args.xi_steps,
                couplings=_couplings(args),
                params=_model_params(args, _couplings(args)[0]),
                output_path=args.out,
            )
            write_csv(spec.output_path, SWEEP_HEADER, run_sweep(spec))
            print(f"wrote {spec.output_path}")
            return 0
        if args.command == "state":
            params = _model_params(args, _couplings(args)[0])
            doc = state_dump(params, args.xi)
            text = json.dumps(doc, indent=2)
            if args.out:
                with open(args.out, "w", newline="\n") as fh:
                    fh.write(text + "\n")
                print(f"wrote {args.out}")
            else:
                print(text)
            return 0
        if args.command == "oracle-check":
            grid = DirectionGrid(
                polar_steps=args.polar_steps,
                azimuth_steps=args.azimuth_steps,
                refine_rounds=args.refine_rounds,
            )
            rep = oracle_check(args.count, args.seed, grid)
            text = json.dumps(rep, indent=2)
            if args.out:
                with open(args.out, "w", newline="\n") as fh:
                    fh.write(text + "\n")
            print(text)
            if not rep["ok"]:
                return _fail("oracle tolerance breach", 3)
            return 0
        if args.command == "figures":
            spec = SweepSpec(
                xi_min=args.xi_min, xi_max=args.xi_max, xi_steps=args.xi_steps,
                couplings=_couplings(args),
                params=_model_params(args, _couplings(args)[0]),
            )
            for path in figures(args.out, spec):
                print(f"wrote {path}")
            return 0
    except OutOfRegimeError as exc:
        return _fail(f"out of regime: {exc}", 2)
    except (ValueError, OSError) as exc:
        return _fail(f"error: {exc}", 1)
    return _fail(f"unknown command {args.command!r}", 1)


if __name__ == "__main__":
    sys.exit(main())
