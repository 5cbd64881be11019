"""Command-line front end: `spinsim run`, `spinsim scaling`, `spinsim raman`.

Every subcommand reads an optional INI config (a file path or a packaged
recipe name like fig2a/fig2b/fig3/raman_sodium), applies flag overrides, and
writes its outputs under a base path: {out}.csv, {out}.json and {out}.png.

Exit codes: 0 success, 1 configuration error (bad flags, bad config file,
under-resolved grid), 2 numerical or I/O failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings

import numpy as np
from scipy.constants import pi

from . import plotting
from .config import ConfigError, load_raman_params, load_run_config
from .observables import GridResolutionError
from .ramancalc import (
    DecoherenceWarning,
    bragg_resonances,
    decoherence_ratio,
    effective_rabi,
    raman_resonances,
)
from .runner import run, scaling_study
from .spinops import scheme_from_name


class _ArgumentError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; this package reserves 2 for
    # numerical failures, so route usage problems through exit code 1 instead
    def error(self, message):
        raise _ArgumentError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="spinsim", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="one time scan: CSV series + JSON summary + figure")
    p_run.add_argument("--config", help="INI file path or recipe name (fig2a, fig2b, fig3)")
    p_run.add_argument("--scheme", help="MolmerSorensen | OneAxisTwisting | TwoAxisRaman")
    p_run.add_argument("--n-atoms", type=int, help="atom number N")
    p_run.add_argument("--t-max", type=float, help="scan end, in units of 1/Omega_R")
    p_run.add_argument("--n-points", type=int, help="time-grid size")
    p_run.add_argument("--initial", help="all_up | all_down | coherent(theta,phi)")
    p_run.add_argument("--out", help="output base path (default: run)")
    p_run.add_argument("--seed", type=int, help="seed recorded with the run")
    p_run.set_defaults(func=_cmd_run)

    p_sc = sub.add_parser("scaling", help="sweep N, fit squeezing power laws")
    p_sc.add_argument("--scheme", required=True)
    p_sc.add_argument("--n-list", required=True,
                      help="comma-separated even atom numbers, ascending")
    p_sc.add_argument("--outputs", default="variance,xi_squared",
                      help="subset of: variance, xi_squared")
    p_sc.add_argument("--out", default="scaling", help="output base path")
    p_sc.set_defaults(func=_cmd_scaling)

    p_rm = sub.add_parser("raman", help="feasibility report for the Raman pair coupling")
    p_rm.add_argument("--config", required=True,
                      help="INI file path or recipe name (raman_sodium)")
    p_rm.add_argument("--out", default="raman", help="output base path")
    p_rm.set_defaults(func=_cmd_raman)
    return parser


def _cmd_run(args) -> int:
    overrides = {
        "scheme": args.scheme,
        "n_atoms": args.n_atoms,
        "t_max": args.t_max,
        "n_points": args.n_points,
        "initial": args.initial,
        "seed": args.seed,
        "output_path": args.out,
    }
    config = load_run_config(args.config, overrides)
    summary = run(config)
    parts = [f"wrote {config.output_path}.csv/.json/.png"]
    if summary["max_ghz_fidelity"] is not None:
        parts.append(
            f"max GHZ fidelity {summary['max_ghz_fidelity']:.6f} "
            f"at t={summary['t_of_max_ghz_fidelity']:.6g}"
        )
    if summary["min_xi2"] is not None:
        parts.append(
            f"min xi^2 {summary['min_xi2']:.6g} at t={summary['t_of_min_xi2']:.6g}"
        )
    print("; ".join(parts))
    return 0


def _cmd_scaling(args) -> int:
    try:
        scheme = scheme_from_name(args.scheme)
        n_list = [int(tok) for tok in args.n_list.split(",") if tok.strip()]
        outputs = tuple(tok.strip() for tok in args.outputs.split(",") if tok.strip())
        report = scaling_study(scheme, n_list, outputs, output_path=args.out)
    except ValueError as exc:
        # every validation error here is a configuration problem
        raise ConfigError(str(exc)) from exc
    print(f"wrote {args.out}.csv/.json/.png")
    for name, fit in report["fits"].items():
        if fit["slope"] is not None:
            err = f" +- {fit['stderr']:.4f}" if fit["stderr"] is not None else ""
            print(f"  {name}: {fit['slope']:+.4f}{err}")
    return 0


def _cmd_raman(args) -> int:
    params = load_raman_params(args.config)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        omega_m, omega_a, ratio = effective_rabi(params)
    flagged = any(issubclass(w.category, DecoherenceWarning) for w in caught)

    bragg_mol, bragg_at = bragg_resonances(params, counterpropagating=True)
    raman_mol, raman_at = raman_resonances(params)
    report = {
        "params": {k: getattr(params, k) for k in
                   ("omega1", "omega2", "delta_m", "delta_a", "eta",
                    "gamma_m", "omega_gg", "k", "mass")},
        "effective_rabi": {
            "omega_m": omega_m,
            "omega_a": omega_a,
            "suppression_ratio": ratio,
        },
        "decoherence": {
            "delta_m_over_gamma_m": decoherence_ratio(params),
            "warning": flagged,
        },
        "bragg_counterpropagating": {
            "molecular_rad_s": bragg_mol,
            "atomic_rad_s": bragg_at,
            "molecular_hz": bragg_mol / (2 * pi),
            "atomic_hz": bragg_at / (2 * pi),
        },
        "raman_copropagating": {
            "molecular_rad_s": raman_mol,
            "atomic_rad_s": raman_at,
            "molecular_hz": raman_mol / (2 * pi),
            "atomic_hz": raman_at / (2 * pi),
        },
    }
    with open(f"{args.out}.json", "w") as fh:
        json.dump(report, fh, indent=2)
        fh.write("\n")
    plotting.render_raman_figure(report, f"{args.out}.png")
    print(
        f"wrote {args.out}.json/.png; suppression ratio {ratio:.4g}; "
        f"|delta_m|/gamma_m {report['decoherence']['delta_m_over_gamma_m']:.4g}"
        + (" (WARNING: decoherence)" if flagged else "")
    )
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _ArgumentError as exc:
        print(f"spinsim: error: {exc}", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except (ConfigError, GridResolutionError) as exc:
        print(f"spinsim: config error: {exc}", file=sys.stderr)
        return 1
    except np.linalg.LinAlgError as exc:
        print(f"spinsim: numerical failure: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"spinsim: config error: {exc}", file=sys.stderr)
        return 1
    except (RuntimeError, ArithmeticError, OSError) as exc:
        print(f"spinsim: failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
