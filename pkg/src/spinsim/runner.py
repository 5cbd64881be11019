"""Batch execution: time scans to CSV/JSON/PNG, and the N-scaling study.

This is the layer behind the CLI subcommands.  run() produces, for one
configuration, a CSV time series with a fixed column set

    t,p0,pN,ghz_fidelity,xi_squared,n1_x,n1_y,n1_z,degenerate_flag

(nan-filled where an output was not requested; nine extra moment columns are
appended only when 'moments' is requested), a JSON summary, and a rendered
figure next to them.  scaling_study() sweeps N, extracts the minimum-over-
time variance and squeezing and their times, and fits power laws.

Nothing here uses randomness; repeated runs of the same config are
byte-identical in the CSV, which is itself one of the acceptance checks.
"""

from __future__ import annotations

import json
import time

import numpy as np

from . import plotting
from .config import RunConfig
from .observables import (
    check_grid_resolution,
    edge_populations,
    ghz_fidelity,
    spin_moments,
    squeezing,
)
from .propagator import diagonalize, evolve, evolve_diagonal
from .spinops import CouplingScheme, SchemeKind, hamiltonian
from .state import DickeState, all_down_state, coherent_spin_state

CSV_COLUMNS = ("t", "p0", "pN", "ghz_fidelity", "xi_squared",
               "n1_x", "n1_y", "n1_z", "degenerate_flag")
MOMENT_COLUMNS = ("jx", "jy", "jz",
                  "cov_xx", "cov_xy", "cov_xz", "cov_yy", "cov_yz", "cov_zz")

MAX_SCALING_ATOMS = 2048


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    return f"{float(value):.17g}"


def _time_grid(config: RunConfig) -> np.ndarray:
    if config.t_max == 0:
        return np.array([0.0])
    return np.linspace(0.0, config.t_max, config.n_points)


def _make_stepper(scheme: CouplingScheme, n_atoms: int, initial: DickeState):
    """A function t -> state; diagonal couplings skip the eigensolve."""
    if scheme.kind is SchemeKind.ONE_AXIS_TWISTING:
        return lambda t: evolve_diagonal(initial, scheme, n_atoms, t)
    decomp = diagonalize(hamiltonian(scheme, n_atoms))
    return lambda t: evolve(initial, decomp, t)


def run(config: RunConfig) -> dict:
    """Execute one configured scan; write CSV + JSON + PNG; return the summary."""
    started = time.perf_counter()
    grid = _time_grid(config)
    want = set(config.outputs)
    if "squeezing" in want:
        check_grid_resolution(config.n_atoms, grid)

    initial = config.initial_state()
    step = _make_stepper(config.scheme, config.n_atoms, initial)

    npts = grid.size
    nan_col = lambda: np.full(npts, np.nan)
    cols = {name: nan_col() for name in CSV_COLUMNS}
    cols["t"] = grid
    extra = {name: nan_col() for name in MOMENT_COLUMNS} if "moments" in want else {}

    for i, t in enumerate(grid):
        state = step(float(t))
        if "edge_populations" in want:
            cols["p0"][i], cols["pN"][i] = edge_populations(state)
        if "ghz_fidelity" in want:
            cols["ghz_fidelity"][i], _ = ghz_fidelity(state)
        if "squeezing" in want:
            sq = squeezing(state)
            cols["xi_squared"][i] = sq.xi_squared
            cols["n1_x"][i], cols["n1_y"][i], cols["n1_z"][i] = sq.direction_n1
            cols["degenerate_flag"][i] = 1.0 if sq.degenerate_flag else 0.0
        if "moments" in want:
            mom = spin_moments(state)
            extra["jx"][i], extra["jy"][i], extra["jz"][i] = mom.mean
            c = mom.covariance
            (extra["cov_xx"][i], extra["cov_xy"][i], extra["cov_xz"][i],
             extra["cov_yy"][i], extra["cov_yz"][i], extra["cov_zz"][i]) = (
                c[0, 0], c[0, 1], c[0, 2], c[1, 1], c[1, 2], c[2, 2])

    header = list(CSV_COLUMNS) + (list(MOMENT_COLUMNS) if extra else [])
    csv_path = f"{config.output_path}.csv"
    with open(csv_path, "w", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for i in range(npts):
            row = [cols[name][i] for name in CSV_COLUMNS]
            row += [extra[name][i] for name in MOMENT_COLUMNS] if extra else []
            flag = cols["degenerate_flag"][i]
            text = []
            for name, value in zip(header, row):
                if name == "degenerate_flag" and np.isfinite(flag):
                    text.append(str(int(flag)))
                else:
                    text.append(_fmt(value))
            fh.write(",".join(text) + "\n")

    summary = {
        "t_of_max_ghz_fidelity": None,
        "max_ghz_fidelity": None,
        "t_of_min_xi2": None,
        "min_xi2": None,
        "runtime": None,
    }
    if "ghz_fidelity" in want:
        imax = int(np.argmax(cols["ghz_fidelity"]))
        summary["t_of_max_ghz_fidelity"] = float(grid[imax])
        summary["max_ghz_fidelity"] = float(cols["ghz_fidelity"][imax])
    if "squeezing" in want and not np.all(np.isnan(cols["xi_squared"])):
        imin = int(np.nanargmin(cols["xi_squared"]))
        summary["t_of_min_xi2"] = float(grid[imin])
        summary["min_xi2"] = float(cols["xi_squared"][imin])
    summary["runtime"] = time.perf_counter() - started

    with open(f"{config.output_path}.json", "w") as fh:
        json.dump(summary, fh, indent=2)
        fh.write("\n")

    title = (f"{config.scheme.kind.value}, N={config.n_atoms}, "
             f"from {config.initial}")
    plotting.render_run_figure(
        grid, {**cols, **extra}, want, title, f"{config.output_path}.png"
    )
    return summary


# ---------------------------------------------------------------------------
# scaling study


def _scaling_recipe(scheme: CouplingScheme, n_atoms: int):
    """Initial state and first-guess scan window for one sweep point.

    The squeezing minimum sits near t ~ ln(N)/N for the pair coupling and
    t ~ N^{-2/3} for the twisting couplings, so the windows below bracket it
    with margin; if a minimum still lands at the window edge the caller
    stretches t_max and retries.  The twisting coupling does nothing to the
    poles (they are J_z eigenstates), hence the equatorial start there.
    """
    if scheme.kind is SchemeKind.ONE_AXIS_TWISTING:
        return coherent_spin_state(n_atoms, np.pi / 2.0, 0.0), 4.0 * n_atoms ** (-2.0 / 3.0)
    if scheme.kind is SchemeKind.TWO_AXIS_RAMAN:
        return all_down_state(n_atoms), 14.0 / n_atoms
    return all_down_state(n_atoms), 8.0 * n_atoms ** (-2.0 / 3.0)


def _scan_minima(scheme: CouplingScheme, n_atoms: int) -> dict:
    """Minimum-over-time variance and xi^2 for one N, with edge-aware retries."""
    initial, t_max = _scaling_recipe(scheme, n_atoms)
    step = _make_stepper(scheme, n_atoms, initial)
    spacing_target = 0.02 / n_atoms
    for _attempt in range(6):
        n_points = int(np.ceil(t_max / spacing_target)) + 1
        grid = np.linspace(0.0, t_max, n_points)
        variance = np.empty(grid.size)
        xi = np.empty(grid.size)
        for i, t in enumerate(grid):
            sq = squeezing(step(float(t)))
            variance[i] = sq.min_variance
            xi[i] = sq.xi_squared
        iv = int(np.argmin(variance))
        ix = int(np.nanargmin(xi))
        if max(iv, ix) < 0.95 * (grid.size - 1):
            return {
                "n_atoms": n_atoms,
                "min_variance": float(variance[iv]),
                "t_at_min_variance": float(grid[iv]),
                "min_xi_squared": float(xi[ix]),
                "t_at_min_xi_squared": float(grid[ix]),
                "t_max_scanned": float(t_max),
            }
        t_max *= 1.6
    raise RuntimeError(
        f"no interior minimum found for {scheme.kind.value} at N={n_atoms} "
        f"after extending the window to t_max={t_max:.3g}"
    )


def _power_fit(ns, values) -> dict:
    """Log-log linear fit: slope, its standard error, and the intercept.

    The standard error needs at least one degree of freedom beyond the two
    fit parameters; with fewer than three points it is reported as None.
    """
    ns = np.asarray(ns, dtype=float)
    values = np.asarray(values, dtype=float)
    if len(ns) < 2 or np.any(values <= 0):
        return {"slope": None, "stderr": None, "intercept": None}
    if len(ns) < 3:
        coeffs = np.polyfit(np.log(ns), np.log(values), 1)
        return {"slope": float(coeffs[0]), "stderr": None, "intercept": float(coeffs[1])}
    coeffs, cov = np.polyfit(np.log(ns), np.log(values), 1, cov=True)
    return {
        "slope": float(coeffs[0]),
        "stderr": float(np.sqrt(cov[0, 0])),
        "intercept": float(coeffs[1]),
    }


def scaling_study(
    scheme: CouplingScheme,
    n_list,
    outputs=("variance", "xi_squared"),
    output_path: str | None = None,
) -> dict:
    """Sweep N, extract squeezing minima, fit power laws; optionally write files.

    outputs selects which minima are tracked: 'variance' for the raw minimal
    transverse variance, 'xi_squared' for the normalized squeezing parameter.
    Each tracked quantity gets a per-N value, the time it was reached, and
    log-log fits value ~ N^slope and time ~ N^slope with standard errors.
    """
    n_list = [int(n) for n in n_list]
    if not n_list:
        raise ValueError("empty N list")
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ValueError("N list must be strictly ascending")
    for n in n_list:
        if n < 2 or n % 2 != 0:
            raise ValueError(f"atom numbers must be even and >= 2, got {n}")
        if n > MAX_SCALING_ATOMS:
            raise ValueError(f"scaling study capped at N={MAX_SCALING_ATOMS}, got {n}")
    outputs = tuple(outputs)
    for name in outputs:
        if name not in ("variance", "xi_squared"):
            raise ValueError(f"unknown scaling output {name!r}")
    if not outputs:
        raise ValueError("no scaling outputs selected")

    started = time.perf_counter()
    keep = {"variance": ("min_variance", "t_at_min_variance"),
            "xi_squared": ("min_xi_squared", "t_at_min_xi_squared")}
    per_n = []
    for n in n_list:
        row = _scan_minima(scheme, n)
        kept = {"n_atoms": n, "t_max_scanned": row["t_max_scanned"]}
        for name in outputs:
            for key in keep[name]:
                kept[key] = row[key]
        per_n.append(kept)

    fits = {}
    for name in outputs:
        value_key, time_key = keep[name]
        fits[f"{value_key}_exponent"] = _power_fit(
            n_list, [row[value_key] for row in per_n]
        )
        fits[f"{time_key}_exponent"] = _power_fit(
            n_list, [row[time_key] for row in per_n]
        )

    report = {
        "scheme": scheme.kind.value,
        "n_list": n_list,
        "per_n": per_n,
        "fits": fits,
        "runtime": time.perf_counter() - started,
    }

    if output_path is not None:
        with open(f"{output_path}.json", "w") as fh:
            json.dump(report, fh, indent=2)
            fh.write("\n")
        keys = ["n_atoms"] + [k for name in outputs for k in keep[name]]
        with open(f"{output_path}.csv", "w", newline="\n") as fh:
            fh.write(",".join(keys) + "\n")
            for row in per_n:
                fh.write(",".join(_fmt(row[k]) if k != "n_atoms" else str(row[k])
                                  for k in keys) + "\n")
        plotting.render_scaling_figure(report, f"{output_path}.png")
    return report
