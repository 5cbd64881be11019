"""Spin expectation values, squeezing, GHZ fidelity, and edge populations.

These are the quantities the simulations report: first and second moments of
the collective spin, the phase-sensitivity squeezing parameter

    xi^2 = N (Delta J_n1)^2 / |<J>|^2

minimized over directions n1 perpendicular to the mean spin, the fidelity
with the maximally entangled edge superposition (|m=0> + eta |m=N>)/sqrt(2),
and the bare edge populations |c_0|^2, |c_N|^2.

Everything is a pure O(N) function of a DickeState; the scan helper at the
bottom adds the one piece of policy: a grid-resolution guard, because the
squeezing minimum sharpens like 1/N and an under-resolved scan would alias
right past it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .propagator import diagonalize, evolve
from .spinops import CouplingScheme, collective_op, hamiltonian
from .state import DickeState, all_down_state

DEGENERATE_MEAN_FACTOR = 1e-6  # |<J>| below this times N: direction ill-defined
GRID_SPACING_FACTOR = 0.1  # max allowed grid spacing is this over N


class GridResolutionError(ValueError):
    """Time grid too coarse to resolve the ~1/N squeezing feature."""


@dataclass
class SpinMoments:
    """First and symmetrized second moments of (J_x, J_y, J_z).

    covariance[a, b] = <J_a J_b + J_b J_a>/2 - <J_a><J_b>, real symmetric PSD.
    """

    mean: np.ndarray
    covariance: np.ndarray


@dataclass
class SqueezingResult:
    xi_squared: float  # nan when degenerate_flag is set
    min_variance: float
    direction_n1: np.ndarray
    mean_spin_norm: float
    degenerate_flag: bool


def spin_moments(state: DickeState) -> SpinMoments:
    """Means and covariances via three banded matvecs; O(N) time and memory.

    With u_a = J_a|psi>, every needed bracket is an inner product:
    <J_a> = Re <psi|u_a> and <J_a J_b + J_b J_a>/2 = Re <u_a|u_b>.
    """
    ops = [collective_op(state.n_atoms, ax) for ax in ("x", "y", "z")]
    u = [op.matvec(state.amplitudes) for op in ops]
    mean = np.array([np.vdot(state.amplitudes, ua).real for ua in u])
    cov = np.empty((3, 3))
    for a in range(3):
        for b in range(a, 3):
            second = np.vdot(u[a], u[b]).real
            cov[a, b] = cov[b, a] = second - mean[a] * mean[b]
    return SpinMoments(mean, cov)


def _fix_sign(vec: np.ndarray) -> np.ndarray:
    # deterministic overall sign: largest-magnitude component positive
    i = int(np.argmax(np.abs(vec)))
    return -vec if vec[i] < 0 else vec


def squeezing(state: DickeState) -> SqueezingResult:
    """Minimal transverse variance and the direction n1 achieving it.

    n1 is restricted to the plane perpendicular to the mean spin (a 2x2
    eigenproblem); the denominator of xi^2 is then exactly |<J>|^2.  When the
    mean spin is too short to define that plane (|<J>| < 1e-6 N) the result
    is flagged degenerate: min_variance becomes the global smallest
    eigenvalue of the full covariance and xi_squared is reported as nan
    rather than divided by noise.
    """
    n = state.n_atoms
    mom = spin_moments(state)
    norm = float(np.linalg.norm(mom.mean))

    if norm < DEGENERATE_MEAN_FACTOR * n:
        vals, vecs = np.linalg.eigh(mom.covariance)
        return SqueezingResult(
            xi_squared=float("nan"),
            min_variance=float(vals[0]),
            direction_n1=_fix_sign(vecs[:, 0]),
            mean_spin_norm=norm,
            degenerate_flag=True,
        )

    n3 = mom.mean / norm
    ref = np.array([1.0, 0.0, 0.0]) if abs(n3[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = np.cross(n3, ref)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(n3, e1)
    basis = np.stack([e1, e2])  # rows span the plane perpendicular to n3
    plane_cov = basis @ mom.covariance @ basis.T
    vals, vecs = np.linalg.eigh(plane_cov)
    n1 = vecs[0, 0] * e1 + vecs[1, 0] * e2
    n1 /= np.linalg.norm(n1)
    min_var = float(vals[0])
    return SqueezingResult(
        xi_squared=n * min_var / norm**2,
        min_variance=min_var,
        direction_n1=_fix_sign(n1),
        mean_spin_norm=norm,
        degenerate_flag=False,
    )


def ghz_fidelity(state: DickeState) -> tuple[float, float]:
    """Best overlap with (|m=0> + e^{i eta}|m=N>)/sqrt(2), and the phase.

    Maximizing |<GHZ(eta)|psi>|^2 over the relative phase eta gives
    (|c_0| + |c_N|)^2 / 2 — global phase drops out, so the constant term kept
    in the MolmerSorensen Hamiltonian cannot affect this number.  The
    maximizing phase arg(c_N) - arg(c_0) is reported as 0 when either edge
    amplitude is below 1e-14 (it is undefined there).
    """
    c0 = complex(state.amplitudes[0])
    cn = complex(state.amplitudes[-1])
    fidelity = (abs(c0) + abs(cn)) ** 2 / 2.0
    if abs(c0) < 1e-14 or abs(cn) < 1e-14:
        eta = 0.0
    else:
        eta = float(np.angle(cn) - np.angle(c0))
    return fidelity, eta


def edge_populations(state: DickeState) -> tuple[float, float]:
    """(|c_0|^2, |c_N|^2): the two populations plotted against time."""
    return float(abs(state.amplitudes[0]) ** 2), float(abs(state.amplitudes[-1]) ** 2)


def check_grid_resolution(n_atoms: int, t_grid: np.ndarray) -> None:
    """Reject grids whose spacing exceeds 0.1/N (squeezing features alias)."""
    if len(t_grid) < 2:
        return
    spacing = float(np.max(np.diff(t_grid)))
    limit = GRID_SPACING_FACTOR / n_atoms
    if spacing > limit * (1 + 1e-9):
        raise GridResolutionError(
            f"grid spacing {spacing:.3g} exceeds {limit:.3g} (= 0.1/N for "
            f"N={n_atoms}); the squeezing minimum narrows like 1/N and would "
            f"be aliased — use a finer grid"
        )


def min_squeezing_scan(
    scheme: CouplingScheme, n_atoms: int, t_grid
) -> tuple[float, float, np.ndarray]:
    """xi^2(t) on a grid, starting from every atom spin-down (c_N = 1).

    Returns (t at the grid minimum, that minimum, the full trajectory).
    Degenerate-mean points enter the trajectory as nan and are skipped when
    locating the minimum.  Grids coarser than 0.1/N are refused outright.
    """
    times = np.atleast_1d(np.asarray(t_grid, dtype=np.float64))
    if times.size == 0:
        raise ValueError("empty time grid")
    if np.any(np.diff(times) <= 0):
        raise ValueError("time grid must be strictly ascending")
    check_grid_resolution(n_atoms, times)

    decomp = diagonalize(hamiltonian(scheme, n_atoms))
    initial = all_down_state(n_atoms)
    xi = np.empty(times.size)
    for i, t in enumerate(times):
        xi[i] = squeezing(evolve(initial, decomp, float(t))).xi_squared
    if np.all(np.isnan(xi)):
        raise ValueError("xi^2 undefined (degenerate mean spin) on the whole grid")
    imin = int(np.nanargmin(xi))
    return float(times[imin]), float(xi[imin]), xi
