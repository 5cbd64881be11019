"""Feasibility numbers for driving the pair coupling with Raman photoassociation.

Pure arithmetic on experimental knobs: how strong the molecule-mediated
two-photon coupling is relative to the ordinary atomic two-photon coupling,
whether the molecular intermediate state is detuned far enough past its
linewidth, and the kinematic resonance frequencies that distinguish the pair
process (two atoms absorbing two photons together) from single-atom
transitions in both beam geometries.

All angular frequencies in rad/s, wavenumber in 1/m, mass in kg.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from scipy.constants import hbar

DECOHERENCE_RATIO_FLOOR = 10.0


class DecoherenceWarning(UserWarning):
    """Molecular detuning not safely beyond the molecular linewidth."""


@dataclass(frozen=True)
class RamanParams:
    """Laser and species parameters for the two-beam coupling estimate.

    omega1, omega2   single-photon Rabi frequencies of the two beams
    delta_m          detuning from the molecular intermediate state
    delta_a          detuning from the atomic intermediate state
    eta              Franck-Condon amplitude of the target bound state, (0, 1];
                     measured input (e.g. from photoassociation), not computed
    gamma_m          molecular linewidth
    omega_gg         splitting between the two ground hyperfine states (>= 0)
    k                laser wavenumber (the two beams are taken equal)
    mass             single-atom mass
    """

    omega1: float
    omega2: float
    delta_m: float
    delta_a: float
    eta: float
    gamma_m: float
    omega_gg: float
    k: float
    mass: float

    def __post_init__(self):
        if self.omega1 <= 0 or self.omega2 <= 0:
            raise ValueError("single-photon Rabi frequencies must be positive")
        if self.delta_m == 0 or self.delta_a == 0:
            raise ValueError("detunings must be nonzero")
        if not (0 < self.eta <= 1):
            raise ValueError(f"Franck-Condon amplitude must be in (0, 1], got {self.eta}")
        if self.gamma_m <= 0:
            raise ValueError("molecular linewidth must be positive")
        if self.omega_gg < 0:
            raise ValueError("ground-state splitting must be nonnegative")
        if self.k <= 0 or self.mass <= 0:
            raise ValueError("wavenumber and mass must be positive")


def decoherence_ratio(p: RamanParams) -> float:
    """|Delta_M| / gamma_M; should be well above 10 for coherent operation."""
    return abs(p.delta_m) / p.gamma_m


def effective_rabi(p: RamanParams) -> tuple[float, float, float]:
    """(omega_m, omega_a, suppression_ratio) for the two second-order paths.

    omega_m = Omega_1 Omega_2 |eta|^2 / Delta_M  (molecule-mediated pair flip)
    omega_a = Omega_1 Omega_2 / Delta_A          (single-atom two-photon flip)

    The figure of merit is their ratio |eta|^2 Delta_A / Delta_M, which drops
    the common Omega_1 Omega_2 factor (and with it any convention for overall
    1/2s).  Emits DecoherenceWarning when |Delta_M|/gamma_M <= 10.
    """
    ratio = decoherence_ratio(p)
    if ratio <= DECOHERENCE_RATIO_FLOOR:
        warnings.warn(
            f"|delta_m|/gamma_m = {ratio:.3g} <= {DECOHERENCE_RATIO_FLOOR:g}: "
            "molecular state decay will damp the coupling",
            DecoherenceWarning,
            stacklevel=2,
        )
    omega_m = p.omega1 * p.omega2 * p.eta**2 / p.delta_m
    omega_a = p.omega1 * p.omega2 / p.delta_a
    return omega_m, omega_a, p.eta**2 * p.delta_a / p.delta_m


def bragg_resonances(p: RamanParams, counterpropagating: bool) -> tuple[float, float]:
    """(molecular, atomic) recoil resonances for beams hitting head-on.

    With counterpropagating beams the two-photon momentum kick is K = 2k.
    A lone atom absorbing both photons recoils with the full kick:

        atomic = hbar (2k)^2 / (2 M)

    When an atom pair shares the two photons, each atom picks up half the
    momentum, so the energy cost per atom is a quarter — times two atoms,
    the pair line sits at exactly half the atomic one.  That factor-2 gap is
    what lets the pair process be driven without driving single atoms.

    The copropagating geometry has no recoil discrimination and routes to
    raman_resonances instead.  Values in rad/s.
    """
    if not counterpropagating:
        return raman_resonances(p)
    atomic = hbar * (2.0 * p.k) ** 2 / (2.0 * p.mass)
    return atomic / 2.0, atomic


def raman_resonances(p: RamanParams) -> tuple[float, float]:
    """(molecular, atomic) resonances for copropagating beams, K ~ 0.

    No recoil here; the discrimination is internal energy.  Flipping one
    atom costs omega_gg, flipping a pair costs two of them, so the pair line
    sits at exactly twice the single-atom one.  Values in rad/s.
    """
    return 2.0 * p.omega_gg, p.omega_gg
