"""Pure states of N two-level atoms in the permutation-symmetric (Dicke) basis.

The basis is indexed by m = number of spin-down atoms, so a state is a complex
vector of length N+1 with basis ket m = |m down, N-m up>.  With this labeling
J_z acts diagonally as (N - 2m)/2: m = 0 is the J_z = +N/2 pole and m = N the
J_z = -N/2 pole.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

NORM_TOL = 1e-10


@dataclass(frozen=True)
class DickeState:
    """Normalized pure state c_m over the (N+1)-dimensional symmetric basis.

    Parameters
    ----------
    n_atoms : int
        Number of atoms N >= 1.
    amplitudes : array_like
        Complex vector of length N+1; must be normalized to within 1e-10.

    States are immutable: the amplitude array is copied and made read-only,
    and every operation in this package returns a new state.
    """

    n_atoms: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.n_atoms < 1:
            raise ValueError(f"need at least one atom, got N={self.n_atoms}")
        amps = np.array(self.amplitudes, dtype=np.complex128)
        if amps.shape != (self.n_atoms + 1,):
            raise ValueError(
                f"amplitude vector must have length N+1={self.n_atoms + 1}, "
                f"got shape {amps.shape}"
            )
        norm_sq = float(np.sum(np.abs(amps) ** 2))
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise ValueError(f"state not normalized: sum |c_m|^2 = {norm_sq!r}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return self.n_atoms + 1

    def overlap(self, other: "DickeState") -> complex:
        """<self|other>."""
        if other.n_atoms != self.n_atoms:
            raise ValueError("atom numbers differ")
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def to_json_dict(self) -> dict:
        """Serialize as {n_atoms, amplitudes: [[re, im], ...]}."""
        pairs = [[float(z.real), float(z.imag)] for z in self.amplitudes]
        return {"n_atoms": self.n_atoms, "amplitudes": pairs}

    @classmethod
    def from_json_dict(cls, data: dict) -> "DickeState":
        amps = np.array([complex(re, im) for re, im in data["amplitudes"]])
        return cls(int(data["n_atoms"]), amps)

    def save_json(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_json_dict(), fh)

    @classmethod
    def load_json(cls, path) -> "DickeState":
        with open(path) as fh:
            return cls.from_json_dict(json.load(fh))


def all_up_state(n_atoms: int) -> DickeState:
    """Delta initial condition c_m = delta_{m,0}: every atom in |up>, J_z = +N/2."""
    if n_atoms < 1:
        raise ValueError("need at least one atom")
    amps = np.zeros(n_atoms + 1, dtype=np.complex128)
    amps[0] = 1.0
    return DickeState(n_atoms, amps)


def all_down_state(n_atoms: int) -> DickeState:
    """Mirror of all_up_state: c_m = delta_{m,N}, every atom in |down>, J_z = -N/2."""
    if n_atoms < 1:
        raise ValueError("need at least one atom")
    amps = np.zeros(n_atoms + 1, dtype=np.complex128)
    amps[n_atoms] = 1.0
    return DickeState(n_atoms, amps)


def coherent_spin_state(n_atoms: int, theta: float, phi: float) -> DickeState:
    """All atoms in the same superposition cos(theta/2)|up> + e^{i phi} sin(theta/2)|down>.

    Expanded in the symmetric basis:

        c_m = binom(N, m)^{1/2} cos(theta/2)^{N-m} (e^{i phi} sin(theta/2))^m

    theta = 0 gives all_up_state, theta = pi gives all_down_state.  Every such
    state saturates the standard quantum limit (squeezing parameter = 1).
    """
    if n_atoms < 1:
        raise ValueError("need at least one atom")
    m = np.arange(n_atoms + 1)
    # log-binomial keeps large N stable; gammaln(k+1) = log k!
    from scipy.special import gammaln, xlogy

    log_binom = gammaln(n_atoms + 1) - gammaln(m + 1) - gammaln(n_atoms - m + 1)
    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    # moduli first, phases after; xlogy(0, 0) = 0 keeps the poles exact
    log_mod = 0.5 * log_binom + xlogy(n_atoms - m, np.abs(c)) + xlogy(m, np.abs(s))
    amps = np.exp(log_mod) * np.sign(c) ** (n_atoms - m) * np.sign(s) ** m
    amps = amps * np.exp(1j * phi * m)
    amps /= np.linalg.norm(amps)
    return DickeState(n_atoms, amps)
