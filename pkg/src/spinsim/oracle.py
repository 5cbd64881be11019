"""Brute-force verifier on the full 2^N tensor-product space.

The production path lives entirely in the (N+1)-dimensional symmetric basis.
This module rebuilds the same physics the expensive way — explicit sums of
two-body terms over all atom pairs, dense diagonalization, no banded or
parity shortcuts — precisely so that the two paths share no code and bugs
cannot cancel.  Test-only; capped at N = 12 spins (4096 amplitudes).

Basis convention: computational basis index b has bit i = 1 when atom i is
spin-down, so the number of set bits equals the Dicke label m.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.special import gammaln

from .spinops import CouplingScheme, SchemeKind
from .state import DickeState

MAX_ORACLE_ATOMS = 12

# single-spin operators; index 0 = up, 1 = down, sigma_z = +1 on up
SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]])
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]])
SIGMA_PLUS = np.array([[0.0, 1.0], [0.0, 0.0]])  # |up><down|
SIGMA_MINUS = SIGMA_PLUS.T.copy()


@dataclass(frozen=True)
class FullState:
    """Normalized amplitudes over all 2^N computational basis states."""

    n_atoms: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        if not (1 <= self.n_atoms <= MAX_ORACLE_ATOMS):
            raise ValueError(
                f"full-space states support 1..{MAX_ORACLE_ATOMS} atoms, "
                f"got {self.n_atoms}"
            )
        amps = np.array(self.amplitudes, dtype=np.complex128)
        if amps.shape != (2**self.n_atoms,):
            raise ValueError(f"need 2^N = {2**self.n_atoms} amplitudes, got {amps.shape}")
        norm_sq = float(np.sum(np.abs(amps) ** 2))
        if abs(norm_sq - 1.0) > 1e-10:
            raise ValueError(f"state not normalized: sum |c|^2 = {norm_sq!r}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    def to_json_dict(self) -> dict:
        pairs = [[float(z.real), float(z.imag)] for z in self.amplitudes]
        return {"n_atoms": self.n_atoms, "amplitudes": pairs}

    def save_json(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_json_dict(), fh)


def two_atom_coupling(omega_r: float) -> np.ndarray:
    """(Omega_R/2)(sigma_x sigma_x - sigma_y sigma_y) on two atoms, as a 4x4.

    The cross terms of the two products cancel identically, leaving pure
    double-raising plus double-lowering: Omega_R (s+ s+ + s- s-), i.e. the
    only nonzero elements connect |up,up> with |down,down>.  Both printed
    forms are built independently here and required to agree exactly,
    element by element, before either is returned.
    """
    form_xy = (omega_r / 2.0) * (np.kron(SIGMA_X, SIGMA_X) - np.kron(SIGMA_Y, SIGMA_Y))
    form_pm = omega_r * (np.kron(SIGMA_PLUS, SIGMA_PLUS) + np.kron(SIGMA_MINUS, SIGMA_MINUS))
    if not np.array_equal(form_xy, form_pm):
        raise AssertionError("the two algebraic forms of the pair coupling differ")
    return form_xy


def _site_operator(op: np.ndarray, site: int, n_atoms: int) -> sp.csr_matrix:
    # atom `site` lives at bit `site` of the basis index (least significant
    # factor last in the kron chain)
    left = sp.identity(2 ** (n_atoms - site - 1), format="csr", dtype=np.complex128)
    right = sp.identity(2**site, format="csr", dtype=np.complex128)
    return sp.kron(sp.kron(left, sp.csr_matrix(op)), right, format="csr")


def pairwise_hamiltonian(scheme: CouplingScheme, n_atoms: int) -> np.ndarray:
    """The coupling as an explicit sum over atoms, dense on the 2^N space.

    Per-pair terms (spin-1/2 normalized collective operators J = sum sigma/2):

        TwoAxisRaman      sum_{i<j} (Omega/2)(s+ s+ + s- s-)
        MolmerSorensen    sum_{i<j} (Omega/8) sx sx  -  (3 N Omega/16) I
        OneAxisTwisting   (Omega/2) (sum_i sz/2)^2

    The constants make each form equal the corresponding symmetric-basis
    Hamiltonian exactly (not merely up to identity shifts), so overlap tests
    need no phase fudging.
    """
    if not (1 <= n_atoms <= MAX_ORACLE_ATOMS):
        raise ValueError(f"oracle supports 1..{MAX_ORACLE_ATOMS} atoms, got {n_atoms}")
    dim = 2**n_atoms
    omega = scheme.rabi
    h = sp.csr_matrix((dim, dim), dtype=np.complex128)

    if scheme.kind is SchemeKind.ONE_AXIS_TWISTING:
        jz = sp.csr_matrix((dim, dim), dtype=np.complex128)
        for i in range(n_atoms):
            jz = jz + 0.5 * _site_operator(SIGMA_Z, i, n_atoms)
        h = (omega / 2.0) * (jz @ jz)
        return h.toarray()

    for i in range(n_atoms):
        for j in range(i + 1, n_atoms):
            if scheme.kind is SchemeKind.TWO_AXIS_RAMAN:
                term = (omega / 2.0) * (
                    _site_operator(SIGMA_PLUS, i, n_atoms) @ _site_operator(SIGMA_PLUS, j, n_atoms)
                    + _site_operator(SIGMA_MINUS, i, n_atoms) @ _site_operator(SIGMA_MINUS, j, n_atoms)
                )
            elif scheme.kind is SchemeKind.MOLMER_SORENSEN:
                term = (omega / 8.0) * (
                    _site_operator(SIGMA_X, i, n_atoms) @ _site_operator(SIGMA_X, j, n_atoms)
                )
            else:
                raise ValueError(f"unhandled scheme kind {scheme.kind}")
            h = h + term
    if scheme.kind is SchemeKind.MOLMER_SORENSEN:
        h = h - (3.0 * n_atoms * omega / 16.0) * sp.identity(dim, dtype=np.complex128)
    return h.toarray()


def _log_binomial(n: int, m: np.ndarray) -> np.ndarray:
    return gammaln(n + 1) - gammaln(m + 1) - gammaln(n - m + 1)


def symmetric_embed(state: DickeState) -> FullState:
    """Isometry: basis ket m -> equal-weight sum of all weight-m bitstrings.

    full[b] = c_{popcount(b)} / sqrt(binom(N, popcount(b))); norm-preserving,
    and projecting back with symmetric_project is the identity.
    """
    n = state.n_atoms
    if n > MAX_ORACLE_ATOMS:
        raise ValueError(f"embedding capped at {MAX_ORACLE_ATOMS} atoms, got {n}")
    b = np.arange(2**n)
    weights = np.array([bin(x).count("1") for x in b])
    scale = np.exp(-0.5 * _log_binomial(n, weights))
    return FullState(n, state.amplitudes[weights] * scale)


def symmetric_project(full: FullState) -> DickeState:
    """Adjoint of symmetric_embed, renormalized onto the symmetric sector."""
    n = full.n_atoms
    weights = np.array([bin(x).count("1") for x in range(2**n)])
    c = np.zeros(n + 1, dtype=np.complex128)
    np.add.at(c, weights, full.amplitudes)
    c *= np.exp(-0.5 * _log_binomial(n, np.arange(n + 1)))
    norm = np.linalg.norm(c)
    if norm < 1e-12:
        raise ValueError("state has no weight in the symmetric sector")
    return DickeState(n, c / norm)


def evolve_full(full: FullState, h_dense: np.ndarray, t: float) -> FullState:
    """exp(-i H t) by dense diagonalization of the whole 2^N matrix."""
    vals, vecs = np.linalg.eigh(h_dense)
    coeffs = vecs.conj().T @ full.amplitudes
    out = vecs @ (np.exp(-1j * vals * t) * coeffs)
    return FullState(full.n_atoms, out)


def permutation_matrix(perm, n_atoms: int) -> np.ndarray:
    """0/1 matrix sending atom i's bit to position perm[i], as a dense array."""
    perm = list(perm)
    if sorted(perm) != list(range(n_atoms)):
        raise ValueError(f"not a permutation of 0..{n_atoms - 1}: {perm}")
    dim = 2**n_atoms
    src = np.arange(dim)
    dst = np.zeros(dim, dtype=np.int64)
    for i in range(n_atoms):
        dst |= ((src >> i) & 1) << perm[i]
    p = np.zeros((dim, dim))
    p[dst, src] = 1.0
    return p
