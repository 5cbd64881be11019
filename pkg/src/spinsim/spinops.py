"""Collective spin operators and the three coupling Hamiltonians.

Everything here acts on the (N+1)-dimensional symmetric basis of state.py,
with m = number of spin-down atoms and J_z|m> = ((N-2m)/2)|m>.  The matrix
elements come from the two-mode bosonic forms

    J_x = (a_dn^dag a_up + a_up^dag a_dn)/2,   J_z = (a_up^dag a_up - a_dn^dag a_dn)/2

so <m+1|J_x|m> = sqrt((m+1)(N-m))/2, and the J_y phase is fixed by requiring
[J_x, J_y] = i J_z (checked in the tests, not assumed).

All three couplings change m by 0 or +-2 only.  Operators are therefore kept
as a handful of diagonals (BandedHermitian) instead of full matrices — O(N)
memory — and the even-m/odd-m decoupling is exposed by parity_blocks() for
the propagator to exploit.

Units: hbar = 1; time is the dimensionless Omega_R t, so `rabi` is usually 1.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np


def jz_values(n_atoms: int) -> np.ndarray:
    """Diagonal of J_z: value (N - 2m)/2 at basis index m."""
    m = np.arange(n_atoms + 1)
    return (n_atoms - 2 * m) / 2.0


def ladder_band(n_atoms: int) -> np.ndarray:
    """<m|J_+|m+1> = sqrt((m+1)(N-m)) for m = 0..N-1."""
    m = np.arange(n_atoms, dtype=np.float64)
    return np.sqrt((m + 1.0) * (n_atoms - m))


def pair_raising_band(n_atoms: int) -> np.ndarray:
    """<m|J_+^2|m+2> = sqrt((m+1)(m+2)(N-m)(N-m-1)) for m = 0..N-2."""
    m = np.arange(max(n_atoms - 1, 0), dtype=np.float64)
    return np.sqrt((m + 1.0) * (m + 2.0) * (n_atoms - m) * (n_atoms - m - 1.0))


@dataclass
class BandedHermitian:
    """Hermitian matrix stored as its upper diagonals.

    diagonals maps a non-negative offset k to the band <i|A|i+k>, an array of
    length dim - k.  Only the upper triangle is stored; the lower triangle
    follows by conjugation.  Offsets not present are zero.
    """

    dim: int
    diagonals: dict[int, np.ndarray]

    def __post_init__(self):
        for k, band in self.diagonals.items():
            if k < 0 or k >= self.dim:
                raise ValueError(f"offset {k} out of range for dim {self.dim}")
            if len(band) != self.dim - k:
                raise ValueError(
                    f"band at offset {k} has length {len(band)}, expected {self.dim - k}"
                )

    @property
    def bandwidth(self) -> int:
        return max((k for k, b in self.diagonals.items() if np.any(b)), default=0)

    def band(self, k: int) -> np.ndarray:
        """Upper band at offset k; zeros if that offset is not stored."""
        if k in self.diagonals:
            return np.asarray(self.diagonals[k])
        return np.zeros(max(self.dim - k, 0))

    def to_dense(self) -> np.ndarray:
        a = np.zeros((self.dim, self.dim), dtype=np.complex128)
        for k, band in self.diagonals.items():
            idx = np.arange(self.dim - k)
            a[idx, idx + k] = band
            if k > 0:
                a[idx + k, idx] = np.conj(band)
        return a

    def matvec(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x)
        y = np.zeros(self.dim, dtype=np.result_type(x.dtype, np.complex128))
        for k, band in self.diagonals.items():
            if k == 0:
                y += band * x
            else:
                y[: self.dim - k] += band * x[k:]
                y[k:] += np.conj(band) * x[: self.dim - k]
        return y

    def save_dense_text(self, path) -> None:
        """Dense row-major dump, each entry as 're imag', for external checks."""
        dense = self.to_dense()
        with open(path, "w") as fh:
            fh.write(f"{self.dim}\n")
            for row in dense:
                fh.write(" ".join(f"{z.real:.17g} {z.imag:.17g}" for z in row) + "\n")

    @classmethod
    def load_dense_text(cls, path) -> "BandedHermitian":
        """Inverse of save_dense_text; re-extracts whatever bands are nonzero."""
        with open(path) as fh:
            dim = int(fh.readline())
            rows = []
            for _ in range(dim):
                vals = [float(tok) for tok in fh.readline().split()]
                rows.append([complex(vals[2 * j], vals[2 * j + 1]) for j in range(dim)])
        dense = np.array(rows)
        if not np.allclose(dense, dense.conj().T, atol=1e-12):
            raise ValueError("matrix in file is not Hermitian")
        diagonals = {}
        for k in range(dim):
            band = np.diagonal(dense, offset=k)
            if np.any(band != 0) or k == 0:
                diagonals[k] = np.array(band)
        return cls(dim, diagonals)


def collective_op(n_atoms: int, axis: str) -> BandedHermitian:
    """The collective operator J_x, J_y or J_z for N spin-1/2 atoms."""
    if n_atoms < 1:
        raise ValueError("need at least one atom")
    dim = n_atoms + 1
    if axis == "z":
        return BandedHermitian(dim, {0: jz_values(n_atoms)})
    d = ladder_band(n_atoms)
    if axis == "x":
        # (J_+ + J_-)/2
        return BandedHermitian(dim, {0: np.zeros(dim), 1: d / 2.0})
    if axis == "y":
        # (J_+ - J_-)/(2i): upper band -i d/2, so that [J_x, J_y] = i J_z
        return BandedHermitian(dim, {0: np.zeros(dim), 1: -0.5j * d})
    raise ValueError(f"unknown axis {axis!r}; expected 'x', 'y' or 'z'")


class SchemeKind(enum.Enum):
    """The three entangling couplings this package simulates.

    MOLMER_SORENSEN    H = (Omega/4)(J_x^2 - N)       photon-mediated, GHZ maker
    ONE_AXIS_TWISTING  H = (Omega/2) J_z^2            collisional, diagonal here
    TWO_AXIS_RAMAN     H = (Omega/2)(J_x^2 - J_y^2)   pair transfer, squeezing floor
    """

    MOLMER_SORENSEN = "MolmerSorensen"
    ONE_AXIS_TWISTING = "OneAxisTwisting"
    TWO_AXIS_RAMAN = "TwoAxisRaman"


@dataclass(frozen=True)
class CouplingScheme:
    kind: SchemeKind
    rabi: float = 1.0

    def __post_init__(self):
        if not (self.rabi > 0):
            raise ValueError(f"rabi must be positive, got {self.rabi}")


def molmer_sorensen(rabi: float = 1.0) -> CouplingScheme:
    return CouplingScheme(SchemeKind.MOLMER_SORENSEN, rabi)


def one_axis_twisting(rabi: float = 1.0) -> CouplingScheme:
    return CouplingScheme(SchemeKind.ONE_AXIS_TWISTING, rabi)


def two_axis_raman(rabi: float = 1.0) -> CouplingScheme:
    return CouplingScheme(SchemeKind.TWO_AXIS_RAMAN, rabi)


def scheme_from_name(name: str, rabi: float = 1.0) -> CouplingScheme:
    for kind in SchemeKind:
        if kind.value == name:
            return CouplingScheme(kind, rabi)
    valid = ", ".join(k.value for k in SchemeKind)
    raise ValueError(f"unknown scheme {name!r}; expected one of: {valid}")


def hamiltonian(scheme: CouplingScheme, n_atoms: int) -> BandedHermitian:
    """Banded Hamiltonian for the given coupling and atom number.

    MolmerSorensen keeps its constant -N*Omega/4 shift: it only moves the
    global phase, but retaining it lets operator-level comparisons against
    the two-body construction in oracle.py be exact rather than
    modulo-identity.  Dynamical comparisons should use state overlaps.

    The offset-1 band is stored explicitly as zeros for all three schemes:
    none of the couplings moves a single excitation, and keeping the band
    makes that structural fact visible (and testable) in the storage itself.
    """
    if n_atoms < 1:
        raise ValueError("need at least one atom")
    dim = n_atoms + 1
    omega = scheme.rabi
    mu = jz_values(n_atoms)
    zeros1 = np.zeros(dim - 1)

    if scheme.kind is SchemeKind.ONE_AXIS_TWISTING:
        return BandedHermitian(dim, {0: (omega / 2.0) * mu**2})

    j = n_atoms / 2.0
    b2 = pair_raising_band(n_atoms)
    if scheme.kind is SchemeKind.MOLMER_SORENSEN:
        # <m|J_x^2|m> = (j(j+1) - mu^2)/2 and <m|J_x^2|m+2> = b2/4
        diag = (omega / 4.0) * ((j * (j + 1) - mu**2) / 2.0 - n_atoms)
        bands = {0: diag, 1: zeros1}
        if n_atoms >= 2:
            bands[2] = (omega / 16.0) * b2
        return BandedHermitian(dim, bands)
    if scheme.kind is SchemeKind.TWO_AXIS_RAMAN:
        # (Omega/2)(J_x^2 - J_y^2) = (Omega/4)(J_+^2 + J_-^2): no diagonal part
        bands = {0: np.zeros(dim), 1: zeros1}
        if n_atoms >= 2:
            bands[2] = (omega / 4.0) * b2
        return BandedHermitian(dim, bands)
    raise ValueError(f"unhandled scheme kind {scheme.kind}")


def parity_blocks(op: BandedHermitian) -> tuple[BandedHermitian, BandedHermitian]:
    """Split an m <-> m+-2 coupled operator into its even-m and odd-m blocks.

    Each block is tridiagonal in its own indexing (block index i maps to
    basis index 2i, respectively 2i+1), and their direct sum is the original
    operator up to the even/odd permutation.  Rejects operators with any
    nonzero offset-1 band — those mix the sectors.
    """
    if op.bandwidth > 2:
        raise ValueError("operator couples beyond m+-2; no parity split")
    if np.any(op.band(1)):
        raise ValueError("offset-1 band is nonzero; parity sectors are mixed")
    band0 = op.band(0)
    band2 = op.band(2) if op.dim >= 3 else np.zeros(0)
    blocks = []
    for start in (0, 1):
        diag = band0[start::2]
        bands = {0: np.array(diag)}
        if len(diag) > 1:
            bands[1] = np.array(band2[start::2])
        blocks.append(BandedHermitian(len(diag), bands))
    return blocks[0], blocks[1]
