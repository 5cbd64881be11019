"""Collective-spin dynamics of N two-level atoms in the symmetric basis.

Simulates three entangling couplings (MolmerSorensen, OneAxisTwisting,
TwoAxisRaman) exactly, via banded diagonalization in the (N+1)-dimensional
Dicke basis, and reports GHZ fidelity, edge populations and spin squeezing.
A small side calculator gives experimental feasibility numbers for driving
the pair coupling with Raman photoassociation beams.
"""

from .config import ConfigError, RunConfig, load_raman_params, load_run_config
from .observables import (
    GridResolutionError,
    SpinMoments,
    SqueezingResult,
    edge_populations,
    ghz_fidelity,
    min_squeezing_scan,
    spin_moments,
    squeezing,
)
from .oracle import (
    FullState,
    evolve_full,
    pairwise_hamiltonian,
    permutation_matrix,
    symmetric_embed,
    symmetric_project,
    two_atom_coupling,
)
from .propagator import (
    SpectralDecomposition,
    diagonalize,
    evolve,
    evolve_diagonal,
    evolve_series,
)
from .ramancalc import (
    DecoherenceWarning,
    RamanParams,
    bragg_resonances,
    decoherence_ratio,
    effective_rabi,
    raman_resonances,
)
from .runner import run, scaling_study
from .spinops import (
    BandedHermitian,
    CouplingScheme,
    SchemeKind,
    collective_op,
    hamiltonian,
    molmer_sorensen,
    one_axis_twisting,
    parity_blocks,
    scheme_from_name,
    two_axis_raman,
)
from .state import DickeState, all_down_state, all_up_state, coherent_spin_state

__version__ = "0.1.0"

__all__ = [
    "BandedHermitian",
    "ConfigError",
    "CouplingScheme",
    "DecoherenceWarning",
    "DickeState",
    "FullState",
    "GridResolutionError",
    "RamanParams",
    "RunConfig",
    "SchemeKind",
    "SpectralDecomposition",
    "SpinMoments",
    "SqueezingResult",
    "all_down_state",
    "all_up_state",
    "bragg_resonances",
    "coherent_spin_state",
    "collective_op",
    "decoherence_ratio",
    "diagonalize",
    "edge_populations",
    "effective_rabi",
    "evolve",
    "evolve_diagonal",
    "evolve_full",
    "evolve_series",
    "ghz_fidelity",
    "hamiltonian",
    "load_raman_params",
    "load_run_config",
    "min_squeezing_scan",
    "molmer_sorensen",
    "one_axis_twisting",
    "pairwise_hamiltonian",
    "parity_blocks",
    "permutation_matrix",
    "raman_resonances",
    "run",
    "scaling_study",
    "scheme_from_name",
    "spin_moments",
    "squeezing",
    "symmetric_embed",
    "symmetric_project",
    "two_atom_coupling",
    "two_axis_raman",
]
