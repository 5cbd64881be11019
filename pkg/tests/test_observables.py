import numpy as np
import pytest

from spinsim import (
    DickeState,
    GridResolutionError,
    all_down_state,
    all_up_state,
    coherent_spin_state,
    diagonalize,
    edge_populations,
    evolve,
    evolve_diagonal,
    ghz_fidelity,
    hamiltonian,
    min_squeezing_scan,
    one_axis_twisting,
    spin_moments,
    squeezing,
    two_axis_raman,
)


def ghz_state(n, phase=0.0):
    amps = np.zeros(n + 1, dtype=complex)
    amps[0] = 1 / np.sqrt(2)
    amps[-1] = np.exp(1j * phase) / np.sqrt(2)
    return DickeState(n, amps)


# ---------------------------------------------------------------- moments


def test_moments_at_the_pole():
    n = 14
    mom = spin_moments(all_up_state(n))
    assert np.allclose(mom.mean, [0, 0, n / 2], atol=1e-12)
    assert abs(mom.covariance[0, 0] - n / 4) < 1e-12
    assert abs(mom.covariance[1, 1] - n / 4) < 1e-12
    assert abs(mom.covariance[2, 2]) < 1e-12


def test_moments_on_the_equator():
    n = 10
    mom = spin_moments(coherent_spin_state(n, np.pi / 2, 0.0))
    assert np.allclose(mom.mean, [n / 2, 0, 0], atol=1e-10)


def test_moments_of_edge_superposition_by_hand():
    # (|m=0> + |m=2>)/sqrt(2) for two atoms: mean spin vanishes and the
    # covariance diagonal works out to (1, 0, 1)
    mom = spin_moments(ghz_state(2))
    assert np.allclose(mom.mean, [0, 0, 0], atol=1e-12)
    assert np.allclose(mom.covariance, np.diag([1.0, 0.0, 1.0]), atol=1e-12)


def test_covariance_is_psd_and_casimir_bounded():
    n = 16
    j = n / 2
    dec = diagonalize(hamiltonian(two_axis_raman(), n))
    for t in (0.0, 0.05, 0.2, 0.6):
        mom = spin_moments(evolve(all_down_state(n), dec, t))
        eigs = np.linalg.eigvalsh(mom.covariance)
        assert eigs[0] > -1e-9
        total = np.trace(mom.covariance) + np.dot(mom.mean, mom.mean)
        assert total <= j * (j + 1) + 1e-9


# ---------------------------------------------------------------- squeezing


def test_coherent_states_sit_at_the_standard_quantum_limit():
    rng = np.random.default_rng(7)
    for _ in range(20):
        theta = rng.uniform(0.05, np.pi - 0.05)
        phi = rng.uniform(0, 2 * np.pi)
        sq = squeezing(coherent_spin_state(25, theta, phi))
        assert abs(sq.xi_squared - 1) < 1e-8, (theta, phi)
        assert not sq.degenerate_flag


def test_direction_is_unit_and_perpendicular_to_mean_spin():
    n = 40
    dec = diagonalize(hamiltonian(two_axis_raman(), n))
    st = evolve(all_down_state(n), dec, 0.04)
    sq = squeezing(st)
    mom = spin_moments(st)
    assert abs(np.linalg.norm(sq.direction_n1) - 1) < 1e-12
    assert abs(np.dot(sq.direction_n1, mom.mean)) < 1e-9 * np.linalg.norm(mom.mean)
    assert abs(sq.mean_spin_norm - np.linalg.norm(mom.mean)) < 1e-12


def test_xi_squared_consistency_identity():
    n = 40
    dec = diagonalize(hamiltonian(two_axis_raman(), n))
    sq = squeezing(evolve(all_down_state(n), dec, 0.03))
    assert abs(sq.xi_squared - n * sq.min_variance / sq.mean_spin_norm**2) < 1e-12


def test_returned_direction_beats_random_transverse_directions():
    n = 50
    dec = diagonalize(hamiltonian(two_axis_raman(), n))
    st = evolve(all_down_state(n), dec, 0.05)
    sq = squeezing(st)
    mom = spin_moments(st)
    n3 = mom.mean / np.linalg.norm(mom.mean)

    def variance_along(u):
        return u @ mom.covariance @ u

    base = variance_along(sq.direction_n1)
    rng = np.random.default_rng(123)
    for _ in range(64):
        v = rng.normal(size=3)
        v -= np.dot(v, n3) * n3
        v /= np.linalg.norm(v)
        assert base <= variance_along(v) + 1e-12


def test_degenerate_mean_spin_is_flagged_not_divided():
    sq = squeezing(ghz_state(8))
    assert sq.degenerate_flag
    assert np.isnan(sq.xi_squared)
    mom = spin_moments(ghz_state(8))
    assert abs(sq.min_variance - np.linalg.eigvalsh(mom.covariance)[0]) < 1e-12


def test_mirror_symmetry_of_squeezing_trajectories():
    # c_0 = 1 and c_N = 1 starts give the same xi^2(t) under the pair
    # coupling; compare on the window where xi^2 is small enough to be
    # well-conditioned (near-degenerate mean spin amplifies rounding)
    n = 60
    dec = diagonalize(hamiltonian(two_axis_raman(), n))
    times = np.linspace(0.0, 0.1, 81)
    up0 = all_up_state(n)
    dn0 = all_down_state(n)
    for t in times:
        a = squeezing(evolve(up0, dec, float(t))).xi_squared
        b = squeezing(evolve(dn0, dec, float(t))).xi_squared
        if np.isnan(a) or a > 5.0:
            continue
        assert abs(a - b) < 1e-9, t


# ---------------------------------------------------------------- ghz & edges


def test_ghz_fidelity_of_exact_edge_superposition():
    fid, eta = ghz_fidelity(ghz_state(6, phase=0.0))
    assert abs(fid - 1) < 1e-14
    assert abs(eta) < 1e-14


def test_ghz_fidelity_of_pole_state_is_half():
    fid, eta = ghz_fidelity(all_up_state(8))
    assert abs(fid - 0.5) < 1e-14
    assert eta == 0.0  # undefined phase reported as zero


def test_ghz_phase_is_relative_edge_phase():
    fid, eta = ghz_fidelity(ghz_state(4, phase=np.pi / 3))
    assert abs(fid - 1) < 1e-14
    assert abs(eta - np.pi / 3) < 1e-12


def test_ghz_fidelity_global_phase_invariant():
    st = ghz_state(4, phase=0.7)
    rotated = DickeState(4, np.exp(1j * 1.1) * st.amplitudes)
    assert ghz_fidelity(st)[0] == ghz_fidelity(rotated)[0]


def test_edge_populations():
    assert edge_populations(all_up_state(5)) == (1.0, 0.0)
    p0, pn = edge_populations(ghz_state(6))
    assert abs(p0 - 0.5) < 1e-14 and abs(pn - 0.5) < 1e-14


def test_one_axis_evolution_leaves_edge_populations_fixed():
    n = 20
    s = coherent_spin_state(n, 1.1, 0.0)
    p0_0, pn_0 = edge_populations(s)
    for t in (0.1, 1.0, 5.0):
        p0, pn = edge_populations(evolve_diagonal(s, one_axis_twisting(), n, t))
        assert abs(p0 - p0_0) < 1e-12
        assert abs(pn - pn_0) < 1e-12


# ---------------------------------------------------------------- scan


def test_scan_starts_at_the_standard_quantum_limit():
    n = 40
    t_min, xi_min, xi = min_squeezing_scan(two_axis_raman(), n, np.linspace(0, 0.002, 3))
    assert abs(xi[0] - 1.0) < 1e-10


def test_scan_finds_interior_squeezing_minimum():
    n = 100
    grid = np.linspace(0.0, 0.14, 200)  # spacing 7e-4 < 0.1/N = 1e-3
    t_min, xi_min, xi = min_squeezing_scan(two_axis_raman(), n, grid)
    assert xi_min < 0.1  # strong squeezing develops
    assert 0.0 < t_min < 0.14
    assert xi_min == np.nanmin(xi)
    assert xi.shape == grid.shape


def test_scan_refuses_under_resolved_grid():
    with pytest.raises(GridResolutionError):
        min_squeezing_scan(two_axis_raman(), 100, np.linspace(0.0, 1.0, 11))


def test_scan_rejects_empty_or_disordered_grids():
    with pytest.raises(ValueError):
        min_squeezing_scan(two_axis_raman(), 10, [])
    with pytest.raises(ValueError):
        min_squeezing_scan(two_axis_raman(), 10, [0.2, 0.1])
