import dataclasses
import warnings

import numpy as np
import pytest

from spinsim import (
    DecoherenceWarning,
    RamanParams,
    bragg_resonances,
    decoherence_ratio,
    effective_rabi,
    load_raman_params,
    raman_resonances,
)

TWO_PI = 2 * np.pi


def make_params(**overrides):
    base = dict(
        omega1=TWO_PI * 1.0e7,
        omega2=TWO_PI * 1.0e7,
        delta_m=TWO_PI * 1.0e9,
        delta_a=TWO_PI * 1.0e12,
        eta=0.1,
        gamma_m=TWO_PI * 1.0e7,
        omega_gg=TWO_PI * 1.772e9,
        k=1.06675e7,
        mass=3.817e-26,
    )
    base.update(overrides)
    return RamanParams(**base)


def test_suppression_ratio_unity_when_nothing_differs():
    p = make_params(eta=1.0, delta_a=TWO_PI * 1.0e9)
    omega_m, omega_a, ratio = effective_rabi(p)
    assert abs(ratio - 1.0) < 1e-12
    assert abs(omega_m - omega_a) < 1e-12 * abs(omega_a)


def test_suppression_ratio_hand_value():
    # eta^2 * delta_a / delta_m = 0.01 * 1000 = 10
    omega_m, omega_a, ratio = effective_rabi(make_params())
    assert abs(ratio - 10.0) < 1e-9
    assert abs(omega_m / omega_a - 10.0) < 1e-9


def test_molecular_rate_formula():
    p = make_params()
    omega_m, _, _ = effective_rabi(p)
    assert abs(omega_m - p.omega1 * p.omega2 * p.eta**2 / p.delta_m) < 1e-6


def test_rates_scale_bilinearly_in_beam_strengths():
    p1 = make_params()
    p2 = make_params(omega1=3 * p1.omega1, omega2=5 * p1.omega2)
    m1, a1, r1 = effective_rabi(p1)
    m2, a2, r2 = effective_rabi(p2)
    assert abs(m2 / m1 - 15.0) < 1e-12
    assert abs(a2 / a1 - 15.0) < 1e-12
    assert abs(r2 - r1) < 1e-12  # ratio independent of beam strengths


def test_decoherence_warning_fires_near_the_line():
    p = make_params(delta_m=5 * make_params().gamma_m)
    assert abs(decoherence_ratio(p) - 5.0) < 1e-12
    with pytest.warns(DecoherenceWarning):
        effective_rabi(p)


def test_no_warning_when_detuned_far_from_the_line():
    p = make_params(delta_m=100 * make_params().gamma_m)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        effective_rabi(p)


def test_warning_threshold_is_inclusive():
    p = make_params(delta_m=10 * make_params().gamma_m)
    with pytest.warns(DecoherenceWarning):
        effective_rabi(p)


def test_bragg_molecular_shift_is_half_the_atomic_one():
    mol, atom = bragg_resonances(make_params(), counterpropagating=True)
    assert mol == atom / 2
    assert atom > 0


def test_bragg_shift_quadratic_in_momentum_kick():
    p1 = make_params()
    p2 = make_params(k=2 * p1.k)
    _, a1 = bragg_resonances(p1, counterpropagating=True)
    _, a2 = bragg_resonances(p2, counterpropagating=True)
    assert abs(a2 / a1 - 4.0) < 1e-12


def test_copropagating_geometry_falls_back_to_internal_resonances():
    p = make_params()
    assert bragg_resonances(p, counterpropagating=False) == raman_resonances(p)


def test_raman_resonances_are_one_and_two_binding_quanta():
    p = make_params()
    mol, atom = raman_resonances(p)
    assert mol == 2 * p.omega_gg
    assert atom == p.omega_gg


def test_unbound_limit_collapses_both_resonances_to_zero():
    assert raman_resonances(make_params(omega_gg=0.0)) == (0.0, 0.0)


def test_sodium_recoil_against_independent_formula():
    # two-photon recoil for counterpropagating beams: hbar (2k)^2 / 2M,
    # equal to 2h / (M lambda^2) in frequency units
    hbar = 1.054571817e-34
    h = 2 * np.pi * hbar
    lam = 589.0e-9
    mass = 3.81754e-26
    k = 2 * np.pi / lam
    p = make_params(k=k, mass=mass)
    _, atom_shift = bragg_resonances(p, counterpropagating=True)
    f_atom = atom_shift / TWO_PI
    f_oracle = 2 * h / (mass * lam**2)
    assert abs(f_atom - f_oracle) < 1e-6 * f_oracle
    assert abs(f_atom - 1.0e5) < 0.05 * 1.0e5  # ~100 kHz for sodium


def test_packaged_sodium_parameters_give_expected_scales():
    p = load_raman_params("raman_sodium")
    _, _, ratio = effective_rabi(p)
    assert ratio == pytest.approx(10.0, rel=1e-3)
    mol, atom = bragg_resonances(p, counterpropagating=True)
    assert atom / TWO_PI == pytest.approx(1.0e5, rel=0.05)
    assert mol / TWO_PI == pytest.approx(0.5e5, rel=0.05)


def test_parameter_validation():
    with pytest.raises(ValueError):
        make_params(delta_m=0.0)
    with pytest.raises(ValueError):
        make_params(delta_a=0.0)
    with pytest.raises(ValueError):
        make_params(eta=0.0)
    with pytest.raises(ValueError):
        make_params(eta=1.5)
    with pytest.raises(ValueError):
        make_params(omega1=-1.0)
    with pytest.raises(ValueError):
        make_params(mass=0.0)
    with pytest.raises(ValueError):
        make_params(omega_gg=-5.0)
    make_params(omega_gg=0.0)  # explicitly allowed: unbound limit


def test_params_are_frozen():
    p = make_params()
    with pytest.raises(dataclasses.FrozenInstanceError):
        p.eta = 0.5
