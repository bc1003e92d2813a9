import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dualkit import semiclassical as s
from dualkit.duality import DualityMap, PowerPotential
from dualkit.errors import InversionFailure, MissingF, NoBoundMotion, UnsupportedSignPattern
from dualkit.oracle import numerov_eigen

coulomb = PowerPotential.single(-1.0, -1.0)
hooke = PowerPotential.single(0.5, 2.0)


def test_coulomb_action():
    sys_a = s.RadialSystem(1.0, 0.5, 3, coulomb)
    assert s.action_J(sys_a, -0.5) == pytest.approx(math.pi, rel=1e-9)


def test_oscillator_action():
    sys_b = s.RadialSystem(1.0, 1.0, 3, hooke)
    assert s.action_J(sys_b, 2.0) == pytest.approx(math.pi, rel=1e-9)


def test_below_minimum_has_no_motion():
    with pytest.raises(NoBoundMotion) as err:
        s.action_J(s.RadialSystem(1.0, 1.0, 3, hooke), 0.5)
    assert err.value.reason == "forbidden"


def test_positive_coulomb_energy_is_unbound():
    with pytest.raises(NoBoundMotion) as err:
        s.action_J(s.RadialSystem(1.0, 0.5, 3, coulomb), 0.1)
    assert err.value.reason == "unbound"


@given(st.floats(0.01, 0.99), st.floats(0.05, 4.0))
def test_turning_points_zero_the_radicand(frac, L):
    # bound Coulomb energies lie in (-1/(2 L^2), 0)
    E = -frac / (2 * L * L)
    system = s.RadialSystem(1.0, L, 3, coulomb)
    tp = s.turning_points(system, E)
    for r in (tp.r_lo, tp.r_hi):
        scale = 2.0 * abs(E) + (L / r) ** 2
        assert abs(system.radicand(E, r)) <= 1e-10 * scale
    mid = np.linspace(tp.r_lo, tp.r_hi, 50)[1:-1]
    assert np.all(system.radicand(E, mid) >= 0.0)


@given(st.floats(0.01, 0.99), st.floats(0.05, 3.0), st.floats(0.2, 3.0))
@settings(max_examples=25)
def test_action_is_invariant_under_the_coulomb_hooke_map(frac, L_a, C):
    E_a = -frac / (2 * L_a * L_a)
    dmap = DualityMap.from_exponent(-1.0, C)
    E_b, lam_b = dmap.exchange(E_a, -1.0)
    J_a = s.action_J(s.RadialSystem(1.0, L_a, 3, coulomb), E_a)
    J_b = s.action_J(s.RadialSystem(1.0, dmap.angular(L_a), 3, PowerPotential.single(lam_b, 2.0)), E_b)
    assert J_b == pytest.approx(J_a, rel=1e-8)


@given(st.floats(-1.5, 1.5).filter(lambda a: abs(a) > 0.1), st.floats(0.05, 0.95))
@settings(max_examples=20)
def test_action_is_invariant_for_general_pairs(a, frac):
    # attractive a<0 or confining a>0, both with L > 0
    lam_a = -1.0 if a < 0 else 1.0
    L_a = 0.7
    sys_a = s.RadialSystem(1.0, L_a, 3, PowerPotential.single(lam_a, a))
    v_min = s._effective_minimum(sys_a)
    E_a = v_min * (1 - frac) if a < 0 else v_min * (1 + 3 * frac)
    dmap = DualityMap.from_exponent(a, 1.3)
    E_b, lam_b = dmap.exchange(E_a, lam_a)
    sys_b = s.RadialSystem(1.0, dmap.angular(L_a), 3, PowerPotential.single(lam_b, dmap.target_exponent))
    assert s.action_J(sys_b, E_b) == pytest.approx(s.action_J(sys_a, E_a), rel=1e-8)


@given(st.floats(0.6, 10.0), st.floats(0.0, 5.0))
@settings(max_examples=25)
def test_action_increases_with_energy(E, dE):
    system = s.RadialSystem(1.0, 0.5, 3, hooke)
    assert s.action_J(system, E + dE + 1e-3) > s.action_J(system, E)


def test_wkb_coulomb_is_exact():
    system = s.RadialSystem.quantized(1.0, 0, 3, coulomb)
    for e in s.wkb_spectrum(system, 3):
        assert e.energy == pytest.approx(-0.5 / (e.n_r + 1) ** 2, rel=1e-10)
        assert e.provenance is s.Provenance.WKB_NUMERIC


def test_wkb_oscillator_is_exact():
    system = s.RadialSystem.quantized(1.0, 0, 3, hooke)
    energies = [e.energy for e in s.wkb_spectrum(system, 3)]
    assert energies == pytest.approx([1.5, 3.5, 5.5, 7.5], rel=1e-10)
    assert energies == sorted(energies)


def test_langer_substitution():
    system = s.RadialSystem.quantized(1.0, 2, 4, hooke)
    assert system.L == 3.0 and system.ell == 2


def test_wkb_fractional_matches_closed_form():
    system = s.RadialSystem(1.0, 0.0, 3, PowerPotential.single(-1.0, -0.5))
    for e in s.wkb_spectrum(system, 2):
        assert e.energy == pytest.approx(s.closed_form_zero_L(-0.5, -1.0, n=e.n_r), rel=1e-9)


def test_closed_form_fractional_values():
    assert s.closed_form_zero_L(-0.5, -1.0) == pytest.approx(-(2 ** (-1 / 3)), rel=1e-13)
    # 2 (8/9)^(1/4) (1/2)^(1/2) = 1.3731781...
    assert s.closed_form_zero_L(2 / 3, 1.0) == pytest.approx(1.3731780959380788, rel=1e-13)
    assert s.closed_form_zero_L(2 / 3, 1.0) == pytest.approx(2 * (8 / 9) ** 0.25 * 0.5**0.5, rel=1e-13)


def test_closed_form_sign_patterns():
    with pytest.raises(UnsupportedSignPattern):
        s.closed_form_zero_L(-0.5, 1.0)
    with pytest.raises(UnsupportedSignPattern):
        s.closed_form_zero_L(1.0, -1.0)


def test_closed_form_oscillator_limit():
    # at a = 2 and L = 0 WKB gives hbar omega (2 n + 1)
    assert s.closed_form_zero_L(2.0, 0.5, n=3) == pytest.approx(7.0, rel=1e-13)


def test_langer_wkb_tracks_numerov():
    # WKB is not exact for r^(-1/2); with the Langer L it stays within half a percent
    system = s.RadialSystem.quantized(1.0, 0, 3, PowerPotential.single(-1.0, -0.5))
    E_wkb = s.wkb_energy(system, 4.5)
    E_num = numerov_eigen(lambda r: -1.0 / np.sqrt(r), 0.5, node_target=4, check_grid=False)
    assert E_wkb == pytest.approx(E_num, rel=5e-3)


def test_dual_energy_oscillator_to_coulomb():
    f = s.oscillator_formula()
    for n_r in range(3):
        for ell in range(3):
            E = s.dual_energy(f, -1.0, ell + 0.5, n_r + 0.5, 0.5)
            assert E == pytest.approx(-0.5 / (n_r + ell + 1) ** 2, rel=1e-13)


def test_dual_energy_coulomb_to_oscillator():
    # lambda_b = m omega^2/2 with omega = 1; E_b = hbar omega (2N + L_b)
    E = s.dual_energy(s.coulomb_formula(), 0.5, 1.0, 0.5, 2.0)
    assert E == pytest.approx(2.0, rel=1e-13)


def test_dual_energy_identity_map():
    f = s.coulomb_formula()
    assert s.dual_energy(f, -1.0, 0.5, 0.5, 1.0) == pytest.approx(-0.5, rel=1e-15)


@given(st.floats(0.2, 5.0), st.integers(0, 3))
def test_dual_energy_scaling_map(C, n_r):
    # r = C rho keeps the Coulomb form: lambda_b = C lambda_a, E_b = C^2 E_a
    f = s.coulomb_formula()
    E_b = s.dual_energy(f, -C, 0.5, n_r + 0.5, 1.0, C)
    assert E_b == pytest.approx(C * C * f(-1.0, 0.5, n_r + 0.5), rel=1e-13)


@pytest.mark.parametrize("n", range(5))
def test_dual_energy_fractional_pair(n):
    N = n + 0.5
    E = s.dual_energy(s.zero_L_formula(-0.5), 1.0, 0.0, N, 4 / 3)
    assert E == pytest.approx(2 * (8 / 9) ** 0.25 * N**0.5, rel=1e-9)
    assert E == pytest.approx(s.closed_form_zero_L(2 / 3, 1.0, n=n), rel=1e-9)


def test_dual_energy_wrong_formula():
    with pytest.raises(InversionFailure):
        s.dual_energy(s.coulomb_formula(), 0.5, 1.0, 0.5, 0.5)


def test_symmetric_form_reproduces_both_spectra():
    assert s.symmetric_energy_form(-1.0, -1.0, 0.5, 0.5) == pytest.approx(-0.5)
    # b = 2 slot: 4 sqrt(lambda_b) sqrt(hbar^2/2m) (N + L_b/2)^(1/2), squared form
    lam_b, L_b, N = 0.5, 1.0, 0.5
    assert s.symmetric_energy_form(2.0, lam_b, L_b, N) == pytest.approx(
        math.sqrt(2 * lam_b) * (2 * N + L_b), rel=1e-13
    )


def test_symmetric_form_missing_family():
    with pytest.raises(MissingF):
        s.symmetric_energy_form(1.0, 1.0, 0.5, 0.5)
    with pytest.raises(MissingF):
        s.symmetric_energy_form(-1.0, -1.0, 0.5, 0.5, family="nope")


@given(st.integers(0, 4), st.integers(0, 4))
def test_n_conservation_under_transfer(n_r, ell):
    N, L_b = n_r + 0.5, ell + 0.5
    E_a = s.dual_energy(s.oscillator_formula(), -1.0, L_b, N, 0.5)
    J_a = s.action_J(s.RadialSystem(1.0, L_b, 3, coulomb), E_a)
    assert J_a / (2 * math.pi) == pytest.approx(N, rel=1e-9)
