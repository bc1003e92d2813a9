import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dualkit import susy
from dualkit.errors import DegenerateExponent, MapIncompatible

R = np.array([0.5, 1.0, 2.0])


def test_oscillator_riccati():
    sp = susy.Superpotential.oscillator(1.0, 1.5)
    V = susy.riccati_potential(sp)
    assert np.max(np.abs(susy.riccati_residual(sp, V, sp.mu - 0.5, R))) < 1e-12


def test_hydrogen_riccati():
    sp = susy.Superpotential.hydrogen(1.0, 2.5)
    V = susy.riccati_potential(sp)
    assert np.max(np.abs(susy.riccati_residual(sp, V, sp.mu - 0.5, R))) < 1e-12


def test_riccati_detects_a_wrong_coupling():
    sp = susy.Superpotential.oscillator(1.0, 1.5)
    bad = susy.Superpotential(1.1 * sp.lambda_a, sp.a, sp.mu)
    V = susy.riccati_potential(bad)
    assert np.max(np.abs(susy.riccati_residual(sp, V, sp.mu - 0.5, R))) > 1e-3


@given(st.floats(0.01, 5.0), st.floats(-1.5, 4.0), st.floats(0.6, 4.0), st.sampled_from([1, -1]))
def test_riccati_identity_for_any_superpotential(lam, a, mu, eps):
    sp = susy.Superpotential(lam, a, mu, eps)
    r = np.geomspace(0.2, 5.0, 9)
    V = susy.riccati_potential(sp)
    res = susy.riccati_residual(sp, V, mu - 0.5, r)
    scale = np.abs(sp.squared(r)) + np.abs(V(r)) + 1.0
    assert np.max(np.abs(res) / scale) < 1e-10


@given(st.floats(0.01, 5.0), st.floats(-1.5, 4.0), st.floats(0.1, 4.0), st.sampled_from([1, -1]),
       st.lists(st.floats(0.05, 20.0), min_size=20, max_size=20))
def test_three_term_expansion(lam, a, mu, eps, rs):
    sp = susy.Superpotential(lam, a, mu, eps)
    r = np.array(rs)
    direct = sp.squared(r)
    terms = sp.squared_terms()
    parts = np.abs(np.stack([c * r**e for c, e in terms.terms]))
    assert np.max(np.abs(direct - terms(r)) / parts.sum(axis=0)) < 1e-12


def test_derived_exponent_and_coupling():
    sp = susy.Superpotential(2.0, 1.0, 1.5, epsilon=1)
    assert sp.a_prime == -0.5
    assert sp.lambda_a_prime == pytest.approx(-1.5 * 2.0)


@pytest.mark.parametrize("omega", [0.5, 1.0, 2.0])
def test_cbc_oscillator(omega):
    E = susy.cbc_quantize(susy.Superpotential.oscillator(omega, 1.5), 5)
    assert E == pytest.approx([2 * omega * nu for nu in range(6)], abs=1e-9)


@pytest.mark.parametrize("mu", [1.5, 2.5])
def test_cbc_hydrogen(mu):
    E = susy.cbc_quantize(susy.Superpotential.hydrogen(1.0, mu), 5)
    ref = [-0.5 / (nu + mu) ** 2 + 0.5 / mu**2 for nu in range(6)]
    assert E == pytest.approx(ref, rel=1e-9, abs=1e-12)


def test_cbc_unbroken_ground_state_is_zero():
    assert susy.cbc_quantize(susy.Superpotential(1.0, 1.0, 1.5), 0) == [0.0]


def test_cbc_witten_shift():
    sp = susy.Superpotential.oscillator(1.0, 1.5)
    # delta = +1 shifts every level by one quantum
    assert susy.cbc_quantize(sp, 2, 1) == pytest.approx([2.0, 4.0, 6.0], rel=1e-9)


@pytest.mark.parametrize("mu_b", [0.5, 1.5, 2.5])
def test_hooke_to_coulomb_option_i(mu_b):
    omega = 1.0
    sp = susy.Superpotential.oscillator(omega, 2 * mu_b)
    for nu, E_a in enumerate(susy.cbc_quantize(sp, 5)):
        C = math.sqrt(4.0 / (E_a + omega * sp.mu))
        img = susy.susy_option_transform(sp, "i", E_a, C)
        assert img.merged and img.b == -1.0
        assert img.lambda_b + img.lambda_b_prime == pytest.approx(-1.0, rel=1e-13)
        assert img.mu_b == mu_b
        # E_b - m e^4/(2 hbar^2 mu_b^2) = -m omega^2 C^4/8, and the hydrogen levels follow
        assert img.E_b == pytest.approx(-(omega**2) * C**4 / 8, rel=1e-13)
        assert img.E_b == pytest.approx(-0.5 / (nu + mu_b) ** 2, rel=1e-9)
        assert susy.merging_scale(sp, "i", E_a, -1.0) == pytest.approx(C, rel=1e-13)


def test_confinement_option_ii():
    sp = susy.Superpotential(1.0, 1.0, 1.5)
    C = 1.3
    img = susy.susy_option_transform(sp, "ii", 0.7, C)
    assert img.eta == pytest.approx(4 / 3)
    assert img.b == 2.0
    assert img.b_prime == pytest.approx(2 / 3)
    assert img.lambda_b == pytest.approx(16 / 9 * C**3 * sp.lambda_a)
    assert img.mu_b == pytest.approx(2.0)


def test_confinement_option_i():
    sp = susy.Superpotential(1.0, 1.0, 1.5)
    C = 1.3
    img = susy.susy_option_transform(sp, "i", 0.7, C)
    assert img.eta == pytest.approx(2 / 3)
    assert img.b_prime == -1.0
    assert img.E_b == pytest.approx(-4 / 9 * C**3 * sp.lambda_a)


@given(st.floats(0.3, 3.0), st.floats(0.6, 4.0), st.integers(0, 4), st.floats(0.3, 3.0))
@settings(max_examples=30)
def test_option_ii_inverts_option_i(omega, mu, nu, C):
    osc = susy.Superpotential.oscillator(omega, mu)
    E_a = 2 * omega * nu
    img = susy.susy_option_transform(osc, "i", E_a, C)
    e2 = -(img.lambda_b + img.lambda_b_prime)
    hyd = susy.Superpotential.hydrogen(e2, img.mu_b)
    back = susy.susy_option_transform(hyd, "ii", img.E_b + hyd.lambda_a, C ** -2.0)
    assert back.eta * img.eta == pytest.approx(1.0)
    assert back.E_b == pytest.approx(E_a - osc.lambda_a_prime, rel=1e-12)
    assert back.lambda_b + back.lambda_b_prime == pytest.approx(osc.lambda_a, rel=1e-12)
    assert back.mu_b == pytest.approx(mu, rel=1e-14)


def test_option_errors():
    with pytest.raises(DegenerateExponent):
        susy.susy_option_transform(susy.Superpotential(1.0, -2.0, 1.0), "i", 0.0)
    with pytest.raises(ValueError):
        susy.susy_option_transform(susy.Superpotential(1.0, 1.0, 1.0), "iii", 0.0)
    with pytest.raises(MapIncompatible):
        susy.merging_scale(susy.Superpotential(1.0, 1.0, 1.0), "i", 0.0, -1.0)


def test_superpotential_validation():
    with pytest.raises(ValueError):
        susy.Superpotential(-1.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        susy.Superpotential(1.0, 1.0, 0.0)
    with pytest.raises(ValueError):
        susy.Superpotential(1.0, 1.0, 1.0, epsilon=0)
