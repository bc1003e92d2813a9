import math

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from dualkit import duality as d
from dualkit.errors import DegenerateExponent, MapIncompatible, NonIntegerInversion

exponent = st.floats(-10.0, 10.0, allow_nan=False).filter(lambda a: abs(a + 2.0) > 1e-3)
energy = st.floats(-50.0, 50.0, allow_nan=False)
scale = st.floats(0.1, 10.0)


@pytest.mark.parametrize("a,b,eta", [(-1, 2, 2), (0, 0, 1), (-3, -6, -2), (-4, -4, -1), (1, -2 / 3, 2 / 3)])
def test_partner_exponent_known_pairs(a, b, eta):
    got_b, got_eta = d.partner_exponent(a)
    assert got_b == pytest.approx(b, abs=1e-15)
    assert got_eta == pytest.approx(eta, abs=1e-15)


def test_degenerate_exponent_message():
    with pytest.raises(DegenerateExponent, match="degenerate exponent a=-2"):
        d.partner_exponent(-2.0)


@given(exponent)
def test_partner_is_an_involution(a):
    b, _ = d.partner_exponent(a)
    assume(abs(b + 2.0) > 1e-3)
    a2, _ = d.partner_exponent(b)
    assert abs(a2 - a) <= 1e-12 * max(1.0, abs(a))
    assert abs((a + 2) * (b + 2) - 4) <= 1e-12 * max(1.0, abs(a))


@pytest.mark.parametrize(
    "a,b,label",
    [(-1, 2, "II"), (2, -1, "II"), (3, 3, "I"), (-1, 3, "none"), (0, 0, "I+II"), (-4, -4, "I+II")],
)
def test_classify_pair(a, b, label):
    assert d.classify_pair(a, b).label == label


def test_exchange_coulomb_ground_state():
    assert d.exchange_energy_coupling(-0.5, -1.0, -1.0, 2.0, 0.5) == pytest.approx((2.0, 0.5), abs=1e-15)


def test_exchange_zero_energy_is_force_free():
    E_b, lam_b = d.exchange_energy_coupling(0.0, 1.0, 1.0, 2 / 3, 1.0)
    assert E_b == pytest.approx(-4 / 9)
    assert lam_b == 0.0


def test_exchange_rejects_wrong_eta():
    with pytest.raises(MapIncompatible):
        d.exchange_energy_coupling(-0.5, -1.0, -1.0, 1.5)


@given(exponent, energy, energy, scale, st.floats(0.0, 20.0))
def test_exchange_round_trip(a, E_a, lam_a, C, L_a):
    m = d.DualityMap.from_exponent(a, C)
    E_b, lam_b = m.exchange(E_a, lam_a)
    inv = m.inverse()
    E_back, lam_back = inv.exchange(E_b, lam_b)
    tol = 1e-12 * max(1.0, abs(E_a), abs(lam_a)) * max(1.0, C ** abs(a + 2), C ** -abs(a + 2)) * 10
    assert abs(E_back - E_a) <= tol
    assert abs(lam_back - lam_a) <= tol
    assert inv.angular(m.angular(L_a)) == pytest.approx(L_a, rel=1e-12, abs=1e-14)


@given(exponent, energy, energy)
def test_exchange_sign_patterns(a, E_a, lam_a):
    E_b, lam_b = d.exchange_energy_coupling(E_a, lam_a, a)
    # the energy and coupling trade places with a sign flip
    assert math.copysign(1, E_b) == -math.copysign(1, lam_a) or lam_a == 0.0
    assert math.copysign(1, lam_b) == -math.copysign(1, E_a) or E_a == 0.0


@pytest.mark.parametrize("L_a,eta,L_b", [(0.5, 2, 1), (0, 7.3, 0), (1.5, 4 / 3, 2), (1.0, -2, 2)])
def test_map_angular_momentum(L_a, eta, L_b):
    assert d.map_angular_momentum(L_a, eta) == pytest.approx(L_b)


def test_multiterm_confinement_pivot():
    img = d.map_multiterm(d.PowerPotential(((-1.0, -0.5), (1.0, 1.0))), 0.0, pivot=0)
    assert img.eta == pytest.approx(4 / 3)
    assert img.exponents == pytest.approx((2 / 3, 2.0))


def test_multiterm_merges_equal_images():
    img = d.map_multiterm(d.PowerPotential(((1.0, 2.0), (1.0, 0.0))), -0.3, pivot=0)
    assert img.eta == 0.5
    assert img.exponents == (-1.0, -1.0)
    assert img.potential.terms == ((pytest.approx(0.325), -1.0),)


@given(energy, energy, exponent, scale)
def test_multiterm_single_term_reduces_to_exchange(E_a, lam, a, C):
    img = d.map_multiterm(d.PowerPotential.single(lam, a), E_a, 0, C)
    E_b, lam_b = d.exchange_energy_coupling(E_a, lam, a, C=C)
    assert img.E_b == pytest.approx(E_b, rel=1e-14, abs=1e-300)
    assert img.couplings[0] == pytest.approx(lam_b, rel=1e-14, abs=1e-300)


@given(st.lists(exponent, min_size=2, max_size=5, unique=True), st.integers(0, 4))
def test_multiterm_exponent_relation(exps, k):
    k %= len(exps)
    assume(min(abs(x - y) for i, x in enumerate(exps) for y in exps[i + 1:]) > 1e-6)
    pot = d.PowerPotential(tuple((1.0, a) for a in exps))
    img = d.map_multiterm(pot, -1.0, k)
    a_k, b_k = exps[k], img.exponents[k]
    for i, (a_i, b_i) in enumerate(zip(exps, img.exponents)):
        if i == k:
            continue
        lhs = (a_i - a_k) * (b_i - b_k)
        assert lhs == pytest.approx(a_i * b_i, rel=1e-12, abs=1e-12 * max(1.0, abs(a_i * b_i), abs(a_i), abs(b_i)) * 100)


def test_grand_dual_chain():
    # the (-1, 2) map sends the self-dual pair (-1, -1) to (2, 2)
    b1, _ = d.partner_exponent(-1.0)
    b2, _ = d.partner_exponent(-1.0)
    assert d.classify_pair(-1.0, -1.0).label == "I"
    assert d.classify_pair(b1, b2).label == "I"
    assert (b1, b2) == (2.0, 2.0)


def test_invert_coupling():
    assert d.invert_coupling(2.0, 3) == -2.0
    assert d.invert_coupling(2.0, -1) == -2.0
    with pytest.raises(NonIntegerInversion):
        d.invert_coupling(2.0, 0.5)
    with pytest.raises(NonIntegerInversion):
        d.invert_coupling(2.0, 2)


def test_power_potential_rejects_repeated_exponents():
    with pytest.raises(ValueError):
        d.PowerPotential(((1.0, 1.0), (2.0, 1.0)))


def test_map_functions_are_consistent():
    m = d.DualityMap.from_exponent(-1.0, 0.5)
    rho = 1.7
    assert m.fprime(rho) == pytest.approx((m.f(rho + 1e-6) - m.f(rho - 1e-6)) / 2e-6, rel=1e-8)
    assert m.h(rho) ** 2 == pytest.approx(abs(m.fprime(rho)))
    assert m.inverse().f(m.f(rho)) == pytest.approx(rho, rel=1e-14)


def test_identity_map():
    m = d.DualityMap.identity()
    assert m.exchange(-0.5, -1.0) == (pytest.approx(1.0), pytest.approx(0.5))
    assert m.angular(0.7) == 0.7


def test_c_for_hooke():
    assert d.C_for_hooke(1.0, 1.0) == 0.5


def test_pair_points_rows():
    rows = d.pair_points([-1.0, 0.0, -2.0])
    assert rows[0] == (-1.0, 2.0, 2.0, "II")
    assert rows[1][3] == "I+II"
    assert len(rows) == 2
