import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dualkit import quantum
from dualkit.errors import GridTooCoarse, MaxDepthExceeded, NoEigenvalueInBracket
from dualkit.oracle import LineGrid, RadialGrid, numerov_eigen, numerov_eigen_1d, quadrature
from dualkit.semiclassical import RadialSystem, action_J
from dualkit.duality import PowerPotential


def test_quadrature_constant():
    assert quadrature(lambda x: np.ones_like(x), 0.0, 1.0) == pytest.approx(1.0, rel=1e-15)


def test_quadrature_endpoint_singularities():
    val = quadrature(lambda x: x**-0.5 * (1 - x) ** 0.5, 0.0, 1.0, tol=1e-10)
    assert val == pytest.approx(math.pi / 2, rel=1e-9)


def test_quadrature_matches_action():
    # the Coulomb action at E=-1/2, L=1/2 is pi; integrate the radicand directly
    r_lo, r_hi = 1 - math.sqrt(0.75), 1 + math.sqrt(0.75)
    f = lambda r: np.sqrt(np.clip(2 * (-0.5 + 1 / r) - 0.25 / r**2, 0.0, None))
    direct = 2 * quadrature(f, r_lo, r_hi, tol=1e-11)
    J = action_J(RadialSystem(1.0, 0.5, 3, PowerPotential.single(-1.0, -1.0)), -0.5)
    assert direct == pytest.approx(math.pi, rel=1e-8)
    assert J == pytest.approx(direct, rel=1e-8)


@given(st.floats(0.1, 20.0), st.floats(0.1, 20.0))
def test_quadrature_polynomial(p, b):
    assert quadrature(lambda x: x**p, 0.0, b, tol=1e-12) == pytest.approx(b ** (p + 1) / (p + 1), rel=1e-10)


def test_quadrature_gives_up():
    with pytest.raises(MaxDepthExceeded):
        quadrature(lambda x: np.sin(1.0 / x) / x**1.5, 1e-12, 1.0, tol=1e-14, max_intervals=50)


@pytest.mark.parametrize("ell", [0, 1])
@pytest.mark.parametrize("n_r", [0, 1, 2])
def test_numerov_coulomb(ell, n_r):
    E = numerov_eigen(lambda r: -1.0 / r, ell + 0.5, node_target=n_r)
    assert E == pytest.approx(-0.5 / (n_r + ell + 1) ** 2, rel=1e-5)


@pytest.mark.parametrize("ell", [0, 1])
@pytest.mark.parametrize("n_r", [0, 1, 2])
def test_numerov_hooke(ell, n_r):
    E = numerov_eigen(lambda r: 0.5 * r * r, ell + 0.5, node_target=n_r)
    assert E == pytest.approx(2 * n_r + ell + 1.5, rel=1e-5)


@pytest.mark.parametrize("nu", [0, 1, 2])
def test_numerov_morse(nu):
    E = numerov_eigen_1d(quantum.morse_potential(8.0, 8.0, 1.0), node_target=nu, grid=LineGrid())
    assert E == pytest.approx(-0.5 * (3.5 - nu) ** 2, rel=1e-4)


def test_numerov_uniform_grid():
    E = numerov_eigen(lambda r: 0.5 * r * r, 0.5, grid=RadialGrid(1e-3, 10.0, 4000, "uniform"))
    assert E == pytest.approx(1.5, rel=1e-6)


@given(st.floats(0.3, 3.0), st.floats(0.2, 2.5))
@settings(max_examples=10)
def test_numerov_scales_with_units(m, hbar):
    E = numerov_eigen(lambda r: 0.5 * m * r * r, 1.5, m=m, hbar=hbar, check_grid=False)
    assert E == pytest.approx(hbar * 2.5, rel=1e-6)


def test_eigenvalues_increase_with_nodes():
    V = lambda r: r**0.7
    E = [numerov_eigen(V, 1.0, node_target=n, check_grid=False) for n in range(5)]
    assert all(b > a for a, b in zip(E, E[1:]))


def test_grid_convergence():
    V = lambda r: -1.0 / r
    coarse = numerov_eigen(V, 0.5, node_target=1, grid=RadialGrid(n_points=20000), check_grid=False)
    fine = numerov_eigen(V, 0.5, node_target=1, grid=RadialGrid(n_points=40000), check_grid=False)
    assert abs(coarse - fine) < 1e-6


def test_grid_too_coarse():
    with pytest.raises(GridTooCoarse):
        numerov_eigen(lambda r: -1.0 / r, 0.5, node_target=2, grid=RadialGrid(1e-5, 50.0, 200))
    with pytest.raises(GridTooCoarse):
        numerov_eigen(lambda r: -1.0 / r, 0.5, grid=RadialGrid(1e-5, 50.0, 150))


def test_missing_bound_state():
    with pytest.raises(NoEigenvalueInBracket):
        numerov_eigen_1d(quantum.morse_potential(2.0, 1.0, 1.0), node_target=3, grid=LineGrid())


def test_grid_validation():
    with pytest.raises(ValueError):
        RadialGrid(1.0, 0.5)
    with pytest.raises(ValueError):
        RadialGrid(n_points=50)
    with pytest.raises(ValueError):
        LineGrid(1.0, -1.0)
