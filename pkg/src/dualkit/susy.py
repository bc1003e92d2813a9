"""SUSY semiclassical quantisation with the superpotential

    Phi(r) = eps sqrt(lambda) r^(a/2) - (hbar/sqrt(2m)) mu / r,

whose square is lambda r^a + lambda' r^a' + hbar^2 mu^2/(2 m r^2) with
a' = (a - 2)/2 and lambda' = -eps hbar mu sqrt(2 lambda/m). Only the H-
partner is treated.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .duality import PowerPotential
from .errors import DegenerateExponent, MapIncompatible, NoBoundMotion
from .semiclassical import SCAN_POINTS, SCAN_RANGE, _allowed_interval, _monotone_root, phase_integral

__all__ = [
    "Superpotential",
    "SusyImage",
    "riccati_potential",
    "riccati_residual",
    "cbc_action",
    "cbc_quantize",
    "susy_option_transform",
    "merging_scale",
]


@dataclass(frozen=True)
class Superpotential:
    lambda_a: float
    a: float
    mu: float
    epsilon: int = 1
    m: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if self.lambda_a < 0.0:
            raise ValueError("lambda_a sits under a square root and must be nonnegative")
        if not self.mu > 0.0:
            raise ValueError("mu must be positive")
        if self.epsilon not in (1, -1):
            raise ValueError("epsilon must be +1 or -1")
        if not self.m > 0.0 or not self.hbar > 0.0:
            raise ValueError("m and hbar must be positive")

    @classmethod
    def oscillator(cls, omega, mu, m=1.0, hbar=1.0):
        return cls(0.5 * m * omega * omega, 2.0, mu, 1, m, hbar)

    @classmethod
    def hydrogen(cls, e2, mu, m=1.0, hbar=1.0):
        return cls(m * e2 * e2 / (2.0 * hbar * hbar * mu * mu), 0.0, mu, 1, m, hbar)

    @property
    def a_prime(self):
        return (self.a - 2.0) / 2.0

    @property
    def lambda_a_prime(self):
        return -self.epsilon * self.hbar * self.mu * math.sqrt(2.0 * self.lambda_a / self.m)

    @property
    def _k(self):
        return self.hbar / math.sqrt(2.0 * self.m)

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        return self.epsilon * math.sqrt(self.lambda_a) * r ** (self.a / 2.0) - self._k * self.mu / r

    def derivative(self, r):
        r = np.asarray(r, dtype=float)
        return (
            self.epsilon * math.sqrt(self.lambda_a) * (self.a / 2.0) * r ** (self.a / 2.0 - 1.0)
            + self._k * self.mu / (r * r)
        )

    def squared(self, r):
        return np.asarray(self(r)) ** 2

    def squared_terms(self):
        """Phi^2 as a three-term power potential."""
        return PowerPotential(
            (
                (self.lambda_a, self.a),
                (self.lambda_a_prime, self.a_prime),
                (self.hbar**2 * self.mu**2 / (2.0 * self.m), -2.0),
            )
        )


def riccati_potential(sp):
    """Two-term potential for which sp solves the H- Riccati equation with L = mu - 1/2."""
    return PowerPotential(
        ((sp.lambda_a, sp.a), ((1.0 + sp.a / (4.0 * sp.mu)) * sp.lambda_a_prime, sp.a_prime))
    )


def riccati_residual(sp, V, L, r, sign=-1):
    """Phi^2 + sign (hbar/sqrt(2m)) Phi' - V - hbar^2 (L^2 - 1/4)/(2 m r^2)."""
    r = np.asarray(r, dtype=float)
    cent = sp.hbar**2 * (L * L - 0.25) / (2.0 * sp.m * r * r)
    return sp.squared(r) + sign * sp._k * sp.derivative(r) - V(r) - cent


def _phi2_minimum(sp):
    r = np.geomspace(*SCAN_RANGE, SCAN_POINTS)
    phi = sp(r)
    flips = np.nonzero(np.signbit(phi[:-1]) != np.signbit(phi[1:]))[0]
    if flips.size:
        # Phi has a zero, so min Phi^2 is exactly 0
        return 0.0
    i = int(np.argmin(phi * phi))
    lo, hi = math.log(r[max(i - 1, 0)]), math.log(r[min(i + 1, r.size - 1)])
    res = minimize_scalar(lambda s: float(sp.squared(math.exp(s))), bounds=(lo, hi), method="bounded",
                          options={"xatol": 1e-12})
    return float(res.fun)


def cbc_action(sp, E):
    """Integral of sqrt(2m(E - Phi^2)) between the turning points."""

    def g(r):
        r = np.asarray(r, dtype=float)
        return (E - sp.squared(r)) * r * r

    tp = _allowed_interval(g)
    return phase_integral(lambda r: 2.0 * sp.m * (E - sp.squared(r)), tp.r_lo, tp.r_hi)


def cbc_quantize(sp, nu_max, witten_delta=-1):
    """Energies with cbc_action = pi hbar (nu + 1/2 + delta/2) for nu = 0..nu_max."""
    if witten_delta not in (-1, 0, 1):
        raise ValueError("witten_delta must be -1, 0 or +1")
    floor = _phi2_minimum(sp)

    def action(E):
        if E <= floor:
            return 0.0
        try:
            return cbc_action(sp, E)
        except NoBoundMotion as exc:
            return math.inf if exc.reason == "unbound" else 0.0

    out = []
    for nu in range(nu_max + 1):
        target = math.pi * sp.hbar * (nu + 0.5 + 0.5 * witten_delta)
        out.append(floor if target == 0.0 else _monotone_root(action, target, floor))
    return out


@dataclass(frozen=True)
class SusyImage:
    """E_b - lambda_b rho^b - lambda_b' rho^b' - hbar^2 mu_b^2/(2 m rho^2)."""

    option: str
    eta: float
    C: float
    E_b: float
    b: float
    lambda_b: float
    b_prime: float
    lambda_b_prime: float
    mu_b: float

    @property
    def merged(self):
        return self.b == self.b_prime

    @property
    def potential(self):
        return PowerPotential.merged(((self.lambda_b, self.b), (self.lambda_b_prime, self.b_prime)))


def _option_eta(sp, option):
    if sp.a == -2.0:
        raise DegenerateExponent("degenerate exponent a=-2")
    if option == "i":
        return 2.0 / (sp.a + 2.0)
    if option == "ii":
        return 4.0 / (sp.a + 2.0)
    raise ValueError(f"option must be 'i' or 'ii', got {option!r}")


def susy_option_transform(sp, option, E_a, C=1.0):
    """Image of E_a - Phi^2 under r = C rho^eta for option 'i' or 'ii'.

    Option i makes the lambda_a term constant (eta = 2/(a+2)); option ii
    does the same for the lambda_a' term (eta = 4/(a+2)). In both cases the
    energy term becomes a power with coupling -eta^2 C^2 E_a.
    """
    if not C > 0.0:
        raise ValueError("C must be positive")
    eta = _option_eta(sp, option)
    a, ap = sp.a, sp.a_prime
    e2 = eta * eta
    energy_term = -e2 * C * C * E_a
    energy_exp = 2.0 * eta - 2.0
    mu_b = eta * sp.mu
    if option == "i":
        return SusyImage(
            "i", eta, C,
            E_b=-e2 * C ** (2.0 + a) * sp.lambda_a,
            b=energy_exp, lambda_b=energy_term,
            b_prime=-1.0, lambda_b_prime=e2 * C ** (2.0 + ap) * sp.lambda_a_prime,
            mu_b=mu_b,
        )
    return SusyImage(
        "ii", eta, C,
        E_b=-e2 * C ** (2.0 + ap) * sp.lambda_a_prime,
        b=2.0, lambda_b=e2 * C ** (2.0 + a) * sp.lambda_a,
        b_prime=energy_exp, lambda_b_prime=energy_term,
        mu_b=mu_b,
    )


def merging_scale(sp, option, E_a, coupling):
    """C for which the merged image coupling equals ``coupling``.

    Only defined when the two image exponents coincide: a' = 0 for option i,
    a = 0 for option ii. Both image couplings then scale as C^2.
    """
    unit = susy_option_transform(sp, option, E_a, 1.0)
    if not unit.merged:
        raise MapIncompatible(f"option {option} image has distinct exponents {unit.b} and {unit.b_prime}")
    base = unit.lambda_b + unit.lambda_b_prime
    if base == 0.0 or coupling / base <= 0.0:
        raise MapIncompatible(f"merged coupling {base:g} cannot be scaled to {coupling:g}")
    return math.sqrt(coupling / base)
