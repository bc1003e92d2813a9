"""Power-law duality algebra.

A change of variable r = C rho^eta maps the radial problem for
V(r) = lambda_a r^a at energy E_a onto one for lambda_b rho^b at E_b, with
(a + 2)(b + 2) = 4 and eta = 2/(a + 2). Energy and coupling trade places:

    lambda_b = -eta^2 C^2 E_a,    E_b = -eta^2 C^(a+2) lambda_a.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateExponent, MapIncompatible, NonIntegerInversion

__all__ = [
    "PowerPotential",
    "PairClass",
    "DualityMap",
    "MultitermImage",
    "partner_exponent",
    "exchange_energy_coupling",
    "map_angular_momentum",
    "map_multiterm",
    "classify_pair",
    "invert_coupling",
    "C_for_hooke",
    "pair_points",
]

IDENTITY_TOL = 1e-12


@dataclass(frozen=True)
class PowerPotential:
    """V(r) = sum_i lambda_i r^(a_i) with pairwise distinct exponents."""

    terms: tuple

    def __post_init__(self):
        terms = tuple((float(lam), float(a)) for lam, a in self.terms)
        exps = [a for _, a in terms]
        if len(set(exps)) != len(exps):
            raise ValueError(f"exponents must be pairwise distinct, got {exps}")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def single(cls, coupling, exponent):
        return cls(((coupling, exponent),))

    @classmethod
    def merged(cls, terms):
        """Build from possibly repeated exponents by adding their couplings."""
        acc = {}
        for lam, a in terms:
            acc[float(a)] = acc.get(float(a), 0.0) + float(lam)
        return cls(tuple((lam, a) for a, lam in acc.items()))

    @property
    def couplings(self):
        return tuple(lam for lam, _ in self.terms)

    @property
    def exponents(self):
        return tuple(a for _, a in self.terms)

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        out = np.zeros_like(r)
        for lam, a in self.terms:
            out = out + (lam if a == 0.0 else lam * r**a)
        return out if out.ndim else float(out)

    def derivative(self, r):
        r = np.asarray(r, dtype=float)
        out = np.zeros_like(r)
        for lam, a in self.terms:
            if a != 0.0:
                out = out + lam * a * r ** (a - 1.0)
        return out if out.ndim else float(out)

    def __len__(self):
        return len(self.terms)


class PairClass(enum.Flag):
    """Duality class of an exponent pair; (0,0) and (-4,-4) carry both flags."""

    NOT_DUAL = 0
    CLASS_I = enum.auto()
    CLASS_II = enum.auto()

    @property
    def label(self):
        names = [n for n, f in (("I", PairClass.CLASS_I), ("II", PairClass.CLASS_II)) if f in self]
        return "+".join(names) if names else "none"


def partner_exponent(a):
    """Class II partner of exponent ``a``: returns ``(b, eta)``."""
    a = float(a)
    if a == -2.0:
        raise DegenerateExponent("degenerate exponent a=-2")
    eta = 2.0 / (a + 2.0)
    b = -2.0 * a / (a + 2.0)
    return b, eta


def classify_pair(a, b, tol=IDENTITY_TOL):
    cls = PairClass.NOT_DUAL
    if a == b:
        cls |= PairClass.CLASS_I
    if a != -2.0 and b != -2.0 and abs((a + 2.0) * (b + 2.0) - 4.0) <= tol * max(1.0, abs(a * b)):
        cls |= PairClass.CLASS_II
    return cls


def _check_eta(a, eta):
    if a == -2.0:
        raise DegenerateExponent("degenerate exponent a=-2")
    expected = 2.0 / (a + 2.0)
    if abs(eta - expected) > IDENTITY_TOL * max(1.0, abs(expected)):
        raise MapIncompatible(f"eta={eta} does not pair with a={a} (expected {expected})")


def exchange_energy_coupling(E_a, lambda_a, a, eta=None, C=1.0):
    """Trade energy and coupling across the Class II map; returns ``(E_b, lambda_b)``."""
    if eta is None:
        eta = partner_exponent(a)[1]
    _check_eta(a, eta)
    if not C > 0.0:
        raise ValueError("C must be positive")
    lambda_b = -eta * eta * C * C * E_a
    E_b = -eta * eta * C ** (a + 2.0) * lambda_a
    return E_b, lambda_b


def map_angular_momentum(L_a, eta):
    """L_b = |eta| L_a; quantised values are substituted only after mapping."""
    if L_a < 0.0:
        raise ValueError("L_a must be nonnegative")
    if eta == 0.0:
        raise ValueError("eta must be nonzero")
    return abs(eta) * L_a


def invert_coupling(lambda_a, a):
    """Coupling after the inversion r -> 1/r style relabelling, lambda (-1)^a.

    Defined for odd integer ``a`` only.
    """
    if a != math.floor(a) or int(a) % 2 == 0:
        raise NonIntegerInversion(f"inversion sign flip needs an odd integer exponent, got {a}")
    return -lambda_a


def C_for_hooke(kappa, omega, m=1.0, hbar=1.0):
    """Scale C = m omega / (2 hbar kappa) joining a Coulomb and a Hooke state."""
    return m * omega / (2.0 * hbar * kappa)


@dataclass(frozen=True)
class DualityMap:
    """The change of variable r = C rho^eta."""

    eta: float
    C: float = 1.0
    map_class: PairClass = PairClass.CLASS_II
    pivot: int = 0

    def __post_init__(self):
        if self.eta == 0.0:
            raise ValueError("eta must be nonzero")
        if not self.C > 0.0:
            raise ValueError("C must be positive")

    @classmethod
    def from_exponent(cls, a, C=1.0, pivot=0):
        b, eta = partner_exponent(a)
        klass = PairClass.CLASS_II | (PairClass.CLASS_I if a == b else PairClass.NOT_DUAL)
        return cls(eta, C, klass, pivot)

    @classmethod
    def identity(cls):
        return cls(1.0, 1.0, PairClass.CLASS_I)

    @property
    def source_exponent(self):
        return 2.0 / self.eta - 2.0

    @property
    def target_exponent(self):
        return 2.0 * self.eta - 2.0

    def inverse(self):
        """rho = C^(-1/eta) r^(1/eta)."""
        return DualityMap(1.0 / self.eta, self.C ** (-1.0 / self.eta), self.map_class, self.pivot)

    def f(self, rho):
        return self.C * np.asarray(rho, dtype=float) ** self.eta

    def fprime(self, rho):
        return self.C * self.eta * np.asarray(rho, dtype=float) ** (self.eta - 1.0)

    def h(self, rho):
        """sqrt(|f'(rho)|), the wavefunction Jacobian factor."""
        return np.sqrt(np.abs(self.fprime(rho)))

    def exchange(self, E_a, lambda_a):
        return exchange_energy_coupling(E_a, lambda_a, self.source_exponent, self.eta, self.C)

    def angular(self, L_a):
        return map_angular_momentum(L_a, self.eta)


@dataclass(frozen=True)
class MultitermImage:
    """Image of a multi-term potential under the map pivoting on term k.

    ``exponents`` and ``couplings`` are listed per source term (the pivot term
    carries the coupling that came from the energy). Distinct source terms can
    land on the same exponent; ``potential`` adds such couplings together.
    """

    eta: float
    E_b: float
    exponents: tuple
    couplings: tuple
    pivot: int

    @property
    def potential(self):
        return PowerPotential.merged(zip(self.couplings, self.exponents))

    def __iter__(self):
        # unpacks as (potential_b, E_b, eta)
        return iter((self.potential, self.E_b, self.eta))


def map_multiterm(potential, E_a, pivot, C=1.0):
    a_k = potential.exponents[pivot]
    lam_k = potential.couplings[pivot]
    if a_k == -2.0:
        raise DegenerateExponent("degenerate exponent a=-2 at the pivot")
    eta = 2.0 / (a_k + 2.0)
    exps, cpls = [], []
    for i, (lam, a) in enumerate(potential.terms):
        if i == pivot:
            exps.append(-2.0 * a_k / (a_k + 2.0))
            cpls.append(-C * C * eta * eta * E_a)
        else:
            exps.append(2.0 * (a - a_k) / (a_k + 2.0))
            cpls.append(eta * eta * C ** (a + 2.0) * lam)
    E_b = -eta * eta * C ** (a_k + 2.0) * lam_k
    return MultitermImage(eta, E_b, tuple(exps), tuple(cpls), pivot)


def pair_points(a_values):
    """Rows (a, b, eta, class label) for plotting the pair hyperbola."""
    rows = []
    for a in a_values:
        a = float(a)
        if a == -2.0:
            continue
        b, eta = partner_exponent(a)
        rows.append((a, b, eta, classify_pair(a, b).label))
    return rows
