"""Radial action, WKB spectra and duality transfer of energy formulas."""

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .duality import PowerPotential
from .errors import (
    InversionFailure,
    MissingF,
    NoBoundMotion,
    RootNotBracketed,
    UnsupportedSignPattern,
)
from .oracle import quadrature
from .specfun import beta_fn

__all__ = [
    "RadialSystem",
    "TurningPoints",
    "Provenance",
    "SpectrumEntry",
    "turning_points",
    "phase_integral",
    "action_J",
    "wkb_energy",
    "wkb_spectrum",
    "closed_form_zero_L",
    "EnergyFormula",
    "coulomb_formula",
    "oscillator_formula",
    "zero_L_formula",
    "dual_energy",
    "symmetric_energy_form",
    "F_REGISTRY",
]

SCAN_RANGE = (1e-6, 1e6)
SCAN_POINTS = 512
SCAN_CEILING = 1e60
QUAD_TOL = 1e-12


@dataclass(frozen=True)
class RadialSystem:
    """One side of a dual pair. ``L`` is the continuous angular parameter."""

    m: float
    L: float
    D: int
    potential: PowerPotential
    energy: float = None
    hbar: float = 1.0

    def __post_init__(self):
        if not self.m > 0.0 or not self.hbar > 0.0:
            raise ValueError("m and hbar must be positive")
        if self.L < 0.0:
            raise ValueError("L must be nonnegative")
        if self.D < 2:
            raise ValueError("D must be at least 2")

    @classmethod
    def quantized(cls, m, ell, D, potential, hbar=1.0):
        """Langer form L = ell + (D - 2)/2."""
        if ell < 0 or int(ell) != ell:
            raise ValueError("ell must be a nonnegative integer")
        return cls(m, ell + (D - 2) / 2.0, D, potential, None, hbar)

    @property
    def ell(self):
        return self.L - (self.D - 2) / 2.0

    def radicand(self, E, r):
        """2m(E - V(r)) - hbar^2 L^2 / r^2."""
        r = np.asarray(r, dtype=float)
        return 2.0 * self.m * (E - self.potential(r)) - (self.hbar * self.L) ** 2 / (r * r)


@dataclass(frozen=True)
class TurningPoints:
    r_lo: float
    r_hi: float


class Provenance(str, enum.Enum):
    CLOSED_FORM = "closed_form"
    WKB_NUMERIC = "wkb_numeric"
    DUALITY_TRANSFERRED = "duality_transferred"
    ORACLE = "oracle"


@dataclass(frozen=True)
class SpectrumEntry:
    n_r: int
    ell: int
    D: int
    energy: float
    provenance: Provenance


def _allowed_interval(g, scan=SCAN_RANGE, n=SCAN_POINTS, r0_allowed=False):
    """First interval where g > 0 on a log scan, refined by brentq.

    ``r0_allowed`` lets the interval start at r = 0 when g is already positive
    at the inner end of the scan (only meaningful without a centrifugal term).
    """
    r = np.geomspace(scan[0], scan[1], n)
    with np.errstate(all="ignore"):
        gv = np.asarray(g(r), dtype=float)
    pos = np.isfinite(gv) & (gv > 0.0)
    if not pos.any():
        raise NoBoundMotion("no classically allowed region", reason="forbidden")
    i = int(np.argmax(pos))
    if i == 0:
        if not r0_allowed:
            raise NoBoundMotion("allowed region reaches the inner end of the scan", reason="unbound")
        r_lo = 0.0
    else:
        r_lo = brentq(g, r[i - 1], r[i], xtol=1e-300, rtol=1e-15)
    rest = ~pos[i:]
    # slowly confining potentials can turn back far out; push the scan outward
    while not rest.any() and r[-1] < SCAN_CEILING:
        r = np.geomspace(r[-1], r[-1] * 1e6, n // 4)
        with np.errstate(all="ignore"):
            gv = np.asarray(g(r), dtype=float)
        rest = ~(np.isfinite(gv) & (gv > 0.0))
        i = 0
    if not rest.any():
        raise NoBoundMotion("allowed region extends past the outer end of the scan", reason="unbound")
    j = i + int(np.argmax(rest))
    r_hi = brentq(g, r[j - 1], r[j], xtol=1e-300, rtol=1e-15)
    return TurningPoints(r_lo, r_hi)


def turning_points(system, E, scan=SCAN_RANGE):
    """Ends of the first allowed interval of the radial motion at energy E.

    The scan works on g(r) = r^2 * radicand, which stays finite at small r.
    """

    def g(r):
        r = np.asarray(r, dtype=float)
        return 2.0 * system.m * (E - system.potential(r)) * r * r - (system.hbar * system.L) ** 2

    return _allowed_interval(g, scan, r0_allowed=system.L == 0.0)


def phase_integral(W, r_lo, r_hi, tol=QUAD_TOL):
    """Integral of sqrt(W(r)) between two turning points.

    Substituting r = r_lo + (r_hi - r_lo) sin^2 theta removes the square-root
    behaviour at both ends.
    """
    span = r_hi - r_lo

    def integrand(theta):
        s = np.sin(theta)
        r = r_lo + span * s * s
        w = np.clip(np.asarray(W(r), dtype=float), 0.0, None)
        return np.sqrt(w) * span * np.sin(2.0 * theta)

    return quadrature(integrand, 0.0, 0.5 * math.pi, tol=tol)


def action_J(system, E, tol=QUAD_TOL):
    """Radial action J = 2 * integral of sqrt(radicand) over the allowed interval."""
    tp = turning_points(system, E)
    return 2.0 * phase_integral(lambda r: system.radicand(E, r), tp.r_lo, tp.r_hi, tol)


def _action_or_limit(system, E):
    try:
        return action_J(system, E)
    except NoBoundMotion as exc:
        return math.inf if exc.reason == "unbound" else 0.0


def _effective_minimum(system):
    r = np.geomspace(*SCAN_RANGE, SCAN_POINTS)
    veff = system.potential(r) + (system.hbar * system.L) ** 2 / (2.0 * system.m * r * r)
    return float(np.min(veff))


def _monotone_root(fn, target, e_lo, rel=1e-14, max_expand=200):
    """Root of increasing fn(E) = target; fn may return 0 below and inf above."""
    if fn(e_lo) >= target:
        raise RootNotBracketed(f"action at the bottom of the window already exceeds {target:g}")
    step = max(abs(e_lo), 1.0) * 1e-3
    e_hi = e_lo + step
    for _ in range(max_expand):
        if fn(e_hi) > target:
            break
        e_lo, step = e_hi, 2.0 * step
        e_hi = e_lo + step
    else:
        raise RootNotBracketed(f"no energy with action {target:g} in the scanned window")
    # shrink until both ends give finite actions so brentq sees a continuous function
    f_lo, f_hi = fn(e_lo), fn(e_hi)
    for _ in range(200):
        if math.isfinite(f_hi) and f_lo > 0.0:
            break
        mid = 0.5 * (e_lo + e_hi)
        f_mid = fn(mid)
        if f_mid > target:
            e_hi, f_hi = mid, f_mid
        else:
            e_lo, f_lo = mid, f_mid
    return brentq(lambda e: fn(e) - target, e_lo, e_hi, xtol=1e-300, rtol=rel)


def wkb_energy(system, N):
    """Energy with J(E) = 2 pi hbar N (N = n_r + 1/2 for ordinary WKB)."""
    target = 2.0 * math.pi * system.hbar * N
    return _monotone_root(lambda e: _action_or_limit(system, e), target, _effective_minimum(system))


def wkb_spectrum(system, n_max):
    return [
        SpectrumEntry(n, int(round(system.ell)), system.D, wkb_energy(system, n + 0.5), Provenance.WKB_NUMERIC)
        for n in range(n_max + 1)
    ]


# ---------------------------------------------------------------------------
# closed forms


def _zero_L_coefficient(a, m, hbar):
    if a < 0.0:
        B = beta_fn(-(a + 2.0) / (2.0 * a), 1.5)
    else:
        B = beta_fn(1.0 / a, 1.5)
    return math.sqrt(2.0 * m) * B / (hbar * abs(a) * math.pi)


def _zero_L_energy(a, lam, m, hbar, N):
    if lam < 0.0 and -2.0 < a < 0.0:
        K = _zero_L_coefficient(a, m, hbar)
        return -((-lam) ** (2.0 / (a + 2.0))) * K ** (-2.0 * a / (a + 2.0)) * N ** (2.0 * a / (a + 2.0))
    if lam > 0.0 and a > 0.0:
        K = _zero_L_coefficient(a, m, hbar)
        return lam ** (2.0 / (a + 2.0)) * K ** (-2.0 * a / (a + 2.0)) * N ** (2.0 * a / (a + 2.0))
    raise UnsupportedSignPattern(f"no zero-L bound spectrum for a={a}, lambda={lam}")


def closed_form_zero_L(a, lam, m=1.0, n=0, hbar=1.0):
    """WKB energy of level n for V = lam r^a at L = 0."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _zero_L_energy(a, lam, m, hbar, n + 0.5)


@dataclass(frozen=True)
class EnergyFormula:
    """Energy as a function of (coupling, L, N) for V = lambda r^a.

    ``inverse(E, L, N)`` returns the coupling; when absent, dual_energy finds
    it by root finding.
    """

    a: float
    energy: callable = field(repr=False)
    inverse: callable = field(default=None, repr=False)
    name: str = ""

    def __call__(self, lam, L, N):
        return self.energy(lam, L, N)


def coulomb_formula(m=1.0, hbar=1.0):
    def energy(lam, L, N):
        return -m * lam * lam / (2.0 * hbar * hbar * (N + L) ** 2)

    def inverse(E, L, N):
        if E >= 0.0:
            raise InversionFailure("Coulomb formula has no bound coupling for E >= 0")
        return -math.sqrt(-2.0 * hbar * hbar * E / m) * (N + L)

    return EnergyFormula(-1.0, energy, inverse, "coulomb")


def oscillator_formula(m=1.0, hbar=1.0):
    def energy(lam, L, N):
        if lam < 0.0:
            raise UnsupportedSignPattern("oscillator formula needs lambda > 0")
        return hbar * math.sqrt(2.0 * lam / m) * (2.0 * N + L)

    def inverse(E, L, N):
        if E <= 0.0:
            raise InversionFailure("oscillator formula has no coupling for E <= 0")
        return 0.5 * m * (E / (hbar * (2.0 * N + L))) ** 2

    return EnergyFormula(2.0, energy, inverse, "oscillator")


def zero_L_formula(a, m=1.0, hbar=1.0):
    """L = 0 WKB energy as a function of the coupling (no registered inverse)."""

    def energy(lam, L, N):
        return _zero_L_energy(a, lam, m, hbar, N)

    return EnergyFormula(a, energy, None, f"zero-L a={a:g}")


def _invert_numeric(formula, E, L, N):
    grid = [s * 10.0**k for s in (-1.0, 1.0) for k in np.arange(-12.0, 12.5, 0.5)]
    grid.sort()

    def resid(lam):
        try:
            return formula(lam, L, N) - E
        except (UnsupportedSignPattern, ValueError, ZeroDivisionError, OverflowError):
            return math.nan

    vals = [resid(x) for x in grid]
    for (x0, f0), (x1, f1) in zip(zip(grid, vals), zip(grid[1:], vals[1:])):
        if math.isfinite(f0) and math.isfinite(f1) and f0 * f1 <= 0.0:
            if f0 == 0.0:
                return x0
            try:
                return brentq(resid, x0, x1, xtol=1e-300, rtol=1e-15)
            except (ValueError, RuntimeError) as exc:
                raise InversionFailure(str(exc)) from exc
    raise InversionFailure(f"could not invert {formula.name or 'energy formula'} at E={E:g}")


def dual_energy(formula, lambda_b, L_b, N, eta, C=1.0):
    """Energy of the dual system from the energy formula of the source.

    The source exponent is a = 2/eta - 2 and its angular parameter L_b/|eta|.
    With eta = 1 and a formula for a != 0 the map is the self-dual scaling
    r = C rho, which keeps the exponent and involves no exchange.
    """
    if eta == 1.0 and formula.a != 0.0:
        a = formula.a
        return C * C * formula(lambda_b * C ** -(a + 2.0), L_b, N)
    a = 2.0 / eta - 2.0
    if abs(a - formula.a) > 1e-12 * max(1.0, abs(a)):
        raise InversionFailure(f"eta={eta} pairs with a={a}, but the formula is for a={formula.a}")
    E_a = -lambda_b / (eta * eta * C * C)
    L_a = L_b / abs(eta)
    if formula.inverse is not None:
        lam_a = formula.inverse(E_a, L_a, N)
    else:
        lam_a = _invert_numeric(formula, E_a, L_a, N)
    return -eta * eta * C ** (a + 2.0) * lam_a


def _coulomb_hooke_F(m, hbar):
    def F(x, N):
        return hbar * hbar / (2.0 * m) * (N + x / math.sqrt(2.0)) ** 2

    return F


# family name -> (exponents it is exact for, F factory taking (m, hbar))
F_REGISTRY = {
    "coulomb-hooke": ((-1.0, 2.0), _coulomb_hooke_F),
}


def symmetric_energy_form(a, lambda_a, L_a, N, family="coulomb-hooke", m=1.0, hbar=1.0):
    """Energy written through the pair-invariant function F of a registered family.

    |E| = ((a+2)^2/4) |lambda|^(2/(a+2)) F(sqrt(2/(a+2)) L, N)^(1/a), with the
    sign of E equal to the sign of lambda for the bound families registered.
    """
    try:
        exps, factory = F_REGISTRY[family]
    except KeyError:
        raise MissingF(f"no F registered for family {family!r}") from None
    if a not in exps:
        raise MissingF(f"family {family!r} has no F for exponent a={a}")
    F = factory(m, hbar)
    mag = (a + 2.0) ** 2 / 4.0 * abs(lambda_a) ** (2.0 / (a + 2.0))
    mag *= F(math.sqrt(2.0 / (a + 2.0)) * L_a, N) ** (1.0 / a)
    return math.copysign(mag, lambda_a)
