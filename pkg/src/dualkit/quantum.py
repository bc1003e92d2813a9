"""Bound states and radial Green functions for the Coulomb, Hooke, confinement
and Morse problems, and the transforms that carry them across a duality map.

Radial functions are the reduced psi(r) of

    -hbar^2/2m psi'' + [hbar^2 (L^2 - 1/4)/(2 m r^2) + V(r)] psi = E psi,

with L = ell + D/2 - 1. Green functions follow G = (E - H)^-1, so that
(E - E_n) G -> psi_n(r) psi_n(r') near a pole and dG/dr jumps by +2m/hbar^2
across r = r'.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .duality import DualityMap, partner_exponent
from .errors import MapIncompatible, NoSuchBoundState, OnSpectrum
from .oracle import quadrature
from .specfun import laguerre, lgamma, lgamma_sign, whittaker_m, whittaker_w

__all__ = [
    "Eigenfunction",
    "GreenEval",
    "coulomb_state",
    "coulomb_eigenfunction",
    "hooke_state",
    "hooke_eigenfunction",
    "map_wavefunction",
    "normalization_defect",
    "full_radial",
    "full_green",
    "coulomb_green",
    "hooke_green",
    "transform_green",
    "coulomb_to_hooke_green",
    "evaluate_green",
    "confinement_couplings",
    "confinement_k",
    "confinement_state",
    "confinement_green",
    "morse_potential",
    "morse_spectrum",
    "morse_state",
    "WhittakerChart",
    "whittaker_chart",
    "TrialityMap",
    "triality_map",
    "triality_energy",
]

POLE_TOL = 1e-8
NORM_TOL = 1e-10


def _langer(ell, D):
    if ell < 0 or int(ell) != ell:
        raise ValueError("ell must be a nonnegative integer")
    if D < 2:
        raise ValueError("D must be at least 2")
    return ell + D / 2.0 - 1.0


@dataclass(frozen=True)
class Eigenfunction:
    """A normalised bound state psi(q) with its quantum numbers.

    ``exponent`` is the power of the potential the state belongs to (None for
    Morse), used to check duality pairings. ``domain`` is "radial" (q = r > 0)
    or "line" (q = xi on the real line). ``scale`` is a characteristic length
    and ``centre`` a point near the bulk of the state; both seed the
    normalisation quadrature.
    """

    system: str
    nu: int
    L: float
    energy: float
    func: callable = field(repr=False, compare=False)
    params: tuple = ()
    exponent: float = None
    domain: str = "radial"
    scale: float = 1.0
    centre: float = 1.0
    ell: int = None
    D: int = None

    def __call__(self, q):
        return self.func(np.asarray(q, dtype=float))

    def param(self, name):
        return dict(self.params)[name]

    def integrate(self, g, tol=1e-12, abs_tol=1e-300):
        """Integral of g(q) over the domain, widening the window until stable.

        Pass ``abs_tol`` for integrals expected to vanish, such as overlaps.
        """
        if self.domain == "radial":
            window = lambda w: (0.0, self.centre + w)
        else:
            window = lambda w: (self.centre - w, self.centre + w)
        w, prev = 8.0 * self.scale, None
        while True:
            val = quadrature(g, *window(w), tol=tol, abs_tol=abs_tol)
            if prev is not None and abs(val - prev) <= max(NORM_TOL * abs(val), abs_tol):
                return val
            prev, w = val, 2.0 * w

    def norm(self):
        return self.integrate(lambda q: self(q) ** 2)

    def nodes(self, n=20001):
        if self.domain == "radial":
            q = np.linspace(0.0, self.centre + 12.0 * self.scale, n)[1:]
        else:
            q = np.linspace(self.centre - 12.0 * self.scale, self.centre + 12.0 * self.scale, n)
        v = self(q)
        big = np.abs(v) > 1e-12 * np.max(np.abs(v))
        s = np.sign(v[big])
        return int(np.count_nonzero(s[1:] != s[:-1]))


def _sqrt_gamma_ratio(nu, alpha):
    """sqrt(nu! / Gamma(nu + alpha + 1)) in log space."""
    return math.exp(0.5 * (lgamma(nu + 1.0) - lgamma(nu + alpha + 1.0)))


# ---------------------------------------------------------------------------
# Coulomb and Hooke


def coulomb_state(nu, L, e2=1.0, m=1.0, hbar=1.0):
    """Bound state of V = -e2/r with continuous angular parameter L."""
    nu = int(nu)
    if nu < 0:
        raise ValueError("nu must be nonnegative")
    n_eff = nu + L + 0.5
    kappa = m * e2 / (hbar * hbar * n_eff)
    E = -m * e2 * e2 / (2.0 * hbar * hbar * n_eff * n_eff)
    pref = math.sqrt(hbar * hbar * kappa * kappa / (m * e2)) * _sqrt_gamma_ratio(nu, 2.0 * L)

    def psi(r):
        x = 2.0 * kappa * r
        return pref * np.exp(-0.5 * x) * x ** (L + 0.5) * laguerre(nu, 2.0 * L, x)

    params = (("e2", e2), ("m", m), ("hbar", hbar), ("kappa", kappa))
    return Eigenfunction("coulomb", nu, L, E, psi, params, -1.0, "radial", 1.0 / kappa, n_eff / kappa)


def coulomb_eigenfunction(nu, ell, D=3, e2=1.0, m=1.0, hbar=1.0):
    st = coulomb_state(nu, _langer(ell, D), e2, m, hbar)
    return _with_labels(st, ell, D)


def hooke_state(nu, L, omega=1.0, m=1.0, hbar=1.0):
    """Bound state of V = m omega^2 rho^2 / 2 with continuous angular parameter L."""
    nu = int(nu)
    if nu < 0:
        raise ValueError("nu must be nonnegative")
    E = hbar * omega * (2.0 * nu + L + 1.0)
    s = m * omega / hbar
    pref = (4.0 * s) ** 0.25 * _sqrt_gamma_ratio(nu, L)

    def psi(rho):
        x = s * rho * rho
        return pref * np.exp(-0.5 * x) * x ** (0.5 * (L + 0.5)) * laguerre(nu, L, x)

    params = (("omega", omega), ("m", m), ("hbar", hbar))
    length = 1.0 / math.sqrt(s)
    return Eigenfunction("hooke", nu, L, E, psi, params, 2.0, "radial", length,
                         length * math.sqrt(2.0 * nu + L + 1.0))


def hooke_eigenfunction(nu, ell, D=3, omega=1.0, m=1.0, hbar=1.0):
    st = hooke_state(nu, _langer(ell, D), omega, m, hbar)
    return _with_labels(st, ell, D)


def _with_labels(st, ell, D):
    return Eigenfunction(st.system, st.nu, st.L, st.energy, st.func, st.params, st.exponent,
                         st.domain, st.scale, st.centre, int(ell), int(D))


def full_radial(psi, D):
    """R(r) = r^((1-D)/2) psi(r)."""
    return lambda r: np.asarray(r, dtype=float) ** (0.5 * (1.0 - D)) * psi(r)


def full_green(G, D):
    """Green function of the full radial equation, (r r')^((1-D)/2) G."""
    return lambda r, rp: (r * rp) ** (0.5 * (1.0 - D)) * G(r, rp)


def _check_pairing(exponent, dmap):
    if dmap.eta == 1.0:
        return
    if exponent is None:
        raise MapIncompatible("state has no power-law exponent to pair")
    _, eta = partner_exponent(exponent)
    if abs(eta - dmap.eta) > 1e-12 * abs(eta):
        raise MapIncompatible(f"map eta={dmap.eta} does not pair with exponent {exponent} (needs {eta})")


def map_wavefunction(psi_a, dmap):
    """rho -> psi_a(C rho^eta) / sqrt(f'(rho)).

    The result is proportional to the dual eigenfunction but not normalised.
    """
    _check_pairing(psi_a.exponent, dmap)

    def psi_b(rho):
        rho = np.asarray(rho, dtype=float)
        return psi_a(dmap.f(rho)) / dmap.h(rho)

    return psi_b


def normalization_defect(kappa, omega, e2=1.0, m=1.0, hbar=1.0):
    """Ratio mapped/direct for a Coulomb state carried to the Hooke state.

    With C = m omega/(2 hbar kappa) the gamma factors cancel and the ratio is
    sqrt(hbar kappa/(2 m omega)) * hbar kappa / sqrt(m e2), independent of nu.
    """
    return math.sqrt(hbar * kappa / (2.0 * m * omega)) * hbar * kappa / math.sqrt(m * e2)


# ---------------------------------------------------------------------------
# Green functions


def _pole_guard(arg, what):
    if arg <= 0.0 and abs(arg - round(arg)) < POLE_TOL:
        raise OnSpectrum(f"{what}: Gamma({arg:.12g}) sits on a pole")


def _gamma_ratio(num, den):
    ln, sn = lgamma_sign(num)
    ld, sd = lgamma_sign(den)
    return sn * sd * math.exp(ln - ld)


def _whittaker_pair(k, mu, x_small, x_large):
    return whittaker_w(k, mu, x_large) * whittaker_m(k, mu, x_small)


def coulomb_green(r, r_prime, E, L, e2=1.0, m=1.0, hbar=1.0):
    if E >= 0.0:
        raise ValueError("Coulomb Green function is implemented for E < 0 only")
    kappa = math.sqrt(-2.0 * m * E) / hbar
    k = m * e2 / (hbar * hbar * kappa)
    arg = L - k + 0.5
    _pole_guard(arg, "coulomb_green")
    lo, hi = min(r, r_prime), max(r, r_prime)
    pref = -m / (hbar * hbar * kappa) * _gamma_ratio(arg, 2.0 * L + 1.0)
    return pref * _whittaker_pair(k, L, 2.0 * kappa * lo, 2.0 * kappa * hi)


def hooke_green(rho, rho_prime, E, L, omega=1.0, m=1.0, hbar=1.0):
    k = E / (2.0 * hbar * omega)
    arg = 0.5 * L - k + 0.5
    _pole_guard(arg, "hooke_green")
    s = m * omega / hbar
    lo, hi = min(rho, rho_prime), max(rho, rho_prime)
    pref = -1.0 / (hbar * omega * math.sqrt(rho * rho_prime)) * _gamma_ratio(arg, L + 1.0)
    return pref * _whittaker_pair(k, 0.5 * L, s * lo * lo, s * hi * hi)


def transform_green(G_a, dmap):
    """(rho, rho') -> G_a(f(rho), f(rho')) / sqrt(f'(rho) f'(rho'))."""

    def G_b(rho, rho_prime):
        jac = math.sqrt(abs(float(dmap.fprime(rho)) * float(dmap.fprime(rho_prime))))
        return G_a(float(dmap.f(rho)), float(dmap.f(rho_prime))) / jac

    return G_b


def coulomb_to_hooke_green(E_b, L_b, omega=1.0, e2=1.0, m=1.0, hbar=1.0):
    """Hooke Green function at (E_b, L_b) built from the Coulomb one.

    Matching k_a = k_b fixes C = E_b/(4 e2); the Coulomb side then sits at
    E_a = -m omega^2/(8 C^2) with L_a = L_b/2.
    """
    if E_b <= 0.0:
        raise ValueError("the Coulomb route needs E_b > 0")
    C = E_b / (4.0 * e2)
    E_a = -m * omega * omega / (8.0 * C * C)
    L_a = 0.5 * L_b

    def G_a(r, rp):
        return coulomb_green(r, rp, E_a, L_a, e2, m, hbar)

    return transform_green(G_a, DualityMap.from_exponent(-1.0, C))


@dataclass(frozen=True)
class GreenEval:
    system: str
    E: float
    L: float
    points: tuple
    values: tuple


def evaluate_green(system, G, E, L, points):
    pts = tuple((float(r), float(rp)) for r, rp in points)
    return GreenEval(system, float(E), float(L), pts, tuple(float(G(r, rp)) for r, rp in pts))


# ---------------------------------------------------------------------------
# confinement: V = lambda_a r^(-1/2) + lambda_a' r at zero energy


def _conf_alpha(lambda_a_prime, m, hbar):
    return (4.0 / 3.0) * math.sqrt(2.0 * m * lambda_a_prime) / hbar


def confinement_couplings(nu0, ell_a, D=3, lambda_a_prime=1.0, m=1.0, hbar=1.0):
    """Coupling lambda_a giving a zero-energy state with nu0 nodes."""
    if not lambda_a_prime > 0.0:
        raise ValueError("lambda_a_prime must be positive")
    L_a = _langer(ell_a, D)
    return _conf_lambda(nu0, L_a, lambda_a_prime, m, hbar)


def _conf_lambda(nu0, L_a, lambda_a_prime, m, hbar):
    root = math.sqrt(2.0 * lambda_a_prime * hbar * hbar / m)
    return -0.75 * root * (2.0 * nu0 + (4.0 / 3.0) * L_a + 1.0)


def confinement_k(lambda_a, lambda_a_prime=1.0, m=1.0, hbar=1.0):
    """Whittaker index k_a carried by the coupling lambda_a at E = 0."""
    return -(2.0 / 3.0) * lambda_a * math.sqrt(m) / (hbar * math.sqrt(2.0 * lambda_a_prime))


def confinement_state(nu0, ell_a, D=3, lambda_a_prime=1.0, m=1.0, hbar=1.0, L=None):
    """Zero-energy state; normalised by quadrature. ``L`` overrides the Langer value."""
    nu0 = int(nu0)
    L_a = _langer(ell_a, D) if L is None else float(L)
    alpha = _conf_alpha(lambda_a_prime, m, hbar)
    k = nu0 + (2.0 / 3.0) * L_a + 0.5
    mu = (2.0 / 3.0) * L_a
    wm = np.vectorize(lambda x: whittaker_m(k, mu, x) if x > 0.0 else 0.0, otypes=[float])

    def raw(r):
        x = alpha * np.asarray(r, dtype=float) ** 1.5
        return x ** (-1.0 / 6.0) * wm(x)

    # x ~ 2k at the bulk of the state
    centre = (2.0 * k / alpha) ** (2.0 / 3.0)
    scale = max(centre, alpha ** (-2.0 / 3.0))
    lam = _conf_lambda(nu0, L_a, lambda_a_prime, m, hbar)
    params = (("lambda_a", lam), ("lambda_a_prime", lambda_a_prime), ("m", m), ("hbar", hbar),
              ("alpha", alpha))
    probe = Eigenfunction("confinement", nu0, L_a, 0.0, raw, params, -0.5, "radial", scale, centre)
    norm = 1.0 / math.sqrt(probe.norm())
    params = params + (("normalization", norm),)
    ell = None if L is not None else int(ell_a)
    return Eigenfunction("confinement", nu0, L_a, 0.0, lambda r: norm * raw(r), params, -0.5,
                         "radial", scale, centre, ell, None if L is not None else int(D))


def confinement_green(r, r_prime, L_a, lambda_a, lambda_a_prime=1.0, m=1.0, hbar=1.0):
    """Zero-energy Green function of the confinement problem as a function of lambda_a."""
    alpha = _conf_alpha(lambda_a_prime, m, hbar)
    k = confinement_k(lambda_a, lambda_a_prime, m, hbar)
    mu = (2.0 / 3.0) * L_a
    arg = mu - k + 0.5
    _pole_guard(arg, "confinement_green")
    lo, hi = min(r, r_prime), max(r, r_prime)
    pref = -(4.0 * m / (3.0 * hbar * hbar * alpha)) * (r * r_prime) ** -0.25
    pref *= _gamma_ratio(arg, 2.0 * mu + 1.0)
    return pref * _whittaker_pair(k, mu, alpha * lo**1.5, alpha * hi**1.5)


# ---------------------------------------------------------------------------
# Morse


def morse_potential(D1, D2, alpha):
    return lambda xi: D1 * np.exp(-2.0 * alpha * np.asarray(xi)) - 2.0 * D2 * np.exp(-alpha * np.asarray(xi))


def _morse_kc(D1, D2, alpha, m, hbar):
    return math.sqrt(2.0 * m * D2 * D2 / (hbar * hbar * alpha * alpha * D1))


def morse_spectrum(nu, D1, D2, alpha=1.0, m=1.0, hbar=1.0):
    kc = _morse_kc(D1, D2, alpha, m, hbar)
    if nu < 0 or nu >= kc - 0.5:
        raise NoSuchBoundState(f"nu={nu} is not below k_c - 1/2 = {kc - 0.5:.12g}")
    return -(hbar * hbar * alpha * alpha / (2.0 * m)) * (kc - (nu + 0.5)) ** 2


def morse_state(nu, D1, D2, alpha=1.0, m=1.0, hbar=1.0):
    """psi_c(xi) proportional to exp(alpha xi/2) M_{k_c, L_c}(gamma exp(-alpha xi))."""
    nu = int(nu)
    E = morse_spectrum(nu, D1, D2, alpha, m, hbar)
    kc = _morse_kc(D1, D2, alpha, m, hbar)
    Lc = kc - nu - 0.5
    gamma = math.sqrt(8.0 * m * D1) / (hbar * alpha)
    # int e^-x x^(2L-1) (L_nu^2L)^2 dx = Gamma(nu+2L+1)/(nu! 2L)
    norm = math.sqrt(alpha * 2.0 * Lc / gamma) * _sqrt_gamma_ratio(nu, 2.0 * Lc)

    def psi(xi):
        x = gamma * np.exp(-alpha * xi)
        return norm * np.exp(0.5 * alpha * xi) * np.exp(-0.5 * x) * x ** (Lc + 0.5) * laguerre(nu, 2.0 * Lc, x)

    centre = math.log(gamma / (2.0 * kc)) / alpha
    params = (("D1", D1), ("D2", D2), ("alpha", alpha), ("m", m), ("hbar", hbar), ("gamma", gamma),
              ("k_c", kc))
    return Eigenfunction("morse", nu, Lc, E, psi, params, None, "line", 1.0 / alpha, centre)


# ---------------------------------------------------------------------------
# triality: all three problems reduce to one Whittaker equation


@dataclass(frozen=True)
class WhittakerChart:
    """How a state sits on the shared Whittaker equation.

    psi(q) * amplitude(q) is proportional to M_{k,mu}(to_x(q)); from_x inverts
    to_x.
    """

    system: str
    k: float
    mu: float
    to_x: callable = field(repr=False)
    from_x: callable = field(repr=False)
    amplitude: callable = field(repr=False)


def whittaker_chart(state):
    p = dict(state.params)
    if state.system == "coulomb":
        kap = p["kappa"]
        return WhittakerChart("coulomb", state.nu + state.L + 0.5, state.L,
                              lambda r: 2.0 * kap * r, lambda x: x / (2.0 * kap), lambda r: np.ones_like(r))
    if state.system == "hooke":
        s = p["m"] * p["omega"] / p["hbar"]
        mu = 0.5 * state.L
        return WhittakerChart("hooke", state.nu + mu + 0.5, mu,
                              lambda q: s * q * q, lambda x: np.sqrt(x / s), lambda q: np.sqrt(q))
    if state.system == "morse":
        g, a = p["gamma"], p["alpha"]
        return WhittakerChart("morse", p["k_c"], state.L,
                              lambda xi: g * np.exp(-a * xi), lambda x: np.log(g / x) / a,
                              lambda xi: np.exp(-0.5 * a * xi))
    raise MapIncompatible(f"no Whittaker chart for system {state.system!r}")


@dataclass(frozen=True)
class TrialityMap:
    """Substitution record between two charts sharing (k, mu)."""

    source: WhittakerChart
    target: WhittakerChart

    @property
    def k(self):
        return self.source.k

    @property
    def mu(self):
        return self.source.mu

    def coordinate(self, q_target):
        """Source coordinate matching a target coordinate."""
        return self.source.from_x(self.target.to_x(np.asarray(q_target, dtype=float)))

    def transport(self, psi_source):
        """Target-side function proportional to the target eigenfunction."""

        def psi_t(q):
            q = np.asarray(q, dtype=float)
            qs = self.coordinate(q)
            return self.source.amplitude(qs) * psi_source(qs) / self.target.amplitude(q)

        return psi_t

    def inverse(self):
        return TrialityMap(self.target, self.source)

    def then(self, other):
        if other.source.system != self.target.system:
            raise MapIncompatible("maps do not chain")
        return TrialityMap(self.source, other.target)


def triality_map(source, target):
    """Map between two states' charts; requires equal Whittaker indices."""
    cs = source if isinstance(source, WhittakerChart) else whittaker_chart(source)
    ct = target if isinstance(target, WhittakerChart) else whittaker_chart(target)
    if cs.system == ct.system:
        raise MapIncompatible("source and target must be different systems")
    if abs(cs.k - ct.k) > 1e-12 * max(1.0, abs(cs.k)) or abs(cs.mu - ct.mu) > 1e-12 * max(1.0, abs(cs.mu)):
        raise MapIncompatible(f"index mismatch: (k, mu) = ({cs.k}, {cs.mu}) vs ({ct.k}, {ct.mu})")
    return TrialityMap(cs, ct)


def triality_energy(system, k, mu, **p):
    """Energy of the state with Whittaker indices (k, mu); nu = k - mu - 1/2."""
    nu = k - mu - 0.5
    if nu < -1e-12 or abs(nu - round(nu)) > 1e-9:
        raise NoSuchBoundState(f"k - mu - 1/2 = {nu:.12g} is not a nonnegative integer")
    m, hbar = p.get("m", 1.0), p.get("hbar", 1.0)
    if system == "coulomb":
        e2 = p.get("e2", 1.0)
        return -m * e2 * e2 / (2.0 * hbar * hbar * k * k)
    if system == "hooke":
        return 2.0 * hbar * p.get("omega", 1.0) * k
    if system == "morse":
        a = p.get("alpha", 1.0)
        return -(hbar * hbar * a * a / (2.0 * m)) * mu * mu
    raise MapIncompatible(f"unknown system {system!r}")
