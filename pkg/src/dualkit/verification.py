"""The cross-check suite behind ``dualkit verify`` and the acceptance tests.

A check is a list of parts, each a (label, residual, tolerance) triple. The
check passes when every part does; ``score`` is the worst residual/tolerance
ratio. A tolerance override rescales all parts of a check by the same factor.
"""

import math
import time
from dataclasses import dataclass

import numpy as np

from . import duality, orbits, quantum, semiclassical, susy
from .duality import DualityMap, PowerPotential
from .errors import OnSpectrum
from .oracle import LineGrid, numerov_eigen, numerov_eigen_1d
from .specfun import lgamma_sign, whittaker_wronskian

__all__ = ["CheckResult", "CHECKS", "DEFAULT_TOL", "run_checks", "parse_tol_override"]


@dataclass(frozen=True)
class Part:
    label: str
    residual: float
    tolerance: float

    @property
    def passed(self):
        return self.residual <= self.tolerance


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    score: float
    parts: tuple
    seconds: float
    error: str = ""

    @property
    def detail(self):
        if self.error:
            return self.error
        return "; ".join(f"{p.label} {p.residual:.3g} (tol {p.tolerance:.0e})" for p in self.parts)


# headline tolerance of each check, i.e. that of its first part
DEFAULT_TOL = {
    "duality_algebra": 1e-12,
    "action_invariance": 1e-8,
    "wkb_fractional": 1e-8,
    "energy_transfer": 1e-12,
    "oracle_agreement": 1e-5,
    "wavefunction_duality": 1e-10,
    "green_duality": 1e-8,
    "confinement": 1e-4,
    "susy_cbc": 1e-9,
    "orbit_map": 1e-6,
}


def _rel(x, ref):
    return abs(x - ref) / max(abs(ref), 1e-300)


def check_duality_algebra(fast=False):
    rng = np.random.default_rng(20240601)
    worst_round = worst_hyp = 0.0
    count = 0
    while count < 1000:
        a = float(rng.uniform(-10.0, 10.0))
        if abs(a + 2.0) < 1e-6:
            continue
        b, _ = duality.partner_exponent(a)
        a2, _ = duality.partner_exponent(b)
        worst_round = max(worst_round, abs(a2 - a))
        worst_hyp = max(worst_hyp, abs((a + 2.0) * (b + 2.0) - 4.0))
        count += 1
    return [Part("partner round trip", worst_round, 1e-12), Part("(a+2)(b+2)=4", worst_hyp, 1e-12)]


def check_action_invariance(fast=False):
    m = hbar = 1.0
    lam_a, L_a, E_a = -1.0, 0.5, -0.5
    kappa = math.sqrt(-2.0 * m * E_a) / hbar
    omega = 1.0
    C = duality.C_for_hooke(kappa, omega, m, hbar)
    dmap = DualityMap.from_exponent(-1.0, C)
    E_b, lam_b = dmap.exchange(E_a, lam_a)
    # lambda_b must come out as m omega^2 / 2
    consistency = _rel(lam_b, 0.5 * m * omega * omega)
    sys_a = semiclassical.RadialSystem(m, L_a, 3, PowerPotential.single(lam_a, -1.0))
    sys_b = semiclassical.RadialSystem(m, dmap.angular(L_a), 3, PowerPotential.single(lam_b, 2.0))
    J_a = semiclassical.action_J(sys_a, E_a)
    J_b = semiclassical.action_J(sys_b, E_b)
    return [Part("|J_a-J_b|/J_a", _rel(J_b, J_a), 1e-8), Part("lambda_b = m omega^2/2", consistency, 1e-12)]


def check_wkb_fractional(fast=False):
    a, lam, m, hbar = -0.5, -1.0, 1.0, 1.0
    sys_a = semiclassical.RadialSystem(m, 0.0, 3, PowerPotential.single(lam, a))
    spec = semiclassical.wkb_spectrum(sys_a, 4)
    worst_wkb = max(_rel(e.energy, semiclassical.closed_form_zero_L(a, lam, m, e.n_r, hbar)) for e in spec)
    # transfer onto lambda_b rho^(2/3) and compare with the direct closed form
    lam_b = 1.0
    formula = semiclassical.zero_L_formula(a, m, hbar)
    worst_dual = 0.0
    for n in range(5):
        N = n + 0.5
        E_b = semiclassical.dual_energy(formula, lam_b, 0.0, N, 4.0 / 3.0)
        direct = 2.0 * lam_b * (8.0 * hbar * hbar / (9.0 * m * lam_b)) ** 0.25 * N**0.5
        worst_dual = max(worst_dual, _rel(E_b, direct))
    return [Part("wkb vs closed form", worst_wkb, 1e-8), Part("dual transfer", worst_dual, 1e-9)]


def check_energy_transfer(fast=False):
    formula = semiclassical.oscillator_formula()
    worst = 0.0
    for n_r in range(4):
        for ell in range(4):
            N, L_b = n_r + 0.5, ell + 0.5
            E = semiclassical.dual_energy(formula, -1.0, L_b, N, 0.5)
            worst = max(worst, _rel(E, -0.5 / (n_r + ell + 1) ** 2))
    return [Part("transferred vs Coulomb", worst, 1e-12)]


def check_oracle_agreement(fast=False):
    check_grid = not fast
    worst = 0.0
    coul = lambda r: -1.0 / r
    hooke = lambda r: 0.5 * r * r
    for ell in (0, 1):
        L = ell + 0.5
        for n_r in range(3):
            e = numerov_eigen(coul, L, node_target=n_r, check_grid=check_grid)
            worst = max(worst, _rel(e, -0.5 / (n_r + ell + 1) ** 2))
            e = numerov_eigen(hooke, L, node_target=n_r, check_grid=check_grid)
            worst = max(worst, _rel(e, 2 * n_r + ell + 1.5))
    morse = quantum.morse_potential(8.0, 8.0, 1.0)
    worst_m = 0.0
    for nu in range(3):
        e = numerov_eigen_1d(morse, node_target=nu, grid=LineGrid(), check_grid=check_grid)
        worst_m = max(worst_m, _rel(e, -0.5 * (4.0 - nu - 0.5) ** 2))
    return [Part("coulomb/hooke", worst, 1e-5), Part("morse", worst_m, 1e-4)]


def check_wavefunction_duality(fast=False):
    cs = quantum.coulomb_eigenfunction(0, 0)
    omega = 1.0
    C = duality.C_for_hooke(cs.param("kappa"), omega)
    mapped = quantum.map_wavefunction(cs, DualityMap.from_exponent(-1.0, C))
    direct = quantum.hooke_state(0, 2.0 * cs.L, omega)
    rho = np.linspace(0.1, 3.0, 200)
    ratio = mapped(rho) / direct(rho)
    return [Part("ratio spread", float(np.std(ratio) / abs(np.mean(ratio))), 1e-10)]


def check_green_duality(fast=False):
    rng = np.random.default_rng(7)
    L_b, omega = 1.0, 1.0
    worst = 0.0
    done = 0
    while done < 10:
        E_b = float(rng.uniform(0.3, 8.0))
        k = E_b / (2.0 * omega)
        if abs((k - 0.5 * L_b - 0.5) - round(k - 0.5 * L_b - 0.5)) < 1e-3:
            continue
        rho, rhop = rng.uniform(0.2, 3.0, size=2)
        direct = quantum.hooke_green(rho, rhop, E_b, L_b, omega)
        routed = quantum.coulomb_to_hooke_green(E_b, L_b, omega)(rho, rhop)
        worst = max(worst, _rel(routed, direct))
        done += 1
    wr = 0.0
    for k, L, x in ((0.3, 0.7, 0.5), (0.3, 0.7, 3.0), (1.2, 0.5, 1.7), (-0.4, 1.5, 7.0)):
        lg, sg = lgamma_sign(2.0 * L + 1.0)
        lh, sh = lgamma_sign(L - k + 0.5)
        ref = -sg * sh * math.exp(lg - lh)
        wr = max(wr, _rel(whittaker_wronskian(k, L, x), ref))
    return [Part("transformed vs direct", worst, 1e-8), Part("wronskian", wr, 1e-8)]


def check_confinement(fast=False):
    m, hbar, lam_p, ell, D = 0.5, 1.0, 1.0, 1, 3
    lam_a = quantum.confinement_couplings(0, ell, D, lam_p, m, hbar)
    coupling_err = abs(lam_a + 4.5)
    L = ell + 0.5
    V = lambda r: lam_a / np.sqrt(r) + lam_p * r
    E = numerov_eigen(V, L, m, hbar, node_target=0, check_grid=not fast)
    st = quantum.confinement_state(0, ell, D, lam_p, m, hbar)
    r = np.linspace(0.1, 10.0, 400)
    h = 1e-3
    d2 = (-st(r + 2 * h) + 16 * st(r + h) - 30 * st(r) + 16 * st(r - h) - st(r - 2 * h)) / (12 * h * h)
    kin = -hbar * hbar / (2 * m) * d2
    pot = (hbar * hbar * (L * L - 0.25) / (2 * m * r * r) + V(r)) * st(r)
    resid = float(np.max(np.abs(kin + pot)) / np.max(np.abs(kin)))
    k = quantum.confinement_k(lam_a, lam_p, m, hbar)
    pole_err = abs(k - (0 + (2.0 / 3.0) * L + 0.5))
    try:
        quantum.confinement_green(1.0, 2.0, L, lam_a, lam_p, m, hbar)
        pole_err = max(pole_err, 1.0)
    except OnSpectrum:
        pass
    return [
        Part("|E| numerov", abs(E), 1e-4),
        Part("ode residual", resid, 1e-6),
        Part("lambda_a = -4.5", coupling_err, 1e-12),
        Part("green pole", pole_err, 1e-12),
    ]


def check_susy_cbc(fast=False):
    omega = 1.0
    w_osc = w_h = worst = 0.0
    E_osc = susy.cbc_quantize(susy.Superpotential.oscillator(omega, 1.5), 5)
    for nu, e in enumerate(E_osc):
        w_osc = max(w_osc, abs(e - 2.0 * omega * nu) / max(1.0, 2.0 * nu))
    for mu in (1.5, 2.5):
        E_h = susy.cbc_quantize(susy.Superpotential.hydrogen(1.0, mu), 5)
        for nu, e in enumerate(E_h):
            ref = -0.5 / (nu + mu) ** 2 + 0.5 / mu**2
            w_h = max(w_h, abs(e - ref) / max(1.0, abs(ref)))
    for mu_b in (0.5, 1.5, 2.5):
        sp = susy.Superpotential.oscillator(omega, 2.0 * mu_b)
        for nu, E_a in enumerate(susy.cbc_quantize(sp, 5)):
            C = susy.merging_scale(sp, "i", E_a, -1.0)
            img = susy.susy_option_transform(sp, "i", E_a, C)
            worst = max(worst, _rel(img.E_b, -0.5 / (nu + mu_b) ** 2), _rel(img.mu_b, mu_b))
    return [Part("oscillator", w_osc, 1e-9), Part("hydrogen", w_h, 1e-9), Part("option i transfer", worst, 1e-9)]


def check_orbit_map(fast=False):
    img = orbits.kepler_to_hooke(orbits.ConicOrbit(2.0, 0.6), 1.0)
    res = max(
        abs(img.alpha - 1.788854), abs(img.beta - 0.894427), abs(img.eccentricity - 0.866025)
    )
    pts = orbits.sample_orbit(img, 500)
    ell = float(np.max(img.residual(pts)))
    return [Part("(alpha, beta, eps)", res, 1e-6), Part("ellipse equation", ell, 1e-10)]


CHECKS = {
    "duality_algebra": check_duality_algebra,
    "action_invariance": check_action_invariance,
    "wkb_fractional": check_wkb_fractional,
    "energy_transfer": check_energy_transfer,
    "oracle_agreement": check_oracle_agreement,
    "wavefunction_duality": check_wavefunction_duality,
    "green_duality": check_green_duality,
    "confinement": check_confinement,
    "susy_cbc": check_susy_cbc,
    "orbit_map": check_orbit_map,
}


def run_check(name, tol=None, fast=False):
    """Run one check; ``tol`` replaces its headline tolerance."""
    factor = 1.0 if tol is None else tol / DEFAULT_TOL[name]
    t0 = time.perf_counter()
    try:
        parts = CHECKS[name](fast)
    except Exception as exc:  # a crash is a failed check, reported with its message
        return CheckResult(name, False, math.inf, (), time.perf_counter() - t0, f"{type(exc).__name__}: {exc}")
    parts = tuple(Part(p.label, float(p.residual), p.tolerance * factor) for p in parts)
    score = max(p.residual / p.tolerance for p in parts)
    return CheckResult(name, all(p.passed for p in parts), score, parts, time.perf_counter() - t0)


def run_checks(names=None, overrides=None, fast=False):
    overrides = overrides or {}
    return [run_check(n, overrides.get(n), fast) for n in (names or CHECKS)]


def parse_tol_override(text):
    """DUALKIT_TOL syntax: a bare number for every check, or name=value pairs."""
    if not text:
        return {}
    text = text.strip()
    try:
        value = float(text)
    except ValueError:
        pass
    else:
        return {name: _positive(value) for name in CHECKS}
    out = {}
    for part in text.split(","):
        name, _, val = part.partition("=")
        name = name.strip()
        if name not in CHECKS:
            raise ValueError(f"unknown check {name!r} in DUALKIT_TOL")
        out[name] = _positive(float(val))
    return out


def _positive(tol):
    if not tol > 0.0:
        raise ValueError(f"DUALKIT_TOL values must be positive, got {tol}")
    return tol
