"""Real special functions: log-gamma, beta, Kummer M, Whittaker M and W, Laguerre.

All routines work on Python floats. They are small and dependency free so that
the quantum module can be checked against an outside reference (mpmath in the
test-suite) without sharing any code with it.
"""

import math
from dataclasses import dataclass

from .errors import DomainError, PoleInBeta

__all__ = [
    "lgamma",
    "lgamma_sign",
    "gamma",
    "rgamma",
    "beta_fn",
    "kummer_m",
    "whittaker_m",
    "whittaker_w",
    "laguerre",
    "whittaker_w_prime",
    "whittaker_m_prime",
    "whittaker_wronskian",
    "WhittakerParams",
]

# Lanczos approximation, g = 7, nine coefficients.
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_LOG_PI = math.log(math.pi)

KUMMER_SWITCH = 50.0


def _is_nonpositive_integer(x):
    return x <= 0.0 and x == math.floor(x)


def _sinpi(x):
    """sin(pi x) with exact zeros at the integers."""
    r = x - 2.0 * round(0.5 * x)  # exact, lands in [-1, 1]
    sign = 1.0
    if r < 0.0:
        r, sign = -r, -1.0
    if r > 0.5:
        r = 1.0 - r
    return sign * math.sin(math.pi * r)


def lgamma_sign(x):
    """Return ``(log|Gamma(x)|, sign Gamma(x))``.

    Raises DomainError at the poles x = 0, -1, -2, ...
    """
    x = float(x)
    if _is_nonpositive_integer(x):
        raise DomainError(f"gamma has a pole at x={x:g}")
    if x < 0.5:
        s = _sinpi(x)
        lg, sg = lgamma_sign(1.0 - x)
        return _LOG_PI - math.log(abs(s)) - lg, (1 if s > 0 else -1) * sg
    x -= 1.0
    acc = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        acc += _LANCZOS[i] / (x + i)
    t = x + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (x + 0.5) * math.log(t) - t + math.log(acc), 1


def lgamma(x):
    return lgamma_sign(x)[0]


def gamma(x):
    lg, sg = lgamma_sign(x)
    return sg * math.exp(lg)


def rgamma(x):
    """1/Gamma(x), an entire function (zero at the poles of Gamma)."""
    if _is_nonpositive_integer(float(x)):
        return 0.0
    lg, sg = lgamma_sign(x)
    return sg * math.exp(-lg)


def beta_fn(p, q):
    """Euler beta function B(p, q) for p, q > 0."""
    if not (p > 0.0 and q > 0.0):
        raise DomainError(f"beta_fn needs positive arguments, got ({p}, {q})")
    return math.exp(lgamma(p) + lgamma(q) - lgamma(p + q))


# ---------------------------------------------------------------------------
# Kummer M


def _kummer_series(a, b, x, max_terms=100000):
    """Power series with Kahan compensation. Returns the plain sum."""
    total = 1.0
    comp = 0.0
    term = 1.0
    n = 0
    small_run = 0
    while n < max_terms:
        term *= (a + n) / (b + n) * x / (n + 1)
        n += 1
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        if term == 0.0:
            break
        ratio = abs((a + n) * x / ((b + n) * (n + 1)))
        if abs(term) <= 1e-17 * abs(total) and ratio < 0.5:
            small_run += 1
            if small_run >= 2:
                break
        else:
            small_run = 0
    return total


def _asymptotic_sum(p, q, z, max_terms=400):
    """sum_s (p)_s (q)_s / (s! z^s), truncated at the smallest term.

    Returns ``(sum, last_term, converged)``.
    """
    total = 1.0
    term = 1.0
    prev = math.inf
    for s in range(max_terms):
        term *= (p + s) * (q + s) / ((s + 1) * z)
        if term == 0.0:
            return total, 0.0, True
        if abs(term) > prev:
            return total, prev, False
        total += term
        prev = abs(term)
        if prev <= 1e-17 * abs(total):
            return total, prev, True
    return total, prev, False


def _kummer_scaled(a, b, x, method="auto"):
    """Kummer M as ``(mantissa, log_scale)`` with M = mantissa * exp(log_scale)."""
    if _is_nonpositive_integer(b):
        raise PoleInBeta(f"Kummer M undefined for beta={b:g}")
    if x < 0.0:
        raise DomainError("kummer_m is implemented for x >= 0 only")
    if x == 0.0:
        return 1.0, 0.0
    if _is_nonpositive_integer(a):
        return _kummer_series(a, b, x), 0.0
    auto = method == "auto"
    if auto:
        # Close to a pole of 1/Gamma(a) the two asymptotic pieces are of
        # comparable size; the power series stays accurate there.
        near_pole = a < 0.5 and abs(a - round(a)) < 1e-3
        method = "series" if (x <= KUMMER_SWITCH or (near_pole and x < 600.0)) else "asymptotic"
    if method == "series":
        return _kummer_series(a, b, x), 0.0
    if method != "asymptotic":
        raise ValueError(f"unknown method {method!r}")
    lga, sga = lgamma_sign(a)
    lgb, sgb = lgamma_sign(b)
    dominant, _, converged = _asymptotic_sum(b - a, 1.0 - a, x)
    if not converged and auto and x < 600.0:
        return _kummer_series(a, b, x), 0.0
    scale = lgb - lga + x + (a - b) * math.log(x)
    mant = sga * sgb * dominant
    # recessive algebraic piece, real part on the positive axis
    if not _is_nonpositive_integer(b - a):
        lgba, sgba = lgamma_sign(b - a)
        rec, _, _ = _asymptotic_sum(a, a - b + 1.0, -x)
        log_rec = lgb - lgba - a * math.log(x)
        mant += sgb * sgba * math.cos(math.pi * a) * rec * math.exp(log_rec - scale)
    return mant, scale


def kummer_m(alpha, beta, x, method="auto"):
    """Confluent hypergeometric function M(alpha, beta, x) = 1F1(alpha; beta; x).

    ``method`` is ``"auto"`` (series up to x = 50, asymptotic beyond),
    ``"series"`` or ``"asymptotic"``.
    """
    mant, scale = _kummer_scaled(float(alpha), float(beta), float(x), method)
    if mant == 0.0:
        return 0.0
    return mant * math.exp(scale)


# ---------------------------------------------------------------------------
# Whittaker functions


@dataclass(frozen=True)
class WhittakerParams:
    """Index pair (k, L) and argument x of the Whittaker equation.

    w'' + (-1/4 + k/x + (1/4 - L^2)/x^2) w = 0
    """

    k: float
    L: float
    x: float

    def __post_init__(self):
        if not self.L > -0.5:
            raise DomainError(f"Whittaker index L must exceed -1/2, got {self.L}")
        if not self.x > 0.0:
            raise DomainError(f"Whittaker argument must be positive, got {self.x}")

    def m(self):
        return whittaker_m(self.k, self.L, self.x)

    def w(self):
        return whittaker_w(self.k, self.L, self.x)


def whittaker_m(k, L, x, method="auto"):
    """M_{k,L}(x) = exp(-x/2) x^(L+1/2) M(L-k+1/2, 2L+1, x)."""
    k, L, x = float(k), float(L), float(x)
    WhittakerParams(k, L, x)
    mant, scale = _kummer_scaled(math.fsum((L, -k, 0.5)), 2.0 * L + 1.0, x, method)
    if mant == 0.0:
        return 0.0
    return mant * math.exp(scale - 0.5 * x + (L + 0.5) * math.log(x))


def _w_asymptotic(k, mu, x, terminating=False):
    """Scaled W, y = W exp(x/2) x^-k, and dy/dx from the large-x series.

    Returns ``(y, dy, ok)``; ``ok`` is False when the series has not reached
    full precision at this x. A ``terminating`` series is a polynomial in 1/x
    and is summed to its last term whatever the term sizes do.
    """
    p, q = math.fsum((0.5, mu, -k)), math.fsum((0.5, -mu, -k))
    y = 1.0
    dy = 0.0
    coef = 1.0
    prev = math.inf
    for n in range(1, 500):
        coef *= -(p + n - 1) * (q + n - 1) / n
        if coef == 0.0:
            return y, dy, True
        term = coef * x ** (-n)
        if abs(term) > prev and not terminating:
            return y, dy, False
        y += term
        dy -= n * coef * x ** (-n - 1)
        prev = abs(term)
        if prev <= 1e-17 * abs(y) and not terminating:
            return y, dy, True
    return y, dy, False


def _w_taylor_step(k, c, x0, y0, dy0, h):
    """Advance the scaled W from x0 to x0 + h with a Taylor series.

    The scaled function solves x^2 y'' + (2kx - x^2) y' + c y = 0.
    """
    x02 = x0 * x0
    a_prev, a0, a1 = 0.0, y0, dy0
    y = y0 + dy0 * h
    dy = dy0
    hn = h  # h^(n+1) for the coefficient a_{n+1}
    quiet = 0
    for n in range(0, 400):
        a2 = -(
            (n + 1) * a1 * (2.0 * x0 * n + 2.0 * k * x0 - x02)
            + a0 * (n * (n - 1) + n * (2.0 * k - 2.0 * x0) + c)
            - (n - 1) * a_prev
        ) / (x02 * (n + 2) * (n + 1))
        dy += (n + 2) * a2 * hn
        hn *= h
        term = a2 * hn
        y += term
        if abs(term) <= 1e-18 * abs(y) and abs((n + 2) * a2 * hn / h) <= 1e-18 * max(abs(dy), 1e-300):
            quiet += 1
            if quiet >= 3:
                break
        else:
            quiet = 0
        a_prev, a0, a1 = a0, a1, a2
    return y, dy


def _w_scaled(k, mu, x):
    """Scaled W and its derivative at x."""
    p, q = math.fsum((0.5, mu, -k)), math.fsum((0.5, -mu, -k))
    if _is_nonpositive_integer(p) or _is_nonpositive_integer(q):
        y, dy, _ = _w_asymptotic(k, mu, x, terminating=True)
        return y, dy
    x0 = max(x, 20.0)
    while True:
        y, dy, ok = _w_asymptotic(k, mu, x0)
        if ok:
            break
        x0 *= 1.5
        if x0 > 1e6:
            raise DomainError(f"W_{{{k},{mu}}} asymptotic series failed to converge")
    c = k * k - k + 0.25 - mu * mu
    xc = x0
    while xc > x:
        h = -min(2.0, 0.5 * xc, xc - x)
        y, dy = _w_taylor_step(k, c, xc, y, dy, h)
        xc += h
        if xc - x < 1e-15 * x:
            break
    return y, dy


def whittaker_w(k, L, x):
    """W_{k,L}(x), the solution decaying like exp(-x/2) x^k at large x.

    Evaluated by the large-x asymptotic series at a point where it is fully
    converged, then carried inward by Taylor steps of the scaled equation.
    Backward integration damps the growing (M-type) component, so the result
    is accurate for every real index, including integer 2L.
    """
    k, L, x = float(k), float(L), float(x)
    if not x > 0.0:
        raise DomainError(f"Whittaker argument must be positive, got {x}")
    y, _ = _w_scaled(k, abs(L), x)
    return y * math.exp(-0.5 * x + k * math.log(x))


def whittaker_w_prime(k, L, x):
    """dW_{k,L}/dx."""
    k, L, x = float(k), float(L), float(x)
    if not x > 0.0:
        raise DomainError(f"Whittaker argument must be positive, got {x}")
    y, dy = _w_scaled(k, abs(L), x)
    pref = math.exp(-0.5 * x + k * math.log(x))
    return pref * (dy + y * (k / x - 0.5))


def whittaker_m_prime(k, L, x):
    """dM_{k,L}/dx via the Kummer derivative M' = (a/b) M(a+1, b+1)."""
    k, L, x = float(k), float(L), float(x)
    WhittakerParams(k, L, x)
    a, b = math.fsum((L, -k, 0.5)), 2.0 * L + 1.0
    m0, s0 = _kummer_scaled(a, b, x)
    m1, s1 = _kummer_scaled(a + 1.0, b + 1.0, x)
    base = -0.5 * x + (L + 0.5) * math.log(x)
    val = m0 * math.exp(s0 + base) * ((L + 0.5) / x - 0.5)
    if a != 0.0 and m1 != 0.0:
        val += (a / b) * m1 * math.exp(s1 + base)
    return val


def whittaker_wronskian(k, L, x):
    """W' M - W M' at x; equals -Gamma(2L+1)/Gamma(L-k+1/2) for every x."""
    return whittaker_w_prime(k, L, x) * whittaker_m(k, L, x) - whittaker_w(k, L, x) * whittaker_m_prime(k, L, x)


def laguerre(nu, alpha, x):
    """Generalized Laguerre polynomial L_nu^alpha(x) by upward recurrence."""
    nu = int(nu)
    if nu < 0:
        raise DomainError("Laguerre degree must be nonnegative")
    l0 = 1.0
    if nu == 0:
        return l0
    l1 = 1.0 + alpha - x
    for n in range(1, nu):
        l0, l1 = l1, ((2 * n + 1 + alpha - x) * l1 - (n + alpha) * l0) / (n + 1)
    return l1
