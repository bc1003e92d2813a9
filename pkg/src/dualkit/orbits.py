"""Kepler conics and their images under the (-1, 2) map.

The map sends the complex position z = x + iy of a Kepler orbit to
w = u + iv with z = C2 w^2. Conics are centred so that the force centre sits
at the origin. With parametric angle psi,

    ellipse    x = abar (e + cos psi),   y = abar sqrt(1 - e^2) sin psi
    hyperbola  x = abar (e - cosh psi),  y = abar sqrt(e^2 - 1) sinh psi

and the images are u = alpha cos(psi/2), v = beta sin(psi/2) (resp. cosh/sinh),
so r = C2 rho^2 holds pointwise.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import WrongConicKind

__all__ = [
    "ConicKind",
    "ConicOrbit",
    "HookeOrbit",
    "kepler_ellipse_to_hooke",
    "kepler_hyperbola_to_hooke",
    "kepler_to_hooke",
    "parameter_grid",
    "sample_orbit",
]

# below this distance from e = 1 an ellipse image is reported as rectilinear
PARABOLIC_TOL = 1e-12


class ConicKind(str, enum.Enum):
    ELLIPSE = "ellipse"
    HYPERBOLA = "hyperbola"
    PARABOLA = "parabola"
    RECTILINEAR = "rectilinear"


@dataclass(frozen=True)
class ConicOrbit:
    """Kepler orbit by geometry: semi-major axis, eccentricity, coupling sign."""

    semi_major: float
    eccentricity: float
    attractive: bool = True

    def __post_init__(self):
        if not self.semi_major > 0.0:
            raise ValueError("semi_major must be positive")
        if not self.eccentricity >= 0.0:
            raise ValueError("eccentricity must be nonnegative")
        if not self.attractive and self.eccentricity <= 1.0:
            raise WrongConicKind("a repulsive orbit must be a hyperbola (e > 1)")

    @classmethod
    def from_dynamics(cls, lam, L, E, m=1.0):
        """Orbit of V = lam/r with angular momentum L and energy E != 0."""
        if lam == 0.0 or E == 0.0:
            raise WrongConicKind("need nonzero coupling and energy (parabolic and free orbits have no semi-major axis)")
        if lam > 0.0 and E < 0.0:
            raise WrongConicKind("no motion: repulsive coupling with negative energy")
        # E = lam/(2 abar) on the ellipse, |lam|/(2 abar) on either hyperbola branch
        abar = abs(lam) / (2.0 * abs(E))
        e2 = 1.0 + 2.0 * L * L * E / (m * lam * lam)
        return cls(abar, math.sqrt(max(e2, 0.0)), lam < 0.0)

    @property
    def kind(self):
        if self.eccentricity < 1.0:
            return ConicKind.ELLIPSE
        if self.eccentricity > 1.0:
            return ConicKind.HYPERBOLA
        return ConicKind.PARABOLA

    @property
    def semi_latus(self):
        e = self.eccentricity
        return self.semi_major * abs(1.0 - e * e)

    @property
    def r_min(self):
        e = self.eccentricity
        return self.semi_major * (abs(1.0 - e) if self.attractive else (1.0 + e))

    def radius(self, psi):
        psi = np.asarray(psi, dtype=float)
        a, e = self.semi_major, self.eccentricity
        if self.kind is ConicKind.ELLIPSE:
            return a * (1.0 + e * np.cos(psi))
        if self.attractive:
            return a * (e * np.cosh(psi) - 1.0)
        return a * (e * np.cosh(psi) + 1.0)

    def points(self, psi):
        psi = np.asarray(psi, dtype=float)
        a, e = self.semi_major, self.eccentricity
        if self.kind is ConicKind.ELLIPSE:
            x = a * (e + np.cos(psi))
            y = a * math.sqrt(1.0 - e * e) * np.sin(psi)
        elif self.kind is ConicKind.HYPERBOLA:
            sgn = 1.0 if self.attractive else -1.0
            x = a * (e - sgn * np.cosh(psi)) * sgn
            y = a * math.sqrt(e * e - 1.0) * np.sinh(psi)
        else:
            raise WrongConicKind("parabolic orbits have no finite semi-major parametrisation")
        return np.stack([x, y], axis=-1)

    def residual(self, pts):
        """Relative residual of the focal equation r -+ e x = +-p at Cartesian points."""
        pts = np.asarray(pts, dtype=float)
        r = np.hypot(pts[..., 0], pts[..., 1])
        e, p = self.eccentricity, self.semi_latus
        x = pts[..., 0]
        if self.kind is ConicKind.ELLIPSE:
            return np.abs(r - e * x - p) / p
        if self.attractive:
            return np.abs(r + e * x - p) / p
        return np.abs(r + e * x + p) / p


@dataclass(frozen=True)
class HookeOrbit:
    """Centred Hooke conic u^2/alpha^2 +- v^2/beta^2 = 1, or a rectilinear path."""

    alpha: float
    beta: float
    kind: ConicKind
    direction: tuple = (0.0, 1.0)
    # set by the Kepler maps, which know eps without the cancellation in 1 - (beta/alpha)^2
    exact_eccentricity: float = None

    @property
    def eccentricity(self):
        if self.exact_eccentricity is not None:
            return self.exact_eccentricity
        if self.kind is ConicKind.ELLIPSE:
            return math.sqrt(max(0.0, 1.0 - (self.beta / self.alpha) ** 2))
        if self.kind is ConicKind.HYPERBOLA:
            return math.sqrt(1.0 + (self.beta / self.alpha) ** 2)
        return math.inf

    def points(self, psi):
        psi = np.asarray(psi, dtype=float)
        if self.kind is ConicKind.ELLIPSE:
            return np.stack([self.alpha * np.cos(psi / 2.0), self.beta * np.sin(psi / 2.0)], axis=-1)
        if self.kind is ConicKind.HYPERBOLA:
            return np.stack([self.alpha * np.cosh(psi / 2.0), self.beta * np.sinh(psi / 2.0)], axis=-1)
        # no scale is defined for the rectilinear image; psi is the line parameter
        dx, dy = self.direction
        return np.stack([psi * dx, psi * dy], axis=-1)

    def residual(self, pts):
        pts = np.asarray(pts, dtype=float)
        u, v = pts[..., 0], pts[..., 1]
        if self.kind is ConicKind.ELLIPSE:
            return np.abs((u / self.alpha) ** 2 + (v / self.beta) ** 2 - 1.0)
        if self.kind is ConicKind.HYPERBOLA:
            return np.abs((u / self.alpha) ** 2 - (v / self.beta) ** 2 - 1.0)
        dx, dy = self.direction
        return np.abs(u * dy - v * dx)


def _check_c2(C2):
    if not C2 > 0.0:
        raise ValueError("C2 must be positive")


def kepler_ellipse_to_hooke(orbit, C2=1.0):
    _check_c2(C2)
    e = orbit.eccentricity
    if e >= 1.0:
        raise WrongConicKind(f"expected an ellipse, got e={e}")
    a = orbit.semi_major
    if 1.0 - e <= PARABOLIC_TOL:
        return HookeOrbit(math.sqrt(a * (1.0 + e) / C2), 0.0, ConicKind.RECTILINEAR)
    return HookeOrbit(math.sqrt(a * (1.0 + e) / C2), math.sqrt(a * (1.0 - e) / C2), ConicKind.ELLIPSE,
                      exact_eccentricity=math.sqrt(2.0 * e / (1.0 + e)))


def kepler_hyperbola_to_hooke(orbit, C2=1.0):
    """Image of a hyperbolic orbit.

    The repulsive branch shares the axes of the attractive one; its points map
    onto the image once the origin is moved to the other focus (x -> x + 2 abar e).
    """
    _check_c2(C2)
    e = orbit.eccentricity
    if e <= 1.0:
        raise WrongConicKind(f"expected a hyperbola, got e={e}")
    a = orbit.semi_major
    return HookeOrbit(math.sqrt(a * (e - 1.0) / C2), math.sqrt(a * (e + 1.0) / C2), ConicKind.HYPERBOLA,
                      exact_eccentricity=math.sqrt(2.0 * e / (e - 1.0)))


def kepler_to_hooke(orbit, C2=1.0):
    e = orbit.eccentricity
    if e < 1.0:
        return kepler_ellipse_to_hooke(orbit, C2)
    if e > 1.0:
        return kepler_hyperbola_to_hooke(orbit, C2)
    _check_c2(C2)
    return HookeOrbit(0.0, 0.0, ConicKind.RECTILINEAR)


def _is_open(orbit):
    return orbit.kind in (ConicKind.HYPERBOLA, ConicKind.RECTILINEAR)


def _psi_max(orbit):
    if isinstance(orbit, ConicOrbit):
        e = orbit.eccentricity
    elif orbit.kind is ConicKind.HYPERBOLA:
        # same window as the source: invert eps^2 = 2e/(e-1)
        eps2 = orbit.eccentricity ** 2
        e = eps2 / (eps2 - 2.0)
    else:
        return 1.0
    return math.acosh(max(10.0 / e, 2.0))


def parameter_grid(orbit, n, theta0=0.0):
    """Parametric angles used by sample_orbit."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if _is_open(orbit):
        top = _psi_max(orbit)
        return np.linspace(-top, top, n) + theta0
    return np.linspace(0.0, 2.0 * math.pi, n, endpoint=False) + theta0


def sample_orbit(orbit, n, theta0=0.0):
    """n points, uniform in the parametric angle, as an (n, 2) array.

    ``theta0`` shifts the parametric phase; every point stays on the orbit.
    """
    return orbit.points(parameter_grid(orbit, n, theta0))
