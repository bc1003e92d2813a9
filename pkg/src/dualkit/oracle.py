"""Independent verification machinery.

* ``quadrature``: adaptive 15-point Gauss-Kronrod with recursive bisection.
* ``numerov_eigen``: shooting eigenvalue solver for the reduced radial
  Schrodinger equation, and ``numerov_eigen_1d`` for problems on the line.

Nothing here imports the special-function or quantum modules; the oracle only
ever sees a potential evaluator.
"""

import heapq
import math
from dataclasses import dataclass

import numpy as np
from numba import njit
from scipy.optimize import brentq

from .errors import GridTooCoarse, MaxDepthExceeded, NoEigenvalueInBracket

__all__ = ["quadrature", "RadialGrid", "numerov_eigen", "numerov_eigen_1d", "LineGrid"]

# Kronrod nodes (positive half, descending) and weights; the Gauss 7-point rule
# uses every second node.
_XK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])
_NODES = np.concatenate([-_XK[:-1], _XK[::-1]])  # 15 nodes, ascending
_WK_FULL = np.concatenate([_WK[:-1], _WK[::-1]])
_WG_FULL = np.zeros(15)
_WG_FULL[1:7:2] = _WG[:3]
_WG_FULL[7] = _WG[3]
_WG_FULL[8:15][1::2] = _WG[:3][::-1]


def _gk15(f, a, b):
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    fx = np.asarray(f(c + h * _NODES), dtype=float)
    if fx.shape != (15,):
        fx = np.broadcast_to(fx, (15,))
    k = h * float(np.dot(_WK_FULL, fx))
    g = h * float(np.dot(_WG_FULL, fx))
    return k, abs(k - g)


def quadrature(f, a, b, tol=1e-10, abs_tol=1e-300, max_intervals=20000, max_depth=200):
    """Integrate ``f`` over [a, b] by adaptive Gauss-Kronrod (7, 15).

    ``f`` must accept a numpy array of abscissae. The interval with the largest
    error estimate is bisected until the summed estimate is below
    ``max(abs_tol, tol * |I|)``. Inverse square-root endpoint singularities are
    tolerated since the rule never samples the endpoints.
    """
    if a == b:
        return 0.0
    if b < a:
        return -quadrature(f, b, a, tol, abs_tol, max_intervals, max_depth)
    val, err = _gk15(f, a, b)
    heap = [(-err, a, b, val, 0)]
    total, total_err = val, err
    count = 1
    while total_err > max(abs_tol, tol * abs(total)):
        neg_err, lo, hi, v, depth = heapq.heappop(heap)
        if depth >= max_depth or count >= max_intervals:
            raise MaxDepthExceeded(
                f"quadrature did not reach tol={tol:g} (estimate {total_err:.3g}) on [{a:g}, {b:g}]"
            )
        mid = 0.5 * (lo + hi)
        v1, e1 = _gk15(f, lo, mid)
        v2, e2 = _gk15(f, mid, hi)
        total += v1 + v2 - v
        total_err += e1 + e2 + neg_err
        heapq.heappush(heap, (-e1, lo, mid, v1, depth + 1))
        heapq.heappush(heap, (-e2, mid, hi, v2, depth + 1))
        count += 1
    # re-sum to shed accumulated rounding from the running updates
    return math.fsum(item[3] for item in heap)


# ---------------------------------------------------------------------------
# Numerov shooting


@dataclass(frozen=True)
class RadialGrid:
    r_min: float = 1e-5
    r_max: float = 50.0
    n_points: int = 20000
    spacing: str = "log"

    def __post_init__(self):
        if not 0.0 < self.r_min < self.r_max:
            raise ValueError("need 0 < r_min < r_max")
        if self.n_points < 100:
            raise ValueError("need at least 100 grid points")
        if self.spacing not in ("log", "uniform"):
            raise ValueError("spacing is 'log' or 'uniform'")

    def halved(self):
        if self.n_points < 200:
            raise GridTooCoarse(f"{self.n_points} points cannot be halved for the convergence check")
        return RadialGrid(self.r_min, self.r_max, (self.n_points + 1) // 2, self.spacing)


@dataclass(frozen=True)
class LineGrid:
    x_min: float = -10.0
    x_max: float = 20.0
    n_points: int = 20000

    def __post_init__(self):
        if not self.x_min < self.x_max:
            raise ValueError("need x_min < x_max")
        if self.n_points < 100:
            raise ValueError("need at least 100 grid points")

    def halved(self):
        if self.n_points < 200:
            raise GridTooCoarse(f"{self.n_points} points cannot be halved for the convergence check")
        return LineGrid(self.x_min, self.x_max, (self.n_points + 1) // 2)


@njit(cache=True)
def _outward(F, h2, i0, i_end, y0, y1):
    """Numerov for y'' = F y on [i0, i_end]; returns the solution and node count."""
    n = F.shape[0]
    y = np.zeros(n)
    y[i0] = y0
    y[i0 + 1] = y1
    nodes = 0
    for i in range(i0 + 1, i_end):
        ym = 1.0 - h2 * F[i - 1] / 12.0
        yc = 2.0 * (1.0 + 5.0 * h2 * F[i] / 12.0)
        yp = 1.0 - h2 * F[i + 1] / 12.0
        y[i + 1] = (yc * y[i] - ym * y[i - 1]) / yp
        if y[i + 1] * y[i] < 0.0:
            nodes += 1
        if abs(y[i + 1]) > 1e100:
            for j in range(i0, i + 2):
                y[j] *= 1e-100
    return y, nodes


@njit(cache=True)
def _inward(F, h2, i_start, i_stop):
    n = F.shape[0]
    y = np.zeros(n)
    y[i_start] = 0.0
    y[i_start - 1] = 1e-200
    for i in range(i_start - 1, i_stop, -1):
        yp = 1.0 - h2 * F[i + 1] / 12.0
        yc = 2.0 * (1.0 + 5.0 * h2 * F[i] / 12.0)
        ym = 1.0 - h2 * F[i - 1] / 12.0
        y[i - 1] = (yc * y[i] - yp * y[i + 1]) / ym
        if abs(y[i - 1]) > 1e100:
            for j in range(i - 1, i_start + 1):
                y[j] *= 1e-100
    return y


class _Shooter:
    """Shooting on a fixed grid for y'' = F y with F(E) = A + B (V - E)."""

    def __init__(self, s, A, Bv, B, start_fn):
        self.s = s
        self.h = s[1] - s[0]
        self.h2 = self.h * self.h
        self.A = A
        self.Bv = Bv
        self.B = B
        self.start_fn = start_fn

    def F(self, E):
        return self.A + self.Bv - self.B * E

    def _window(self, F):
        # Numerov needs h^2 F / 12 well below one. Where that fails the state
        # is deep in a forbidden region and negligible, so the integration
        # window is clipped there.
        n = len(F)
        centre = int(np.argmin(F))
        bad = self.h2 * F / 12.0 > 0.1
        left = np.nonzero(bad[:centre])[0]
        right = np.nonzero(bad[centre:])[0]
        i0 = int(left[-1]) + 1 if left.size else 0
        i_end = centre + int(right[0]) - 1 if right.size else n - 1
        return i0, i_end

    def nodes(self, E):
        F = self.F(E)
        i0, i_end = self._window(F)
        y0, y1 = self.start_fn(i0)
        _, nodes = _outward(F, self.h2, i0, i_end, y0, y1)
        return nodes

    def mismatch(self, E, m):
        """Sine of the angle between outward and inward (y_m, y_m+1) vectors."""
        F = self.F(E)
        i0, i_end = self._window(F)
        y0, y1 = self.start_fn(i0)
        yo, _ = _outward(F, self.h2, i0, m + 1, y0, y1)
        i_start = self._inward_start(F, m, i_end)
        yi = _inward(F, self.h2, i_start, m)
        no = math.hypot(yo[m], yo[m + 1])
        ni = math.hypot(yi[m], yi[m + 1])
        return (yo[m] * yi[m + 1] - yo[m + 1] * yi[m]) / (no * ni)

    def _inward_start(self, F, m, i_end):
        # begin where the WKB decay measured from the turning point passes e^-40
        kappa = np.sqrt(np.clip(F[m:i_end + 1], 0.0, None))
        acc = np.cumsum(kappa) * self.h
        idx = np.nonzero(acc > 40.0)[0]
        i_start = i_end if idx.size == 0 else min(i_end, m + int(idx[0]))
        return max(i_start, m + 3)

    def turning_index(self, E):
        F = self.F(E)
        allowed = np.nonzero(F < 0.0)[0]
        if allowed.size == 0:
            return None
        return min(max(int(allowed[-1]), 2), len(F) - 5)


def _solve(shooter, node_target, e_lo, tol):
    """Bracket the eigenvalue by node counting, then refine on the mismatch."""
    if shooter.nodes(e_lo) > node_target:
        raise NoEigenvalueInBracket("lower energy bound already has too many nodes")
    step = max(1.0, abs(e_lo))
    e_hi = e_lo + step
    for _ in range(200):
        c_hi = shooter.nodes(e_hi)
        if c_hi > node_target:
            break
        e_lo = e_hi
        step *= 2.0
        e_hi = e_lo + step
    else:
        raise NoEigenvalueInBracket(f"no state with {node_target} nodes found")
    c_lo = -1
    while e_hi - e_lo > tol:
        mid = 0.5 * (e_lo + e_hi)
        c = shooter.nodes(mid)
        if c > node_target:
            e_hi, c_hi = mid, c
        else:
            e_lo, c_lo = mid, c
        if c_lo == node_target and c_hi == node_target + 1 and e_hi - e_lo < 1e-2 * max(1.0, abs(mid)):
            break
    else:
        return 0.5 * (e_lo + e_hi)
    m = shooter.turning_index(e_hi)
    if m is not None:
        f_lo = shooter.mismatch(e_lo, m)
        f_hi = shooter.mismatch(e_hi, m)
        if f_lo * f_hi < 0.0:
            return brentq(lambda e: shooter.mismatch(e, m), e_lo, e_hi, xtol=tol, rtol=1e-15)
    while e_hi - e_lo > tol:
        mid = 0.5 * (e_lo + e_hi)
        if shooter.nodes(mid) > node_target:
            e_hi = mid
        else:
            e_lo = mid
    return 0.5 * (e_lo + e_hi)


def _radial_shooter(V, L, m, hbar, grid):
    if grid.spacing == "log":
        s = np.linspace(math.log(grid.r_min), math.log(grid.r_max), grid.n_points)
        r = np.exp(s)
        c = 2.0 * m / hbar**2
        A = np.full_like(r, L * L)
        Bv = c * r * r * np.asarray(V(r), dtype=float)
        B = c * r * r

        def start(i0):
            return math.exp(L * s[i0]), math.exp(L * s[i0 + 1])

        return _Shooter(s, A, Bv, B, start), r
    r = np.linspace(grid.r_min, grid.r_max, grid.n_points)
    c = 2.0 * m / hbar**2
    A = (L * L - 0.25) / (r * r)
    Bv = c * np.asarray(V(r), dtype=float)
    B = np.full_like(r, c)

    def start(i0):
        return r[i0] ** (L + 0.5), r[i0 + 1] ** (L + 0.5)

    return _Shooter(r, A, Bv, B, start), r


def _radial_once(V, L, m, hbar, node_target, grid, tol):
    shooter, r = _radial_shooter(V, L, m, hbar, grid)
    veff = shooter.A / shooter.B + shooter.Bv / shooter.B
    e_lo = float(np.min(veff[np.isfinite(veff)]))
    e = _solve(shooter, node_target, e_lo, tol)
    # decay exponent accumulated between the outer turning point and the
    # end of the usable grid, used to judge whether r_max is large enough
    F = shooter.F(e)
    _, i_end = shooter._window(F)
    m_idx = shooter.turning_index(e)
    if m_idx is None:
        return e, 0.0
    tail = float(np.sum(np.sqrt(np.clip(F[m_idx:i_end + 1], 0.0, None))) * shooter.h)
    return e, tail


def numerov_eigen(V, L, m=1.0, hbar=1.0, node_target=0, grid=None, tol=1e-10, check_grid=True):
    """Eigenvalue of -hbar^2/2m psi'' + [hbar^2 (L^2-1/4)/(2m r^2) + V] psi = E psi.

    ``V`` maps a numpy array of radii to potential values. The solution starts
    as r^(L+1/2) at ``grid.r_min`` and must decay at ``grid.r_max``; the state
    is selected by its number of interior nodes. On the default log grid the
    substitution r = e^s, psi = e^(s/2) phi turns the equation into
    phi'' = [L^2 + r^2 (2m/hbar^2)(V - E)] phi.

    When no grid is given the default one is used and its outer edge is
    pushed out (at fixed spacing) until the state has decayed by at least
    e^-30 past the outer turning point. With ``check_grid`` the solve is
    repeated on a grid with half the points and GridTooCoarse is raised if
    the two disagree by more than 1e-6.
    """
    auto = grid is None
    grid = grid or RadialGrid()
    e, tail = _radial_once(V, L, m, hbar, node_target, grid, tol)
    for _ in range(12):
        if not auto or tail >= 30.0:
            break
        step = (math.log(grid.r_max) - math.log(grid.r_min)) / (grid.n_points - 1)
        extra = int(round(math.log(2.0) / step))
        grid = RadialGrid(grid.r_min, 2.0 * grid.r_max, grid.n_points + extra, grid.spacing)
        e, tail = _radial_once(V, L, m, hbar, node_target, grid, tol)
    r_end = np.array([grid.r_max])
    edge = float(np.asarray(V(r_end), dtype=float)[0]) + hbar**2 * (L * L - 0.25) / (2.0 * m * grid.r_max**2)
    if e >= edge:
        raise NoEigenvalueInBracket(f"the state with {node_target} nodes is not bound on r <= {grid.r_max:g}")
    if check_grid:
        e_half, _ = _radial_once(V, L, m, hbar, node_target, grid.halved(), tol)
        if abs(e - e_half) > 1e-6 * max(1.0, abs(e)):
            raise GridTooCoarse(f"half-grid eigenvalue differs by {abs(e - e_half):.3g}")
    return e


def _line_once(V, m, hbar, node_target, grid, tol):
    x = np.linspace(grid.x_min, grid.x_max, grid.n_points)
    c = 2.0 * m / hbar**2
    vx = np.asarray(V(x), dtype=float)
    shooter = _Shooter(x, np.zeros_like(x), c * vx, np.full_like(x, c), lambda i0: (0.0, 1e-30))
    return _solve(shooter, node_target, float(np.min(vx)), tol)


def numerov_eigen_1d(V, m=1.0, hbar=1.0, node_target=0, grid=None, tol=1e-10, check_grid=True):
    """Eigenvalue of -hbar^2/2m psi'' + V psi = E psi on a finite line segment."""
    grid = grid or LineGrid()
    e = _line_once(V, m, hbar, node_target, grid, tol)
    edge = float(np.min(np.asarray(V(np.array([grid.x_min, grid.x_max])), dtype=float)))
    if e >= edge:
        raise NoEigenvalueInBracket(f"the state with {node_target} nodes is not bound on the line grid")
    if check_grid:
        e_half = _line_once(V, m, hbar, node_target, grid.halved(), tol)
        if abs(e - e_half) > 1e-6 * max(1.0, abs(e)):
            raise GridTooCoarse(f"half-grid eigenvalue differs by {abs(e - e_half):.3g}")
    return e
