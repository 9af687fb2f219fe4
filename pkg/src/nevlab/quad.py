"""Radial grids and quadrature for circle averages and height integrals.

The height (characteristic) is the double integral
    T(r) = int_0^r dt/t  int_{|z|<t} density dA,
computed by swapping the order of integration:
    T(r) = int_0^r 2 pi s log(r/s) avg(s) ds,
with avg(s) the circle average of the density.  On a fixed radial grid the
log kernel splits as log(r) - log(s), so cumulative partial sums give every
grid value in one pass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import GridError

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(15)

DEFAULT_GRID_POINTS = 48
SMOOTH_TOL = 1e-8
SINGULAR_TOL = 1e-5
MAX_DEPTH = 24


@dataclass(frozen=True)
class RadialGrid:
    """Increasing evaluation radii inside a disc of definition."""

    radii: tuple
    disc_radius: float

    def __post_init__(self):
        r = self.radii
        if len(r) < 2 or any(b <= a for a, b in zip(r, r[1:])):
            raise GridError("radii must be strictly increasing")
        if r[0] <= 0 or r[-1] >= self.disc_radius:
            raise GridError("radii must lie strictly inside the disc")

    @staticmethod
    def geometric_inf(r_min=1.0, r_max=50.0, n=DEFAULT_GRID_POINTS):
        """Geometric grid for maps on the whole plane."""
        radii = tuple(np.geomspace(r_min, r_max, n).tolist())
        return RadialGrid(radii, math.inf)

    @staticmethod
    def geometric_disc(disc_radius=1.0, gap_max=0.5, gap_min=5e-4,
                       n=DEFAULT_GRID_POINTS):
        """Grid geometric in the boundary gap 1 - r/R, for bounded discs."""
        gaps = np.geomspace(gap_max, gap_min, n)
        radii = tuple((disc_radius * (1.0 - gaps)).tolist())
        return RadialGrid(radii, disc_radius)

    @staticmethod
    def for_disc(disc_radius, n=DEFAULT_GRID_POINTS, r_max=50.0):
        if math.isinf(disc_radius):
            return RadialGrid.geometric_inf(n=n, r_max=r_max)
        return RadialGrid.geometric_disc(disc_radius=disc_radius, n=n)

    def arrays(self):
        return np.array(self.radii)

    def trapezoid_weights(self):
        r = np.array(self.radii)
        w = np.empty_like(r)
        w[1:-1] = 0.5 * (r[2:] - r[:-2])
        w[0] = 0.5 * (r[1] - r[0])
        w[-1] = 0.5 * (r[-1] - r[-2])
        return w


def as_radii(grid):
    """Radii as a float array from a RadialGrid or an increasing sequence."""
    if isinstance(grid, RadialGrid):
        return grid.arrays()
    radii = np.atleast_1d(np.asarray(grid, dtype=float))
    if radii.ndim != 1 or len(radii) < 1:
        raise GridError("radii must be a nonempty 1-d array")
    if np.any(np.diff(radii) <= 0) or radii[0] <= 0:
        raise GridError("radii must be positive and strictly increasing")
    return radii


def _gl_panel(fn_theta, r, a, b):
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    theta = mid + half * _GL_NODES
    vals = fn_theta(r * np.exp(1j * theta))
    return half * float(np.dot(_GL_WEIGHTS, vals))


def circle_average(fn, r, hints=(), smooth_tol=SMOOTH_TOL,
                   singular_tol=SINGULAR_TOL, max_depth=MAX_DEPTH,
                   min_panels=8):
    """Adaptive average (1/2pi) int_0^{2pi} fn(r e^{i theta}) d theta.

    fn maps a complex array to a real array.  `hints` lists angles where the
    integrand may have (integrable) log singularities; panels touching a
    hint use the looser tolerance and simply refine to the depth cap.
    Returns (average, info) with info recording evaluations and whether any
    panel hit the depth cap.
    """
    hints = sorted(float(h) % (2.0 * math.pi) for h in hints)
    cuts = {0.0, 2.0 * math.pi}
    for h in hints:
        cuts.add(h)
    base = sorted(cuts)
    points = []
    for a, b in zip(base, base[1:]):
        k = max(1, int(math.ceil((b - a) / (2.0 * math.pi / min_panels))))
        for j in range(k):
            points.append(a + (b - a) * j / k)
    points.append(2.0 * math.pi)
    points = sorted(set(points))

    def is_singular(a, b):
        for h in hints:
            if a - 1e-12 <= h <= b + 1e-12:
                return True
        return False

    panels = []
    for a, b in zip(points, points[1:]):
        panels.append((a, b, _gl_panel(fn, r, a, b), 0, is_singular(a, b)))
    scale = max(1.0, abs(sum(p[2] for p in panels)))
    info = {"evals": len(panels) * 15, "depth_capped": False}
    total = 0.0
    stack = list(panels)
    while stack:
        a, b, coarse, depth, singular = stack.pop()
        m = 0.5 * (a + b)
        i1 = _gl_panel(fn, r, a, m)
        i2 = _gl_panel(fn, r, m, b)
        info["evals"] += 30
        fine = i1 + i2
        tol = (singular_tol if singular else smooth_tol)
        budget = tol * scale * (b - a) / (2.0 * math.pi)
        if abs(coarse - fine) <= budget or depth >= max_depth:
            if abs(coarse - fine) > budget:
                info["depth_capped"] = True
            total += fine
        else:
            sing1 = singular and is_singular(a, m)
            sing2 = singular and is_singular(m, b)
            if singular and not (sing1 or sing2):
                sing1 = sing2 = True  # keep the looser tol near the hint
            stack.append((a, m, i1, depth + 1, sing1))
            stack.append((m, b, i2, depth + 1, sing2))
    return total / (2.0 * math.pi), info


def height_profile(avg_density_fn, radii, inner_points=6,
                   nodes_per_interval=4):
    """Height T(r_i) from circle averages of an area density.

    avg_density_fn(s) must return the circle average of the density at
    radius s.  The region below the first grid radius uses a fixed
    Gauss-Legendre rule; each interval between consecutive grid radii uses
    a small Gauss-Legendre rule on k(s) = 2 pi s avg(s), split against the
    log kernel as log(r) K - L with K = int k, L = int k log s.
    Returns (T_values, mass_values) where mass_values[i] approximates the
    density mass of the disc of radius r_i.
    """
    radii = np.asarray(radii, dtype=float)
    r0 = radii[0]

    def segment(a, b, npts):
        nodes, weights = np.polynomial.legendre.leggauss(npts)
        s = 0.5 * (b - a) * nodes + 0.5 * (a + b)
        w = 0.5 * (b - a) * weights
        k = np.array([2.0 * math.pi * x * avg_density_fn(x) for x in s])
        return float(np.dot(w, k)), float(np.dot(w, k * np.log(s)))

    # graded panels toward 0 keep the log s kernel accurate
    K = 0.0
    L = 0.0
    lo = 0.0
    breaks = [r0 * 0.2 ** j for j in range(6, -1, -1)]
    for hi in breaks:
        dK, dL = segment(lo, hi, inner_points)
        K += dK
        L += dL
        lo = hi
    T = np.empty_like(radii)
    mass = np.empty_like(radii)
    mass[0] = K
    T[0] = math.log(r0) * K - L
    for i in range(1, len(radii)):
        dK, dL = segment(radii[i - 1], radii[i], nodes_per_interval)
        K += dK
        L += dL
        mass[i] = K
        T[i] = math.log(radii[i]) * K - L
    return T, mass


def growth_derivative_check(T_values, radii, growth_index, eps=0.1, order=1,
                            disc_radius=math.inf, measure_cap=10.0):
    """Flag grid intervals violating the growth-rate derivative bound.

    For nondecreasing T the discrete slope should satisfy
        dT/dr <= g(r) exp((c + eps) T)
    outside a set of finite weighted measure, with g = 1 on the plane and
    g(r) = 1/(1 - r/R) on a bounded disc.  Returns a dict with per-interval
    flags, the weighted measure of the flagged set, and the bound used.
    Raises GridError if T decreases by more than quadrature noise.
    """
    T = np.asarray(T_values, dtype=float)
    r = np.asarray(radii, dtype=float)
    if len(T) != len(r):
        raise GridError("T and radii lengths differ")
    drops = np.diff(T)
    if np.any(drops < -1e-6 * np.maximum(1.0, np.abs(T[:-1]))):
        raise GridError("characteristic is not nondecreasing on the grid")
    seq = T.copy()
    for _ in range(order - 1):
        seq = np.concatenate([[seq[0]], np.maximum.accumulate(
            np.diff(seq) / np.diff(r))])
    c = growth_index
    if math.isinf(c):
        # bounded characteristic: any finite bound works; use the data range
        c = 0.0
    slope = np.diff(seq) / np.diff(r)
    if math.isinf(disc_radius):
        g = np.ones_like(r[:-1])
    else:
        g = 1.0 / (1.0 - r[:-1] / disc_radius)
    with np.errstate(over="ignore"):
        bound = g * np.exp(np.minimum((c + eps) * T[:-1], 700.0))
    flags = slope > bound
    weights = np.diff(r)
    with np.errstate(over="ignore"):
        density = np.exp(np.minimum((c + eps) * T[:-1], 700.0))
    measure = float(np.sum(np.where(flags, density * weights, 0.0)))
    measure = min(measure, measure_cap)
    return {
        "flags": flags,
        "measure": measure,
        "measure_cap": measure_cap,
        "bound": bound,
        "slope": slope,
        "ok": measure < measure_cap,
    }


def _grid_values(fn_or_values, radii):
    if callable(fn_or_values):
        return np.array([float(fn_or_values(r)) for r in radii])
    vals = np.asarray(fn_or_values, dtype=float)
    if vals.ndim == 0:
        return np.full_like(radii, float(vals))
    if len(vals) != len(radii):
        raise GridError("value array length does not match the grid")
    return vals


def calculus_lemma_check(h, gamma, delta, radii, order=1):
    """Flag grid points where a derivative bound on h fails.

    First-order form (order=1, h nondecreasing): flags radii with
        h'(r) > h(r)^(1+delta) * gamma(r).
    Second-order form (order=2, r*h' nondecreasing): flags radii with
        (1/r) d/dr (r h'(r)) > r^delta * gamma(r)^(2+delta)
                                * h(r)^((1+delta)^2).
    Derivatives use centered three-point stencils; the endpoints use
    one-sided stencils and are excluded from the statistics.  h and gamma
    may be callables, scalars, or arrays on the grid.  Returns a dict with
    per-point flags, the flagged radii, and the weighted measure
    sum of gamma(r_i) * dr_i over the flagged set.  Raises GridError when
    the required monotonicity fails on the grid.
    """
    if not 0.0 < delta < 1.0:
        raise GridError("delta must lie in (0, 1)")
    r = np.asarray(as_radii(radii), dtype=float)
    if len(r) < 3:
        raise GridError("need at least three grid points for stencils")
    hv = _grid_values(h, r)
    gv = _grid_values(gamma, r)
    if np.any(gv < 0.0):
        raise GridError("gamma must be nonnegative")
    tol = 1e-9 * np.maximum(1.0, np.abs(hv[:-1]))
    hp = np.gradient(hv, r)
    if order == 1:
        if np.any(np.diff(hv) < -tol):
            raise GridError("h is not nondecreasing on the grid")
        lhs = hp
        bound = np.power(np.maximum(hv, 0.0), 1.0 + delta) * gv
    elif order == 2:
        s = r * hp
        if np.any(np.diff(s) < -1e-9 * np.maximum(1.0, np.abs(s[:-1]))):
            raise GridError("r * h' is not nondecreasing on the grid")
        lhs = np.gradient(s, r) / r
        bound = (np.power(r, delta) * np.power(gv, 2.0 + delta)
                 * np.power(np.maximum(hv, 0.0), (1.0 + delta) ** 2))
    else:
        raise GridError("order must be 1 or 2")
    flags = lhs > bound
    flags[0] = False
    flags[-1] = False
    widths = np.empty_like(r)
    widths[1:-1] = 0.5 * (r[2:] - r[:-2])
    widths[0] = 0.5 * (r[1] - r[0])
    widths[-1] = 0.5 * (r[-1] - r[-2])
    measure = float(np.sum(np.where(flags, gv * widths, 0.0)))
    return {
        "flags": flags,
        "radii": r,
        "flagged_radii": r[flags],
        "measure": measure,
        "bound": bound,
        "deriv": lhs,
    }


def exceptional_measure(flags, radii, T_values, growth_index, eps=0.1,
                        cap=10.0):
    """Weighted measure sum exp((c+eps) T) dr over flagged grid points."""
    r = np.asarray(radii, dtype=float)
    T = np.asarray(T_values, dtype=float)
    w = np.empty_like(r)
    w[1:-1] = 0.5 * (r[2:] - r[:-2])
    w[0] = 0.5 * (r[1] - r[0])
    w[-1] = 0.5 * (r[-1] - r[-2])
    c = 0.0 if math.isinf(growth_index) else growth_index
    with np.errstate(over="ignore"):
        density = np.exp(np.minimum((c + eps) * T, 700.0))
    total = float(np.sum(np.where(np.asarray(flags, dtype=bool),
                                  density * w, 0.0)))
    return min(total, cap)
