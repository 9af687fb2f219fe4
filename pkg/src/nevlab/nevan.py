"""Characteristic, proximity, defects, and the Riemann-sphere balance.

Normalizations used throughout the package:

* the target area form has total mass one, so T(r) is the integrated
  area characteristic  int_0^r dt/t int_{|z|<=t} f^* omega;
* for maps into P^1 this equals the circle average of log ||rep|| minus
  log ||rep(0)|| for any fixed reduced representation (den, num), which
  is the cheaper primary evaluation path;
* m(r, a) is the circle average of log(1/dist), with the chordal distance
  on P^1 and exp(-green/2) as the distance proxy on flat tori;
* N(r, a) comes from zeros.counting_function.

With these conventions m + N - T is exactly constant in r and the constant
is known in closed form, so the first-main-theorem residual is a genuine
numerical error indicator rather than an O(1) to be waved away.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ConfigError, DomainError, GridError
from .funcrep import (ExpBody, RationalBody, TorusLiftBody, format_complex,
                      is_inf_target)
from .jets import jet_div
from .quad import RadialGrid, as_radii, growth_derivative_check, \
    circle_average, height_profile
from .zeros import counting_function, preimage_divisor, \
    ramification_counting, circle_hints

_radii_array = as_radii


def log_plus(x):
    return np.log(np.maximum(np.asarray(x, dtype=float), 1.0))


# ---------------------------------------------------------------------------
# characteristic
# ---------------------------------------------------------------------------

def characteristic(holo, grid, method="auto", cross_check=False):
    """T(r) on the grid, plus bookkeeping.

    method 'cartan' uses circle averages of log ||rep|| (P^1 targets only);
    'area' integrates circle averages of the pullback area density twice.
    'auto' picks cartan when the geometry is the Fubini-Study sphere.  With
    cross_check=True both are computed and the gap is reported; the two
    agree exactly in the limit, so the gap measures quadrature error.
    """
    radii = _radii_array(grid)
    if method not in ("auto", "cartan", "area"):
        raise ConfigError("unknown characteristic method %r" % (method,))
    if method == "auto":
        method = "cartan" if holo.geometry.kind == "p1-fs" else "area"
    out = {"radii": radii, "method": method, "T_area": None,
           "gap": None, "gap_ok": None, "evals": 0}

    T_cartan = None
    if method == "cartan":
        base = float(holo.rep_norm_log_many(np.array([0j]))[0])
        vals = np.empty_like(radii)
        for i, r in enumerate(radii):
            avg, info = circle_average(holo.rep_norm_log_many, r)
            vals[i] = avg
            out["evals"] += info["evals"]
        T_cartan = vals - base

    T_area = None
    if method == "area" or cross_check:
        def avg_density(s):
            avg, info = circle_average(holo.area_density, s)
            out["evals"] += info["evals"]
            return avg

        T_area, mass = height_profile(avg_density, radii)
        out["T_area"] = T_area
        out["mass"] = mass

    out["T"] = T_cartan if T_cartan is not None else T_area
    if cross_check and T_cartan is not None and T_area is not None:
        gap = float(np.max(np.abs(T_cartan - T_area)))
        out["gap"] = gap
        out["gap_ok"] = gap <= 0.05 * max(1.0, float(np.max(np.abs(
            out["T"]))))
    return out


# ---------------------------------------------------------------------------
# proximity and the first main theorem
# ---------------------------------------------------------------------------

def _records_if_cheap(holo, target, rmax):
    """Divisor records when an exact path exists; [] otherwise.

    Proximity only uses records as quadrature hints, so falling back to no
    hints is safe; it would be wasteful to run the generic zero search just
    to speed up a circle average.
    """
    if isinstance(holo.body, (RationalBody, ExpBody, TorusLiftBody)):
        return preimage_divisor(holo, target, rmax)
    return []


def proximity(holo, target, grid, records=None):
    """m(r, a) on the grid: circle averages of the log-distance integrand.

    Divisor points near a circle are passed to the quadrature as angular
    hints, since the integrand has a logarithmic spike there.
    """
    radii = _radii_array(grid)
    if records is None:
        records = _records_if_cheap(holo, target, float(radii[-1]))
    m = np.empty_like(radii)
    for i, r in enumerate(radii):
        hints = circle_hints(records, r)
        avg, _ = circle_average(
            lambda zs: holo.proximity_values(target, zs), r, hints=hints)
        m[i] = avg
    return m


def fmt_constant(holo, target, origin_mult=0):
    """The exact constant in m(r,a) + N(r,a) = T(r) + const.

    Without a divisor point at the origin this is log(1/dist(f(0), a)).
    When f(0) lands on the target with multiplicity m0 (and N carries the
    min(m0,k) log r correction), the constant becomes
        log(1 + |a|^2) - log |c|,   f(z) - a = c z^{m0} + ...,
    and the inverted analog -log|c'| with 1/f = c' z^{m0} + ... for a = inf.
    """
    if origin_mult == 0:
        return float(holo.proximity_values(target, np.array([0j]))[0])
    if holo.geometry.kind != "p1-fs":
        raise DomainError("origin-corrected constants are only implemented "
                          "for P^1 targets")
    if is_inf_target(target):
        dj, nj = holo.pair_jets_many(np.array([0j]), origin_mult)
        inv_jet = jet_div(dj, nj)
        c = complex(inv_jet[origin_mult][0])
        return -math.log(abs(c))
    jet = holo.eval_jet(0j, origin_mult)
    c = complex(jet[origin_mult])
    return math.log1p(abs(complex(target)) ** 2) - math.log(abs(c))


def fmt_residual(holo, target, grid, origin="error", char=None):
    """First-main-theorem residual m + N - T - const on the grid.

    The residual is identically zero in exact arithmetic; its size reports
    the combined quadrature and zero-location error.
    """
    radii = _radii_array(grid)
    count = counting_function(holo, target, radii, origin=origin)
    m = proximity(holo, target, radii, records=count["records"])
    if char is None:
        char = characteristic(holo, radii)
    T = char["T"]
    const = fmt_constant(holo, target, count["origin_mult"])
    residual = m + count["N"] - T - const
    return {
        "radii": radii,
        "m": m,
        "N": count["N"],
        "T": T,
        "constant": const,
        "residual": residual,
        "max_abs_residual": float(np.max(np.abs(residual))),
        "origin_mult": count["origin_mult"],
        "records": count["records"],
        "characteristic": char,
    }


# ---------------------------------------------------------------------------
# growth index and defects
# ---------------------------------------------------------------------------

def growth_index_from_values(T_values, radii, disc_radius, tail=12):
    """Threshold c at which exp(c T) stops being integrable near the edge.

    Zero on the plane.  On a bounded disc, T ~ kappa log(1/(1 - r/R)) is
    fitted on the trailing grid window and the threshold is 1/kappa;
    a bounded characteristic gives +inf.
    """
    if math.isinf(disc_radius):
        return 0.0
    T = np.asarray(T_values, dtype=float)
    r = np.asarray(radii, dtype=float)
    k = min(int(tail), len(r))
    if k < 3:
        raise GridError("growth-index fit needs at least 3 trailing points")
    y = T[-k:]
    if y[-1] - y[0] <= 0.05 * max(1.0, abs(float(y[-1]))):
        return math.inf
    x = np.log(1.0 / (1.0 - r[-k:] / disc_radius))
    kappa = float(np.polyfit(x, y, 1)[0])
    if kappa <= 1e-9:
        return math.inf
    return 1.0 / kappa


def growth_index(holo, grid=None, char=None):
    """Growth index of the map (0 for maps on the whole plane)."""
    if not holo.disc.bounded:
        return 0.0
    if grid is None:
        grid = RadialGrid.for_disc(holo.disc.radius)
    radii = _radii_array(grid)
    if char is None:
        char = characteristic(holo, radii)
    return growth_index_from_values(char["T"], radii, holo.disc.radius)


def defect_estimate(m_values, T_values, tail=8):
    """Defect estimate liminf m/T from the trailing grid window."""
    m = np.asarray(m_values, dtype=float)
    T = np.asarray(T_values, dtype=float)
    k = min(int(tail), len(T))
    if np.any(T[-k:] <= 0):
        raise GridError("defect estimate needs positive T on the window")
    ratio = m[-k:] / T[-k:]
    return {
        "defect": float(np.clip(np.min(ratio), 0.0, 1.0)),
        "last": float(np.clip(ratio[-1], 0.0, 1.0)),
        "window": k,
    }


# ---------------------------------------------------------------------------
# fitted-constant protocol and the Riemann-sphere balance
# ---------------------------------------------------------------------------

def fitted_constant(lhs, rhs_base, fit_fraction=1.0 / 3.0, minimum=0.0):
    """Fit the O(1) constant on the leading window, validate on the rest.

    Returns (C0, slack, n_fit) with C0 the upper envelope of lhs - rhs_base
    over the first fit_fraction of the grid and slack = rhs_base + C0 - lhs.
    The validation criterion is slack >= 0 beyond the fit window.
    """
    lhs = np.asarray(lhs, dtype=float)
    rhs = np.asarray(rhs_base, dtype=float)
    n_fit = max(1, int(math.ceil(len(lhs) * fit_fraction)))
    c0 = max(minimum, float(np.max(lhs[:n_fit] - rhs[:n_fit])))
    return c0, rhs + c0 - lhs, n_fit


def smt_riemann_report(holo, targets=None, grid=None, eps=0.1, clog=2.0,
                       fit_fraction=1.0 / 3.0):
    """Second-main-theorem balance for maps into the Riemann sphere.

    Checks, off the exceptional set and beyond the constant-fitting window,

        sum_j m(r, a_j) + N_ram(r)
            <= 2 T(r) + (1+eps)(c+eps) T(r) [bounded disc]
               + eps log+ r + clog log+ T(r) + C0,

    where c is the growth index and C0 is fitted on the leading window.
    The exceptional set is flagged by the calculus-lemma slope check and
    its weighted measure is reported.
    """
    if holo.geometry.kind != "p1-fs":
        raise DomainError("the Riemann-sphere balance needs P^1 targets")
    if targets is None:
        targets = list(holo.default_targets)
    if not targets:
        raise ConfigError("no targets given and the map declares none")
    if grid is None:
        grid = RadialGrid.for_disc(holo.disc.radius)
    radii = _radii_array(grid)

    char = characteristic(holo, radii)
    T = char["T"]
    m_by_target = {}
    m_total = np.zeros_like(radii)
    for a in targets:
        m = proximity(holo, a, radii)
        m_by_target[format_complex(a)] = m
        m_total = m_total + m
    ram = ramification_counting(holo, radii)

    c = growth_index_from_values(T, radii, holo.disc.radius)
    if math.isinf(c):
        raise DomainError("bounded characteristic (infinite growth index); "
                          "the balance has no content here")
    lhs = m_total + ram["N_ram"]
    rhs_base = holo.geometry.curvature_coeff * T \
        + eps * log_plus(radii) + clog * log_plus(T)
    if holo.disc.bounded:
        rhs_base = rhs_base + (1.0 + eps) * (c + eps) * T
    c0, slack, n_fit = fitted_constant(lhs, rhs_base, fit_fraction)

    cal = growth_derivative_check(T, radii, c, eps=eps,
                               disc_radius=holo.disc.radius)
    flags = np.concatenate([[False], cal["flags"]])
    validate = ~flags[n_fit:]
    tol = 1e-6 * np.maximum(1.0, np.abs(T[n_fit:]))
    ok = bool(np.all(slack[n_fit:][validate] >= -tol[validate]))

    return {
        "radii": radii,
        "targets": [format_complex(a) for a in targets],
        "T": T,
        "m_by_target": m_by_target,
        "m_total": m_total,
        "N_ram": ram["N_ram"],
        "ram_certificate": ram["certificate"],
        "lhs": lhs,
        "rhs": rhs_base + c0,
        "slack": slack,
        "C0": c0,
        "eps": eps,
        "clog": clog,
        "growth_index": c,
        "n_fit": n_fit,
        "exceptional": flags,
        "exceptional_measure": cal["measure"],
        "ok": ok,
        "characteristic": char,
    }
