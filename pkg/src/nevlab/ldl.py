"""Logarithmic derivative quantities and their growth bound.

For a meromorphic map f on a disc, the circle average of
log+ |f^{(k)}/f| is small compared with the characteristic:

    avg_theta log+ |f^{(k)}/f|(r e^{i theta})
        <= (1+delta) k log gamma(r) + delta k log+ r
           + clog (log+ T(r) + log+ log gamma(r) + log+ log+ r) + C0

off an exceptional set whose gamma-weighted measure stays finite.  The
default policy takes gamma(r) = exp((c+eps) T(r)) with c the growth
index of T; a user-supplied gamma(r) (callable or per-radius array) is
accepted instead.

logderiv_proximity evaluates the left side through Taylor jets of the
projective pair, so no symbolic differentiation is needed, with
quadrature hints at the zeros and poles of f near the circle (the jets
of f^{(k)}/f blow up there; hinted panels put the singular angle on a
panel boundary, which the interior Gauss nodes never sample).  An exact
singular hit at a node still yields a non-finite average; the radius is
then retried with a tiny relative offset.

ldl_residual assembles the per-radius comparison, fitting the additive
constant on the leading third of the grid as elsewhere, and reports
both the raw and the fitted flag sets together with the gamma-weighted
measure of the flagged radii.
"""

import math

import numpy as np

from .errors import ConfigError, DomainError, PrecisionError
from .funcrep import (TARGET_INF, DerivativeBody, ExpBody, RationalBody,
                      TorusLiftBody, _jet_of_derivative)
from .jets import jet_div
from .nevan import (characteristic, fitted_constant,
                    growth_index_from_values, log_plus)
from .quad import as_radii, circle_average
from .zeros import circle_hints, preimage_divisor

__all__ = ["logderiv_proximity", "ldl_residual"]


# ---------------------------------------------------------------------------
# pointwise values of log+ |f^(k)/f|
# ---------------------------------------------------------------------------

def _value_jets(holo, zs, order):
    """Taylor jet of the value function to the given order.

    Derivative bodies are unwrapped so that torus lifts (which have no
    projective pair) still expose jets of their derivatives.
    """
    body = holo.body
    shift = 0
    while isinstance(body, DerivativeBody):
        shift += body.k
        body = body.parent
    if hasattr(body, "lift_jets_many"):
        jet = body.lift_jets_many(zs, order + shift)
    else:
        dj, nj = body.pair_jets_many(zs, order + shift)
        jet = jet_div(nj, dj)
    if shift:
        jet = _jet_of_derivative(jet, shift)
    return jet


def _divisor_hints(holo, rmax):
    """Zero and pole records of f when an exact search is cheap."""
    body = holo.body
    if not isinstance(body, (RationalBody, ExpBody, TorusLiftBody)):
        return []
    records = []
    for target in (0.0, TARGET_INF):
        try:
            records.extend(preimage_divisor(holo, target, rmax))
        except DomainError:
            pass
    return records


def logderiv_proximity(holo, r, k=1, records=None):
    """Circle average of log+ |f^{(k)}/f| at radius r.

    records (zeros and poles of f) are located automatically for bodies
    with an exact divisor search and serve as quadrature hints; pass ()
    to skip.  A singular average (exact node hit) retries the radius
    with a relative offset of 1e-9, then 1e-7, before giving up.
    """
    k = int(k)
    if k < 1:
        raise ConfigError("derivative order must be >= 1")
    r = float(r)
    holo.disc.check_radius(r)
    if records is None:
        records = _divisor_hints(holo, r)
    fact = float(math.factorial(k))

    def fn(zs):
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            jet = _value_jets(holo, zs, k)
            w = jet[k] * fact / jet[0]
            return np.log(np.maximum(np.abs(w), 1.0))

    for bump in (0.0, -1e-9, -1e-7, 1e-9):
        rr = r * (1.0 + bump)
        if not 0.0 < rr < holo.disc.radius:
            continue
        avg, _ = circle_average(fn, rr, hints=circle_hints(records, rr))
        if np.isfinite(avg):
            return float(avg)
    raise PrecisionError(
        "the logarithmic-derivative average stayed singular at r = %g "
        "after radius retries" % r)


# ---------------------------------------------------------------------------
# the growth bound
# ---------------------------------------------------------------------------

def ldl_residual(holo, grid, k=1, delta=0.1, gamma=None, eps=0.1,
                 clog=2.0, fit_fraction=1.0 / 3.0, char=None):
    """Per-radius comparison of avg log+ |f^{(k)}/f| with its growth bound.

    The bound is

        (1+delta) k log gamma + delta k log+ r
            + clog (log+ T + log+ log gamma + log+ log+ r) + C0,

    with gamma(r) = exp((c+eps) T(r)) by default or the supplied policy
    (callable of r, or an array over the grid).  C0 is fitted on the
    leading third of the grid; radii violating the raw bound and the
    fitted bound are flagged separately, and the gamma-weighted measure
    sum_flagged gamma(r) dr of the fitted flags is reported.
    """
    if not 0.0 < delta < 1.0:
        raise ConfigError("needs 0 < delta < 1")
    radii = as_radii(grid)
    holo.disc.check_radius(float(radii[-1]))
    records = _divisor_hints(holo, float(radii[-1]))
    lhs = np.array([logderiv_proximity(holo, float(r), k, records=records)
                    for r in radii])

    if char is None:
        char = characteristic(holo, radii)
    T = char["T"]
    c = growth_index_from_values(T, radii, holo.disc.radius)
    if gamma is None:
        if math.isinf(c):
            raise DomainError(
                "bounded characteristic (infinite growth index); supply a "
                "gamma policy explicitly")
        log_gamma = (c + eps) * T
        policy = "exp((c+eps)T)"
    else:
        if callable(gamma):
            gvals = np.array([float(gamma(float(r))) for r in radii])
        else:
            gvals = np.asarray(gamma, dtype=float)
            if gvals.shape != radii.shape:
                raise ConfigError("gamma array must match the grid")
        if np.any(gvals <= 0.0):
            raise ConfigError("gamma values must be positive")
        log_gamma = np.log(gvals)
        policy = "user"

    rhs_raw = (1.0 + delta) * k * log_gamma + delta * k * log_plus(radii) \
        + clog * (log_plus(T) + log_plus(log_gamma)
                  + log_plus(log_plus(radii)))
    c0, slack, n_fit = fitted_constant(lhs, rhs_raw, fit_fraction)
    flags_raw = lhs > rhs_raw + 1e-12
    flags = slack < -1e-12

    if len(radii) > 1:
        widths = np.gradient(radii)
    else:
        widths = np.zeros_like(radii)
    with np.errstate(over="ignore"):
        density = np.exp(np.minimum(log_gamma, 700.0))
    measure = float(np.sum(np.where(flags, density * widths, 0.0)))

    return {
        "radii": radii,
        "k": k,
        "delta": delta,
        "eps": eps if gamma is None else None,
        "clog": clog,
        "lhs": lhs,
        "T": T,
        "growth_index": c,
        "log_gamma": log_gamma,
        "gamma_policy": policy,
        "rhs_raw": rhs_raw,
        "rhs": rhs_raw + c0,
        "C0": c0,
        "slack": slack,
        "n_fit": n_fit,
        "flags_raw": flags_raw,
        "flags": flags,
        "exceptional_measure": measure,
        "ok": bool(not np.any(flags[n_fit:])),
        "characteristic": char,
    }
