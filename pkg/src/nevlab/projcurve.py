"""Holomorphic curves in projective space and their associated curves.

A curve is given by n+1 exact exponential-polynomial components

    f_i(z) = sum_t p_{i,t}(z) exp(mu_{i,t} z),

with Gaussian-rational coefficients and rates, sharing no common zero.
The k-th associated curve F_k has the (k+1)-minors of the derivative
matrix of (f, f', ..., f^(k)) as wedge coordinates, computed exactly, so
degeneracy decisions and stationary divisors are decidable rather than
numerical.

Normalization conventions, mirroring the scalar modules:

* the height T_{F_k} is the circle average of log ||F_k|| minus its value
  at 0, taken on the REDUCED coordinates (common polynomial factor
  removed); the top wedge then has identically zero height;
* the curvature density h_k uses the RAW coordinate norms
  ||F_{k-1}||^2 ||F_{k+1}||^2 / ||F_k||^4 and vanishes (to order twice the
  stationary multiplicity) at stationary points; h_k/pi is the Lebesgue
  density of the pullback area form, so integrating it reproduces T_{F_k};
* the stationary divisor d_k is the divisor of the exact polynomial
  g_{k-1} g_{k+1} / g_k^2 built from the common factors g_j, and the
  circle average S_k of (1/2) log h_k satisfies
      S_k(r) = T_{F_{k-1}} - 2 T_{F_k} + T_{F_{k+1}} + N_{d_k}(r) + const
  exactly, which is what plucker_residual verifies;
* the projective distance to a hyperplane H = {sum a_j x_j = 0} with unit
  normal is ||x; H|| = ||xi _| a|| / ||xi||, the normalized interior
  product, which lies in [0, 1].
"""

from __future__ import annotations

import cmath
import math
from functools import lru_cache
from itertools import combinations

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import (ConfigError, DegenerateInputError, DomainError,
                     ImageInHyperplaneError, PrecisionError)
from .funcrep import Disc, format_complex
from .nevan import fitted_constant, growth_index_from_values, log_plus
from .quad import RadialGrid, as_radii, growth_derivative_check, \
    circle_average, height_profile
from .rationals import QC, QC_ONE, padd, pdegree, pderiv, pdivmod, pgcd, \
    pmul, pnormalize, pscale
from .zeros import ZeroRecord, _exact_poly_divisor, circle_hints, \
    divisor_counting


# ---------------------------------------------------------------------------
# exact exponential polynomials
# ---------------------------------------------------------------------------

class ExpPoly:
    """Exact exponential polynomial sum_t p_t(z) exp(mu_t z).

    Terms live in a dict {mu: coeffs} with Gaussian-rational rates mu and
    ascending Gaussian-rational coefficient lists.  The ring is closed
    under +, -, *, and d/dz, which keeps associated-curve minors exact.
    """

    __slots__ = ("terms", "_fterms")

    def __init__(self, terms=None):
        data = {}
        if terms:
            for mu, coeffs in terms.items():
                mu = mu if isinstance(mu, QC) else QC(mu)
                c = pnormalize(list(coeffs))
                if not c:
                    continue
                cur = data.get(mu)
                c = padd(cur, c) if cur is not None else c
                if c:
                    data[mu] = c
                elif cur is not None:
                    del data[mu]
        self.terms = data
        self._fterms = None

    @classmethod
    def poly(cls, coeffs):
        return cls({QC(0): [c if isinstance(c, QC) else QC(c)
                            for c in coeffs]})

    @classmethod
    def exponential(cls, mu, coeffs=(1,)):
        return cls({QC(mu): [c if isinstance(c, QC) else QC(c)
                             for c in coeffs]})

    @classmethod
    def zero(cls):
        return cls()

    def is_zero(self):
        return not self.terms

    def is_poly(self):
        return all(not mu for mu in self.terms)

    def single_term(self):
        """(mu, coeffs) when there is exactly one term, else None."""
        if len(self.terms) == 1:
            return next(iter(self.terms.items()))
        return None

    def __add__(self, other):
        out = dict(self.terms)
        for mu, c in other.terms.items():
            cur = out.get(mu)
            s = padd(cur, c) if cur is not None else c
            if s:
                out[mu] = s
            elif cur is not None:
                del out[mu]
        return ExpPoly(out)

    def __neg__(self):
        return ExpPoly({mu: [-x for x in c] for mu, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mu = m1 + m2
                p = pmul(c1, c2)
                cur = out.get(mu)
                s = padd(cur, p) if cur is not None else p
                if s:
                    out[mu] = s
                elif cur is not None:
                    del out[mu]
        return ExpPoly(out)

    def scale(self, s):
        s = s if isinstance(s, QC) else QC(s)
        if not s:
            return ExpPoly()
        return ExpPoly({mu: pscale(c, s) for mu, c in self.terms.items()})

    def derivative(self):
        out = {}
        for mu, c in self.terms.items():
            d = padd(pderiv(c), pscale(c, mu))
            if d:
                out[mu] = d
        return ExpPoly(out)

    def _float_terms(self):
        if self._fterms is None:
            self._fterms = [
                (mu.to_complex(),
                 np.array([x.to_complex() for x in c], dtype=complex))
                for mu, c in self.terms.items()]
        return self._fterms

    def eval_many(self, zs):
        zs = np.asarray(zs, dtype=complex)
        out = np.zeros(zs.shape, dtype=complex)
        for mu, coeffs in self._float_terms():
            val = npoly.polyval(zs, coeffs)
            if mu != 0:
                val = val * np.exp(mu * zs)
            out = out + val
        return out

    def __call__(self, z):
        return complex(self.eval_many(np.array([z], dtype=complex))[0])

    def __repr__(self):
        bits = []
        for mu, c in sorted(self.terms.items(),
                            key=lambda t: (t[0].re, t[0].im)):
            deg = len(c) - 1
            if mu:
                bits.append("deg%d*e^(%s z)" % (deg, format_complex(
                    mu.to_complex())))
            else:
                bits.append("deg%d" % deg)
        return "ExpPoly(%s)" % (" + ".join(bits) or "0")


def _exp_det(m):
    """Exact determinant of a square ExpPoly matrix by Laplace expansion."""
    if len(m) == 1:
        return m[0][0]
    out = ExpPoly()
    sign = 1
    for j in range(len(m)):
        sign_here, sign = sign, -sign
        if m[0][j].is_zero():
            continue
        sub = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _exp_det(sub)
        out = out + term if sign_here > 0 else out - term
    return out


# ---------------------------------------------------------------------------
# stable norms of component vectors
# ---------------------------------------------------------------------------

def _values_matrix(comps, zs):
    """Component values as a (len(comps), len(zs)) complex matrix."""
    zs = np.asarray(zs, dtype=complex).ravel()
    vals = np.empty((len(comps), zs.size), dtype=complex)
    with np.errstate(over="ignore", invalid="ignore"):
        for i, c in enumerate(comps):
            vals[i] = c.eval_many(zs)
    if not np.all(np.isfinite(vals)):
        raise PrecisionError(
            "component evaluation overflowed; the radius is too large for "
            "the exponential rates involved")
    return vals


def _log_colnorm(vals):
    """log of the Euclidean column norms, scaled against overflow.

    Columns that vanish identically give -inf.
    """
    a = np.abs(vals)
    m = a.max(axis=0)
    safe = np.where(m > 0.0, m, 1.0)
    s = ((a / safe) ** 2).sum(axis=0)
    with np.errstate(divide="ignore"):
        return np.log(m) + 0.5 * np.log(s)


def _float_coeffs(p):
    if not p:
        return np.array([0.0], dtype=complex)
    return np.array([c.to_complex() for c in p], dtype=complex)


# ---------------------------------------------------------------------------
# hyperplanes and interior products
# ---------------------------------------------------------------------------

class Hyperplane:
    """Hyperplane {sum_j a_j x_j = 0} in P^n with a unit-normalized normal.

    The coefficients act as a linear functional (no conjugation); `raw`
    keeps the entries as supplied so exact rational position checks remain
    possible downstream.
    """

    __slots__ = ("raw", "normal", "name")

    def __init__(self, normal, name=None):
        raw = tuple(normal)
        if len(raw) < 2:
            raise DegenerateInputError("a hyperplane needs >= 2 coefficients")
        arr = np.array([c.to_complex() if isinstance(c, QC) else complex(c)
                        for c in raw], dtype=complex)
        nrm = float(np.linalg.norm(arr))
        if nrm == 0.0:
            raise DegenerateInputError("hyperplane normal must be nonzero")
        self.raw = raw
        self.normal = arr / nrm
        if name is None:
            name = "H[%s]" % ",".join(format_complex(c) for c in arr)
        self.name = name

    @property
    def n(self):
        return len(self.raw) - 1

    def exact_normal(self):
        """Entries as Gaussian rationals, or None if not representable."""
        try:
            return [c if isinstance(c, QC) else QC(complex(c))
                    for c in self.raw]
        except TypeError:
            return None

    def __repr__(self):
        return self.name


def coordinate_hyperplanes(n):
    """The n+1 coordinate hyperplanes {x_j = 0} of P^n."""
    out = []
    for j in range(n + 1):
        e = [0] * (n + 1)
        e[j] = 1
        out.append(Hyperplane(e, name="x%d=0" % j))
    return out


def _as_hyperplane(h):
    return h if isinstance(h, Hyperplane) else Hyperplane(h)


@lru_cache(maxsize=None)
def _contraction_plan(n, k):
    """Index plan for the interior product Lambda^{k+1} -> Lambda^k.

    For each k-subset T (lexicographic) the entry list holds
    (sign, j, source) with sign = (-1)^{#{t in T : t < j}}, so that
    (xi _| a)_T = sum_{j not in T} sign * a_j * xi_{sorted(T + (j,))}.
    """
    src = {S: i for i, S in enumerate(combinations(range(n + 1), k + 1))}
    plan = []
    for T in combinations(range(n + 1), k):
        row = []
        for j in range(n + 1):
            if j in T:
                continue
            S = tuple(sorted(T + (j,)))
            sign = -1 if sum(1 for t in T if t < j) % 2 else 1
            row.append((sign, j, src[S]))
        plan.append(tuple(row))
    return tuple(plan)


def _contract_rows(vals, normal, n, k):
    """Interior product of wedge-coordinate columns against a covector."""
    plan = _contraction_plan(n, k)
    out = np.zeros((len(plan), vals.shape[1]), dtype=complex)
    for t, row in enumerate(plan):
        acc = out[t]
        for sign, j, s in row:
            acc += (sign * normal[j]) * vals[s]
    return out


def _log_distance(vals, normal, n, k):
    """Columnwise log ||xi _| a|| - log ||xi|| (log projective distance)."""
    return _log_colnorm(_contract_rows(vals, normal, n, k)) \
        - _log_colnorm(vals)


def hyperplane_distance(xi, hyperplane, k=None):
    """Projective distance ||x; H|| = ||xi _| a|| / (||xi|| ||a||) in [0,1].

    xi is a wedge-coordinate vector in lexicographic subset order; its
    wedge degree is inferred from the length when unambiguous, otherwise
    pass k explicitly (length C(n+1, k+1)).
    """
    h = _as_hyperplane(hyperplane)
    n = h.n
    xi = np.asarray(list(xi), dtype=complex).reshape(-1, 1)
    matches = [kk for kk in range(n + 1)
               if math.comb(n + 1, kk + 1) == xi.shape[0]]
    if k is None:
        if len(matches) != 1:
            raise DomainError(
                "wedge degree is ambiguous for length %d in P^%d; pass k"
                % (xi.shape[0], n))
        k = matches[0]
    elif k not in matches:
        raise DomainError(
            "coordinate length %d does not match wedge degree k=%d in P^%d"
            % (xi.shape[0], k, n))
    if not np.any(xi):
        raise DegenerateInputError("zero wedge vector has no distance")
    ld = float(_log_distance(xi, h.normal, n, k)[0])
    return math.exp(min(ld, 0.0))


# ---------------------------------------------------------------------------
# curves
# ---------------------------------------------------------------------------

def _reduce_components(comps):
    """(gcd, reduced, kind) for a component vector.

    Exponential factors are units, so when every nonzero component is a
    single term the common divisor is the exact monic polynomial gcd of
    the term coefficients ('exact').  Components with several exponential
    terms fall back to the identity reduction with kind 'sampled'.
    """
    polys = []
    for c in comps:
        if c.is_zero():
            continue
        st = c.single_term()
        if st is None:
            return None, list(comps), "sampled"
        polys.append(st[1])
    g = []
    for p in polys:
        g = pgcd(g, p)
        if pdegree(g) == 0:
            break
    if pdegree(g) <= 0:
        return [QC_ONE], list(comps), "exact"
    red = []
    for c in comps:
        if c.is_zero():
            red.append(ExpPoly())
            continue
        mu, p = c.single_term()
        q, rem = pdivmod(p, g)
        if rem:
            raise DegenerateInputError(
                "inconsistent common factor in component reduction")
        red.append(ExpPoly({mu: q}))
    return g, red, "exact"


class ProjCurve:
    """A reduced holomorphic curve Delta(R) -> P^n with exact components.

    Plain coefficient lists are accepted as polynomial components.  The
    constructor refuses component vectors with a common polynomial factor
    (pass the reduced representation); multi-term exponential components
    are checked for simultaneous vanishing on a 32-point sample instead.
    """

    def __init__(self, name, components, disc=None, meta=None):
        comps = [c if isinstance(c, ExpPoly) else ExpPoly.poly(c)
                 for c in components]
        if len(comps) < 2:
            raise DegenerateInputError("a curve needs >= 2 components")
        if all(c.is_zero() for c in comps):
            raise DegenerateInputError("all components vanish identically")
        self.name = name
        self.comps = comps
        self.disc = disc if disc is not None else Disc(math.inf)
        self.meta = dict(meta or {})
        self.n = len(comps) - 1
        g, _, kind = _reduce_components(comps)
        if kind == "exact":
            if pdegree(g) >= 1:
                raise DegenerateInputError(
                    "components share a common polynomial factor of degree "
                    "%d; pass the reduced representation" % pdegree(g))
            self.reduction_certificate = "exact-gcd"
        else:
            r_hi = 2.0 if math.isinf(self.disc.radius) \
                else 0.8 * self.disc.radius
            rs = np.geomspace(0.05 * r_hi, r_hi, 32)
            ang = 2.0 * math.pi * 0.6180339887498949 * np.arange(32)
            zs = rs * np.exp(1j * ang)
            if not np.all(np.isfinite(_log_colnorm(
                    _values_matrix(comps, zs)))):
                raise DegenerateInputError(
                    "components vanish simultaneously at a sample point; "
                    "the representation is not reduced")
            self.reduction_certificate = "sampled-32"
        self._assoc = {}
        self._rows = [list(comps)]

    def _derivative_rows(self, k):
        while len(self._rows) <= k:
            self._rows.append([c.derivative() for c in self._rows[-1]])
        return self._rows[:k + 1]

    def values(self, zs):
        return _values_matrix(self.comps, zs)

    def log_norm(self, zs):
        return _log_colnorm(self.values(zs))

    def __repr__(self):
        return "ProjCurve(%r, P^%d)" % (self.name, self.n)


class AssociatedCurve:
    """Exact wedge coordinates of f ^ f' ^ ... ^ f^(k) plus reduction data.

    comps_raw holds the (k+1)-minors of the derivative matrix in
    lexicographic column-subset order; gcd/comps_red are the exact common
    polynomial factor and quotients when extractable.  Heights use the
    reduced coordinates, curvature densities the raw ones.
    """

    def __init__(self, curve, k, comps_raw):
        self.curve = curve
        self.k = k
        self.comps_raw = comps_raw
        self.subsets = list(combinations(range(curve.n + 1), k + 1))
        self.gcd, self.comps_red, self.reduction = \
            _reduce_components(comps_raw)

    def log_norm_raw(self, zs):
        return _log_colnorm(_values_matrix(self.comps_raw, zs))

    def log_norm_red(self, zs):
        return _log_colnorm(_values_matrix(self.comps_red, zs))

    def __repr__(self):
        return "AssociatedCurve(%r, k=%d, %s)" % (
            self.curve.name, self.k, self.reduction)


def associated_curve(curve, k):
    """The k-th associated curve of an exact projective curve (cached).

    Raises DegenerateInputError when the order-k wedge vanishes
    identically (the curve lies in a proper projective subspace); the
    decision is exact because the minors are.
    """
    if not 0 <= k <= curve.n:
        raise DomainError("associated order k must satisfy 0 <= k <= n")
    got = curve._assoc.get(k)
    if got is not None:
        return got
    rows = curve._derivative_rows(k)
    comps = []
    for S in combinations(range(curve.n + 1), k + 1):
        comps.append(_exp_det([[rows[i][j] for j in S]
                               for i in range(k + 1)]))
    if all(c.is_zero() for c in comps):
        raise DegenerateInputError(
            "the order-%d wedge vanishes identically: the curve is "
            "linearly degenerate" % k)
    out = AssociatedCurve(curve, k, comps)
    curve._assoc[k] = out
    return out


# ---------------------------------------------------------------------------
# named example curves
# ---------------------------------------------------------------------------

def curve_gallery():
    """Fresh instances of the named example curves."""
    plane = Disc(math.inf)
    one = ExpPoly.poly([1])
    curves = [
        ProjCurve("line", [[1], [0, 1]], plane),
        ProjCurve("conic", [[1], [0, 1], [0, 0, 1]], plane),
        ProjCurve("twisted-cubic",
                  [[1], [0, 1], [0, 0, 1], [0, 0, 0, 1]], plane),
        ProjCurve("cusp", [[1], [0, 0, 1], [0, 0, 0, 1]], plane),
        ProjCurve("exp-line", [one, ExpPoly.exponential(1)], plane),
        ProjCurve("exp-conic",
                  [one, ExpPoly.exponential(1), ExpPoly.exponential(2)],
                  plane),
        ProjCurve("exp-degenerate",
                  [one, ExpPoly.exponential(1), ExpPoly.zero()], plane),
    ]
    return {c.name: c for c in curves}


_CURVE_CACHE = {}


def get_curve(name):
    """Named curve from the gallery, cached (associated curves memoize)."""
    got = _CURVE_CACHE.get(name)
    if got is None:
        gallery = curve_gallery()
        if name not in gallery:
            raise ConfigError("unknown curve %r; known: %s"
                              % (name, ", ".join(sorted(gallery))))
        got = _CURVE_CACHE[name] = gallery[name]
    return got


# ---------------------------------------------------------------------------
# heights and curvature densities
# ---------------------------------------------------------------------------

def characteristic_fk(curve, k, grid, cross_check=False):
    """Height T_{F_k}(r) of the k-th associated curve.

    Circle average of log ||F_k reduced|| minus its value at 0.  The top
    wedge k = n gives identically zero (its reduced coordinate never
    vanishes, so the log is harmonic).  cross_check integrates the
    curvature density h_k/pi instead and reports the gap, which measures
    pure quadrature error.
    """
    radii = as_radii(grid)
    curve.disc.check_radius(float(radii[-1]))
    out = {"radii": radii, "k": k}
    if k == curve.n:
        associated_curve(curve, k)
        out.update(T=np.zeros_like(radii), base=0.0, method="constant")
        if cross_check:
            out.update(T_area=np.zeros_like(radii),
                       mass=np.zeros_like(radii), gap=0.0, gap_ok=True)
        return out
    assoc = associated_curve(curve, k)

    def fn(zs):
        return assoc.log_norm_red(zs)

    base = float(fn(np.array([0j]))[0])
    if not math.isfinite(base):
        raise DomainError(
            "associated coordinates share a zero at the origin; a reduced "
            "representation is required for the height anchor")
    T = np.array([circle_average(fn, float(r))[0] for r in radii]) - base
    out.update(T=T, base=base, method="cartan-reduced",
               reduction=assoc.reduction)
    if cross_check:
        def avg(s):
            return circle_average(
                lambda zs: hk_density(curve, k, zs) / math.pi, s)[0]

        T_area, mass = height_profile(avg, radii)
        gap = float(np.max(np.abs(T - T_area)))
        out.update(T_area=T_area, mass=mass, gap=gap,
                   gap_ok=gap <= 0.05 * max(1.0, float(np.max(np.abs(T)))))
    return out


def _stationary_poly(curve, k):
    """Exact polynomial g_{k-1} g_{k+1} / g_k^2 carrying the divisor d_k."""
    g_km1 = [QC_ONE] if k == 0 else associated_curve(curve, k - 1).gcd
    g_k = associated_curve(curve, k).gcd
    g_kp1 = associated_curve(curve, k + 1).gcd
    if g_km1 is None or g_k is None or g_kp1 is None:
        raise DomainError(
            "stationary divisors need exact common factors; components "
            "with several exponential terms are not supported")
    q, rem = pdivmod(pmul(g_km1, g_kp1), pmul(g_k, g_k))
    if rem:
        raise DegenerateInputError(
            "stationary combination failed to be effective")
    return q


def _log_hk(curve, k, zs):
    """log h_k at the given points (exactly -inf on the stationary set)."""
    zs = np.asarray(zs, dtype=complex).ravel()
    n = curve.n
    if k == n:
        return np.full(zs.shape, -np.inf)
    a_k = associated_curve(curve, k)
    a_kp1 = associated_curve(curve, k + 1)
    a_km1 = associated_curve(curve, k - 1) if k > 0 else None
    exact = (a_k.reduction == "exact" and a_kp1.reduction == "exact"
             and (a_km1 is None or a_km1.reduction == "exact"))
    if exact:
        hd = _float_coeffs(_stationary_poly(curve, k))
        with np.errstate(divide="ignore"):
            lh = 2.0 * np.log(np.abs(npoly.polyval(zs, hd)))
        if a_km1 is not None:
            lh = lh + 2.0 * a_km1.log_norm_red(zs)
        return (lh + 2.0 * a_kp1.log_norm_red(zs)
                - 4.0 * a_k.log_norm_red(zs))
    lh = 2.0 * a_kp1.log_norm_raw(zs) - 4.0 * a_k.log_norm_raw(zs)
    if a_km1 is not None:
        lh = lh + 2.0 * a_km1.log_norm_raw(zs)
    bad = ~np.isfinite(lh)
    if np.any(bad):
        zoff = zs[bad] + 1e-7
        lh2 = 2.0 * a_kp1.log_norm_raw(zoff) - 4.0 * a_k.log_norm_raw(zoff)
        if a_km1 is not None:
            lh2 = lh2 + 2.0 * a_km1.log_norm_raw(zoff)
        if not np.all(np.isfinite(lh2)):
            raise PrecisionError(
                "curvature density is indeterminate at a sample point and "
                "the offset fallback failed")
        lh[bad] = lh2
    return lh


def hk_density(curve, k, zs):
    """Raw curvature density h_k = ||F_{k-1}||^2 ||F_{k+1}||^2 / ||F_k||^4.

    (i/2pi) h_k dz dzbar is the pullback of the Fubini-Study area form by
    the k-th associated map, so h_k/pi is its Lebesgue density.  At
    stationary points the zero of the numerator is evaluated through the
    exact reduced factorization, so the returned limit value is certified
    rather than a 0/0 artifact.  k = n gives identically zero.
    """
    scalar = np.isscalar(zs) or getattr(zs, "ndim", None) == 0
    arr = np.atleast_1d(np.asarray(zs, dtype=complex))
    with np.errstate(over="ignore"):
        out = np.exp(_log_hk(curve, k, arr))
    if not np.all(np.isfinite(out)):
        raise PrecisionError("curvature density overflowed")
    return float(out[0]) if scalar else out


def plucker_residual(curve, k, grid):
    """Residual of the wedge-height second difference identity.

    S_k(r), the circle average of (1/2) log h_k, satisfies

        S_k(r) = T_{F_{k-1}} - 2 T_{F_k} + T_{F_{k+1}} + N_{d_k}(r) + const

    exactly, with d_k the stationary divisor.  The returned per-radius
    residual N_{d_k} + T_{k-1} - 2 T_k + T_{k+1} - S_k is therefore
    constant up to quadrature error; its range over the grid is the honest
    error indicator.  Valid for 0 <= k <= n-1 (h_n vanishes identically).
    """
    scalar = np.isscalar(grid)
    radii = as_radii(grid)
    if not 0 <= k <= curve.n - 1:
        raise DomainError(
            "the identity needs 0 <= k <= n-1; the top curvature density "
            "vanishes identically")
    if k > 0:
        T_km1 = characteristic_fk(curve, k - 1, radii)["T"]
    else:
        T_km1 = np.zeros_like(radii)
    T_k = characteristic_fk(curve, k, radii)["T"]
    T_kp1 = characteristic_fk(curve, k + 1, radii)["T"]
    hd = _stationary_poly(curve, k)
    if pdegree(hd) >= 1:
        recs = _exact_poly_divisor(hd, float(radii[-1]), "exact-stationary")
    else:
        recs = []
    N_d = divisor_counting(recs, radii)

    def fn(zs):
        return 0.5 * _log_hk(curve, k, zs)

    S = np.array([circle_average(fn, float(r),
                                 hints=circle_hints(recs, float(r)))[0]
                  for r in radii])
    residual = N_d + T_km1 - 2.0 * T_k + T_kp1 - S
    rng = float(residual.max() - residual.min()) if len(residual) > 1 else 0.0
    return {
        "radii": radii,
        "residual": residual,
        "value": float(residual[-1]),
        "range": rng,
        "S_k": S,
        "N_d": N_d,
        "T_km1": T_km1,
        "T_k": T_k,
        "T_kp1": T_kp1,
        "stationary_records": recs,
        "scalar_input": scalar,
    }


# ---------------------------------------------------------------------------
# proximity to hyperplanes
# ---------------------------------------------------------------------------

def _binomial_zeros(ep, rmax):
    """Closed-form zero lattice of c0 e^{m0 z} + c1 e^{m1 z}, or None."""
    if len(ep.terms) != 2:
        return None
    (m0, p0), (m1, p1) = ep.terms.items()
    if pdegree(p0) != 0 or pdegree(p1) != 0:
        return None
    c0, c1 = p0[0].to_complex(), p1[0].to_complex()
    dmu = (m1 - m0).to_complex()
    base = cmath.log(-c0 / c1)
    kmax = int((abs(dmu) * rmax + abs(base)) / (2.0 * math.pi)) + 2
    recs = []
    for j in range(-kmax, kmax + 1):
        z = (base + 2j * math.pi * j) / dmu
        if abs(z) <= rmax:
            recs.append(ZeroRecord(z, 1, "exact-exponential"))
    recs.sort(key=lambda rec: (abs(rec.z), rec.z.real, rec.z.imag))
    return recs


_IN_HYPERPLANE = "identically-zero"


def _contact_records(assoc, hyp, rmax):
    """Exact contact divisor of F_k with H when available.

    Returns a record list, the _IN_HYPERPLANE sentinel when the contracted
    coordinates vanish identically, or None when no exact form exists
    (hints are then simply omitted).
    """
    aq = hyp.exact_normal()
    if aq is None:
        return None
    n, k = assoc.curve.n, assoc.k
    contr = []
    for row in _contraction_plan(n, k):
        acc = ExpPoly()
        for sign, j, s in row:
            if not aq[j]:
                continue
            acc = acc + assoc.comps_raw[s].scale(
                aq[j] if sign > 0 else -aq[j])
        contr.append(acc)
    if all(c.is_zero() for c in contr):
        return _IN_HYPERPLANE
    g, _, kind = _reduce_components(contr)
    if kind == "exact":
        if pdegree(g) >= 1:
            return _exact_poly_divisor(g, rmax, "exact-contact")
        return []
    if len(contr) == 1:
        return _binomial_zeros(contr[0], rmax)
    return None


def proximity_fk(curve, k, hyperplane, grid, char=None):
    """Proximity m_{F_k}(r, H): circle average of log 1/||F_k; H||.

    Reports the weak first-main-theorem comparison m <= T_{F_k} + C with C
    fitted as the largest excess on the leading third of the grid and
    validated on the rest (no exceptional set enters here).
    """
    hyp = _as_hyperplane(hyperplane)
    if hyp.n != curve.n:
        raise DomainError("hyperplane lives in P^%d, curve in P^%d"
                          % (hyp.n, curve.n))
    radii = as_radii(grid)
    curve.disc.check_radius(float(radii[-1]))
    assoc = associated_curve(curve, k)
    recs = _contact_records(assoc, hyp, float(radii[-1]))
    if recs is _IN_HYPERPLANE:
        raise ImageInHyperplaneError(
            "the order-%d associated curve lies inside %s" % (k, hyp.name))
    comps = assoc.comps_red
    n = curve.n

    def fn(zs):
        return np.maximum(
            -_log_distance(_values_matrix(comps, zs), hyp.normal, n, k),
            0.0)

    if recs is None:
        probe = fn(0.5 * radii[-1]
                   * np.exp(2j * math.pi * np.arange(32) / 32))
        if np.min(probe) > 27.0:
            raise ImageInHyperplaneError(
                "the order-%d associated curve stays within exp(-27) of %s "
                "on a probe circle; treating it as contained" % (k, hyp.name))
    m = np.array([circle_average(
        fn, float(r),
        hints=circle_hints(recs, float(r)) if recs else ())[0]
        for r in radii])
    if char is None:
        char = characteristic_fk(curve, k, radii)
    T = char["T"]
    c0, slack, n_fit = fitted_constant(m, T)
    tol = 1e-6 * np.maximum(1.0, np.abs(T[n_fit:]))
    ok = bool(np.all(slack[n_fit:] >= -tol))
    return {
        "radii": radii,
        "m": m,
        "T": T,
        "C0": c0,
        "slack": slack,
        "n_fit": n_fit,
        "weak_fmt_ok": ok,
        "records": recs if isinstance(recs, list) else None,
        "hyperplane": hyp.name,
    }


# ---------------------------------------------------------------------------
# second main theorem for curves
# ---------------------------------------------------------------------------

def _independent_maximal_subsets(normals, q, n):
    """Maximal linearly independent index subsets of the normal vectors."""
    mat = np.array(normals)
    indep = []
    for size in range(1, min(q, n + 1) + 1):
        for K in combinations(range(q), size):
            sub = mat[list(K)]
            if np.linalg.matrix_rank(sub, tol=1e-10) == size:
                indep.append(frozenset(K))
    maximal = [K for K in indep
               if not any(K < K2 for K2 in indep)]
    return [tuple(sorted(K)) for K in maximal]


def cartan_smt_report(curve, hyperplanes, grid=None, eps=0.1, clog=2.0,
                      fit_fraction=1.0 / 3.0):
    """Second-main-theorem balance for a linearly nondegenerate curve.

    Checks, off the exceptional set and beyond the constant-fitting window,

        avg_theta max_K sum_{j in K} log 1/||f; H_j||  +  N_W(r)
            <= (n+1) T(r) + (n(n+1)/2)(1+eps)(c+eps) T(r) [bounded disc]
               + (n(n+1)/2) eps log+ r + clog log+ T(r) + C0,

    where K runs over maximal linearly independent subsets of the
    hyperplanes, N_W counts the Wronskian divisor, and c is the growth
    index.  Also reported: per-hyperplane proximities, their plain sum and
    its ratio to T, and Lambda(r) = min_k 1/T_{F_k}(r).
    """
    hyps = [_as_hyperplane(h) for h in hyperplanes]
    q = len(hyps)
    n = curve.n
    if q < 1:
        raise ConfigError("at least one hyperplane is required")
    if q > 10:
        raise ConfigError("at most 10 hyperplanes are supported")
    if n > 4:
        raise ConfigError("curves are supported up to P^4")
    for h in hyps:
        if h.n != n:
            raise ConfigError("hyperplane %s lives in P^%d, curve in P^%d"
                              % (h.name, h.n, n))
    if grid is None:
        grid = RadialGrid.for_disc(curve.disc.radius)
    radii = as_radii(grid)
    curve.disc.check_radius(float(radii[-1]))

    top = associated_curve(curve, n)
    chars = {kk: characteristic_fk(curve, kk, radii) for kk in range(n)}
    T = chars[0]["T"]
    c = growth_index_from_values(T, radii, curve.disc.radius)
    if math.isinf(c):
        raise DomainError("bounded characteristic (infinite growth "
                          "index); the balance has no content here")

    if top.reduction != "exact":
        raise DomainError(
            "Wronskian zeros of general multi-term exponential components "
            "are not supported")
    if pdegree(top.gcd) >= 1:
        w_records = _exact_poly_divisor(top.gcd, float(radii[-1]),
                                        "exact-wronskian")
        w_certificate = None
    else:
        w_records = []
        w_certificate = "wronskian divisor is empty (unit factor)"
    N_W = divisor_counting(w_records, radii)

    m_by = {}
    m_total = np.zeros_like(radii)
    hint_records = []
    prox_ok = True
    for h in hyps:
        prox = proximity_fk(curve, 0, h, radii, char=chars[0])
        m_by[h.name] = prox["m"]
        m_total = m_total + prox["m"]
        prox_ok = prox_ok and prox["weak_fmt_ok"]
        if prox["records"]:
            hint_records.extend(prox["records"])

    subsets = _independent_maximal_subsets([h.normal for h in hyps], q, n)
    comps = curve.comps

    if len(subsets) == 1:
        # a unique maximal subset K makes the max a plain sum, so the
        # average is the sum of the per-hyperplane proximities
        K0 = subsets[0]
        max_avg = np.zeros_like(radii)
        for j in K0:
            max_avg = max_avg + m_by[hyps[j].name]
    else:
        def fn(zs):
            vals = _values_matrix(comps, zs)
            u = np.empty((q, vals.shape[1]))
            for j, h in enumerate(hyps):
                u[j] = np.maximum(-_log_distance(vals, h.normal, n, 0), 0.0)
            best = np.zeros(vals.shape[1])
            for K in subsets:
                np.maximum(best, u[list(K)].sum(axis=0), out=best)
            return best

        max_avg = np.array([circle_average(
            fn, float(r), hints=circle_hints(hint_records, float(r)))[0]
            for r in radii])
    lhs = max_avg + N_W

    coeff = 0.5 * n * (n + 1)
    rhs_base = (n + 1.0) * T + coeff * eps * log_plus(radii) \
        + clog * log_plus(T)
    if curve.disc.bounded:
        rhs_base = rhs_base + coeff * (1.0 + eps) * (c + eps) * T
    c0, slack, n_fit = fitted_constant(lhs, rhs_base, fit_fraction)

    cal = growth_derivative_check(T, radii, c, eps=eps,
                               disc_radius=curve.disc.radius)
    flags = np.concatenate([[False], cal["flags"]])
    validate = ~flags[n_fit:]
    tol = 1e-6 * np.maximum(1.0, np.abs(T[n_fit:]))
    ok = bool(np.all(slack[n_fit:][validate] >= -tol[validate]))

    T_assoc = np.array([chars[kk]["T"] for kk in range(n)])
    with np.errstate(divide="ignore"):
        lam = 1.0 / T_assoc.max(axis=0)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(T > 0, m_total / np.where(T > 0, T, 1.0), np.inf)

    return {
        "radii": radii,
        "hyperplanes": [h.name for h in hyps],
        "T": T,
        "m_by_hyperplane": m_by,
        "m_total": m_total,
        "sum_over_T": ratio,
        "N_W": N_W,
        "wronskian_records": w_records,
        "wronskian_certificate": w_certificate,
        "max_subset_average": max_avg,
        "independent_subsets": subsets,
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
        "lambda_values": lam,
        "weak_fmt_ok": prox_ok,
        "ok": ok,
        "characteristic": chars[0],
    }


# ---------------------------------------------------------------------------
# contact-localized area estimate
# ---------------------------------------------------------------------------

def ahlfors_estimate_check(curve, k, hyperplane, lam, grid,
                           fit_fraction=1.0 / 3.0):
    """Contact-localized area growth against (8 T_{F_k} + C)/lam^2.

    LHS(r) = int_0^r dt/t int_{|z|<t} (phi_{k+1}/phi_k^{1-lam}) h_k/pi dA,
    with phi_k = ||F_k; H||^2 evaluated on the reduced coordinates.  C is
    fitted on the leading third of the grid; the check passes when
    LHS <= (8 T_{F_k} + C)/lam^2 at every grid radius.
    """
    if not 0.0 < lam < 1.0:
        raise DegenerateInputError(
            "the contact exponent lam must lie strictly between 0 and 1")
    hyp = _as_hyperplane(hyperplane)
    if hyp.n != curve.n:
        raise DomainError("hyperplane lives in P^%d, curve in P^%d"
                          % (hyp.n, curve.n))
    n = curve.n
    if not 0 <= k <= n - 1:
        raise DomainError("the estimate needs 0 <= k <= n-1")
    radii = as_radii(grid)
    curve.disc.check_radius(float(radii[-1]))
    a_k = associated_curve(curve, k)
    a_k1 = associated_curve(curve, k + 1)
    recs = _contact_records(a_k, hyp, float(radii[-1]))
    if recs is _IN_HYPERPLANE:
        raise ImageInHyperplaneError(
            "the order-%d associated curve lies inside %s" % (k, hyp.name))

    def density(zs):
        zs = np.asarray(zs, dtype=complex).ravel()
        ld_k = _log_distance(_values_matrix(a_k.comps_red, zs),
                             hyp.normal, n, k)
        ld_k1 = _log_distance(_values_matrix(a_k1.comps_red, zs),
                              hyp.normal, n, k + 1)
        logd = (2.0 * ld_k1 - 2.0 * (1.0 - lam) * ld_k
                + _log_hk(curve, k, zs) - math.log(math.pi))
        with np.errstate(over="ignore"):
            return np.exp(logd)

    def avg(s):
        return circle_average(
            density, s,
            hints=circle_hints(recs, s) if recs else ())[0]

    lhs, _ = height_profile(avg, radii)
    T = characteristic_fk(curve, k, radii)["T"]
    n_fit = max(1, int(math.ceil(len(radii) * fit_fraction)))
    c0 = max(0.0, float(np.max(lam * lam * lhs[:n_fit] - 8.0 * T[:n_fit])))
    rhs = (8.0 * T + c0) / (lam * lam)
    tol = 1e-9 * np.maximum(1.0, rhs)
    ok_points = lhs <= rhs + tol
    return {
        "radii": radii,
        "lhs": lhs,
        "T": T,
        "C0": c0,
        "rhs": rhs,
        "lam": lam,
        "n_fit": n_fit,
        "ok_points": ok_points,
        "ok": bool(np.all(ok_points)),
        "records": recs if isinstance(recs, list) else None,
    }


# ---------------------------------------------------------------------------
# product-to-sum sampling check
# ---------------------------------------------------------------------------

def _random_decomposable(rng, n, k):
    """Wedge coordinates of k+1 independent complex Gaussian vectors."""
    rows = rng.standard_normal((k + 1, n + 1)) \
        + 1j * rng.standard_normal((k + 1, n + 1))
    coords = [np.linalg.det(rows[:, list(S)])
              for S in combinations(range(n + 1), k + 1)]
    return np.array(coords, dtype=complex)


def product_to_sum_check(hyperplanes, k, lam, samples=200, seed=0):
    """Sampled ratio of the product-to-sum contact inequality.

    With t_j = ||y; H_j||^2 / ||x; H_j||^{2-2 lam} over random decomposable
    wedges x (degree k+1) and y (degree k+2), the inequality
    prod_j t_j <= c (sum_j t_j)^{n-k} should hold with c independent of the
    sample.  Reports the maximum observed ratio and the first-half maximum
    so growth under doubling is visible; no constant is asserted.
    """
    hyps = [_as_hyperplane(h) for h in hyperplanes]
    if not hyps:
        raise ConfigError("at least one hyperplane is required")
    n = hyps[0].n
    for h in hyps:
        if h.n != n:
            raise ConfigError("hyperplane dimensions disagree")
    if not 0.0 < lam < 1.0:
        raise DegenerateInputError(
            "the contact exponent lam must lie strictly between 0 and 1")
    if not 0 <= k <= n - 1:
        raise DomainError("the inequality needs 0 <= k <= n-1")
    if samples < 2:
        raise ConfigError("at least 2 samples are required")
    rng = np.random.default_rng(seed)
    ratios = np.empty(samples)
    for i in range(samples):
        for _ in range(8):
            x = _random_decomposable(rng, n, k)
            y = _random_decomposable(rng, n, k + 1)
            dx = np.array([hyperplane_distance(x, h, k=k) for h in hyps])
            dy = np.array([hyperplane_distance(y, h, k=k + 1)
                           for h in hyps])
            if np.all(dx > 0.0):
                break
        else:
            raise DegenerateInputError(
                "random wedge kept landing on a hyperplane")
        t = dy ** 2 / dx ** (2.0 - 2.0 * lam)
        ratios[i] = float(np.prod(t) / np.sum(t) ** (n - k))
    half = samples // 2
    return {
        "samples": samples,
        "max_ratio": float(ratios.max()),
        "first_half_max": float(ratios[:half].max()),
        "mean_ratio": float(ratios.mean()),
        "lam": lam,
        "k": k,
        "q": len(hyps),
    }
