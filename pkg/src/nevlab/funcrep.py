"""Concrete holomorphic maps on discs, their target geometries, and a gallery.

A map is a disc of definition, an evaluation body (rational, power series
with a geometric majorant, exponential, modular lambda, or torus lift), and
a target geometry that knows its curvature normalization, area density, and
point-target proximity integrand.  Everything downstream (circle averages,
zero counting, characteristics) consumes maps only through the interface
defined here, so magnitude scaling and exactness concerns stay local.

Conventions fixed across the package:
  - projective pairs are (den, num) with f = num/den; pair_many returns
    moderate-magnitude pairs plus a per-point log scale;
  - the height/characteristic uses the area form of total mass one, so for
    the sphere T(r; z -> z) = log(1 + r^2) / 2;
  - u_a denotes 2 log(1/dist), and proximity integrands returned by the
    geometry objects are u_a / 2 so their circle average is m(r, a).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import modular
from .errors import (ConfigError, DegenerateInputError, DomainError,
                     PrecisionError)
from .jets import jet_div
from .rationals import (QC, pderiv, pdegree, pgcd, pdivmod, pmul, pnormalize,
                        parse_qc, peval_exact, psub, pscale)

TARGET_INF = complex(math.inf, 0.0)

_TRUNC_TOL = 1e-12
_MAX_SERIES_TERMS = 400_000


def is_inf_target(a):
    return isinstance(a, complex) and (math.isinf(a.real) or math.isinf(a.imag))


def parse_complex(text):
    """Parse 'inf', '2', '-1.5+0.25i' (or j) into a complex number."""
    s = str(text).strip().lower().replace(" ", "")
    if s in ("inf", "+inf", "infinity", "oo"):
        return TARGET_INF
    try:
        return complex(s.replace("i", "j"))
    except ValueError:
        raise ConfigError("cannot parse complex number %r" % (text,))


def format_complex(a):
    if is_inf_target(a):
        return "inf"
    a = complex(a)
    if a.imag == 0:
        return "%.12g" % a.real
    if a.real == 0:
        return "%.12gi" % a.imag
    return "%.12g%+.12gi" % (a.real, a.imag)


@dataclass(frozen=True)
class Disc:
    """Disc of definition Delta(R); radius may be math.inf."""
    radius: float

    def __post_init__(self):
        if not (self.radius > 0):
            raise ConfigError("disc radius must be positive")

    def check_radius(self, r):
        if not (0 < r < self.radius):
            raise DomainError(
                "radius %g outside the disc of definition (R=%g)"
                % (r, self.radius))

    @property
    def bounded(self):
        return math.isfinite(self.radius)


def _poly_vals(coeffs, zs):
    acc = np.full_like(zs, coeffs[-1], dtype=complex)
    for c in coeffs[-2::-1]:
        acc = acc * zs + c
    return acc


def _poly_jets(coeffs, zs, order):
    """Extended Horner: list of p^{(k)}(zs)/k! arrays, k = 0..order."""
    out = [np.zeros_like(zs, dtype=complex) for _ in range(order + 1)]
    for c in coeffs[::-1]:
        for k in range(order, 0, -1):
            out[k] = out[k] * zs + out[k - 1]
        out[0] = out[0] * zs + c
    return out


def _jet_of_derivative(jet, k):
    """Jet of f^{(k)} (coefficients g_j = f^{(k+j)} (k+j)! / (k! j!) / ...)."""
    out = []
    for j in range(len(jet) - k):
        out.append(jet[k + j] * math.comb(k + j, k) * math.factorial(k))
    return out


def _as_qc_poly(coeffs):
    out = []
    for c in coeffs:
        if isinstance(c, QC):
            out.append(c)
        elif isinstance(c, str):
            out.append(parse_qc(c))
        elif isinstance(c, complex):
            out.append(QC(Fraction(c.real), Fraction(c.imag)))
        else:
            out.append(QC(Fraction(c), Fraction(0)))
    return pnormalize(out)


class Body:
    """Evaluation backend of a map; see module docstring for the contract."""

    kind = "abstract"
    exact = False

    def eval_many(self, zs):
        raise NotImplementedError

    def eval(self, z):
        return complex(self.eval_many(np.array([z], dtype=complex))[0])

    def pair_many(self, zs):
        raise NotImplementedError

    def pair_jets_many(self, zs, order):
        raise NotImplementedError

    def rep_norm_log_many(self, zs):
        """log || canonical global representation || at each point."""
        raise NotImplementedError

    def eval_jet(self, z, order):
        zs = np.array([z], dtype=complex)
        dj, nj = self.pair_jets_many(zs, order)
        if abs(dj[0][0]) == 0:
            raise DomainError("jet requested at a pole")
        return [complex(c[0]) for c in jet_div(nj, dj)]

    def derivative(self, k=1):
        return DerivativeBody(self, k)

    def describe(self):
        return {"kind": self.kind}


class RationalBody(Body):
    """Exact rational function num/den with Gaussian-rational coefficients.

    The representation is reduced (gcd stripped, den monic), so (den, num)
    is a global reduced projective pair with no common zeros.
    """

    kind = "rational"
    exact = True

    def __init__(self, num, den=(1,)):
        num = _as_qc_poly(num)
        den = _as_qc_poly(den)
        if pdegree(den) < 0:
            raise DegenerateInputError("zero denominator")
        if pdegree(num) < 0:
            # the zero map is constant 0; keep (0, 1)
            num = []
        g = pgcd(num, den) if num else []
        if g and pdegree(g) > 0:
            num, _ = pdivmod(num, g)
            den, _ = pdivmod(den, g)
        # make den monic for canonical form
        lead = den[-1]
        if not (lead.re == 1 and lead.im == 0):
            inv = QC(1) / lead
            den = pscale(den, inv)
            num = pscale(num, inv)
        self.num_qc = num
        self.den_qc = den
        self._num_f = np.array([c.to_complex() for c in num] or [0j])
        self._den_f = np.array([c.to_complex() for c in den])

    def degree(self):
        return max(pdegree(self.num_qc), pdegree(self.den_qc))

    def eval_many(self, zs):
        p = _poly_vals(self._den_f, zs)
        q = _poly_vals(self._num_f, zs)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = q / p
        out[np.asarray(p) == 0] = TARGET_INF
        return out

    def pair_many(self, zs):
        p = _poly_vals(self._den_f, zs)
        q = _poly_vals(self._num_f, zs)
        m = np.maximum(np.abs(p), np.abs(q))
        m[m == 0] = 1.0
        return p / m, q / m, np.log(m)

    def pair_jets_many(self, zs, order):
        return (_poly_jets(self._den_f, zs, order),
                _poly_jets(self._num_f, zs, order))

    def rep_norm_log_many(self, zs):
        ph, qh, s = self.pair_many(zs)
        return s + 0.5 * np.log(np.abs(ph) ** 2 + np.abs(qh) ** 2)

    def derivative(self, k=1):
        num, den = self.num_qc, self.den_qc
        for _ in range(k):
            num, den = (psub(pmul(pderiv(num), den), pmul(num, pderiv(den))),
                        pmul(den, den))
        return RationalBody(num, den)

    def wronskian_qc(self):
        """Exact Wronskian den * num' - num * den' of the reduced pair."""
        return pnormalize(psub(pmul(self.den_qc, pderiv(self.num_qc)),
                               pmul(self.num_qc, pderiv(self.den_qc))))

    def describe(self):
        return {
            "kind": self.kind,
            "num": [str(c) for c in self.num_qc] or ["0"],
            "den": [str(c) for c in self.den_qc],
        }


class ExpBody(Body):
    """f(z) = scale * exp(rate * z), entire, never 0 or inf."""

    kind = "exp"

    def __init__(self, rate=1.0, scale=1.0):
        self.rate = complex(rate)
        self.scale = complex(scale)
        if self.rate == 0 or self.scale == 0:
            raise DegenerateInputError("exp body needs nonzero rate and scale")
        self._log_scale = cmath.log(self.scale)

    def eval_many(self, zs):
        with np.errstate(over="ignore"):
            return self.scale * np.exp(self.rate * zs)

    def _w(self, zs):
        return self.rate * zs + self._log_scale

    def pair_many(self, zs):
        w = self._w(zs)
        s = np.maximum(w.real, 0.0)
        return np.exp(-s) + 0j, np.exp(w - s), s

    def pair_jets_many(self, zs, order):
        w = self._w(zs)
        s = np.maximum(w.real, 0.0)
        den = [np.exp(-s) + 0j] + [np.zeros_like(zs, dtype=complex)
                                   for _ in range(order)]
        base = np.exp(w - s)
        num = [base * (self.rate ** k / math.factorial(k))
               for k in range(order + 1)]
        return den, num

    def rep_norm_log_many(self, zs):
        x = self._w(zs).real
        s = np.maximum(x, 0.0)
        return s + 0.5 * np.log(np.exp(-2.0 * s) + np.exp(2.0 * (x - s)))

    def eval_jet(self, z, order):
        v = self.scale * cmath.exp(self.rate * complex(z))
        return [v * self.rate ** k / math.factorial(k)
                for k in range(order + 1)]

    def derivative(self, k=1):
        return ExpBody(self.rate, self.scale * self.rate ** k)

    def preimages(self, a, rmax):
        """All z with f(z) = a and |z| <= rmax (exact branch enumeration)."""
        if a == 0 or is_inf_target(a):
            return []
        base = (cmath.log(complex(a)) - self._log_scale)
        out = []
        bound = abs(self.rate) * rmax + abs(base) + 2.0 * math.pi
        kmax = int(bound / (2.0 * math.pi)) + 2
        for k in range(-kmax, kmax + 1):
            z = (base + 2j * math.pi * k) / self.rate
            if abs(z) <= rmax:
                out.append(z)
        out.sort(key=lambda z: (abs(z), z.real, z.imag))
        return out

    def describe(self):
        return {"kind": self.kind, "rate": format_complex(self.rate),
                "scale": format_complex(self.scale)}


class SeriesBody(Body):
    """Power series sum c_n z^n with geometric majorant |c_n| <= M rho^-n.

    Evaluation truncates at a tail bound below 1e-12 and refuses (raises
    PrecisionError) when the requested radius makes that bound unattainable
    within the term budget, or when r >= rho.
    """

    kind = "series"

    def __init__(self, coeff_fn, majorant_m, majorant_rho, label="series"):
        self.coeff_fn = coeff_fn
        self.M = float(majorant_m)
        self.rho = float(majorant_rho)
        self.label = label
        if self.M <= 0 or self.rho <= 0:
            raise DegenerateInputError("majorant must be positive")
        self._coeffs = np.array([complex(coeff_fn(n)) for n in range(64)])

    def _ensure(self, n):
        have = len(self._coeffs)
        if n > have:
            extra = np.array([complex(self.coeff_fn(k))
                              for k in range(have, n)])
            self._coeffs = np.concatenate([self._coeffs, extra])
        return self._coeffs[:n]

    def _required_terms(self, r, order):
        x = r / self.rho
        if x >= 1.0:
            raise PrecisionError(
                "series %r evaluated at radius %g >= majorant radius %g"
                % (self.label, r, self.rho))
        if x < 1e-12:
            return 8 + order
        xp = (1.0 + x) / 2.0
        logx = math.log(x)

        def tail(k):
            # sum_{n>k} M n^order x^n <= M (k+1)^order x^(k+1) / (1-xp)
            # once the term ratio is below xp
            return (self.M * math.exp(order * math.log(k + 1) + (k + 1) * logx)
                    / (1.0 - xp))

        k = 64 + order
        if order:
            k = max(k, int(order / math.log((1.0 + x) / (2.0 * x))) + 1)
        while tail(k) > _TRUNC_TOL:
            k = int(k * 1.3) + 8
            if k > _MAX_SERIES_TERMS:
                raise PrecisionError(
                    "series %r needs more than %d terms at radius %g; "
                    "truncation would be unsound" %
                    (self.label, _MAX_SERIES_TERMS, r))
        return k + 1

    def eval_many(self, zs):
        n = self._required_terms(float(np.max(np.abs(zs))), 0)
        return _poly_vals(self._ensure(n), zs)

    def pair_many(self, zs):
        f = self.eval_many(zs)
        return (np.ones_like(zs, dtype=complex), f,
                np.zeros(zs.shape, dtype=float))

    def pair_jets_many(self, zs, order):
        n = self._required_terms(float(np.max(np.abs(zs))), order)
        num = _poly_jets(self._ensure(n), zs, order)
        den = [np.ones_like(zs, dtype=complex)] + \
            [np.zeros_like(zs, dtype=complex) for _ in range(order)]
        return den, num

    def rep_norm_log_many(self, zs):
        f = self.eval_many(zs)
        return 0.5 * np.log1p(np.abs(f) ** 2)

    def describe(self):
        return {"kind": self.kind, "label": self.label,
                "majorant_m": self.M, "majorant_rho": self.rho}


class LambdaBody(Body):
    """Modular lambda precomposed with the Cayley map, on the unit disc.

    Omits 0, 1, inf; universal covering of the thrice-punctured sphere,
    hence nowhere-critical (d lambda / d tau = i pi lambda (1 - lambda)
    theta3(tau)^4 has no zeros on the upper half plane).
    """

    kind = "modular-lambda"

    def eval(self, z):
        return modular.lambda_affine(complex(z))

    def eval_many(self, zs):
        flat = zs.ravel()
        out = np.array([modular.lambda_affine(complex(z)) for z in flat])
        return out.reshape(zs.shape)

    def pair_many(self, zs):
        flat = zs.ravel()
        den = np.empty(flat.shape, dtype=complex)
        num = np.empty(flat.shape, dtype=complex)
        scale = np.empty(flat.shape, dtype=float)
        for i, z in enumerate(flat):
            l0, l1 = modular.lambda_log_pair(complex(z))
            s = max(l0.real, l1.real)
            den[i] = cmath.exp(l0 - s) if l0.real - s > -745.0 else 0j
            num[i] = cmath.exp(l1 - s) if l1.real - s > -745.0 else 0j
            scale[i] = s
        return (den.reshape(zs.shape), num.reshape(zs.shape),
                scale.reshape(zs.shape))

    def pair_jets_many(self, zs, order):
        flat = zs.ravel()
        den = [np.empty(flat.shape, dtype=complex) for _ in range(order + 1)]
        num = [np.empty(flat.shape, dtype=complex) for _ in range(order + 1)]
        for i, z in enumerate(flat):
            dj, nj, _ = modular.lambda_pair_jets(complex(z), order)
            for k in range(order + 1):
                den[k][i] = dj[k]
                num[k][i] = nj[k]
        return ([a.reshape(zs.shape) for a in den],
                [a.reshape(zs.shape) for a in num])

    def pair_combo_log_many(self, zs, alpha, beta):
        """log(alpha * den + beta * num) per point, true normalization.

        Stable where the affine combination cancels to far below float
        resolution relative to the pair (lambda pinches onto 0, 1, or inf
        superexponentially fast near the boundary cusps).
        """
        flat = zs.ravel()
        out = np.empty(flat.shape, dtype=complex)
        for i, z in enumerate(flat):
            out[i] = modular.lambda_combo_log(complex(z), alpha, beta)
        return out.reshape(zs.shape)

    def rep_norm_log_many(self, zs):
        # canonical global pair (1, lambda); lambda never infinite on the disc
        flat = zs.ravel()
        out = np.empty(flat.shape, dtype=float)
        for i, z in enumerate(flat):
            l0, l1 = modular.lambda_log_pair(complex(z))
            x = (l1 - l0).real
            m = max(x, 0.0)
            out[i] = m + 0.5 * math.log(
                math.exp(-2.0 * m) + math.exp(2.0 * (x - m)))
        return out.reshape(zs.shape)

    def eval_jet(self, z, order):
        return modular.lambda_jet(complex(z), order)

    def describe(self):
        return {"kind": self.kind}


class TorusLiftBody(Body):
    """Map into C/(Z w1 + Z w2) given by an entire lift into C."""

    kind = "torus-lift"

    def __init__(self, lift_body, geom):
        self.lift = lift_body
        self.geom = geom

    def eval_many(self, zs):
        return self.lift.eval_many(zs)

    def lift_jets_many(self, zs, order):
        dj, nj = self.lift.pair_jets_many(zs, order)
        return jet_div(nj, dj)

    def pair_many(self, zs):
        raise DomainError("torus targets have no projective pair")

    def pair_jets_many(self, zs, order):
        raise DomainError("torus targets have no projective pair")

    def rep_norm_log_many(self, zs):
        raise DomainError(
            "no global projective representation on a torus target; "
            "use the area characteristic")

    def eval_jet(self, z, order):
        return self.lift.eval_jet(z, order)

    def describe(self):
        return {"kind": self.kind, "lift": self.lift.describe(),
                "w1": format_complex(self.geom.w1),
                "w2": format_complex(self.geom.w2)}


class DerivativeBody(Body):
    """f^{(k)} of a parent body, evaluated through jets."""

    kind = "derivative"

    def __init__(self, parent, k):
        self.parent = parent
        self.k = int(k)
        if self.k < 1:
            raise ConfigError("derivative order must be >= 1")

    def eval_many(self, zs):
        dj, nj = self.parent.pair_jets_many(zs, self.k)
        jet = jet_div(nj, dj)
        return jet[self.k] * math.factorial(self.k)

    def pair_many(self, zs):
        f = self.eval_many(zs)
        return (np.ones_like(zs, dtype=complex), f,
                np.zeros(zs.shape, dtype=float))

    def pair_jets_many(self, zs, order):
        dj, nj = self.parent.pair_jets_many(zs, order + self.k)
        jet = jet_div(nj, dj)
        num = _jet_of_derivative(jet, self.k)
        den = [np.ones_like(zs, dtype=complex)] + \
            [np.zeros_like(zs, dtype=complex) for _ in range(order)]
        return den, num

    def rep_norm_log_many(self, zs):
        f = self.eval_many(zs)
        return 0.5 * np.log1p(np.abs(f) ** 2)

    def describe(self):
        return {"kind": self.kind, "order": self.k,
                "parent": self.parent.describe()}


# ---------------------------------------------------------------------------
# target geometries
# ---------------------------------------------------------------------------

class FubiniStudy:
    """P^1 with the mass-one spherical form; chordal point targets."""

    kind = "p1-fs"
    curvature_coeff = 2.0

    def area_density(self, holo, zs):
        dj, nj = holo.pair_jets_many(zs, 1)
        p, p1 = dj[0], dj[1]
        q, q1 = nj[0], nj[1]
        s = np.maximum(np.abs(p), np.abs(q))
        s = np.where(s == 0, 1.0, s)
        ph, qh, p1h, q1h = p / s, q / s, p1 / s, q1 / s
        w = ph * q1h - qh * p1h
        nrm = np.abs(ph) ** 2 + np.abs(qh) ** 2
        return (np.abs(w) ** 2 / nrm ** 2) / math.pi

    def proximity_values(self, holo, target, zs):
        """log(1/chordal dist), i.e. u_a/2, at each point."""
        ph, qh, sc = holo.pair_many(zs)
        nrm = 0.5 * np.log(np.abs(ph) ** 2 + np.abs(qh) ** 2)
        carrier = getattr(holo, "body", holo)
        combo = getattr(carrier, "pair_combo_log_many", None)
        if combo is not None:
            # cancellation-free |num - a*den| straight from the body; the
            # subtraction below turns to noise (or exact zero over whole
            # bands) once the value pinches onto the target faster than
            # float resolution.
            if is_inf_target(target):
                lg = combo(zs, 1.0 + 0j, 0j)
                extra = 0.0
            else:
                lg = combo(zs, -complex(target), 1.0 + 0j)
                extra = 0.5 * math.log1p(abs(target) ** 2)
            return sc + nrm + extra - np.real(lg)
        with np.errstate(divide="ignore"):
            if is_inf_target(target):
                return nrm - np.log(np.abs(ph))
            return (nrm + 0.5 * math.log1p(abs(target) ** 2)
                    - np.log(np.abs(qh - target * ph)))

    def chordal_distance(self, value, target):
        if is_inf_target(target):
            if is_inf_target(value):
                return 0.0
            return 1.0 / math.sqrt(1.0 + abs(value) ** 2)
        if is_inf_target(value):
            return 1.0 / math.sqrt(1.0 + abs(target) ** 2)
        return (abs(value - target)
                / math.sqrt((1.0 + abs(value) ** 2)
                            * (1.0 + abs(target) ** 2)))

    def describe(self):
        return {"kind": self.kind}


class TorusFlat:
    """Flat torus with the mass-one area form; Green-function targets."""

    kind = "torus-flat"
    curvature_coeff = 0.0

    def __init__(self, w1, w2):
        self.geom = modular.torus_geometry(w1, w2)

    def area_density(self, holo, zs):
        jets = holo.body.lift_jets_many(zs, 1)
        return np.abs(jets[1]) ** 2 / self.geom.volume

    def proximity_values(self, holo, target, zs):
        w = holo.body.eval_many(zs)
        return 0.5 * modular.torus_green(w, complex(target), self.geom,
                                         normalization="positive")

    def describe(self):
        return {"kind": self.kind, "w1": format_complex(self.geom.w1),
                "w2": format_complex(self.geom.w2)}


class PoincarePullback:
    """Negatively curved target; admissible only with a covering certificate.

    The target carries its complete hyperbolic metric normalized so that the
    pullback under a covering from the unit disc is (2/pi) (1-|z|^2)^{-2} dA.
    Point targets are out of scope here (maps in this geometry omit them all).
    """

    kind = "poincare-pullback"
    curvature_coeff = -1.0

    def area_density(self, holo, zs):
        if not holo.meta.get("disc_covering"):
            raise DomainError(
                "poincare-pullback density requires a covering certificate "
                "on the map")
        s2 = np.abs(zs) ** 2
        return (2.0 / math.pi) / (1.0 - s2) ** 2

    def proximity_values(self, holo, target, zs):
        raise DomainError("point targets are not defined for the "
                          "poincare-pullback geometry")

    def describe(self):
        return {"kind": self.kind}


# ---------------------------------------------------------------------------
# maps and the gallery
# ---------------------------------------------------------------------------

@dataclass
class HoloMap:
    name: str
    disc: Disc
    body: Body
    geometry: object
    default_targets: tuple = ()
    meta: dict = field(default_factory=dict)

    def eval(self, z):
        if abs(z) >= self.disc.radius:
            raise DomainError("point outside the disc of definition")
        return self.body.eval(z)

    def eval_many(self, zs):
        return self.body.eval_many(np.asarray(zs, dtype=complex))

    def eval_jet(self, z, order):
        return self.body.eval_jet(z, order)

    def pair_many(self, zs):
        return self.body.pair_many(np.asarray(zs, dtype=complex))

    def pair_jets_many(self, zs, order):
        return self.body.pair_jets_many(np.asarray(zs, dtype=complex), order)

    def rep_norm_log_many(self, zs):
        return self.body.rep_norm_log_many(np.asarray(zs, dtype=complex))

    def derivative(self, k=1):
        return HoloMap(
            name="%s-D%d" % (self.name, k),
            disc=self.disc,
            body=self.body.derivative(k),
            geometry=FubiniStudy(),
            default_targets=(),
            meta={"derived_from": self.name, "order": k},
        )

    def area_density(self, zs):
        return self.geometry.area_density(self, np.asarray(zs, dtype=complex))

    def proximity_values(self, target, zs):
        return self.geometry.proximity_values(
            self, target, np.asarray(zs, dtype=complex))

    def describe(self):
        return {
            "name": self.name,
            "radius": ("inf" if not self.disc.bounded else self.disc.radius),
            "body": self.body.describe(),
            "geometry": self.geometry.describe(),
            "default_targets": [format_complex(a)
                                for a in self.default_targets],
            "meta": {k: v for k, v in self.meta.items()
                     if isinstance(v, (str, bool, int, float))},
        }


def _gallery_builders():
    inf = math.inf

    def mk_z():
        return HoloMap(
            "z", Disc(inf), RationalBody([0, 1]), FubiniStudy(),
            (parse_complex("1"), TARGET_INF),
            {"description": "identity map of the plane",
             "closed_form_T": "log(1+r^2)/2", "disc_covering": False})

    def mk_z2():
        return HoloMap(
            "z2", Disc(inf), RationalBody([0, 0, 1]), FubiniStudy(),
            (parse_complex("0.25"), TARGET_INF),
            {"description": "squaring map of the plane",
             "closed_form_T": "log(1+r^4)/2"})

    def mk_z2q():
        return HoloMap(
            "z2-minus-quarter", Disc(inf),
            RationalBody(["-1/4", 0, 1]), FubiniStudy(),
            (parse_complex("0"), TARGET_INF),
            {"description": "squaring map shifted by -1/4; "
             "simple zeros at +-1/2"})

    def mk_mobius():
        return HoloMap(
            "mobius", Disc(inf),
            RationalBody(["-1/2", 1], [2, 1]), FubiniStudy(),
            (parse_complex("0"), TARGET_INF),
            {"description": "moebius map (z-1/2)/(z+2); degree one"})

    def mk_exp():
        return HoloMap(
            "exp", Disc(inf), ExpBody(1.0, 1.0), FubiniStudy(),
            (parse_complex("0"), parse_complex("1"), TARGET_INF),
            {"description": "exponential map; omits 0 and infinity",
             "ram_free": "representation Wronskian e^z never vanishes"})

    def mk_lambda_fs():
        return HoloMap(
            "lambda-fs", Disc(1.0), LambdaBody(), FubiniStudy(),
            (parse_complex("0"), parse_complex("1"), TARGET_INF),
            {"description": "modular lambda on the unit disc, spherical "
             "targets; omits 0, 1, infinity",
             "ram_free": "covering map: d lambda/d tau = i pi lambda "
             "(1-lambda) theta3^4 has no zeros",
             "disc_covering": True})

    def mk_lambda_poincare():
        return HoloMap(
            "lambda-poincare", Disc(1.0), LambdaBody(), PoincarePullback(),
            (),
            {"description": "modular lambda as the universal covering of "
             "the thrice-punctured sphere with its hyperbolic metric",
             "ram_free": "covering map: d lambda/d tau = i pi lambda "
             "(1-lambda) theta3^4 has no zeros",
             "disc_covering": True})

    def mk_disc_identity():
        return HoloMap(
            "disc-identity-poincare", Disc(1.0), RationalBody([0, 1]),
            PoincarePullback(), (),
            {"description": "identity of the unit disc with its hyperbolic "
             "metric; the sharpness witness for growth index one",
             "closed_form_T": "log(1/(1-r^2))",
             "ram_free": "derivative is constant 1",
             "disc_covering": True})

    def mk_torus():
        return HoloMap(
            "torus-proj", Disc(inf),
            TorusLiftBody(RationalBody([0, 1]),
                          modular.torus_geometry(1.0, 1j)),
            TorusFlat(1.0, 1j),
            (parse_complex("0.5+0.5i"),),
            {"description": "projection of the plane onto the square torus "
             "C/(Z + Zi)",
             "closed_form_T": "pi r^2/2",
             "ram_free": "lift derivative is constant 1"})

    def mk_geom_series():
        return HoloMap(
            "geom-series", Disc(1.0),
            SeriesBody(lambda n: 1.0, 1.0, 1.0, label="geom-series"),
            FubiniStudy(),
            (parse_complex("0"), TARGET_INF),
            {"description": "geometric series 1/(1-z) represented by its "
             "power series with majorant M=1, rho=1; bounded characteristic"})

    return {
        "z": mk_z,
        "z2": mk_z2,
        "z2-minus-quarter": mk_z2q,
        "mobius": mk_mobius,
        "exp": mk_exp,
        "lambda-fs": mk_lambda_fs,
        "lambda-poincare": mk_lambda_poincare,
        "disc-identity-poincare": mk_disc_identity,
        "torus-proj": mk_torus,
        "geom-series": mk_geom_series,
    }


_BUILDERS = _gallery_builders()
_cache = {}


def gallery_names():
    return sorted(_BUILDERS)


def get_map(name):
    if name not in _BUILDERS:
        raise ConfigError("unknown map %r; available: %s"
                          % (name, ", ".join(gallery_names())))
    if name not in _cache:
        _cache[name] = _BUILDERS[name]()
    return _cache[name]


def gallery_manifest():
    """Machine-readable description of every gallery map."""
    return [get_map(name).describe() for name in gallery_names()]
