"""Zero location and integrated counting functions.

Preimage divisors f = a are computed exactly when the body is rational
(Yun squarefree decomposition over Gaussian rationals gives exact
multiplicities; factors of degree <= 2 are solved in closed form) or
exponential (branch enumeration), by lattice enumeration on torus targets,
and otherwise by a certified quadtree: rectangle windings via the argument
principle isolate zeros, damped Newton on g/g' polishes them, and a small
circle winding certifies each multiplicity, with the global sum checked
against the disc winding.

Counting functions use
    N(r) = sum_{0<|z_j|<=r} min(mult_j, k) log(r/|z_j|) + min(m_0, k) log r
with the origin term active only when requested (origin='log-correction');
by default a divisor point at the origin raises OriginHitsTargetError.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (ComputationError, ConvergenceError, DomainError,
                     OriginHitsTargetError, ZeroOnCircleError)
from .funcrep import (ExpBody, RationalBody, TorusLiftBody, format_complex,
                      is_inf_target)
from .rationals import (QC, pdegree, pderiv, pdivmod, pgcd, pnormalize,
                        proot_order, pscale, psub, peval_exact)

_ORIGIN_TOL = 1e-12
_MAX_CONTOUR_ATTEMPTS = 5


@dataclass(frozen=True)
class ZeroRecord:
    z: complex
    mult: int
    method: str


def _qc_from_complex(a):
    return QC(Fraction(a.real), Fraction(a.imag))


# ---------------------------------------------------------------------------
# exact rational path
# ---------------------------------------------------------------------------

def squarefree_factors(p):
    """Yun decomposition: list of (squarefree factor, multiplicity)."""
    p = pnormalize(list(p))
    deg = pdegree(p)
    if deg < 1:
        return []
    g = pgcd(p, pderiv(p))
    if pdegree(g) < 1:
        return [(p, 1)]
    b, _ = pdivmod(p, g)
    c, _ = pdivmod(pderiv(p), g)
    d = pnormalize(psub(c, pderiv(b)))
    out = []
    i = 1
    while pdegree(b) > 0:
        a = pgcd(b, d)
        if pdegree(a) > 0:
            out.append((a, i))
            b, _ = pdivmod(b, a)
            c, _ = pdivmod(d, a)
        else:
            c = d
        d = pnormalize(psub(c, pderiv(b)))
        i += 1
        if i > deg + 2:
            raise ComputationError("squarefree decomposition did not terminate")
    return out


def _horner_c(coeffs, z):
    acc = 0j
    for c in coeffs[::-1]:
        acc = acc * z + c
    return acc


def _roots_of_squarefree(p):
    """Roots of an exact squarefree QC polynomial, as polished floats."""
    deg = pdegree(p)
    if deg < 1:
        return []
    if deg == 1:
        return [(-(p[0] / p[1])).to_complex()]
    if deg == 2:
        a2, a1, a0 = p[2], p[1], p[0]
        disc = a1 * a1 - QC(4) * a2 * a0
        sq = cmath.sqrt(disc.to_complex())
        den = 2.0 * a2.to_complex()
        b = a1.to_complex()
        return [(-b + sq) / den, (-b - sq) / den]
    pf = [c.to_complex() for c in p]
    df = [c.to_complex() for c in pderiv(p)]
    out = []
    for z in np.roots(np.array(pf[::-1])):
        z = complex(z)
        for _ in range(3):
            dv = _horner_c(df, z)
            if dv == 0:
                break
            z = z - _horner_c(pf, z) / dv
        out.append(z)
    return out


def _exact_poly_divisor(g, rmax, method):
    """ZeroRecords of an exact QC polynomial inside |z| <= rmax."""
    recs = []
    for factor, mult in squarefree_factors(g):
        for z in _roots_of_squarefree(factor):
            if abs(z) <= rmax:
                recs.append(ZeroRecord(z, mult, method))
    if pdegree(g) >= 1 and not peval_exact(g, QC(0)):
        m0 = proot_order(g, QC(0))
        recs = [r for r in recs if abs(r.z) > _ORIGIN_TOL]
        recs.append(ZeroRecord(0j, m0, method))
    return recs


def _rational_divisor(body, target, rmax):
    """Exact zeros of num - a den (or den for a = inf) with |z| <= rmax."""
    if is_inf_target(target):
        g = list(body.den_qc)
    else:
        aq = _qc_from_complex(complex(target))
        g = pnormalize(psub(list(body.num_qc),
                            pscale(list(body.den_qc), aq)))
    if pdegree(g) < 0:
        raise DomainError("map is identically equal to the target")
    return _exact_poly_divisor(g, rmax, "exact-rational")


# ---------------------------------------------------------------------------
# torus lattice enumeration
# ---------------------------------------------------------------------------

def _torus_divisor(body, target, rmax):
    geom = body.geom
    a = complex(target)
    if math.isinf(a.real) or math.isinf(a.imag):
        return []  # a torus-valued map never attains a point at infinity
    lift = body.lift
    if not isinstance(lift, RationalBody) or pdegree(lift.den_qc) != 0:
        raise DomainError("torus preimages need a polynomial lift")
    bound = sum(abs(c.to_complex()) * rmax ** k
                for k, c in enumerate(lift.num_qc))
    w1, w2 = geom.w1, geom.w2
    reach = bound + abs(a) + abs(w1) + abs(w2)
    # reduced basis: the angle between w1 and w2 is at least 60 degrees
    m_max = int(reach / (abs(w1) * 0.8)) + 2
    n_max = int(reach / (abs(w2) * 0.8)) + 2
    recs = []
    for mm in range(-m_max, m_max + 1):
        for nn in range(-n_max, n_max + 1):
            val = a + mm * w1 + nn * w2
            if abs(val) > bound + 1e-9:
                continue
            shifted = pnormalize(psub(list(lift.num_qc),
                                      pscale(list(lift.den_qc),
                                             _qc_from_complex(val))))
            if pdegree(shifted) < 1:
                continue
            recs.extend(_exact_poly_divisor(shifted, rmax, "torus-lattice"))
    return recs


# ---------------------------------------------------------------------------
# winding numbers and the quadtree
# ---------------------------------------------------------------------------

def _winding_on_path(fn, points, max_refine=18):
    """Winding of fn along a closed polyline, adaptively refined.

    Refines each segment until consecutive argument steps stay below pi/3.
    Raises ZeroOnCircleError if |fn| collapses on the contour.
    """
    pts = list(points) + [points[0]]
    vals = list(fn(np.asarray(pts, dtype=complex)))
    scale = max(abs(v) for v in vals)
    if scale == 0 or not math.isfinite(scale):
        raise ZeroOnCircleError("function degenerate on the contour")
    floor = 1e-13 * scale
    total = 0.0
    for i in range(len(pts) - 1):
        sub = [pts[i], pts[i + 1]]
        subv = [vals[i], vals[i + 1]]
        for depth in range(max_refine + 1):
            if any(abs(v) < floor for v in subv):
                raise ZeroOnCircleError("zero too close to the contour")
            steps = [cmath.phase(subv[k + 1] / subv[k])
                     for k in range(len(subv) - 1)]
            if all(abs(s) < math.pi / 3.0 for s in steps):
                total += sum(steps)
                break
            if depth == max_refine:
                raise ConvergenceError("argument tracking failed to refine")
            mids = [0.5 * (sub[k] + sub[k + 1]) for k in range(len(sub) - 1)]
            midv = list(fn(np.asarray(mids, dtype=complex)))
            nsub = []
            nval = []
            for k in range(len(mids)):
                nsub.extend([sub[k], mids[k]])
                nval.extend([subv[k], midv[k]])
            nsub.append(sub[-1])
            nval.append(subv[-1])
            sub, subv = nsub, nval
    w = total / (2.0 * math.pi)
    wi = int(round(w))
    if abs(w - wi) > 0.1:
        raise ConvergenceError("winding number did not settle: %g" % w)
    return wi


def _winding_circle(fn, center, radius, samples=96):
    """Zeros minus poles of fn inside the circle, by the argument principle."""
    theta = np.linspace(0.0, 2.0 * math.pi, samples, endpoint=False)
    pts = center + radius * np.exp(1j * theta)
    return _winding_on_path(fn, pts)


def _arc_points(r, t0, t1):
    """Arc vertices including both endpoints; sampling depends only on the
    edge data, so the two regions sharing an edge see identical chords."""
    n = max(9, int(math.ceil(48.0 * abs(t1 - t0) / (2.0 * math.pi))) + 1)
    return r * np.exp(1j * np.linspace(t0, t1, n))


def _radial_points(t, r0, r1):
    return np.linspace(r0, r1, 9) * np.exp(1j * t)


def _region_contour(reg):
    """Closed CCW polyline; shared edges reuse the same vertex sets so the
    polar tiling is gap-free."""
    if reg[0] == "disc":
        rho = reg[1]
        arcs = [_arc_points(rho, k * math.pi / 2.0, (k + 1) * math.pi / 2.0)
                for k in range(4)]
        return np.concatenate([arcs[0], arcs[1][1:], arcs[2][1:],
                               arcs[3][1:-1]])
    _, r0, r1, t0, t1 = reg
    if r0 <= 0.0:
        raise ValueError("sector must not touch the origin")
    up = _radial_points(t0, r0, r1)
    outer = _arc_points(r1, t0, t1)
    down = _radial_points(t1, r0, r1)[::-1]
    inner = _arc_points(r0, t0, t1)[::-1]
    return np.concatenate([up, outer[1:], down[1:], inner[1:-1]])


def _region_diameter(reg):
    if reg[0] == "disc":
        return 2.0 * reg[1]
    _, r0, r1, t0, t1 = reg
    return max(r1 - r0, r1 * (t1 - t0))


def _region_center(reg):
    if reg[0] == "disc":
        return 0j
    _, r0, r1, t0, t1 = reg
    return 0.5 * (r0 + r1) * cmath.exp(0.5j * (t0 + t1))


def _region_contains(reg, z, slack):
    if reg[0] == "disc":
        return abs(z) <= reg[1] + slack
    _, r0, r1, t0, t1 = reg
    az = abs(z)
    if not (r0 - slack <= az <= r1 + slack):
        return False
    ang_slack = slack / max(az, 1e-300)
    t = cmath.phase(z)
    for shift in (-2.0 * math.pi, 0.0, 2.0 * math.pi):
        if t0 - ang_slack <= t + shift <= t1 + ang_slack:
            return True
    return False


def _region_children(reg, jitter):
    f = 0.5 + 0.037 * jitter
    if reg[0] == "disc":
        rho = reg[1]
        rin = rho * f
        kids = [("disc", rin)]
        t_off = 0.1234567 + 0.05 * jitter
        for k in range(4):
            kids.append(("sector", rin, rho,
                         t_off + k * math.pi / 2.0,
                         t_off + (k + 1) * math.pi / 2.0))
        return kids
    _, r0, r1, t0, t1 = reg
    rm = r0 + (r1 - r0) * f
    tm = t0 + (t1 - t0) * f
    return [("sector", r0, rm, t0, tm), ("sector", r0, rm, tm, t1),
            ("sector", rm, r1, t0, tm), ("sector", rm, r1, tm, t1)]


def _quadtree_zeros(g_fn, jet_fn, rmax, m_max=4):
    """Certified zeros of g inside |z| <= rmax via polar subdivision.

    All contour evaluations stay inside |z| <= rmax, so bounded discs of
    definition are safe.
    """
    scale = max(rmax, 1.0)
    min_box = 1e-9 * scale
    newton_size = 1e-4 * scale

    def newton_polish(z0, box_size):
        z = complex(z0)
        jet = None
        for _ in range(80):
            jet = jet_fn(z)
            g0, g1, g2 = jet[0], jet[1], 2.0 * jet[2]
            if g0 == 0:
                return z
            if g1 == 0:
                return None
            u = g0 / g1
            up = 1.0 - g0 * g2 / (2.0 * g1 * g1)
            if up == 0:
                return None
            step = u / up
            if abs(step) > 2.0 * box_size:
                step *= 2.0 * box_size / abs(step)
            z_new = z - step
            if abs(z_new - z) < 1e-14 * max(1.0, abs(z)):
                return z_new
            z = z_new
        return z if abs(jet_fn(z)[0]) < 1e-8 else None

    def certify(z):
        for rad in (1e-7 * scale, 1e-6 * scale, 1e-5 * scale):
            try:
                return _winding_circle(g_fn, z, rad, samples=32)
            except ZeroOnCircleError:
                continue
        return None

    def process(reg, w):
        if w == 0:
            return []
        diam = _region_diameter(reg)
        center = _region_center(reg)
        if diam <= newton_size and 0 < w <= m_max:
            z = newton_polish(center, diam)
            if z is not None and _region_contains(reg, z, 0.5 * diam) \
                    and abs(z) <= rmax * (1.0 + 1e-9):
                m = certify(z)
                if m == w:
                    return [ZeroRecord(z, m, "quadtree-newton")]
        if diam <= min_box:
            return [ZeroRecord(center, max(w, 1), "quadtree-cluster")]
        last_err = None
        for jitter in range(_MAX_CONTOUR_ATTEMPTS):
            try:
                kids = _region_children(reg, jitter)
                kw = [_winding_on_path(g_fn, _region_contour(k))
                      for k in kids]
                if sum(kw) != w:
                    raise ConvergenceError(
                        "children windings %r do not sum to %d" % (kw, w))
                out = []
                for k, wk in zip(kids, kw):
                    out.extend(process(k, wk))
                return out
            except (ZeroOnCircleError, ConvergenceError) as err:
                last_err = err
                continue
        raise ConvergenceError(
            "polar subdivision failed near %s: %s" % (center, last_err))

    total = None
    for attempt in range(_MAX_CONTOUR_ATTEMPTS):
        try:
            total = _winding_on_path(
                g_fn, _region_contour(("disc", rmax * (1.0 - 1e-9 * attempt))))
            break
        except ZeroOnCircleError:
            continue
    if total is None:
        raise ZeroOnCircleError(
            "could not find a zero-free bounding circle near r=%g" % rmax)
    if total == 0:
        return []

    found = process(("disc", rmax), total)
    if sum(r.mult for r in found) != total:
        raise ConvergenceError(
            "multiplicity sum %d does not match disc winding %d"
            % (sum(r.mult for r in found), total))
    return found


# ---------------------------------------------------------------------------
# public interface
# ---------------------------------------------------------------------------

_divisor_cache = {}


def winding_count(holo, t, a=0.0, samples=96):
    """Exact count of solutions of f = a in |z| < t, with multiplicity.

    Computed by the argument principle on the circle |z| = t; for a at
    infinity the winding of the denominator of the pair representation
    counts poles.  Raises ZeroOnCircleError when a solution sits on the
    circle (callers retry at t * (1 +- 1e-6)).
    """
    t = float(t)
    body = holo.body
    if is_inf_target(a):
        def g_fn(zs):
            dj, _ = body.pair_jets_many(np.asarray(zs, dtype=complex), 0)
            return dj[0]
    else:
        aa = complex(a)

        def g_fn(zs):
            return holo.eval_many(np.asarray(zs, dtype=complex)) - aa
    return _winding_circle(g_fn, 0.0, t, samples=samples)


def locate_zeros(holo, t, a=0.0):
    """Certified ZeroRecords of f = a in |z| <= t.

    Multiplicities are certified (exactly for rational and lattice maps,
    by small-circle windings otherwise) and their sum matches the disc
    winding count.
    """
    return preimage_divisor(holo, a, float(t))


def preimage_divisor(holo, target, rmax):
    """Sorted ZeroRecords of f = target with |z| <= rmax (cached)."""
    key = (holo.name, format_complex(target))
    cached = _divisor_cache.get(key)
    if cached is not None and cached[0] >= rmax:
        return [r for r in cached[1] if abs(r.z) <= rmax]
    body = holo.body
    if isinstance(body, RationalBody):
        recs = _rational_divisor(body, target, rmax)
    elif isinstance(body, ExpBody):
        recs = [ZeroRecord(z, 1, "exp-branches")
                for z in body.preimages(target, rmax)]
    elif isinstance(body, TorusLiftBody):
        recs = _torus_divisor(body, target, rmax)
    else:
        if is_inf_target(target):
            raise DomainError(
                "numeric pole search unsupported; series bodies are "
                "holomorphic on their disc")

        def g_fn(zs):
            return holo.eval_many(np.asarray(zs, dtype=complex)) - target

        def jet_fn(z):
            jet = holo.eval_jet(z, 2)
            return [jet[0] - target, jet[1], jet[2]]
        recs = _quadtree_zeros(g_fn, jet_fn, rmax)
    recs.sort(key=lambda rec: (abs(rec.z), rec.z.real, rec.z.imag))
    _divisor_cache[key] = (rmax, recs)
    return recs


def split_origin(records):
    """(origin multiplicity, nonorigin records)."""
    m0 = 0
    rest = []
    for rec in records:
        if abs(rec.z) <= _ORIGIN_TOL:
            m0 += rec.mult
        else:
            rest.append(rec)
    return m0, rest


def divisor_counting(records, radii, truncation=None):
    """Integrated counting N(r) of an explicit divisor.

    A divisor point at the origin contributes mult * log(r) (the standard
    log-corrected convention).  truncation=k counts each point at most k
    times.
    """
    radii = np.asarray(radii, dtype=float)
    cap = (lambda m: m) if truncation is None else (
        lambda m: min(m, int(truncation)))
    N = np.zeros_like(radii)
    for rec in records:
        az = abs(rec.z)
        if az <= _ORIGIN_TOL:
            N = N + cap(rec.mult) * np.log(radii)
            continue
        mask = radii >= az
        N[mask] += cap(rec.mult) * np.log(radii[mask] / az)
    return N


def counting_function(holo, target, radii, truncation=None, origin="error"):
    """Integrated counting function N(r) on the given radii.

    Returns dict with 'N' (array), 'records', 'origin_mult'.  truncation=k
    counts each zero at most k times; origin='log-correction' adds
    min(m0, k) log r for a divisor point at the origin instead of raising.
    """
    radii = np.asarray(radii, dtype=float)
    recs = preimage_divisor(holo, target, float(radii[-1]))
    m0, rest = split_origin(recs)
    if m0 and origin == "error":
        raise OriginHitsTargetError(
            "f(0) lies on the target divisor (multiplicity %d); pass "
            "origin='log-correction' for the corrected counting function"
            % m0)
    N = divisor_counting(recs, radii, truncation=truncation)
    return {"N": N, "records": rest, "origin_mult": m0}


def unintegrated_count(holo, target, r):
    """n(r): number of preimages with |z| <= r, with multiplicity."""
    recs = preimage_divisor(holo, target, float(r))
    return sum(rec.mult for rec in recs)


def ramification_records(holo, rmax):
    """Divisor of the Wronskian of the reduced pair (certificates honored)."""
    cert = holo.meta.get("ram_free")
    if cert:
        return [], cert
    body = holo.body
    if isinstance(body, RationalBody):
        w = body.wronskian_qc()
        if pdegree(w) < 0:
            raise DomainError("degenerate map: Wronskian vanishes identically")
        if pdegree(w) == 0:
            return [], "wronskian is a nonzero constant"
        recs = _exact_poly_divisor(w, rmax, "exact-wronskian")
        recs.sort(key=lambda rec: (abs(rec.z), rec.z.real, rec.z.imag))
        return recs, None
    if isinstance(body, TorusLiftBody):
        lift = body.lift
        if isinstance(lift, RationalBody):
            wq = lift.derivative(1).num_qc
            if pdegree(wq) < 0:
                raise DomainError("degenerate lift: derivative vanishes")
            if pdegree(wq) == 0:
                return [], "lift derivative is a nonzero constant"
            recs = _exact_poly_divisor(wq, rmax, "exact-lift")
            recs.sort(key=lambda rec: (abs(rec.z), rec.z.real, rec.z.imag))
            return recs, None
        raise DomainError("ramification of a non-polynomial lift "
                          "needs a certificate")
    raise DomainError(
        "no exact ramification path for body kind %r and no certificate"
        % body.kind)


def ramification_counting(holo, radii):
    """N_ram(r) from the Wronskian divisor (with origin log convention).

    Accepts a map or a projective curve; for a curve the divisor is the
    exact polynomial factor of its full Wronskian.
    """
    radii = np.asarray(radii, dtype=float)
    if hasattr(holo, "comps") and hasattr(holo, "n"):
        from .projcurve import associated_curve
        top = associated_curve(holo, holo.n)
        if pdegree(top.gcd) >= 1:
            recs = _exact_poly_divisor(top.gcd, float(radii[-1]),
                                       "exact-wronskian")
            recs.sort(key=lambda rec: (abs(rec.z), rec.z.real, rec.z.imag))
            cert = None
        else:
            recs = []
            cert = "wronskian divisor is empty (unit factor)"
    else:
        recs, cert = ramification_records(holo, float(radii[-1]))
    m0, rest = split_origin(recs)
    N = np.zeros_like(radii)
    for rec in rest:
        az = abs(rec.z)
        mask = radii >= az
        N[mask] += rec.mult * np.log(radii[mask] / az)
    if m0:
        N = N + m0 * np.log(radii)
    return {"N_ram": N, "records": rest, "origin_mult": m0,
            "certificate": cert}


def circle_hints(records, r, band=0.1):
    """Angles of divisor points within a log-radius band of the circle."""
    hints = []
    for rec in records:
        az = abs(rec.z)
        if az == 0:
            continue
        if abs(math.log(az) - math.log(r)) < band:
            hints.append(math.atan2(rec.z.imag, rec.z.real))
    return hints
