"""Modular lambda function and flat-torus Green function via theta series.

lambda(tau) = theta2(0|tau)^4 / theta3(0|tau)^4 on the upper half plane,
precomposed with the Cayley map tau = i(1+z)/(1-z) to live on the unit disc.
Near boundary cusps the raw q-series is useless (|lambda| reaches e^{6000}
inside the admissible grid, with catastrophic theta cancellation), so
evaluation reduces tau to the standard fundamental domain while tracking the
induced S3 action on the value -- lambda(tau+1) = lambda/(lambda-1),
lambda(-1/tau) = 1 - lambda -- and values are carried as complex logs of a
homogeneous pair, which downstream code consumes without ever forming
floating infinities.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, PrecisionError
from .jets import jet_compose, jet_div, jet_exp_rel, jet_log, jet_pow

# |e^{2 pi i tau}| above this is rejected; equivalently Im tau < ~1.592e-4,
# which the r <= 0.9995 grid clamp keeps out of reach.
NOME_LIMIT = 0.999
_MIN_IM_TAU = -math.log(NOME_LIMIT) / (2.0 * math.pi)

_REL_TOL = 1e-20
_LOG_HALF_RANGE = 40.0

# value action matrices on homogeneous pairs (p, q), value = q/p
_M_T = ((-1, 1), (0, 1))    # v -> v/(v-1)
_M_S = ((1, 0), (1, -1))    # v -> 1 - v
_M_I = ((1, 0), (0, 1))


def cayley(z):
    """tau = i(1+z)/(1-z), unit disc to upper half plane."""
    return 1j * (1 + z) / (1 - z)


def _mat_mul(a, b):
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


def reduce_tau(tau):
    """Reduce tau to the standard fundamental domain.

    Returns (tau_red, M, G) where G in SL(2,Z) satisfies
    tau_red = (G00 tau + G01)/(G10 tau + G11) and M is the integer matrix
    with lambda(tau) = (M10 + M11 lam_red)/(M00 + M01 lam_red) read off a
    homogeneous pair (p, q) = M (1, lam_red)^T.
    """
    if tau.imag <= 0:
        raise PrecisionError("tau not in the upper half plane: %r" % (tau,))
    if tau.imag < _MIN_IM_TAU:
        raise PrecisionError(
            "nome |e^(2 pi i tau)| exceeds %.3f; point too close to the "
            "boundary (clamp grids at r <= 0.9995)" % NOME_LIMIT)
    M = _M_I
    G = _M_I
    for _ in range(256):
        n = int(round(tau.real))
        if n:
            tau = tau - n
            G = _mat_mul(((1, -n), (0, 1)), G)
            if n % 2:
                M = _mat_mul(M, _M_T)
        if abs(tau) < 1.0 - 1e-14:
            tau = -1.0 / tau
            G = _mat_mul(((0, -1), (1, 0)), G)
            M = _mat_mul(M, _M_S)
        else:
            return tau, M, G
    raise PrecisionError("tau reduction did not terminate")


def theta_jets(tau, order):
    """tau-Taylor coefficient jets of theta2 and theta3 at tau.

    Entry k is theta^{(k)}(tau)/k!.  Requires tau already reduced (rapid
    convergence); raises otherwise only through term-count exhaustion.
    """
    q_log = 1j * math.pi * tau
    facts = [math.factorial(k) for k in range(order + 1)]
    th2 = [0j] * (order + 1)
    th3 = [0j] * (order + 1)
    th3[0] = 1.0 + 0j
    for n in range(0, 64):
        # theta2 term exponent (n + 1/2)^2, theta3 term exponent (n+1)^2
        e2 = (n + 0.5) ** 2
        t2 = 2.0 * cmath.exp(q_log * e2)
        m = n + 1
        e3 = float(m * m)
        t3 = 2.0 * cmath.exp(q_log * e3)
        for k in range(order + 1):
            th2[k] += t2 * (1j * math.pi * e2) ** k / facts[k]
            th3[k] += t3 * (1j * math.pi * e3) ** k / facts[k]
        if abs(t2) < _REL_TOL and abs(t3) < _REL_TOL:
            break
    else:
        raise PrecisionError("theta series needed too many terms (tau=%r)" % (tau,))
    return th2, th3


def lambda_red_log(tau_red):
    """Complex log of lambda at a reduced tau, stable for huge Im tau.

    lambda = 16 q^2 (S2/S3)^4 with q = e^{i pi tau}, S2 = sum q^{4k(k+1)/4}...
    concretely theta2 = 2 q^{1/4} S2, S2 = sum_{k>=0} q^{k(k+1)}, and
    log lambda = 4 log 2 + i pi tau + 4 (log S2 - log theta3).
    """
    q_log = 1j * math.pi * tau_red
    s2 = 0j
    th3 = 1.0 + 0j
    for n in range(0, 64):
        t2 = cmath.exp(q_log * (n * (n + 1)))
        t3 = 2.0 * cmath.exp(q_log * ((n + 1) * (n + 1)))
        s2 += t2
        th3 += t3
        if abs(t2) < _REL_TOL and abs(t3) < _REL_TOL:
            break
    else:
        raise PrecisionError("lambda series needed too many terms")
    return 4.0 * math.log(2.0) + q_log + 4.0 * (cmath.log(s2) - cmath.log(th3))


def _log_affine(ma, mb, w):
    """Complex log of ma + mb * e^w for integers ma, mb (not both zero)."""
    if mb == 0:
        return cmath.log(complex(ma))
    if ma == 0:
        return cmath.log(complex(mb)) + w
    if w.real < -_LOG_HALF_RANGE:
        return cmath.log(complex(ma)) + (mb / ma) * cmath.exp(w)
    if w.real > _LOG_HALF_RANGE:
        return w + cmath.log(complex(mb)) + (ma / mb) * cmath.exp(-w)
    return cmath.log(ma + mb * cmath.exp(w))


def lambda_log_pair(z):
    """Homogeneous log pair (L0, L1) with lambda(cayley(z)) = e^{L1 - L0}."""
    tau = cayley(complex(z))
    tau_red, M, _ = reduce_tau(tau)
    w = lambda_red_log(tau_red)
    l0 = _log_affine(M[0][0], M[0][1], w)
    l1 = _log_affine(M[1][0], M[1][1], w)
    return l0, l1


def lambda_combo_log(z, alpha, beta):
    """Complex log of alpha*P0 + beta*P1 for the pair (P0, P1) = (e^L0, e^L1)
    of lambda_log_pair.

    The combination stays affine in the reduced value e^w under the integer
    transport, so it is evaluated without forming P0, P1 and without the
    catastrophic cancellation that an affine num - a*den subtraction suffers
    near the cusps (where e.g. 1 - lambda is far below float resolution
    relative to the pair).  Returns real part -inf on an exact zero.
    """
    tau = cayley(complex(z))
    tau_red, M, _ = reduce_tau(tau)
    w = lambda_red_log(tau_red)
    ma = alpha * M[0][0] + beta * M[1][0]
    mb = alpha * M[0][1] + beta * M[1][1]
    if ma == 0 and mb == 0:
        raise DomainError("zero combination of the lambda pair")
    try:
        return _log_affine(ma, mb, w)
    except ValueError:
        return complex(-math.inf, 0.0)


def lambda_affine(z):
    """lambda(cayley(z)) as a complex number; may overflow to inf near cusps."""
    l0, l1 = lambda_log_pair(z)
    d = l1 - l0
    if d.real > 700.0:
        return complex(math.inf, 0.0)
    return cmath.exp(d)


def lambda_jet(z0, order):
    """z-Taylor jet of lambda(cayley(z)) at z0 (coefficients f^{(k)}/k!)."""
    z0 = complex(z0)
    tau0 = cayley(z0)
    tau_red, M, G = reduce_tau(tau0)
    # jet of tau(z) at z0
    inv = 1.0 / (1.0 - z0)
    tau_jet = [tau0] + [2j * inv ** (j + 1) for j in range(1, order + 1)]
    # jet of G(tau) at tau0 (Moebius with integer entries)
    a, b = G[0]
    c, d = G[1]
    num = [a * tau0 + b, complex(a)] + [0j] * (order - 1)
    den = [c * tau0 + d, complex(c)] + [0j] * (order - 1)
    g_jet = jet_div(num[: order + 1], den[: order + 1])
    th2, th3 = theta_jets(tau_red, order)
    lam_red_jet = jet_div(jet_pow(th2, 4), jet_pow(th3, 4))
    v_jet = jet_compose(lam_red_jet, jet_compose(g_jet, tau_jet))
    m00, m01 = M[0]
    m10, m11 = M[1]
    num_v = [m10 + m11 * v_jet[0]] + [m11 * x for x in v_jet[1:]]
    den_v = [m00 + m01 * v_jet[0]] + [m01 * x for x in v_jet[1:]]
    if abs(den_v[0]) < 1e-280:
        raise PrecisionError("lambda jet requested too close to a cusp")
    return jet_div(num_v, den_v)


def _aux_series_jets(tau, order):
    """tau-jets of S2 = sum q^{n(n+1)} and theta3, q = e^{i pi tau}."""
    q_log = 1j * math.pi * tau
    facts = [math.factorial(k) for k in range(order + 1)]
    s2 = [0j] * (order + 1)
    th3 = [0j] * (order + 1)
    s2[0] = 1.0 + 0j
    th3[0] = 1.0 + 0j
    for n in range(1, 64):
        e2 = float(n * (n + 1))
        t2 = cmath.exp(q_log * e2)
        e3 = float(n * n)
        t3 = 2.0 * cmath.exp(q_log * e3)
        for k in range(order + 1):
            if k == 0:
                s2[0] += t2
                th3[0] += t3
            else:
                s2[k] += t2 * (1j * math.pi * e2) ** k / facts[k]
                th3[k] += t3 * (1j * math.pi * e3) ** k / facts[k]
        if abs(t2) < _REL_TOL and abs(t3) < _REL_TOL:
            break
    return s2, th3


def lambda_pair_jets(z0, order):
    """Scaled homogeneous pair jets (den_jet, num_jet, sigma) at z0.

    lambda(cayley(z)) = num/den with the true pair equal to
    e^sigma * (den_jet, num_jet); sigma is moderate (>= log 1/2 above the
    larger row), so the returned jets never overflow even where the affine
    value would.  Valid for pointwise scale-invariant consumers (curvature
    densities, Wronskian-style combinations at a point).
    """
    z0 = complex(z0)
    tau0 = cayley(z0)
    tau_red, M, G = reduce_tau(tau0)
    inv = 1.0 / (1.0 - z0)
    tau_jet = [tau0] + [2j * inv ** (j + 1) for j in range(1, order + 1)]
    a, b = G[0]
    c, d = G[1]
    num = ([a * tau0 + b, complex(a)] + [0j] * max(order - 1, 0))[: order + 1]
    den = ([c * tau0 + d, complex(c)] + [0j] * max(order - 1, 0))[: order + 1]
    g_jet = jet_div(num, den)
    s2, th3 = _aux_series_jets(tau_red, order)
    ls2 = jet_log(s2)
    lth3 = jet_log(th3)
    # log lambda_red = 4 log 2 + i pi tau + 4 (log S2 - log theta3)
    L = [4.0 * math.log(2.0) + 1j * math.pi * tau_red + 4.0 * (ls2[0] - lth3[0])]
    for k in range(1, order + 1):
        term = 4.0 * (ls2[k] - lth3[k])
        if k == 1:
            term = term + 1j * math.pi
        L.append(term)
    w_jet = jet_compose(L, jet_compose(g_jet, tau_jet))
    w0 = w_jet[0]
    E = jet_exp_rel(w_jet)
    sig = max(_log_affine(M[0][0], M[0][1], w0).real,
              _log_affine(M[1][0], M[1][1], w0).real)
    base = cmath.exp(w0 - sig) if w0.real - sig > -745.0 else 0j
    es = math.exp(-sig)
    den_jet = [M[0][0] * es + M[0][1] * base * E[0]] + \
        [M[0][1] * base * e for e in E[1:]]
    num_jet = [M[1][0] * es + M[1][1] * base * E[0]] + \
        [M[1][1] * base * e for e in E[1:]]
    return den_jet, num_jet, sig


# ---------------------------------------------------------------------------
# flat torus Green function
# ---------------------------------------------------------------------------

def _log_sin(x):
    """Stable complex log of sin(x)."""
    if x.imag > 1.0:
        # sin x = -e^{-ix}(1 - e^{2ix})/(2i)
        return -1j * x + cmath.log(-(1.0 - cmath.exp(2j * x)) / 2j)
    if x.imag < -1.0:
        return 1j * x + cmath.log((1.0 - cmath.exp(-2j * x)) / 2j)
    s = cmath.sin(x)
    if s == 0:
        return complex(-math.inf, 0.0)
    return cmath.log(s)


def theta1_log(v, tau):
    """Complex log of theta1(v | tau), stable in Im v and Im tau.

    theta1(v|tau) = 2 sum_{n>=0} (-1)^n q^{(n+1/2)^2} sin((2n+1) pi v),
    q = e^{i pi tau}.  Returns -inf real part at lattice points.
    """
    q_log = 1j * math.pi * tau
    base = _log_sin(math.pi * v)
    if base.real == -math.inf:
        return base
    corr = 0j
    for n in range(1, 64):
        t = ((-1) ** n) * cmath.exp(
            q_log * (n * (n + 1)) + _log_sin((2 * n + 1) * math.pi * v) - base)
        corr += t
        if abs(t) < 1e-18:
            break
    return math.log(2.0) + q_log * 0.25 + base + cmath.log(1.0 + corr)


def normalize_lattice(w1, w2):
    """Gauss-reduced basis with Im(w2/w1) > 0 generating the same lattice."""
    w1 = complex(w1)
    w2 = complex(w2)
    if w1 == 0 or w2 == 0:
        raise ValueError("degenerate lattice basis")
    if (w2 / w1).imag == 0:
        raise ValueError("lattice basis is collinear")
    if (w2 / w1).imag < 0:
        w2 = -w2
    for _ in range(64):
        tau = w2 / w1
        n = int(round(tau.real))
        if n:
            w2 = w2 - n * w1
        if abs(w2) < abs(w1):
            w1, w2 = w2, w1
            if (w2 / w1).imag < 0:
                w2 = -w2
        else:
            break
    return w1, w2


@dataclass(frozen=True)
class TorusGeometry:
    """Flat torus C/(Z w1 + Z w2) with the mass-one flat form."""
    w1: complex
    w2: complex
    tau: complex
    volume: float
    mean_const: float
    min_const: float


_torus_cache = {}


def _green_base(v, tau):
    """-2 Re log theta1 + 2 pi (Im v)^2 / Im tau, the unnormalized solution."""
    t = theta1_log(v, tau)
    if t.real == -math.inf:
        return math.inf
    return -2.0 * t.real + 2.0 * math.pi * (v.imag ** 2) / tau.imag


def _reduce_cell(v, tau):
    beta = v.imag / tau.imag
    n2 = round(beta)
    v = v - n2 * tau
    n1 = round(v.real - (v.imag / tau.imag) * tau.real)
    return v - n1


def torus_geometry(w1, w2):
    key = (complex(w1), complex(w2))
    if key in _torus_cache:
        return _torus_cache[key]
    a, b = normalize_lattice(w1, w2)
    tau = b / a
    volume = abs(a) ** 2 * tau.imag
    n = 256
    total = 0.0
    mn = math.inf
    for i in range(n):
        alpha = (i + 0.5) / n - 0.5
        for j in range(n):
            beta = (j + 0.5) / n - 0.5
            val = _green_base(alpha + beta * tau, tau)
            total += val
            if val < mn:
                mn = val
    geom = TorusGeometry(a, b, tau, volume, total / (n * n), mn)
    _torus_cache[key] = geom
    return geom


def torus_green(z, a, geom, normalization="positive"):
    """Green function u_a(z) on the torus: dd^c u = omega - delta_a.

    omega is the flat form of total mass one.  normalization 'positive'
    shifts so min u = 0; 'mean-zero' shifts so the torus average is 0.
    Accepts scalars or arrays in z; returns +inf on the divisor.
    """
    shift = geom.min_const if normalization == "positive" else geom.mean_const
    if isinstance(z, np.ndarray):
        out = np.empty(z.shape, dtype=float)
        flat = z.ravel()
        res = out.ravel()
        for i, zz in enumerate(flat):
            v = _reduce_cell((complex(zz) - complex(a)) / geom.w1, geom.tau)
            res[i] = _green_base(v, geom.tau) - shift
        return out
    v = _reduce_cell((complex(z) - complex(a)) / geom.w1, geom.tau)
    return _green_base(v, geom.tau) - shift
