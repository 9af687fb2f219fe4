"""Subgeneral position, Nochka weights, and the degenerate-curve balance.

A holomorphic curve whose image lies in a k-plane of P^n cannot be
linearly nondegenerate in P^n, so the usual second-main-theorem balance
does not apply directly.  When the hyperplanes are in n-subgeneral
position (every n+1 of their restricted normals span the dual of the
k-plane), rational weights omega(j) in (0, 1] and a rational scaling
theta >= 1 repair the loss.  This module detects subgeneral position,
computes the weights with a fully certified exact-rational feasibility
search, verifies the product-subset property on demand, and assembles
the resulting balance

    sum_j m(r, H_j) + ((n+1)/(k+1)) N_ram(r)
        <= (2n-k+1) T(r)
           + ((2n-k+1)k/2) ((1+eps)(c+eps) T(r) [bounded disc]
                            + eps log+ r)
           + clog log+ T(r) + C0,

with N_ram the ramification count of the curve restricted to its plane
and c the growth index of T.

Weight search.  theta runs over a descending rational scan of
[(n+1)/(k+1), (2n-k+1)/(k+1)] with denominators up to 64.  For each
theta the weight polytope

    0 < omega(j) <= 1/theta,
    sum_{j in B} omega(j) <= dim span{a_j : j in B}   (1 <= #B <= n+1),
    sum_j omega(j) = (q - 2n + k - 1)/theta + k + 1

is tested by a two-phase simplex over exact Fractions; the first
feasible theta is kept, and within it the weights maximize the smallest
weight and are then refined lexicographically, so the result is
deterministic.  The returned certificate re-checks every defining
identity in exact arithmetic with zero tolerance.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import (ConfigError, DegenerateInputError, DomainError,
                     ImageInHyperplaneError, PrecisionError)
from .nevan import fitted_constant, growth_index_from_values, log_plus
from .projcurve import (ExpPoly, ProjCurve, _as_hyperplane, associated_curve,
                        characteristic_fk, proximity_fk)
from .quad import RadialGrid, as_radii, growth_derivative_check
from .rationals import QC, pdegree, qc_rank
from .zeros import _exact_poly_divisor, divisor_counting

__all__ = [
    "NochkaWeights",
    "subgeneral_check",
    "nochka_weights",
    "verify_property_v",
    "restrict_to_plane",
    "nochka_smt_report",
]


# ---------------------------------------------------------------------------
# rank oracle
# ---------------------------------------------------------------------------

def _rank_function(normals):
    """Cached rank of index subsets of the given covectors.

    Entries that are exactly representable (ints, Fractions, floats,
    Gaussian rationals) are ranked by exact elimination; anything else
    falls back to an SVD rank with threshold 1e-10.
    """
    exact = []
    for a in normals:
        try:
            exact.append([x if isinstance(x, QC) else QC(complex(x))
                          for x in a])
        except TypeError:
            exact = None
            break
    if exact is not None:
        def rank_raw(key):
            return qc_rank([exact[i] for i in key])
    else:
        mat = np.array([[complex(x) for x in a] for a in normals],
                       dtype=complex)

        def rank_raw(key):
            return int(np.linalg.matrix_rank(mat[list(key)], tol=1e-10))

    cache = {}

    def rank_of(idx):
        key = tuple(sorted(idx))
        if key not in cache:
            cache[key] = rank_raw(key)
        return cache[key]

    return rank_of


def _check_normals(normals):
    normals = [tuple(a) for a in normals]
    if not normals:
        raise ConfigError("at least one normal vector is required")
    dim = len(normals[0])
    if dim < 1:
        raise ConfigError("normal vectors must have positive length")
    for a in normals:
        if len(a) != dim:
            raise ConfigError("normal vectors must share one length")
        if all(not x for x in a):
            raise DegenerateInputError("normal vectors must be nonzero")
    return normals, dim


def subgeneral_check(normals, n):
    """Whether q covectors in C^{k+1} are in n-subgeneral position.

    True iff every (n+1)-subset has full rank k+1, i.e. spans the dual
    space.  Requires q >= n+1 covectors, all nonzero.
    """
    normals, dim = _check_normals(normals)
    q = len(normals)
    if q < n + 1:
        raise ConfigError("subgeneral position needs at least n+1 = %d "
                          "normals, got %d" % (n + 1, q))
    rank_of = _rank_function(normals)
    return all(rank_of(S) == dim for S in combinations(range(q), n + 1))


# ---------------------------------------------------------------------------
# exact linear programming (two-phase simplex over Fractions)
# ---------------------------------------------------------------------------

def _exact_lp(objective, rows):
    """Maximize objective . x over the given constraints with x >= 0.

    rows is a list of (coefficients, relation, rhs) with relation one of
    "<=", ">=", "="; all data are coerced to Fractions.  Returns
    (optimal value, x) from a Bland-rule simplex (exact, no cycling), or
    None when the constraints are infeasible.
    """
    nv = len(objective)
    canon = []
    for coeffs, rel, rhs in rows:
        coeffs = [Fraction(a) for a in coeffs]
        rhs = Fraction(rhs)
        if rhs < 0:
            coeffs = [-a for a in coeffs]
            rhs = -rhs
            rel = {"<=": ">=", ">=": "<=", "=": "="}[rel]
        canon.append((coeffs, rel, rhs))

    ncols = nv
    slack_col = {}
    for i, (_, rel, _) in enumerate(canon):
        if rel != "=":
            slack_col[i] = (ncols, Fraction(1 if rel == "<=" else -1))
            ncols += 1
    art_col = {}
    for i, (_, rel, _) in enumerate(canon):
        if rel != "<=":
            art_col[i] = ncols
            ncols += 1

    zero = Fraction(0)
    tab = []
    basis = []
    for i, (coeffs, rel, rhs) in enumerate(canon):
        row = [zero] * (ncols + 1)
        row[:nv] = coeffs
        if i in slack_col:
            col, sgn = slack_col[i]
            row[col] = sgn
        if i in art_col:
            row[art_col[i]] = Fraction(1)
            basis.append(art_col[i])
        else:
            basis.append(slack_col[i][0])
        row[-1] = rhs
        tab.append(row)
    art_cols = frozenset(art_col.values())

    def pivot(r, c):
        pv = tab[r][c]
        tab[r] = [a / pv for a in tab[r]]
        prow = tab[r]
        for i in range(len(tab)):
            if i != r and tab[i][c]:
                f = tab[i][c]
                tab[i] = [a - f * b for a, b in zip(tab[i], prow)]
        basis[r] = c

    def optimize(obj, banned):
        while True:
            enter = -1
            for j in range(ncols):
                if j in banned or j in basis:
                    continue
                rc = obj[j] - sum(obj[basis[i]] * tab[i][j]
                                  for i in range(len(tab)) if obj[basis[i]])
                if rc > 0:
                    enter = j
                    break
            if enter < 0:
                return
            leave = -1
            best = None
            for i in range(len(tab)):
                a = tab[i][enter]
                if a > 0:
                    ratio = tab[i][-1] / a
                    if best is None or ratio < best or \
                            (ratio == best and basis[i] < basis[leave]):
                        best = ratio
                        leave = i
            if leave < 0:
                raise DomainError("unbounded linear program")
            pivot(leave, enter)

    if art_cols:
        phase1 = [zero] * ncols
        for c in art_cols:
            phase1[c] = Fraction(-1)
        optimize(phase1, frozenset())
        if sum(tab[i][-1] for i in range(len(tab))
               if basis[i] in art_cols) > 0:
            return None
        # pivot leftover zero-valued artificials out, dropping redundant rows
        keep_tab, keep_basis = [], []
        for i in range(len(tab)):
            if basis[i] not in art_cols:
                keep_tab.append(tab[i])
                keep_basis.append(basis[i])
                continue
            enter = next((j for j in range(ncols)
                          if j not in art_cols and tab[i][j]), None)
            if enter is not None:
                pivot(i, enter)
                keep_tab.append(tab[i])
                keep_basis.append(basis[i])
        tab = keep_tab
        basis = keep_basis

    obj = [Fraction(a) for a in objective] + [zero] * (ncols - nv)
    optimize(obj, art_cols)
    x = [zero] * nv
    for i, b in enumerate(basis):
        if b < nv:
            x[b] = tab[i][-1]
    return sum(objective[j] * x[j] for j in range(nv)), x


# ---------------------------------------------------------------------------
# weight feasibility at fixed theta
# ---------------------------------------------------------------------------

def _constraint_subsets(q, n, theta, rank_of):
    """Subset-sum constraints that can bind under the cap omega <= 1/theta."""
    out = []
    for size in range(1, min(q, n + 1) + 1):
        for B in combinations(range(q), size):
            rk = rank_of(B)
            if Fraction(size) / theta > rk:
                out.append((B, rk))
    return out


def _weights_at_theta(theta, q, n, k, rank_of):
    """Deterministic feasible weights at this theta, or None.

    Among feasible points the smallest weight is maximized first; the
    weights are then fixed one by one at their largest attainable
    values, so ties resolve lexicographically.
    """
    cap = Fraction(1) / theta
    total = Fraction(q - 2 * n + k - 1) / theta + (k + 1)
    if total > q * cap:
        return None
    subsets = _constraint_subsets(q, n, theta, rank_of)

    base = []
    for j in range(q):
        e = [Fraction(0)] * q
        e[j] = Fraction(1)
        base.append((e, "<=", cap))
    for B, rk in subsets:
        row = [Fraction(0)] * q
        for j in B:
            row[j] = Fraction(1)
        base.append((row, "<=", Fraction(rk)))
    base.append(([Fraction(1)] * q, "=", total))

    # stage 1: maximize the smallest weight (auxiliary variable last)
    rows = [(coeffs + [Fraction(0)], rel, rhs) for coeffs, rel, rhs in base]
    for j in range(q):
        link = [Fraction(0)] * (q + 1)
        link[j] = Fraction(-1)
        link[q] = Fraction(1)
        rows.append((link, "<=", Fraction(0)))
    res = _exact_lp([Fraction(0)] * q + [Fraction(1)], rows)
    if res is None or res[0] <= 0:
        return None
    floor_val = res[0]

    # stage 2: lexicographic refinement above the guaranteed floor
    lower = []
    for j in range(q):
        e = [Fraction(0)] * q
        e[j] = Fraction(-1)
        lower.append((e, "<=", -floor_val))
    omega = []
    for t in range(q):
        pins = []
        for i, v in enumerate(omega):
            e = [Fraction(0)] * q
            e[i] = Fraction(1)
            pins.append((e, "=", v))
        obj = [Fraction(0)] * q
        obj[t] = Fraction(1)
        res_t = _exact_lp(obj, base + lower + pins)
        if res_t is None:
            raise DomainError("lexicographic refinement lost feasibility")
        omega.append(res_t[0])
    return omega


def _theta_candidates(n, k, max_denominator=64):
    """Descending rationals in [(n+1)/(k+1), (2n-k+1)/(k+1)], den <= 64."""
    lo = Fraction(n + 1, k + 1)
    hi = Fraction(2 * n - k + 1, k + 1)
    vals = set()
    for d in range(1, max_denominator + 1):
        p_lo = -((-lo.numerator * d) // lo.denominator)
        p_hi = (hi.numerator * d) // hi.denominator
        for p in range(p_lo, p_hi + 1):
            vals.add(Fraction(p, d))
    return sorted(vals, reverse=True)


# ---------------------------------------------------------------------------
# certified weights
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NochkaWeights:
    """Hyperplane weights with an exactly verified certificate.

    omega maps hyperplane index to a rational weight in (0, 1] and theta
    is the rational scaling with omega(j) * theta <= 1.  The certificate
    lists the defining identities, re-checked in exact rational
    arithmetic with zero tolerance:

      (i)   0 < omega(j) theta <= 1 for every j,
      (ii)  q - 2n + k - 1 = theta (sum_j omega(j) - k - 1),
      (iii) sum_{j in B} omega(j) <= dim L(B) for all B, 1 <= #B <= n+1,
      (iv)  (n+1)/(k+1) <= theta <= (2n-k+1)/(k+1),

    plus a note that the product-subset property (v) is verified on
    demand by verify_property_v.
    """

    omega: tuple
    theta: Fraction
    n: int
    k: int
    q: int
    certificate: tuple

    def omega_floats(self):
        """The weights as a float array."""
        return np.array([float(w) for w in self.omega])


def _certificate(omega, theta, q, n, k, rank_of):
    lo = Fraction(n + 1, k + 1)
    hi = Fraction(2 * n - k + 1, k + 1)
    if not all(0 < w * theta <= 1 for w in omega):
        raise DomainError("weight certificate failed the range property")
    lines = ["(i) 0 < omega(j)*theta <= 1 for all %d weights" % q]
    balance = Fraction(q - 2 * n + k - 1)
    if balance != theta * (sum(omega) - (k + 1)):
        raise DomainError("weight certificate failed the sum identity")
    lines.append("(ii) q - 2n + k - 1 = theta*(sum omega - k - 1) = %s "
                 "exactly" % balance)
    count = 0
    for size in range(1, min(q, n + 1) + 1):
        for B in combinations(range(q), size):
            count += 1
            if sum(omega[j] for j in B) > rank_of(B):
                raise DomainError(
                    "weight certificate failed the subset bound at B=%s"
                    % (B,))
    lines.append("(iii) sum_{j in B} omega(j) <= dim L(B) for all %d "
                 "subsets with 1 <= #B <= %d" % (count, min(q, n + 1)))
    if not lo <= theta <= hi:
        raise DomainError("weight certificate failed the theta range")
    lines.append("(iv) %s <= theta = %s <= %s" % (lo, theta, hi))
    lines.append("(v) product-subset property is verified on demand by "
                 "verify_property_v")
    return lines


def nochka_weights(normals, n, k=None):
    """Certified weights for q covectors in C^{k+1} in n-subgeneral position.

    Requires q >= 2n - k + 1.  theta is scanned downward over rationals
    in [(n+1)/(k+1), (2n-k+1)/(k+1)] with denominators up to 64; at each
    value the weight polytope is tested by an exact simplex, and the
    first feasible theta is returned with deterministic weights (largest
    smallest-weight, then lexicographic) and a full certificate.  In
    general position with k = n this yields theta = 1 and all weights 1.
    """
    normals, dim = _check_normals(normals)
    q = len(normals)
    if k is None:
        k = dim - 1
    elif k != dim - 1:
        raise ConfigError("normals live in C^%d but k = %d was requested"
                          % (dim, k))
    if not 0 <= k <= n:
        raise ConfigError("needs 0 <= k <= n, got k = %d, n = %d" % (k, n))
    if q < 2 * n - k + 1:
        raise ConfigError(
            "Nochka weights need q >= 2n - k + 1 = %d normals, got %d"
            % (2 * n - k + 1, q))
    if not subgeneral_check(normals, n):
        raise DegenerateInputError(
            "the normals are not in %d-subgeneral position" % n)
    rank_of = _rank_function(normals)
    cands = _theta_candidates(n, k)
    for theta in cands:
        omega = _weights_at_theta(theta, q, n, k, rank_of)
        if omega is not None:
            cert = _certificate(omega, theta, q, n, k, rank_of)
            return NochkaWeights(omega=tuple(omega), theta=theta, n=n, k=k,
                                 q=q, certificate=tuple(cert))
    raise PrecisionError(
        "no feasible weights at denominator resolution 64 (%d theta values "
        "scanned in [%s, %s]); existence is guaranteed for subgeneral "
        "configurations, so the input or resolution is suspect"
        % (len(cands), cands[-1], cands[0]))


def verify_property_v(weights, normals, values, subset):
    """Product-subset property check for a set of target values.

    For values E_j >= 1 and an index set Y with 0 < #Y <= n+1, searches
    all subsets M of Y whose covectors form a basis of L(Y) (size
    dim L(Y)) for

        prod_{j in Y} E_j^omega(j) <= prod_{j in M} E_j,

    compared in the log domain.  Returns (M, ok) with M the first basis
    witness in index order when ok, otherwise the best-scoring basis.
    """
    normals, _ = _check_normals(normals)
    q = len(normals)
    if weights.q != q:
        raise ConfigError("weights were computed for %d normals, got %d"
                          % (weights.q, q))
    if len(values) != q:
        raise ConfigError("needs one value per normal vector")
    vals = [float(v) for v in values]
    if any(v < 1.0 for v in vals):
        raise ConfigError("values must be >= 1")
    Y = tuple(sorted(set(int(j) for j in subset)))
    if not Y or Y[0] < 0 or Y[-1] >= q:
        raise ConfigError("subset indices must be a nonempty subset of "
                          "range(%d)" % q)
    if len(Y) > weights.n + 1:
        raise ConfigError("subset size must be at most n+1 = %d"
                          % (weights.n + 1))
    rank_of = _rank_function(normals)
    d_y = rank_of(Y)
    target = sum(float(weights.omega[j]) * math.log(vals[j]) for j in Y)
    best_m = None
    best_val = -math.inf
    for M in combinations(Y, d_y):
        if rank_of(M) != d_y:
            continue
        got = sum(math.log(vals[j]) for j in M)
        if got >= target - 1e-12 * max(1.0, abs(target)):
            return M, True
        if got > best_val:
            best_val = got
            best_m = M
    return best_m, False


# ---------------------------------------------------------------------------
# restriction of a curve to its containing plane
# ---------------------------------------------------------------------------

def _qc_matrix(rows, width=None):
    out = []
    for row in rows:
        try:
            qrow = [x if isinstance(x, QC) else QC(complex(x)) for x in row]
        except TypeError:
            raise ConfigError("plane entries must be exactly representable")
        if width is not None and len(qrow) != width:
            raise ConfigError("plane rows must have length %d" % width)
        out.append(qrow)
    return out


def _pivot_columns(rows):
    work = [list(r) for r in rows]
    nr, nc = len(work), len(work[0])
    piv = []
    r = 0
    for c in range(nc):
        pr = next((i for i in range(r, nr) if work[i][c]), None)
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        inv = QC(1) / work[r][c]
        work[r] = [x * inv for x in work[r]]
        for i in range(nr):
            if i != r and work[i][c]:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        piv.append(c)
        r += 1
        if r == nr:
            break
    return piv


def _qc_inverse(mat):
    m = len(mat)
    work = [list(mat[i]) + [QC(1) if j == i else QC(0) for j in range(m)]
            for i in range(m)]
    for c in range(m):
        pr = next((i for i in range(c, m) if work[i][c]), None)
        if pr is None:
            raise DegenerateInputError("singular pivot block")
        work[c], work[pr] = work[pr], work[c]
        scale = QC(1) / work[c][c]
        work[c] = [x * scale for x in work[c]]
        for i in range(m):
            if i != c and work[i][c]:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[c])]
    return [row[m:] for row in work]


def restrict_to_plane(curve, plane):
    """Exact coordinates of a curve inside a supplied projective plane.

    plane is a sequence of k+1 independent rows of length n+1 with
    exactly representable entries spanning the plane.  The components
    must satisfy f_i = sum_s g_s * plane[s][i] for a unique exact g,
    which is returned as a curve in P^k together with the exact rows.
    Raises when the rows are dependent or the curve leaves the plane.
    """
    rows = _qc_matrix(plane, width=curve.n + 1)
    k1 = len(rows)
    if not 1 <= k1 <= curve.n + 1:
        raise ConfigError("a plane in P^%d needs between 1 and %d rows"
                          % (curve.n, curve.n + 1))
    if qc_rank(rows) != k1:
        raise DegenerateInputError("plane basis rows are linearly dependent")
    piv = _pivot_columns(rows)
    block = [[rows[s][c] for s in range(k1)] for c in piv]
    inv = _qc_inverse(block)
    comps = []
    for s in range(k1):
        acc = ExpPoly()
        for t in range(k1):
            if inv[s][t]:
                acc = acc + curve.comps[piv[t]].scale(inv[s][t])
        comps.append(acc)
    for i in range(curve.n + 1):
        acc = ExpPoly()
        for s in range(k1):
            if rows[s][i]:
                acc = acc + comps[s].scale(rows[s][i])
        if not (acc - curve.comps[i]).is_zero():
            raise DomainError(
                "the curve does not lie in the supplied plane "
                "(coordinate %d disagrees)" % i)
    restricted = ProjCurve(curve.name + "-restricted", comps,
                           disc=curve.disc)
    return restricted, [tuple(r) for r in rows]


def _default_plane(curve):
    """Coordinate plane through the nonzero components, or the identity."""
    n = curve.n
    zero = [i for i, cpt in enumerate(curve.comps) if cpt.is_zero()]
    keep = [i for i in range(n + 1) if i not in zero]
    if not zero:
        try:
            associated_curve(curve, n)
        except DegenerateInputError:
            raise ConfigError(
                "the curve is degenerate but has no vanishing coordinate; "
                "supply the containing plane explicitly")
    rows = []
    for i in keep:
        row = [0] * (n + 1)
        row[i] = 1
        rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# degenerate-curve second main theorem
# ---------------------------------------------------------------------------

def nochka_smt_report(curve, hyperplanes, grid=None, eps=0.1, plane=None,
                      clog=2.0, fit_fraction=1.0 / 3.0):
    """Weighted second-main-theorem balance for a plane-degenerate curve.

    The curve lives in P^n with image inside a k-plane, supplied as
    plane rows (or stored in curve.meta["plane"], or inferred from
    vanishing coordinates; a nondegenerate curve gets k = n).  Checks,
    off the exceptional set and beyond the constant-fitting window,

        sum_j m(r, H_j) + ((n+1)/(k+1)) N_ram(r)
            <= (2n-k+1) T(r)
               + ((2n-k+1)k/2)((1+eps)(c+eps) T(r) [bounded disc]
                               + eps log+ r)
               + clog log+ T(r) + C0,

    where N_ram counts the ramification divisor of the restricted curve
    and the proximities are taken in P^n.  The restricted hyperplane
    normals must be in n-subgeneral position; their certified weights
    are attached to the report.  With k = n this reproduces the
    nondegenerate balance and its fitted constant exactly.
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

    if plane is None:
        plane = curve.meta.get("plane")
    if plane is None:
        plane = _default_plane(curve)
    restricted, rows = restrict_to_plane(curve, plane)
    k = len(rows) - 1

    restricted_normals = []
    for h in hyps:
        aq = h.exact_normal()
        if aq is not None:
            ahat = tuple(
                sum((rows[s][i] * aq[i] for i in range(n + 1)
                     if aq[i]), QC(0))
                for s in range(k + 1))
            contained = all(not x for x in ahat)
        else:
            arow = np.array([complex(x) for x in h.raw])
            bmat = np.array([[x.to_complex() for x in r] for r in rows])
            fhat = bmat @ arow
            contained = bool(np.linalg.norm(fhat)
                             < 1e-12 * np.linalg.norm(arow))
            ahat = tuple(fhat)
        if contained:
            raise ImageInHyperplaneError(
                "%s contains the plane of the curve" % h.name)
        restricted_normals.append(ahat)

    if not subgeneral_check(restricted_normals, n):
        raise DegenerateInputError(
            "the restricted hyperplanes are not in %d-subgeneral position"
            % n)
    weights = nochka_weights(restricted_normals, n, k)

    char = characteristic_fk(curve, 0, radii)
    T = char["T"]
    c = growth_index_from_values(T, radii, curve.disc.radius)
    if math.isinf(c):
        raise DomainError("bounded characteristic (infinite growth "
                          "index); the balance has no content here")

    top = associated_curve(restricted, k)
    if top.reduction != "exact":
        raise DomainError(
            "ramification zeros of general multi-term exponential "
            "components are not supported")
    if pdegree(top.gcd) >= 1:
        ram_records = _exact_poly_divisor(top.gcd, float(radii[-1]),
                                          "exact-ramification")
        ram_certificate = None
    else:
        ram_records = []
        ram_certificate = "ramification divisor is empty (unit factor)"
    N_ram = divisor_counting(ram_records, radii)

    m_by = {}
    m_total = np.zeros_like(radii)
    prox_ok = True
    for h in hyps:
        prox = proximity_fk(curve, 0, h, radii, char=char)
        m_by[h.name] = prox["m"]
        m_total = m_total + prox["m"]
        prox_ok = prox_ok and prox["weak_fmt_ok"]

    ram_coef = Fraction(n + 1, k + 1)
    lhs = m_total + float(ram_coef) * N_ram

    big = 2 * n - k + 1
    coeff = 0.5 * big * k
    rhs_base = float(big) * T + coeff * eps * log_plus(radii) \
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

    return {
        "radii": radii,
        "hyperplanes": [h.name for h in hyps],
        "n": n,
        "k": k,
        "plane": [tuple(x.to_complex() for x in r) for r in rows],
        "restricted_curve": restricted.name,
        "subgeneral": True,
        "weights": weights,
        "theta": weights.theta,
        "omega": weights.omega,
        "T": T,
        "m_by_hyperplane": m_by,
        "m_total": m_total,
        "N_ram": N_ram,
        "ram_coefficient": float(ram_coef),
        "ram_records": ram_records,
        "ram_certificate": ram_certificate,
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
        "weak_fmt_ok": prox_ok,
        "ok": ok,
        "characteristic": char,
    }
