"""Exact Gaussian-rational arithmetic and polynomials over it.

Coefficient exactness is what makes rational map bodies closed under
differentiation and makes Wronskian/minor degeneracy decisions decidable,
so this small layer is kept dependency-free: a scalar is a pair of
``fractions.Fraction`` values, a polynomial is an ascending coefficient list.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    raise TypeError("not representable exactly: %r" % (x,))


class QC:
    """A Gaussian rational a + b*i with exact Fraction components."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, QC):
            self.re, self.im = re.re, re.im
            return
        if isinstance(re, complex):
            if im != 0:
                raise TypeError("complex input already carries an imaginary part")
            self.re = _as_fraction(re.real)
            self.im = _as_fraction(re.imag)
            return
        self.re = _as_fraction(re)
        self.im = _as_fraction(im)

    def __add__(self, other):
        other = QC(other)
        return QC(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return QC(-self.re, -self.im)

    def __sub__(self, other):
        other = QC(other)
        return QC(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return QC(other) - self

    def __mul__(self, other):
        other = QC(other)
        return QC(self.re * other.re - self.im * other.im,
                  self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = QC(other)
        d = other.re * other.re + other.im * other.im
        if d == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return QC((self.re * other.re + self.im * other.im) / d,
                  (self.im * other.re - self.re * other.im) / d)

    def __rtruediv__(self, other):
        return QC(other) / self

    def __eq__(self, other):
        try:
            other = QC(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def conjugate(self):
        return QC(self.re, -self.im)

    def abs2(self):
        """|self|^2 as an exact Fraction."""
        return self.re * self.re + self.im * self.im

    def to_complex(self):
        return complex(self.re) + 1j * complex(self.im)

    def __repr__(self):
        if self.im == 0:
            return "QC(%s)" % (self.re,)
        return "QC(%s, %s)" % (self.re, self.im)


QC_ZERO = QC(0)
QC_ONE = QC(1)


def parse_qc(text):
    """Parse 'a', 'bi', or 'a+bi' / 'a-bi' with rational a, b into a QC."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty complex literal")
    if s in ("i", "+i"):
        return QC(0, 1)
    if s == "-i":
        return QC(0, -1)
    if s.endswith("i"):
        body = s[:-1]
        # split into real and imaginary parts at the last +/- that is not an
        # exponent sign and not the leading sign
        for k in range(len(body) - 1, 0, -1):
            if body[k] in "+-" and body[k - 1] not in "eE/":
                re_s, im_s = body[:k], body[k:]
                if im_s in ("+", "-"):
                    im_s += "1"
                return QC(Fraction(re_s), Fraction(im_s))
        if body in ("+", "-", ""):
            body += "1"
        return QC(0, Fraction(body))
    return QC(Fraction(s), 0)


# ---------------------------------------------------------------------------
# polynomials: ascending coefficient lists of QC, trailing zeros stripped
# ---------------------------------------------------------------------------

def pnormalize(coeffs):
    c = [x if isinstance(x, QC) else QC(x) for x in coeffs]
    while c and not c[-1]:
        c.pop()
    return c


def pdegree(p):
    """Degree with the deg(0) = -1 convention."""
    return len(p) - 1


def padd(p, q):
    n = max(len(p), len(q))
    out = []
    for k in range(n):
        a = p[k] if k < len(p) else QC_ZERO
        b = q[k] if k < len(q) else QC_ZERO
        out.append(a + b)
    return pnormalize(out)


def psub(p, q):
    return padd(p, [-c for c in q])


def pscale(p, s):
    s = s if isinstance(s, QC) else QC(s)
    return pnormalize([c * s for c in p])


def pmul(p, q):
    if not p or not q:
        return []
    out = [QC_ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return pnormalize(out)


def pdivmod(p, q):
    """Exact Euclidean division over the Gaussian rationals."""
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    d = len(q) - 1
    lead = q[-1]
    quo = [QC_ZERO] * max(0, len(p) - d)
    while len(r) - 1 >= d and pnormalize(r):
        r = pnormalize(r)
        if len(r) - 1 < d:
            break
        k = len(r) - 1 - d
        c = r[-1] / lead
        quo[k] = c
        for j in range(len(q)):
            r[k + j] = r[k + j] - c * q[j]
        r.pop()
    return pnormalize(quo), pnormalize(r)


def pmonic(p):
    if not p:
        return p
    return pscale(p, QC_ONE / p[-1])


def pgcd(p, q):
    """Monic GCD by the Euclidean algorithm."""
    a, b = pnormalize(p), pnormalize(q)
    while b:
        _, r = pdivmod(a, b)
        a, b = b, r
    return pmonic(a)


def pderiv(p):
    return pnormalize([p[k] * k for k in range(1, len(p))])


def peval_exact(p, z):
    """Horner evaluation at a QC point, exact."""
    z = z if isinstance(z, QC) else QC(z)
    acc = QC_ZERO
    for c in reversed(p):
        acc = acc * z + c
    return acc


def proot_order(p, z):
    """Multiplicity of z as a root of p (0 if not a root), exact."""
    p = pnormalize(p)
    if not p:
        raise ValueError("zero polynomial has no root order")
    m = 0
    while peval_exact(p, z) == QC_ZERO:
        m += 1
        p = pderiv(p)
        if not p:
            break
    return m


def pshift_origin(p, z0):
    """Coefficients of p(z0 + w) as a polynomial in w, by synthetic division."""
    z0 = z0 if isinstance(z0, QC) else QC(z0)
    out = []
    acc = pnormalize(p)
    for _ in range(len(p)):
        if not acc:
            break
        q, r = pdivmod(acc, [-z0, QC_ONE])
        out.append(r[0] if r else QC_ZERO)
        acc = q
    return pnormalize(out)


# ---------------------------------------------------------------------------
# exact linear algebra over QC
# ---------------------------------------------------------------------------

def qc_rank(rows):
    """Rank of a matrix given as a list of QC rows, by exact elimination."""
    m = [list(map(QC, row)) for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    row = 0
    for col in range(ncols):
        piv = None
        for i in range(row, len(m)):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        inv = QC_ONE / m[row][col]
        m[row] = [x * inv for x in m[row]]
        for i in range(len(m)):
            if i != row and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[row])]
        row += 1
        rank += 1
        if row == len(m):
            break
    return rank
