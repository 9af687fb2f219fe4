"""Truncated Taylor ("jet") arithmetic.

A jet of order m at a point is the list [c_0, ..., c_m] of Taylor
coefficients c_k = f^{(k)}/k!.  Entries may be python/numpy complex scalars
or numpy arrays (all of one shape), so jets vectorize over evaluation points.
Orders stay tiny (<= 8), so the O(m^2) convolutions are irrelevant.
"""

from __future__ import annotations

import numpy as np


def jet_const(value, m):
    return [value] + [value * 0 for _ in range(m)]


def jet_add(a, b):
    return [x + y for x, y in zip(a, b)]


def jet_sub(a, b):
    return [x - y for x, y in zip(a, b)]


def jet_scale(a, s):
    return [x * s for x in a]


def jet_mul(a, b):
    m = len(a) - 1
    out = []
    for k in range(m + 1):
        acc = a[0] * b[k]
        for j in range(1, k + 1):
            acc = acc + a[j] * b[k - j]
        out.append(acc)
    return out


def jet_div(a, b):
    """Jet of a/b; b[0] must be nonzero (no check for array inputs)."""
    m = len(a) - 1
    inv0 = 1.0 / b[0]
    out = [a[0] * inv0]
    for k in range(1, m + 1):
        acc = a[k]
        for j in range(1, k + 1):
            acc = acc - b[j] * out[k - j]
        out.append(acc * inv0)
    return out


def jet_pow(a, n):
    m = len(a) - 1
    out = jet_const(np.ones_like(a[0]) if isinstance(a[0], np.ndarray) else 1.0, m)
    base = list(a)
    k = n
    while k:
        if k & 1:
            out = jet_mul(out, base)
        k >>= 1
        if k:
            base = jet_mul(base, base)
    return out


def jet_compose(outer, inner):
    """Jet of outer(inner(z)) where outer is a jet at the point inner[0].

    The constant term of `inner` is ignored (it is the expansion point of
    `outer`); composition uses s = inner - inner[0], which has s[0] = 0.
    """
    m = len(inner) - 1
    s = list(inner)
    s[0] = s[0] * 0
    acc = jet_const(outer[-1], m)
    for k in range(len(outer) - 2, -1, -1):
        acc = jet_mul(acc, s)
        acc[0] = acc[0] + outer[k]
    return acc


def jet_exp_rel(a):
    """Jet of exp(a - a[0]); the caller reattaches the e^{a[0]} factor.

    Factoring the constant out keeps this usable when Re a[0] is far outside
    floating range.
    """
    m = len(a) - 1
    one = np.ones_like(a[0]) if isinstance(a[0], np.ndarray) else 1.0
    out = [one * (1.0 + 0j)]
    for k in range(m):
        acc = out[0] * 0
        for j in range(k + 1):
            acc = acc + (j + 1) * a[j + 1] * out[k - j]
        out.append(acc / (k + 1))
    return out


def jet_log(a):
    """Jet of log(a); a[0] must be nonzero and of moderate magnitude."""
    import cmath
    m = len(a) - 1
    if isinstance(a[0], np.ndarray):
        c0 = np.log(a[0].astype(complex))
        inv0 = 1.0 / a[0]
    else:
        c0 = cmath.log(a[0])
        inv0 = 1.0 / a[0]
    out = [c0]
    for k in range(m):
        acc = (k + 1) * a[k + 1]
        for j in range(k):
            acc = acc - (j + 1) * out[j + 1] * a[k - j]
        out.append(acc * inv0 / (k + 1))
    return out


def jet_derivative_value(jet, order):
    """f^{(order)} from a jet of length > order."""
    import math
    return jet[order] * math.factorial(order)
