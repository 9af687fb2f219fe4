"""Floating-point working precision, selected once per process.

NEVLAB_PRECISION=double   -> float64/complex128 (default)
NEVLAB_PRECISION=extended -> numpy longdouble (64-bit mantissa on x86-64),
                             for Wronskian-degeneracy stress runs
"""

from __future__ import annotations

import os

import numpy as np

MODE = os.environ.get("NEVLAB_PRECISION", "double").strip().lower()
if MODE not in ("double", "extended"):
    raise RuntimeError(
        "NEVLAB_PRECISION must be 'double' or 'extended', got %r" % (MODE,))

if MODE == "extended":
    REAL = np.longdouble
    CPLX = np.clongdouble
else:
    REAL = np.float64
    CPLX = np.complex128

REAL_EPS = float(np.finfo(REAL).eps)


def real_array(x):
    return np.asarray(x, dtype=REAL)


def cplx_array(x):
    return np.asarray(x, dtype=CPLX)
