"""Modular lambda, theta series, and flat-torus Green function."""
import cmath
import math

import numpy as np
import pytest

from nevlab.errors import DomainError, PrecisionError
from nevlab.modular import (TorusGeometry, cayley, lambda_affine,
                            lambda_combo_log, lambda_jet, lambda_log_pair,
                            normalize_lattice, reduce_tau, theta1_log,
                            theta_jets, torus_geometry, torus_green)


def brute_lambda(tau, terms=40):
    """Independent oracle: lambda = theta2^4 / theta3^4 by direct q-series."""
    w = 1j * math.pi * tau
    th2 = sum(2.0 * cmath.exp(w * (n + 0.5) ** 2) for n in range(terms))
    th3 = 1.0 + sum(2.0 * cmath.exp(w * n * n) for n in range(1, terms))
    return (th2 / th3) ** 4


def test_cayley_disc_to_half_plane():
    assert cayley(0.0) == 1j
    rng = np.random.default_rng(0)
    for _ in range(50):
        z = 0.95 * (rng.uniform(-1, 1) + 1j * rng.uniform(-1, 1))
        if abs(z) >= 1.0:
            continue
        assert cayley(z).imag > 0.0
    # real diameter maps onto the imaginary axis
    assert abs(cayley(0.5).real) < 1e-15


def test_reduce_tau_fundamental_domain():
    rng = np.random.default_rng(1)
    for _ in range(50):
        tau = complex(rng.uniform(-4, 4), rng.uniform(0.05, 3.0))
        red, M, G = reduce_tau(tau)
        assert abs(red.real) <= 0.5 + 1e-9
        assert abs(red) >= 1.0 - 1e-9
        # G acts as the reducing Moebius transformation
        assert abs(red - (G[0][0] * tau + G[0][1])
                   / (G[1][0] * tau + G[1][1])) < 1e-9
        assert G[0][0] * G[1][1] - G[0][1] * G[1][0] == 1
    with pytest.raises(PrecisionError):
        reduce_tau(1.0 - 1j)


def test_theta_values_at_square_point():
    th2, th3 = theta_jets(1j, 0)
    # theta3(i) = pi^(1/4) / Gamma(3/4)
    want3 = math.pi ** 0.25 / math.gamma(0.75)
    assert abs(th3[0] - want3) < 1e-12
    # lambda(i) = 1/2 forces theta2(i) = theta3(i) / 2^(1/4)
    assert abs(th2[0] - want3 / 2.0 ** 0.25) < 1e-12


def test_theta_jets_match_finite_differences():
    tau = 0.2 + 1.1j
    th2, th3 = theta_jets(tau, 2)
    h = 1e-5
    for move in (h, h * 1j):
        p2, p3 = theta_jets(tau + move, 0)
        m2, m3 = theta_jets(tau - move, 0)
        assert abs((p2[0] - m2[0]) / (2 * move) - th2[1]) < 1e-6
        assert abs((p3[0] - m3[0]) / (2 * move) - th3[1]) < 1e-6


def test_lambda_at_symmetric_point():
    # lambda(i) = 1/2, reached from the disc origin through the Cayley map
    assert abs(lambda_affine(0.0) - 0.5) < 1e-12


def test_lambda_matches_direct_series():
    rng = np.random.default_rng(2)
    for _ in range(25):
        z = 0.4 * (rng.uniform(-1, 1) + 1j * rng.uniform(-1, 1))
        tau = cayley(z)
        assert abs(lambda_affine(z) - brute_lambda(tau)) < 1e-10
    # frozen regression value
    assert abs(lambda_affine(0.3) - 0.045725600122065516) < 1e-14


def test_lambda_log_pair_consistency():
    l0, l1 = lambda_log_pair(0.2 + 0.1j)
    assert abs(cmath.exp(l1 - l0) - lambda_affine(0.2 + 0.1j)) < 1e-12


def brute_one_minus_lambda(tau, terms=80):
    """Independent oracle: 1 - lambda = theta4^4 / theta3^4 by q-series."""
    w = 1j * math.pi * tau
    th4 = 1.0 + sum(2.0 * (-1) ** n * cmath.exp(w * n * n)
                    for n in range(1, terms))
    th3 = 1.0 + sum(2.0 * cmath.exp(w * n * n) for n in range(1, terms))
    return (th4 / th3) ** 4


def test_lambda_combo_log_matches_theta_series():
    # log(num - den) - log(den) = log(lambda - 1); compare |lambda - 1|
    # against the theta4/theta3 series where the series still converges.
    for z in (0.2 + 0.1j, -0.3 - 0.2j, -0.6 + 0.1j, -0.8 + 0j):
        tau = cayley(z)
        want = math.log(abs(brute_one_minus_lambda(tau)))
        l0, _ = lambda_log_pair(z)
        got = (lambda_combo_log(z, -1.0, 1.0) - l0).real
        assert abs(got - want) < 1e-9


def test_lambda_combo_log_stable_past_float_resolution():
    # At z = -0.9 the affine lambda rounds to exactly 1.0; the combination
    # log|num - den| must still carry the superexponentially small gap.
    z = -0.9 + 0j
    assert lambda_affine(z) == 1.0
    tau = cayley(z)
    want = math.log(abs(brute_one_minus_lambda(tau)))
    l0, _ = lambda_log_pair(z)
    got = (lambda_combo_log(z, -1.0, 1.0) - l0).real
    assert math.isfinite(got)
    assert abs(got - want) < 1e-6
    assert got < -50.0


def test_lambda_combo_log_basis_recovers_pair():
    z = 0.15 - 0.25j
    l0, l1 = lambda_log_pair(z)
    d0 = lambda_combo_log(z, 1.0, 0.0) - l0
    d1 = lambda_combo_log(z, 0.0, 1.0) - l1
    assert abs(d0.real) < 1e-12 and abs(d1.real) < 1e-12
    with pytest.raises(DomainError):
        lambda_combo_log(z, 0.0, 0.0)


def test_lambda_omits_zero_and_one():
    rng = np.random.default_rng(3)
    for _ in range(40):
        z = 0.8 * (rng.uniform(-1, 1) + 1j * rng.uniform(-1, 1))
        if abs(z) >= 0.8:
            continue
        val = lambda_affine(z)
        assert val != 0.0 and abs(val - 1.0) > 1e-12


def test_lambda_jet_derivatives():
    z0 = 0.15 - 0.1j
    jet = lambda_jet(z0, 2)
    assert abs(jet[0] - lambda_affine(z0)) < 1e-12
    h = 1e-5
    d1 = (lambda_affine(z0 + h) - lambda_affine(z0 - h)) / (2 * h)
    d2 = (lambda_affine(z0 + h) - 2 * lambda_affine(z0)
          + lambda_affine(z0 - h)) / h ** 2
    assert abs(jet[1] - d1) < 1e-7
    assert abs(2.0 * jet[2] - d2) < 1e-4


def test_theta1_oddness_and_zero():
    tau = 0.3 + 1.4j
    v = 0.21 + 0.13j
    a = theta1_log(v, tau)
    b = theta1_log(-v, tau)
    assert abs(a.real - b.real) < 1e-12
    assert theta1_log(0.0, tau).real == -math.inf


def test_normalize_lattice():
    w1, w2 = normalize_lattice(1.0, 1j)
    assert abs(w2 / w1 - 1j) < 1e-14
    # area of the fundamental cell is a lattice invariant
    for pair in ((2.0, 2.0 + 2.0j), (1.0 + 1j, 3.0j), (0.5, 0.25 + 0.75j)):
        a0 = abs((complex(pair[0]).conjugate() * complex(pair[1])).imag)
        b1, b2 = normalize_lattice(*pair)
        a1 = abs((b1.conjugate() * b2).imag)
        assert abs(a0 - a1) < 1e-12
        tau = b2 / b1
        assert tau.imag > 0 and abs(tau.real) <= 0.5 + 1e-12
    with pytest.raises(ValueError):
        normalize_lattice(1.0, 2.0)


def test_torus_geometry_square():
    geom = torus_geometry(1.0, 1j)
    assert isinstance(geom, TorusGeometry)
    assert abs(geom.tau - 1j) < 1e-14
    assert abs(geom.volume - 1.0) < 1e-12
    assert geom.mean_const > geom.min_const


def test_torus_green_properties():
    geom = torus_geometry(1.0, 1j)
    z, a = 0.31 + 0.17j, -0.12 + 0.4j
    # symmetry and periodicity
    assert abs(torus_green(z, a, geom) - torus_green(a, z, geom)) < 1e-10
    for period in (1.0, 1j, 1.0 + 1j):
        assert abs(torus_green(z + period, a, geom)
                   - torus_green(z, a, geom)) < 1e-10
    # positive normalization and the singularity on the divisor
    assert torus_green(z, a, geom) >= 0.0
    assert torus_green(a, a, geom) == math.inf
    # log singularity: u + log|z - a|^2 stays bounded near the pole
    vals = []
    for eps in (1e-3, 1e-4, 1e-5):
        vals.append(torus_green(a + eps, a, geom) + 2.0 * math.log(eps))
    assert max(vals) - min(vals) < 1e-2


def test_torus_green_array_input():
    geom = torus_geometry(1.0, 1j)
    zs = np.array([0.2 + 0.1j, 0.4 - 0.3j, 0.05j])
    out = torus_green(zs, 0.5 + 0.25j, geom)
    assert out.shape == zs.shape
    for i, zz in enumerate(zs):
        assert out[i] == torus_green(complex(zz), 0.5 + 0.25j, geom)
