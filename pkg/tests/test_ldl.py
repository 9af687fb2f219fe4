"""Logarithmic derivative proximity and its residual reports."""
import math

import numpy as np
import pytest

import nevlab.funcrep as F
import nevlab.ldl as L
from nevlab.errors import ConfigError


def test_exact_zero_cases():
    # f'/f = 1 for exp, so log+ |f'/f| integrates to zero
    assert L.logderiv_proximity(F.get_map("exp"), 10.0, 1) == 0.0
    # f'/f = 1/z for the identity: |1/z| = 1/2 < 1 on r = 2
    assert L.logderiv_proximity(F.get_map("z"), 2.0, 1) == 0.0


def test_geom_series_midpoint_oracle():
    # f = 1/(1-z): f'/f = 1/(1-z); compare against a dense midpoint rule
    val = L.logderiv_proximity(F.get_map("geom-series"), 0.9, 1)
    ts = (np.arange(200000) + 0.5) * (2.0 * math.pi / 200000)
    oracle = float(np.mean(np.log(np.maximum(
        1.0 / np.abs(1.0 - 0.9 * np.exp(1j * ts)), 1.0))))
    assert 0.0 < val < 2.0
    assert abs(val - oracle) < 1e-6


def test_zeros_on_the_circle():
    # both zeros of z^2 - 1/4 lie exactly on r = 0.5
    z2q = F.get_map("z2-minus-quarter")
    v_on = L.logderiv_proximity(z2q, 0.5, 1)
    v_near = L.logderiv_proximity(z2q, 0.5000001, 1)
    assert np.isfinite(v_on) and v_on > 0.0
    assert abs(v_on - v_near) < 5e-3


def test_scale_invariance():
    # f -> c f leaves every f^(k)/f unchanged
    z2q = F.get_map("z2-minus-quarter")
    sc = F.HoloMap(name="scaled-z2q", disc=z2q.disc,
                   body=F.RationalBody((-0.25 * 3.7, 0, 3.7)),
                   geometry=F.FubiniStudy())
    for k in (1, 2):
        a = L.logderiv_proximity(z2q, 1.7, k)
        b = L.logderiv_proximity(sc, 1.7, k)
        assert abs(a - b) <= 1e-9


def test_chain_inequality_gallery():
    # m(r, f''/f) <= m(r, f''/f') + m(r, f'/f) up to quadrature noise
    tol = 5e-3
    for name in F.gallery_names():
        holo = F.get_map(name)
        r = 2.0 if not holo.disc.bounded else 0.7 * holo.disc.radius
        lhs2 = L.logderiv_proximity(holo, r, 2)
        step1 = L.logderiv_proximity(holo, r, 1)
        step2 = L.logderiv_proximity(holo.derivative(1), r, 1)
        assert lhs2 <= step1 + step2 + tol, name


def test_residual_exp():
    rep = L.ldl_residual(F.get_map("exp"), np.linspace(2.0, 40.0, 12), k=1)
    assert np.all(rep["lhs"] == 0.0)
    assert not np.any(rep["flags"])
    assert rep["exceptional_measure"] == 0.0
    assert rep["ok"]


def test_residual_rational():
    rep = L.ldl_residual(F.get_map("z2-minus-quarter"),
                         np.linspace(0.2, 50.0, 25), k=1)
    assert np.all(rep["lhs"] >= 0.0)
    assert rep["exceptional_measure"] <= 10.0
    assert abs(rep["growth_index"]) < 0.2


def test_residual_bounded_disc():
    grid = np.linspace(0.5, 0.999, 20)
    rep = L.ldl_residual(F.get_map("geom-series"), grid, k=2)
    assert rep["exceptional_measure"] <= 10.0
    assert rep["gamma_policy"] == "exp((c+eps)T)"
    # a user-supplied weight overrides the theorem form
    rep = L.ldl_residual(F.get_map("geom-series"), grid, k=2,
                         gamma=lambda r: 1.0 / (1.0 - r))
    assert rep["gamma_policy"] == "user"
    assert rep["exceptional_measure"] <= 10.0
    assert rep["ok"]


def test_residual_validation():
    grid = np.linspace(2.0, 40.0, 12)
    with pytest.raises(ConfigError):
        L.ldl_residual(F.get_map("exp"), grid, k=1, delta=1.5)
    with pytest.raises(ConfigError):
        L.ldl_residual(F.get_map("exp"), grid, k=1, gamma=lambda r: -1.0)
