"""Radial grids, adaptive circle averages, and growth-lemma checks."""
import math

import numpy as np
import pytest

from nevlab.errors import GridError
from nevlab.quad import (RadialGrid, as_radii, calculus_lemma_check,
                         circle_average, exceptional_measure,
                         growth_derivative_check, height_profile)


def test_radial_grid_construction():
    g = RadialGrid.geometric_inf(1.0, 50.0, 10)
    r = g.arrays()
    assert r[0] == 1.0 and r[-1] == 50.0 and len(r) == 10
    assert np.all(np.diff(r) > 0)
    gd = RadialGrid.geometric_disc(1.0, n=12)
    rd = gd.arrays()
    assert rd[-1] < 1.0 and np.all(np.diff(rd) > 0)
    assert RadialGrid.for_disc(math.inf, n=8).disc_radius == math.inf
    assert RadialGrid.for_disc(2.0, n=8).disc_radius == 2.0
    with pytest.raises(GridError):
        RadialGrid((2.0, 1.0), math.inf)
    with pytest.raises(GridError):
        RadialGrid((0.5, 2.5), 2.0)


def test_trapezoid_weights_telescope():
    g = RadialGrid.geometric_inf(1.0, 10.0, 9)
    w = g.trapezoid_weights()
    assert abs(w.sum() - (10.0 - 1.0)) < 1e-12


def test_as_radii():
    g = RadialGrid.geometric_inf(1.0, 5.0, 5)
    assert np.array_equal(as_radii(g), g.arrays())
    assert np.array_equal(as_radii([1.0, 2.0]), np.array([1.0, 2.0]))
    with pytest.raises(GridError):
        as_radii([2.0, 1.0])
    with pytest.raises(GridError):
        as_radii([-1.0, 1.0])


def test_circle_average_constant_and_polynomial():
    avg, info = circle_average(lambda zs: np.full(zs.shape, 3.25), 2.0)
    assert abs(avg - 3.25) < 1e-12
    assert info["evals"] > 0 and not info["depth_capped"]
    # average of Re(z)^2 over |z| = r is r^2/2
    avg, _ = circle_average(lambda zs: zs.real ** 2, 1.7)
    assert abs(avg - 1.7 ** 2 / 2.0) < 1e-10


def test_circle_average_mean_value_property():
    # avg over |z|=r of log|z - a| is log r for any |a| < r (Jensen)
    a = 0.6 + 0.3j
    avg, _ = circle_average(lambda zs: np.log(np.abs(zs - a)), 2.0)
    assert abs(avg - math.log(2.0)) < 1e-9


def test_circle_average_log_singularity_with_hint():
    # target exactly on the circle: the average is still log r
    r = 1.5
    a = r * np.exp(1j * 0.8)
    fn = lambda zs: np.log(np.abs(zs - a))
    avg, info = circle_average(fn, r, hints=[0.8])
    assert abs(avg - math.log(r)) < 2e-4
    assert info["evals"] > 100


def test_height_profile_identity_map():
    # mass-one FS density of f = z is radial: 1/(pi (1+s^2)^2);
    # its height is T(r) = log(1+r^2)/2
    radii = np.geomspace(0.5, 5.0, 24)
    T, mass = height_profile(
        lambda s: 1.0 / (math.pi * (1.0 + s * s) ** 2), radii)
    assert np.allclose(T, 0.5 * np.log1p(radii ** 2), atol=2e-4)
    # the enclosed mass of the mass-one form is r^2/(1+r^2)
    assert np.allclose(mass, radii ** 2 / (1.0 + radii ** 2), atol=2e-4)


def test_growth_derivative_check_smooth_char():
    # T = log(1+r^2)/2 on the plane satisfies T' <= exp(0.1 T) everywhere
    r = np.linspace(0.5, 20.0, 80)
    T = 0.5 * np.log1p(r ** 2)
    out = growth_derivative_check(T, r, growth_index=0.0)
    assert not np.any(out["flags"])
    assert out["measure"] == 0.0 and out["ok"]


def test_growth_derivative_check_flags_fast_growth():
    # T = e^r grows faster than exp((0+eps) T) allows near the start
    r = np.linspace(0.1, 2.0, 60)
    T = np.exp(3.0 * r)
    out = growth_derivative_check(T, r, growth_index=0.0)
    assert np.any(out["flags"])
    assert out["measure"] > 0.0
    with pytest.raises(GridError):
        growth_derivative_check(np.array([1.0, 0.5, 2.0]),
                                np.array([1.0, 2.0, 3.0]), 0.0)


def test_calculus_lemma_linear_case():
    # h = r, gamma = 1, delta = 1/2: h' = 1 > h^{3/2} only for r < 1
    r = np.linspace(0.05, 5.0, 200)
    out = calculus_lemma_check(lambda s: s, 1.0, 0.5, r)
    flagged = out["flagged_radii"]
    assert len(flagged) > 0
    assert flagged.max() < 1.0
    assert 0.0 < out["measure"] <= 1.0


def test_calculus_lemma_borel_case():
    # h = log 1/(1-r), gamma = 1/(1-r) on the unit disc
    r = np.linspace(0.01, 0.99, 150)
    out = calculus_lemma_check(lambda s: np.log(1.0 / (1.0 - s)),
                               lambda s: 1.0 / (1.0 - s), 0.5, r)
    assert out["measure"] <= 10.0


def test_calculus_lemma_constant_h_never_flags():
    r = np.linspace(0.5, 3.0, 50)
    out = calculus_lemma_check(np.full_like(r, 2.0), 1.0, 0.3, r)
    assert not np.any(out["flags"])
    assert out["measure"] == 0.0


def test_calculus_lemma_second_order():
    # h = r^2 with gamma = 1, delta = 1/2:
    # (1/r) d/dr (r h') = 4, bound = r^{1/2} h^{9/4} = r^{1/2} r^{4.5}
    r = np.linspace(0.2, 3.0, 300)
    out = calculus_lemma_check(lambda s: s ** 2, 1.0, 0.5, r, order=2)
    flagged = out["flagged_radii"]
    crossing = 4.0 ** (1.0 / 5.0)
    assert len(flagged) > 0
    assert flagged.max() < crossing + 0.1
    assert np.isfinite(out["measure"])


def test_calculus_lemma_validation():
    r = np.linspace(0.1, 1.0, 30)
    with pytest.raises(GridError):
        calculus_lemma_check(lambda s: s, 1.0, 1.5, r)
    with pytest.raises(GridError):
        calculus_lemma_check(lambda s: s, 1.0, 0.5, r[:2])
    with pytest.raises(GridError):
        calculus_lemma_check(lambda s: s, -1.0, 0.5, r)
    with pytest.raises(GridError):
        calculus_lemma_check(lambda s: -s, 1.0, 0.5, r)
    with pytest.raises(GridError):
        calculus_lemma_check(lambda s: s, 1.0, 0.5, r, order=3)


def test_exceptional_measure():
    r = np.linspace(1.0, 2.0, 11)
    T = np.zeros_like(r)
    flags = np.zeros(len(r), dtype=bool)
    assert exceptional_measure(flags, r, T, 0.0) == 0.0
    flags[3:6] = True
    # with T = 0, c = 0, eps = 0.1 the density is exp(0) = 1
    got = exceptional_measure(flags, r, T, 0.0)
    assert abs(got - 0.3) < 1e-12
    # huge characteristics saturate the cap
    got = exceptional_measure(flags, np.linspace(1, 2, 11),
                              np.full(11, 1e4), 1.0, cap=10.0)
    assert got == 10.0
