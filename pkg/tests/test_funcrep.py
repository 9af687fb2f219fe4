"""Map representations: gallery, evaluation oracles, jets, derivatives."""
import cmath
import math

import numpy as np
import pytest

import nevlab.funcrep as F
from nevlab.errors import ConfigError, DomainError

EXPECTED_GALLERY = [
    "disc-identity-poincare", "exp", "geom-series", "lambda-fs",
    "lambda-poincare", "mobius", "torus-proj", "z", "z2", "z2-minus-quarter",
]


def test_gallery_names_and_lookup():
    assert F.gallery_names() == EXPECTED_GALLERY
    with pytest.raises(ConfigError):
        F.get_map("no-such-map")
    man = F.gallery_manifest()
    assert len(man) == len(EXPECTED_GALLERY)
    for entry in man:
        assert {"name", "radius", "body", "geometry"} <= set(entry)


def test_parse_and_format_complex():
    assert F.parse_complex("2") == 2 + 0j
    assert F.parse_complex("-1.5+0.25i") == complex(-1.5, 0.25)
    assert F.parse_complex("0.5i") == 0.5j
    assert F.is_inf_target(F.parse_complex("inf"))
    assert F.is_inf_target(F.TARGET_INF)
    assert not F.is_inf_target(3 + 4j)
    with pytest.raises(ConfigError):
        F.parse_complex("abc")
    for val in (2 + 0j, 0.5j, -1.25 + 3j, F.TARGET_INF):
        text = F.format_complex(val)
        back = F.parse_complex(text)
        if F.is_inf_target(val):
            assert F.is_inf_target(back)
        else:
            assert back == val


def test_disc():
    d = F.Disc(2.0)
    assert d.bounded
    d.check_radius(1.5)
    with pytest.raises(DomainError):
        d.check_radius(2.0)
    assert not F.Disc(math.inf).bounded
    with pytest.raises(ConfigError):
        F.Disc(0.0)


def test_eval_oracles():
    z = 0.3 + 0.4j
    assert abs(F.get_map("z").eval(z) - z) < 1e-15
    assert abs(F.get_map("z2").eval(z) - z * z) < 1e-15
    assert abs(F.get_map("z2-minus-quarter").eval(z) - (z * z - 0.25)) < 1e-15
    assert abs(F.get_map("mobius").eval(z)
               - (z - 0.5) / (z + 2.0)) < 1e-15
    assert abs(F.get_map("exp").eval(z) - cmath.exp(z)) < 1e-14
    assert abs(F.get_map("geom-series").eval(z) - 1.0 / (1.0 - z)) < 1e-12
    # lambda(i) = 1/2 at the origin of the disc model
    assert abs(F.get_map("lambda-fs").eval(0.0) - 0.5) < 1e-12


def test_lambda_proximity_finite_on_cusp_band():
    # lambda pinches onto 1 faster than float resolution near z = -r for r
    # close to 1; the proximity integrand must stay finite (and keep the
    # true spike height) across the whole band, for every omitted target.
    lam = F.get_map("lambda-fs")
    zs = -0.99 * np.exp(1j * np.linspace(0.0, 2.0 * np.pi, 2001))
    for target in (0j, 1.0 + 0j, complex(math.inf)):
        vals = lam.proximity_values(target, zs)
        assert np.all(np.isfinite(vals))
    spike = lam.proximity_values(1.0 + 0j, np.array([-0.99 + 0j]))[0]
    assert 600.0 < spike < 650.0


def test_lambda_proximity_matches_chordal_distance():
    lam = F.get_map("lambda-fs")
    geom = lam.geometry
    zs = np.array([0.3 + 0.2j, -0.45 + 0.3j, 0.1 - 0.5j])
    for target in (0j, 1.0 + 0j, complex(math.inf), 0.3 - 0.7j):
        vals = lam.proximity_values(target, zs)
        for z, got in zip(zs, vals):
            want = math.log(1.0 / geom.chordal_distance(lam.eval(z), target))
            assert abs(got - want) < 1e-9


def test_torus_projection_is_periodic():
    # eval returns the entire lift; the torus structure lives in the
    # geometry, so proximity values are doubly periodic
    tor = F.get_map("torus-proj")
    zs = np.array([0.21 + 0.37j, -0.8 + 0.13j])
    assert np.allclose(tor.eval_many(zs), zs, atol=1e-14)
    target = 0.5 + 0.5j
    base = tor.proximity_values(target, zs)
    for period in (1.0, 1j, 3.0 - 2j):
        moved = tor.proximity_values(target, zs + period)
        assert np.allclose(moved, base, atol=1e-10)


def test_eval_outside_disc_raises():
    gs = F.get_map("geom-series")
    with pytest.raises(DomainError):
        gs.eval(1.5)


def test_pair_consistency():
    zs = np.array([0.4 + 0.2j, -1.3 + 0.9j, 2.0 - 0.5j])
    for name in ("z", "z2", "mobius", "exp"):
        holo = F.get_map(name)
        den, num, _scale = holo.pair_many(zs)
        vals = holo.eval_many(zs)
        assert np.allclose(num / den, vals, rtol=1e-12)


def test_rep_norm_log():
    # for f = z the reduced pair is (1, z), so log||rep|| = log sqrt(1+|z|^2)
    holo = F.get_map("z")
    zs = np.array([0.5 + 0.1j, 2.0 - 1.0j])
    want = 0.5 * np.log1p(np.abs(zs) ** 2)
    assert np.allclose(holo.rep_norm_log_many(zs), want, rtol=1e-13)


def test_area_density_identity_map():
    # Fubini-Study with total mass one: density = 1/(pi (1+|z|^2)^2)
    holo = F.get_map("z")
    zs = np.array([0.0 + 0j, 0.7 + 0.2j, -1.5 + 1.0j])
    want = 1.0 / (math.pi * (1.0 + np.abs(zs) ** 2) ** 2)
    assert np.allclose(holo.area_density(zs), want, rtol=1e-12)


def test_derivatives_match_finite_differences():
    zs = np.array([0.3 + 0.2j, -0.4 + 0.1j])
    h = 1e-6
    for name in ("z2", "exp", "mobius", "geom-series"):
        holo = F.get_map(name)
        d1 = holo.derivative(1)
        num = (holo.eval_many(zs + h) - holo.eval_many(zs - h)) / (2 * h)
        assert np.allclose(d1.eval_many(zs), num, rtol=1e-7, atol=1e-7)
        d2 = holo.derivative(2)
        num2 = (holo.eval_many(zs + h) - 2 * holo.eval_many(zs)
                + holo.eval_many(zs - h)) / h ** 2
        assert np.allclose(d2.eval_many(zs), num2, rtol=1e-3, atol=1e-3)


def test_eval_jet():
    holo = F.get_map("mobius")
    z0 = 0.2 + 0.3j
    jet = holo.eval_jet(z0, 3)
    h = 1e-5
    f = lambda z: (z - 0.5) / (z + 2.0)
    assert abs(jet[0] - f(z0)) < 1e-14
    assert abs(jet[1] - (f(z0 + h) - f(z0 - h)) / (2 * h)) < 1e-8
    # exact derivative of the Moebius map: 2.5/(z+2)^2
    assert abs(jet[1] - 2.5 / (z0 + 2.0) ** 2) < 1e-13


def test_series_body_matches_closed_form_near_boundary():
    gs = F.get_map("geom-series")
    zs = np.array([0.9, 0.95 * cmath.exp(2j), -0.97])
    assert np.allclose(gs.eval_many(zs), 1.0 / (1.0 - zs), rtol=1e-10)


def test_exp_body_pair_is_pole_free():
    ex = F.get_map("exp")
    zs = np.array([50.0 + 0j, -50.0 + 0j, 10.0j])
    den, num, scale = ex.pair_many(zs)
    assert np.all(np.isfinite(den)) and np.all(np.isfinite(num))
    assert np.all(np.isfinite(scale))
    assert np.all(np.abs(den) > 0)


def test_default_targets_and_meta():
    ex = F.get_map("exp")
    assert F.TARGET_INF in ex.default_targets
    assert ex.meta["description"]
    desc = ex.describe()
    assert desc["name"] == "exp" and desc["radius"] == "inf"
