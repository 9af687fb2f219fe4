"""Preimage divisors, counting functions, winding numbers, ramification."""
import math
from fractions import Fraction

import numpy as np
import pytest

import nevlab.funcrep as F
import nevlab.zeros as Z
from nevlab.errors import OriginHitsTargetError
from nevlab.rationals import QC, pmul


def test_rational_preimage_divisors():
    m = F.get_map("z2-minus-quarter")
    recs = Z.preimage_divisor(m, 0j, 2.0)
    assert sorted(round(r.z.real, 12) for r in recs) == [-0.5, 0.5]
    assert all(r.mult == 1 for r in recs)

    z2 = F.get_map("z2")
    recs = Z.preimage_divisor(z2, 0j, 2.0)
    assert len(recs) == 1 and recs[0].mult == 2 and abs(recs[0].z) == 0

    mob = F.get_map("mobius")
    recs = Z.preimage_divisor(mob, F.TARGET_INF, 5.0)
    assert len(recs) == 1 and abs(recs[0].z + 2) < 1e-14


def test_unintegrated_counts():
    # solutions of e^z = 1 in |z| <= 20 are 2 pi i k, |k| <= 3, plus z = 0
    assert Z.unintegrated_count(F.get_map("exp"), 1.0 + 0j, 20.0) == 7
    # preimages of a point under the square-torus projection: one per cell
    assert Z.unintegrated_count(F.get_map("torus-proj"), 0.5 + 0.5j, 3.0) == 32


def test_counting_function_origin_handling():
    z2 = F.get_map("z2")
    radii = np.array([1.0, 2.0, 4.0])
    out = Z.counting_function(z2, 0j, radii, origin="log-correction")
    assert np.allclose(out["N"], 2.0 * np.log(radii))
    assert out["origin_mult"] == 2
    with pytest.raises(OriginHitsTargetError):
        Z.counting_function(z2, 0j, radii)
    out = Z.counting_function(z2, 0j, radii, truncation=1,
                              origin="log-correction")
    assert np.allclose(out["N"], np.log(radii))


def test_ramification():
    z2 = F.get_map("z2")
    out = Z.ramification_counting(z2, np.array([1.0, math.e]))
    assert abs(out["N_ram"][1] - 1.0) < 1e-12

    recs, cert = Z.ramification_records(F.get_map("mobius"), 10.0)
    assert recs == []
    recs, cert = Z.ramification_records(F.get_map("exp"), 10.0)
    assert recs == [] and cert


def test_series_quadtree_zeros():
    gs = F.get_map("geom-series")
    recs = Z.preimage_divisor(gs, 2.0 + 0j, 0.9)
    assert len(recs) == 1 and abs(recs[0].z - 0.5) < 1e-10
    assert recs[0].mult == 1

    # z^2 represented as a bare power series: two simple preimages of 1/4,
    # then a double zero at the origin
    body = F.SeriesBody(lambda n: 1.0 if n == 2 else 0.0, 100.0, 10.0,
                        "wrap-z2")
    wrap = F.HoloMap(name="wrap-z2", disc=F.Disc(10.0), body=body,
                     geometry=F.FubiniStudy(), default_targets=[], meta={})
    recs = Z.preimage_divisor(wrap, 0.25 + 0j, 2.0)
    assert len(recs) == 2
    got = sorted(r.z.real for r in recs)
    assert abs(got[0] + 0.5) < 1e-10 and abs(got[1] - 0.5) < 1e-10
    recs = Z.preimage_divisor(wrap, 0j, 2.0)
    assert len(recs) == 1 and abs(recs[0].z) < 1e-12 and recs[0].mult == 2


def test_winding_count_known_maps():
    z2 = F.get_map("z2")
    assert Z.winding_count(z2, 3.0) == 2
    assert Z.winding_count(z2, 3.0, a=0.25 + 0j) == 2
    mob = F.get_map("mobius")
    assert Z.winding_count(mob, 5.0, a=F.TARGET_INF) == 1
    assert Z.winding_count(mob, 1.0, a=F.TARGET_INF) == 0
    ex = F.get_map("exp")
    assert Z.winding_count(ex, 20.0, a=1.0 + 0j) == 7


def test_winding_count_random_polynomials():
    rng = np.random.default_rng(9)
    for _ in range(30):
        deg = int(rng.integers(1, 9))
        # exact Gaussian-rational roots on a grid inside |z| < 2
        roots = []
        while len(roots) < deg:
            a = QC(Fraction(int(rng.integers(-24, 25)), 16),
                   Fraction(int(rng.integers(-24, 25)), 16))
            if float(a.abs2()) < 4.0:
                roots.append(a)
        poly = [QC(1)]
        for root in roots:
            poly = pmul(poly, [-root, QC(1)])
        holo = F.HoloMap(name="poly", disc=F.Disc(math.inf),
                         body=F.RationalBody(poly), geometry=F.FubiniStudy(),
                         default_targets=(), meta={})
        assert Z.winding_count(holo, 3.0) == deg


def test_locate_zeros_with_multiplicities():
    # (z - 1/2)^2 (z + 1/4 - i/4): exact double and simple roots
    r1 = QC(Fraction(1, 2))
    r2 = QC(Fraction(-1, 4), Fraction(1, 4))
    poly = pmul(pmul([-r1, QC(1)], [-r1, QC(1)]), [-r2, QC(1)])
    holo = F.HoloMap(name="poly", disc=F.Disc(math.inf),
                     body=F.RationalBody(poly), geometry=F.FubiniStudy(),
                     default_targets=(), meta={})
    recs = Z.locate_zeros(holo, 3.0)
    got = sorted(((r.z, r.mult) for r in recs), key=lambda t: t[0].real)
    assert abs(got[0][0] - r2.to_complex()) < 1e-8 and got[0][1] == 1
    assert abs(got[1][0] - 0.5) < 1e-8 and got[1][1] == 2


def test_divisor_counting_and_hints():
    recs = Z.preimage_divisor(F.get_map("z2-minus-quarter"), 0j, 10.0)
    radii = np.array([1.0, 2.0, 4.0])
    N = Z.divisor_counting(recs, radii)
    assert np.allclose(N, 2.0 * np.log(radii / 0.5))
    hints = Z.circle_hints(recs, 0.5)
    assert len(hints) == 2
    assert not Z.circle_hints(recs, 5.0)
