"""Nochka weights: exact properties, restriction, degenerate SMT balance."""
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

import nevlab.nochka as NK
import nevlab.projcurve as P
from nevlab.errors import (ConfigError, DegenerateInputError, DomainError,
                           ImageInHyperplaneError)

PAIR5 = [(1, 0), (0, 1), (1, 1), (1, -1), (1, 2)]
VAND = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, 2, 4), (1, 3, 9)]


def test_subgeneral_check():
    assert NK.subgeneral_check([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)],
                               2)
    assert NK.subgeneral_check(PAIR5, 2)
    assert not NK.subgeneral_check(
        [(1, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)], 2)
    with pytest.raises(ConfigError):
        NK.subgeneral_check([(1, 0), (0, 1)], 2)
    with pytest.raises(DegenerateInputError):
        NK.subgeneral_check([(1, 0), (0, 0), (0, 1)], 1)
    # float entries agree with the exact path
    assert NK.subgeneral_check([(1.0, 0.0), (0.0, 1.0), (0.5, 0.5),
                                (1.0, -1.0), (1.0, 2.0)], 2)


def test_exact_lp():
    val, x = NK._exact_lp([Fraction(1), Fraction(1)],
                          [([Fraction(1), Fraction(0)], "<=", Fraction(2)),
                           ([Fraction(0), Fraction(1)], "<=", Fraction(3)),
                           ([Fraction(1), Fraction(1)], "<=", Fraction(4))])
    assert val == 4 and x[0] + x[1] == 4
    assert NK._exact_lp([Fraction(1)],
                        [([Fraction(1)], ">=", Fraction(3)),
                         ([Fraction(1)], "<=", Fraction(2))]) is None
    val, x = NK._exact_lp([Fraction(0), Fraction(1)],
                          [([Fraction(1), Fraction(1)], "=", Fraction(1)),
                           ([Fraction(1), Fraction(-1)], ">=", Fraction(0))])
    assert val == Fraction(1, 2)
    assert x == [Fraction(1, 2), Fraction(1, 2)]


def test_weights_general_position():
    w = NK.nochka_weights(VAND, 2)
    assert w.theta == 1 and w.k == 2 and w.n == 2
    assert all(wj == 1 for wj in w.omega)
    assert len(w.certificate) == 5
    assert w.certificate[0].startswith("(i)")
    assert w.certificate[4].startswith("(v)")


def test_weights_pair5():
    w5 = NK.nochka_weights(PAIR5, 2)
    assert w5.theta == 2
    assert all(wj == Fraction(1, 2) for wj in w5.omega)


def test_weights_validation():
    with pytest.raises(ConfigError):
        NK.nochka_weights([(1, 0), (0, 1)], 2, 1)
    with pytest.raises(DegenerateInputError):
        NK.nochka_weights([(1, 0), (2, 0), (3, 0), (0, 1)], 1, 1)
    with pytest.raises(ConfigError):
        NK.nochka_weights(PAIR5, 2, 2)


def test_weights_descending_scan():
    # a proportional pair forces the scan below the top candidate
    desc = [(1, 0, 0), (2, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]
    wd = NK.nochka_weights(desc, 3)
    assert wd.theta == Fraction(3, 2)
    assert wd.omega == (Fraction(1, 2), Fraction(1, 2), Fraction(2, 3),
                        Fraction(2, 3), Fraction(2, 3))
    # sum identity: q - 2n + k - 1 = theta (sum omega - (k+1))
    assert Fraction(5 - 6 + 2 - 1) == wd.theta * (sum(wd.omega) - 3)


def test_property_v_basics():
    w5 = NK.nochka_weights(PAIR5, 2)
    m, okflag = NK.verify_property_v(w5, PAIR5, [1.0] * 5, (0, 1, 2))
    assert okflag and len(m) == 2
    w = NK.nochka_weights(VAND, 2)
    m, okflag = NK.verify_property_v(w, VAND, [5.0, 7.0, 2.0, 1.0, 1.0, 1.0],
                                     (0, 1, 2))
    assert okflag and m == (0, 1, 2)
    with pytest.raises(ConfigError):
        NK.verify_property_v(w5, PAIR5, [0.5] + [1.0] * 4, (0, 1))
    with pytest.raises(ConfigError):
        NK.verify_property_v(w5, PAIR5, [1.0] * 5, (0, 1, 2, 3))


def test_property_v_random_draws():
    w5 = NK.nochka_weights(PAIR5, 2)
    rng = np.random.default_rng(7)
    for _ in range(100):
        e_vals = rng.uniform(1.0, 10.0, size=5)
        y_size = int(rng.integers(1, 4))
        y_set = tuple(sorted(
            rng.choice(5, size=y_size, replace=False).tolist()))
        _, okflag = NK.verify_property_v(w5, PAIR5, e_vals, y_set)
        assert okflag


def test_random_configurations_exact_invariants():
    rng = np.random.default_rng(11)
    tried = 0
    passed = 0
    while passed < 20 and tried < 400:
        tried += 1
        n = int(rng.integers(1, 4))
        k = int(rng.integers(0, min(n, 2) + 1))
        qmin = 2 * n - k + 1
        if qmin > 8:
            continue
        q = int(rng.integers(qmin, 9))
        normals = []
        for _ in range(q):
            while True:
                v = tuple(int(x) for x in rng.integers(-3, 4, size=k + 1))
                if any(v):
                    normals.append(v)
                    break
        try:
            if not NK.subgeneral_check(normals, n):
                continue
        except DegenerateInputError:
            continue
        ww = NK.nochka_weights(normals, n, k)
        rank_of = NK._rank_function(normals)
        # (ii) 0 < omega_j theta <= 1
        assert all(0 < wj * ww.theta <= 1 for wj in ww.omega)
        # (iii) sum identity
        assert Fraction(q - 2 * n + k - 1) == \
            ww.theta * (sum(ww.omega) - (k + 1))
        # (i) subset sums bounded by rank
        for size in range(1, min(q, n + 1) + 1):
            for B in combinations(range(q), size):
                assert sum(ww.omega[j] for j in B) <= rank_of(B)
        # (iv) theta range
        assert Fraction(n + 1, k + 1) <= ww.theta \
            <= Fraction(2 * n - k + 1, k + 1)
        passed += 1
    assert passed == 20


def test_restrict_to_plane():
    curve = P.get_curve("exp-degenerate")
    g, rows = NK.restrict_to_plane(curve, [(1, 0, 0), (0, 1, 0)])
    assert g.n == 1 and not g.comps[0].is_zero()
    line = P.get_curve("exp-line")
    z = np.array([0.3 + 0.1j])
    assert np.allclose(g.values(z), line.values(z))
    with pytest.raises(DomainError):
        NK.restrict_to_plane(P.get_curve("exp-conic"),
                             [(1, 0, 0), (0, 1, 0)])
    with pytest.raises(DegenerateInputError):
        NK.restrict_to_plane(curve, [(1, 0, 0), (2, 0, 0)])


HYPS5 = [P.Hyperplane((1, 2, 1)), P.Hyperplane((2, -1, 1)),
         P.Hyperplane((1, 1, -1)), P.Hyperplane((3, 1, 2)),
         P.Hyperplane((1, -3, 1))]


def test_nochka_smt_report_degenerate():
    curve = P.get_curve("exp-degenerate")
    grid = np.linspace(2.0, 30.0, 15)
    rep = NK.nochka_smt_report(curve, HYPS5, grid)
    assert rep["k"] == 1 and rep["n"] == 2
    assert rep["theta"] == 2
    assert all(wj == Fraction(1, 2) for wj in rep["omega"])
    assert rep["ram_certificate"] is not None
    assert np.all(rep["N_ram"] == 0.0)
    assert float(np.min(rep["slack"])) >= -1.0
    assert rep["ok"]
    assert float(np.max(rep["m_total"])) < 10.0
    with pytest.raises(ImageInHyperplaneError):
        NK.nochka_smt_report(
            curve, HYPS5 + [P.Hyperplane((0, 0, 1), name="x2=0")], grid)


def test_nochka_k_equals_n_matches_cartan():
    conic = P.get_curve("exp-conic")
    hyps3 = P.coordinate_hyperplanes(2)
    grid = np.linspace(5.0, 30.0, 8)
    rep_n = NK.nochka_smt_report(conic, hyps3, grid)
    rep_c = P.cartan_smt_report(conic, hyps3, grid)
    assert rep_n["theta"] == 1 and all(wj == 1 for wj in rep_n["omega"])
    assert float(np.max(np.abs(rep_n["lhs"] - rep_c["lhs"]))) <= 1e-9
    assert float(np.max(np.abs(rep_n["rhs"] - rep_c["rhs"]))) <= 1e-9
    assert float(np.max(np.abs(rep_n["slack"] - rep_c["slack"]))) <= 1e-9
    assert rep_n["C0"] == rep_c["C0"]


def test_nochka_explicit_plane():
    grid = np.linspace(2.0, 30.0, 15)
    skew = P.ProjCurve("skew-degenerate",
                       [P.ExpPoly.poly([1]), P.ExpPoly.exponential(1),
                        P.ExpPoly.exponential(1, (2,))])
    with pytest.raises(ConfigError):
        NK.nochka_smt_report(skew, HYPS5, grid)
    rep = NK.nochka_smt_report(skew, HYPS5, grid,
                               plane=[(1, 0, 0), (0, 1, 2)])
    assert rep["k"] == 1 and rep["ok"]
    assert float(np.min(rep["slack"])) >= -1.0
