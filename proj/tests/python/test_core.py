import numpy as np
import pytest

import gdstar

NIL = np.array([[0, 1], [0, 0]], dtype=complex)
IDEM = np.array([[1, 1], [0, 0]], dtype=complex)


def test_rank_and_index():
    assert gdstar.index(NIL) == 2
    assert gdstar.index(IDEM) == 1
    assert gdstar.rank(IDEM) == 1
    flags = gdstar.classify(np.diag([1.0, 0.0]))
    assert flags["ep"] and flags["hermitian"]


def test_classical_inverses():
    np.testing.assert_allclose(gdstar.moore_penrose(IDEM), [[0.5, 0], [0.5, 0]], atol=1e-12)
    np.testing.assert_allclose(gdstar.drazin(NIL), np.zeros((2, 2)), atol=1e-12)
    np.testing.assert_allclose(gdstar.group_inverse(np.diag([2.0, 0.0])), np.diag([0.5, 0]), atol=1e-14)
    with pytest.raises(gdstar.IndexTooLarge):
        gdstar.group_inverse(NIL)


def test_pinv_matches_numpy():
    rng = np.random.default_rng(0)
    A = rng.standard_normal((5, 2)) @ rng.standard_normal((2, 5))
    np.testing.assert_allclose(gdstar.moore_penrose(A), np.linalg.pinv(A), atol=1e-10)


@pytest.mark.parametrize("seed", range(5))
@pytest.mark.parametrize("route", ["unitary", "similarity"])
def test_gd_family_of_idempotent(seed, route):
    X = gdstar.gd_sample(IDEM, seed=seed, route=route)
    assert abs(X[0, 0] - 1) < 1e-12 and abs(X[1, 0]) < 1e-12
    assert abs(X[0, 1] + X[1, 1] - 1) < 1e-12
    assert gdstar.gd_verify(IDEM, X)["pass"]
    np.testing.assert_allclose(gdstar.gdmp(IDEM, X), [[1, 0], [0, 0]], atol=1e-12)
    np.testing.assert_allclose(gdstar.gd_star(IDEM, X), [[2, 0], [0, 0]], atol=1e-12)
    np.testing.assert_allclose(gdstar.dual_gd_star(IDEM, X), [[1, 1], [1, 1]], atol=1e-12)
    a, b = X[0, 1], X[1, 1]
    np.testing.assert_allclose(gdstar.gd_star_one(IDEM, X), [[1 + a, 1 + a], [b, b]], atol=1e-12)


def test_invalid_witness():
    with pytest.raises(gdstar.InvalidWitness):
        gdstar.gd_star(NIL, np.zeros((2, 2)))
    with pytest.raises(gdstar.InputError):
        gdstar.gd_verify(NIL, np.zeros((3, 3)))


def test_suites_and_decompositions():
    X = gdstar.gd_sample(IDEM, seed=3)
    for suite in ["sa3", "dual", "star-one", "special", "spectral"]:
        assert gdstar.verify_suite(suite, IDEM, X)["pass"], suite
    cn = gdstar.core_nilpotent(NIL)
    assert cn["k"] == 2 and cn["C"].shape == (0, 0)
    hs = gdstar.hartwig_spindelboeck(IDEM)
    np.testing.assert_allclose(hs["sigma"], [np.sqrt(2)], atol=1e-14)


def test_orders_and_laws():
    A, B = np.diag([1.0, 0.0]), np.diag([1.0, 5.0])
    holds, rep = gdstar.leq(A, B, "gd-star", witness=np.diag([1.0, 0.0]))
    assert holds and rep["pass"]
    holds, _ = gdstar.leq(B, A, "star")
    assert not holds
    assert len(gdstar.law_names()) == 15
    rep = gdstar.run_law("reverse-gd", [np.diag([2.0, 0]), np.diag([3.0, 5])],
                         [np.diag([0.5, 0]), np.diag([1 / 3, 0.2])])
    assert rep["pass"]


def test_solvers_and_markov():
    X = gdstar.gd_sample(IDEM, seed=1)
    x, rep = gdstar.solve("lsq", IDEM, [1, 1], X)
    np.testing.assert_allclose(x, [1, 0], atol=1e-12)
    assert rep["pass"]
    with pytest.raises(gdstar.Inconsistent):
        gdstar.solve("minnorm", IDEM, [0, 1], X)
    w, rep = gdstar.markov_stationary([[0.9, 0.1], [0.5, 0.5]], seed=2)
    np.testing.assert_allclose(w, [5 / 6, 1 / 6], atol=1e-12)
    assert rep["pass"]
    G, rep = gdstar.perturbed_one_inverse(np.diag([1.0, 0]), np.diag([1.0, 0]), np.diag([0.5, 0]))
    np.testing.assert_allclose(G, np.diag([2 / 3, 0]), atol=1e-15)


def test_fuzz_small_run_is_deterministic():
    a = gdstar.fuzz("sa3,gd", n=10, seed=9)
    b = gdstar.fuzz("sa3,gd", n=10, seed=9)
    assert a["verdict"] == "pass"
    a.pop("timing"), b.pop("timing")
    assert a == b
