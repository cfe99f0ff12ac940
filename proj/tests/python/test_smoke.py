"""Smoke tests for the pydop extension module."""

import math

import pytest

pydop = pytest.importorskip("pydop")


@pytest.fixture(scope="module")
def charlier():
    return pydop.Basis(a=[], b=[], eta="0.7", K=12, prec=256)


def test_version_and_identities():
    assert pydop.__version__
    assert "pearson" in pydop.identities
    assert "quasidet" in pydop.identities


def test_weight_values(charlier):
    assert charlier.weight_at_f(0) == 1.0
    # eta^2/2!
    assert charlier.weight_at_f(2) == pytest.approx(0.245, rel=1e-14)
    assert charlier.weight_at(0) == "1e0"


def test_charlier_recurrence(charlier):
    beta = charlier.beta_f()
    gamma = charlier.gamma_f()
    for n in range(6):
        assert beta[n] == pytest.approx(n + 0.7, rel=1e-13)
    for n, g in enumerate(gamma[:6], start=1):
        assert g == pytest.approx(0.7 * n, rel=1e-13)


def test_moment_is_exponential(charlier):
    rho0 = float(charlier.moment(0))
    assert rho0 == pytest.approx(math.exp(0.7), rel=1e-14)


def test_eval_and_second_kind(charlier):
    # P_2(z) = (z - b1)(z - b0) - g1
    z = 2.25
    b = charlier.beta_f()
    g = charlier.gamma_f()
    expect = (z - b[1]) * (z - b[0]) - g[0]
    assert charlier.eval_poly(2, z) == pytest.approx(expect, rel=1e-13)

    q0 = charlier.second_kind(0, -1.0)
    expect_q = -(math.exp(0.7) - 1.0) / 0.7
    assert q0 == pytest.approx(expect_q, rel=1e-12)


def test_pole_raises(charlier):
    with pytest.raises(pydop.PoleError):
        charlier.second_kind(0, 3.0)


def test_divergent_weight_raises():
    with pytest.raises(pydop.DivergentWeight):
        pydop.Basis(a=["1.0"], b=[], eta="1.2", K=6, prec=128)


def test_christoffel_geronimus_roundtrip():
    base = pydop.Basis(a=["2.5"], b=[], eta="0.4", K=12, prec=256)
    down = pydop.Basis(a=["1.5"], b=[], eta="0.4", K=12, prec=256)
    z = 3.3
    for n in range(5):
        # geronimus of the a=2.5 basis lands on the a=1.5 polynomials
        got = base.geronimus("it", 1, n, z)
        want = down.eval_poly(n, z)
        assert got == pytest.approx(want, rel=1e-12, abs=1e-12)
        # christoffel of the a=1.5 basis returns to a=2.5
        back = down.christoffel("it", 1, n, z)
        assert back == pytest.approx(base.eval_poly(n, z), rel=1e-12, abs=1e-12)


def test_verify_subset_passes():
    basis = pydop.Basis(a=[], b=["1.5"], eta="0.7", K=12, prec=256)
    reports = basis.verify(["pearson", "psi"])
    assert reports
    for r in reports:
        assert r["pass"], r["identity"]
        assert float(r["residual_f"]) <= 2.0 ** (-120)


def test_determinantal_matches_direct_shift():
    basis = pydop.Basis(a=[], b=["1.5"], eta="0.7", K=14, prec=256)
    n, z = 4, 6.5
    # theta(z) P_n(z-1), with theta(z) = z(z + b - 1)
    theta = z * (z + 1.5 - 1.0)
    want = theta * basis.eval_poly(n, z - 1.0)
    assert basis.determinantal(n, z, -1) == pytest.approx(want, rel=1e-12)
