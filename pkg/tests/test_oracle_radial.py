import math

import numpy as np
import pytest

from extsteklov import oracle_radial as orc
from extsteklov.errors import MathDomainError


def test_disk_exterior():
    d = orc.disk_exterior(2.0, 4)
    assert np.allclose(d.flattened(), [0, 0.5, 0.5, 1, 1, 1.5, 1.5, 2, 2])
    assert d.sigma(3) == 1.5
    with pytest.raises(MathDomainError):
        orc.disk_exterior(-1.0)


def test_ball_exterior():
    b = orc.ball_exterior(3, 1.0, 2)
    assert np.allclose(b.flattened(), [1, 2, 2, 2, 3, 3, 3, 3, 3])
    assert orc.ball_exterior(5, 2.0, 0).sigma(0) == pytest.approx(1.5)
    with pytest.raises(MathDomainError):
        orc.ball_exterior(2, 1.0)


def test_trunc_closed_values():
    # 2D ell=0 Dirichlet limit value 1/(rho log(R/rho))
    assert orc.disk_trunc(1.0, math.e, 0, "D").sigma(0) == pytest.approx(1.0)
    # ell=1, rho=1, R=2: q=1/4 -> D (1+q)/(1-q)=5/3, N (1-q)/(1+q)=3/5
    assert orc.disk_trunc(1.0, 2.0, 1, "D").sigma(1) == pytest.approx(5 / 3)
    assert orc.disk_trunc(1.0, 2.0, 1, "N").sigma(1) == pytest.approx(3 / 5)
    assert orc.disk_trunc(1.0, 2.0, 0, "N").sigma(0) == 0.0


def test_trunc_monotone_limits():
    Rs = [2.0, 4.0, 8.0, 16.0, 32.0]
    for n in (2, 3):
        lim = (orc.disk_exterior(1.0, 3) if n == 2 else orc.ball_exterior(n, 1.0, 3))
        for ell in range(4):
            dvals = [orc.ball_trunc(n, 1.0, R, 3, "D").sigma(ell) for R in Rs]
            nvals = [orc.ball_trunc(n, 1.0, R, 3, "N").sigma(ell) for R in Rs]
            assert np.all(np.diff(dvals) < 0)
            if ell >= 1:
                assert np.all(np.diff(nvals) > 0)
            if n == 2 and ell == 0:
                # logarithmic convergence: the Dirichlet value is exactly
                # 1/(rho log(R/rho)), far from the limit 0 at any finite R
                assert dvals[-1] == pytest.approx(1.0 / math.log(Rs[-1]))
            else:
                # slowest case kept here is n=3, ell=0: error (R-1)^-1 ~ 1/31
                assert dvals[-1] == pytest.approx(lim.sigma(ell), abs=4e-2)
                if ell >= 1:
                    # ell=0 Neumann stays 0 for every R (constant mode)
                    assert nvals[-1] == pytest.approx(lim.sigma(ell), abs=4e-2)
            # sandwich: Neumann below, Dirichlet above the exterior value
            assert nvals[0] <= lim.sigma(ell) <= dvals[0]


def test_trunc_validation():
    with pytest.raises(MathDomainError):
        orc.ball_trunc(3, 2.0, 1.0)
    with pytest.raises(MathDomainError):
        orc.ball_trunc(3, 1.0, 2.0, bc="X")


def test_helmholtz_exact_identity():
    # n=3, ell=0: K_{3/2}(x)/K_{1/2}(x) = 1 + 1/x, so mu = lam + 1/rho
    for rho, lam in ((1.0, 0.5), (2.0, 0.7), (0.5, 3.0)):
        assert orc.helmholtz_radial(3, rho, lam, 0).sigma(0) == pytest.approx(
            lam + 1.0 / rho, rel=1e-12
        )


def test_helmholtz_limits_and_domain():
    for n in (3, 5):
        for ell in range(4):
            assert orc.helmholtz_radial(n, 1.0, 1e-6, 3).sigma(ell) == pytest.approx(
                n + ell - 2, abs=1e-4
            )
    # 2D ell=0 tends to zero like 1/|log lam|
    mus = [orc.helmholtz_radial(2, 1.0, lam, 0).sigma(0) for lam in (1e-4, 1e-6, 1e-8)]
    assert np.all(np.diff(mus) < 0) and mus[-1] < 0.06
    with pytest.raises(MathDomainError):
        orc.helmholtz_radial(3, 1.0, 0.0)
    with pytest.raises(MathDomainError):
        orc.helmholtz_radial(3, 1.0, -1.0)


def test_dtn_apply_sphere():
    out = orc.dtn_apply_sphere(2, 2.0, {(0, 1): 3.0, (2, 1): 1.0, (2, 2): -2.0})
    assert out[(0, 1)] == 0.0
    assert out[(2, 1)] == pytest.approx(1.0)
    assert out[(2, 2)] == pytest.approx(-2.0)
    out3 = orc.dtn_apply_sphere(3, 1.0, {(0, 1): 1.0, (1, 2): 1.0})
    assert out3[(0, 1)] == pytest.approx(1.0)
    assert out3[(1, 2)] == pytest.approx(2.0)
    with pytest.raises(MathDomainError):
        orc.dtn_apply_sphere(3, 1.0, {(1, 9): 1.0})  # multiplicity is 3


def test_grad_energy_sphere():
    e = orc.grad_energy_sphere(3, 1.0, {(0, 1): 2.0, (1, 1): 1.0})
    assert e == pytest.approx(1.0 * 4.0 + 2.0 * 1.0)


def test_interlacing():
    for n in (3, 4, 5):
        res = orc.interlacing_check(n, 1.0, 30)
        assert res["ok"]
        assert len(res["rows"]) == 30
    with pytest.raises(MathDomainError):
        orc.interlacing_check(2, 1.0)


def test_sphere_layer_symbols():
    recs = orc.sphere_layer_symbols(1.5, 10)
    for r in recs:
        ell = r["ell"]
        assert r["v"] == pytest.approx(1.5 / (2 * ell + 1), abs=1e-12)
        assert r["k"] == pytest.approx(0.5 / (2 * ell + 1), abs=1e-12)
        assert r["resid"] < 1e-10
