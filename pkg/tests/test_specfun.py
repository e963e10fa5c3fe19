import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from extsteklov import specfun
from extsteklov.errors import MathDomainError

mp.mp.dps = 40


def mp_log_mean(values):
    """High-precision oracle: (k-1) * divided difference of x^(k-2) log x."""
    vals = [mp.mpf(float(v)) for v in values]
    k = len(vals)

    def f(x):
        return x ** (k - 2) * mp.log(x)

    def divdiff(nodes):
        if len(nodes) == 1:
            return f(nodes[0])
        return (divdiff(nodes[1:]) - divdiff(nodes[:-1])) / (nodes[-1] - nodes[0])

    # oracle valid for distinct nodes only
    return float(1 / ((k - 1) * divdiff(sorted(vals))))


def test_two_argument_forms():
    assert specfun.log_mean([1.0, math.e]) == pytest.approx(
        (math.e - 1), rel=1e-15
    )
    assert specfun.log_mean([2.0, 2.0]) == 2.0
    assert specfun.log_mean([0.5, 2.0]) == pytest.approx(1.5 / math.log(4.0), rel=1e-14)


def test_golden_triple():
    assert specfun.log_mean([1.0, 2.0, 3.0]) == pytest.approx(
        1.911139125703199, abs=1e-14
    )


def test_zero_and_negative():
    assert specfun.log_mean([1.0, 0.0, 3.0]) == 0.0
    with pytest.raises(MathDomainError):
        specfun.log_mean([1.0, -2.0])
    with pytest.raises(MathDomainError):
        specfun.log_mean([1.0])


def test_against_mpmath_random():
    rng = np.random.default_rng(7)
    for k in (2, 3, 4, 5, 6):
        for _ in range(20):
            vals = rng.uniform(0.05, 8.0, k)
            # divided differences over a 160:1 spread lose a few digits to
            # cancellation at k=6; 1e-9 still detects any formula error
            assert specfun.log_mean(vals) == pytest.approx(
                mp_log_mean(vals), rel=1e-9
            )


def test_near_coincident_clusters():
    for gap in (1e-7, 1e-6, 1e-4):
        vals = [2.0, 2.0 + gap, 2.0 + 2 * gap, 5.0]
        assert specfun.log_mean(vals) == pytest.approx(mp_log_mean(vals), rel=1e-11)
    # fully repeated entries: continuous limit equals the value
    assert specfun.log_mean([3.0] * 5) == pytest.approx(3.0, rel=1e-12)


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.floats(0.01, 100.0), min_size=2, max_size=6),
    st.floats(0.1, 10.0),
)
def test_log_mean_properties(values, c):
    L = specfun.log_mean(values)
    # between geometric mean and max
    assert specfun.geometric_mean(values) <= L * (1 + 1e-9)
    assert L <= max(values) * (1 + 1e-9)
    # permutation invariance and positive homogeneity
    assert specfun.log_mean(values[::-1]) == pytest.approx(L, rel=1e-9)
    assert specfun.log_mean([c * v for v in values]) == pytest.approx(
        c * L, rel=1e-8
    )


def test_geometric_mean():
    assert specfun.geometric_mean([2.0, 8.0]) == pytest.approx(4.0, rel=1e-14)
    assert specfun.geometric_mean([3.0, 0.0]) == 0.0
    with pytest.raises(MathDomainError):
        specfun.geometric_mean([-1.0])


def test_bessel_half_order_closed_form():
    for x in (0.3, 1.0, 4.0):
        assert specfun.bessel_k(0.5, x) == pytest.approx(
            math.sqrt(math.pi / (2 * x)) * math.exp(-x), rel=1e-13
        )
        assert specfun.bessel_i(0.5, x) == pytest.approx(
            math.sqrt(2 / (math.pi * x)) * math.sinh(x), rel=1e-13
        )


def test_bessel_domain_errors():
    with pytest.raises(MathDomainError):
        specfun.bessel_k(0.5, -1.0)
    with pytest.raises(MathDomainError):
        specfun.bessel_k(-1.0, 1.0)
    with pytest.raises(MathDomainError):
        specfun.bessel_i(0.5, 0.0)


def test_sph_mult():
    assert [specfun.sph_mult(2, ell) for ell in range(4)] == [1, 2, 2, 2]
    assert [specfun.sph_mult(3, ell) for ell in range(4)] == [1, 3, 5, 7]
    assert specfun.sph_mult(4, 2) == 9
    with pytest.raises(MathDomainError):
        specfun.sph_mult(1, 0)


def test_dirichlet_interval_eig():
    assert specfun.dirichlet_interval_eig(math.pi, 2) == pytest.approx(4.0)
    with pytest.raises(MathDomainError):
        specfun.dirichlet_interval_eig(0.0, 1)
    with pytest.raises(MathDomainError):
        specfun.dirichlet_interval_eig(1.0, 0)
