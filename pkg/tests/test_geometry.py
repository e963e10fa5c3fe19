import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import (
    KITE_AREA,
    KITE_DIAMETER,
    KITE_PERIMETER,
    random_fourier_domain,
)
from extsteklov import geometry
from extsteklov.errors import InvalidCenterError, InvalidDomainError


def test_circle_sampling():
    curve = geometry.build_curve(geometry.circle(2.0), 32)
    assert np.allclose(np.abs(curve.points), 2.0)
    assert np.allclose(curve.curvatures, 0.5)
    # outward normal is radial
    assert np.allclose(curve.normals, curve.points / 2.0)
    assert np.allclose(np.sum(curve.weights), 4.0 * np.pi)


def test_kite_point_at_zero():
    curve = geometry.build_curve(geometry.kite(), 16)
    assert curve.points[0] == pytest.approx(1.8 - 0.3j, abs=1e-14)


def test_ellipse_curvature_extremes():
    a, b = 2.0, 1.0
    curve = geometry.build_curve(geometry.ellipse(a, b), 64)
    # node at t=0 is (a, 0) with curvature a/b^2; quarter way is (0, b)
    assert curve.curvatures[0] == pytest.approx(a / b**2, rel=1e-12)
    assert curve.curvatures[16] == pytest.approx(b / a**2, rel=1e-12)


def test_kite_quantities_golden():
    q = geometry.quantities(geometry.build_curve(geometry.kite(), 512))
    assert q.perimeter == pytest.approx(KITE_PERIMETER, abs=1e-10)
    assert q.area == pytest.approx(KITE_AREA, rel=1e-12)
    assert q.diameter == pytest.approx(KITE_DIAMETER, rel=1e-10)


def test_three_disks_perimeter():
    q = geometry.quantities(geometry.build_curve(geometry.three_disks(), 64))
    assert q.perimeter == pytest.approx(2 * np.pi * (1 + 2 / 3 + 3 / 2), rel=1e-12)


def test_orientation_normalized():
    # clockwise circle parametrization gets flipped to positive area
    spec = geometry.fourier([0.0, 1.0], [0.0, 0.0], [0.0, 0.0], [0.0, -1.0])
    curve = geometry.build_curve(spec, 32)
    assert curve.components[0].signed_area() > 0
    assert np.allclose(curve.normals, curve.points / np.abs(curve.points))


def test_node_count_validation():
    for bad in (2, 3, 15):
        with pytest.raises(InvalidDomainError):
            geometry.build_curve(geometry.circle(1.0), bad)
    geometry.build_curve(geometry.circle(1.0), 4)  # smallest allowed


def test_self_intersection_rejected():
    # figure-eight-like curve
    spec = geometry.fourier([0.0, 1.0], [0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 1.0])
    with pytest.raises(InvalidDomainError):
        geometry.build_curve(spec, 64)


def test_touching_components_rejected():
    # under-resolved multi-component boundary: gaps below node spacing
    with pytest.raises(InvalidDomainError):
        geometry.build_curve(geometry.three_disks(), 16)


def test_contains():
    curve = geometry.build_curve(geometry.kite(), 64)
    assert curve.contains(0.3 + 0.0j)
    assert not curve.contains(5.0 + 5.0j)


def test_invert_unit_circle_identity():
    curve = geometry.build_curve(geometry.circle(1.0), 32)
    star, q = geometry.invert_boundary(curve, 0.0)
    assert np.allclose(np.abs(star.points), 1.0)
    assert np.allclose(q, 1.0)
    # image of a CCW outer boundary is again CCW with positive area
    assert star.components[0].signed_area() > 0


def test_invert_weight_is_squared_distance():
    curve = geometry.build_curve(geometry.kite(), 64)
    center = 0.3 + 0.1j
    star, q = geometry.invert_boundary(curve, center)
    order = geometry.source_order(star)
    assert np.allclose(q, np.abs(curve.points[order] - center) ** 2)
    # change-of-variables identity: weighted image perimeter = source perimeter
    assert np.sum(q * star.weights) == pytest.approx(np.sum(curve.weights), rel=1e-10)


def test_source_order_involution():
    curve = geometry.build_curve(geometry.three_disks(), 64)
    star, _ = geometry.invert_boundary(curve, complex(np.mean(curve.components[0].z)))
    order = geometry.source_order(star)
    assert np.array_equal(order[order], np.arange(curve.n_nodes))


def test_invert_center_validation():
    curve = geometry.build_curve(geometry.kite(), 64)
    with pytest.raises(InvalidCenterError):
        geometry.invert_boundary(curve, 10.0 + 0.0j)  # outside
    # center inside a hole (second component of three_disks) is invalid too
    tri = geometry.build_curve(geometry.three_disks(), 64)
    outside_first = complex(np.mean(tri.components[1].z))
    with pytest.raises(InvalidCenterError):
        geometry.invert_boundary(tri, outside_first)


def test_rescale_translate():
    curve = geometry.build_curve(geometry.kite(), 128)
    q = geometry.quantities(curve)
    q2 = geometry.quantities(geometry.rescale(curve, 2.0))
    assert q2.perimeter == pytest.approx(2 * q.perimeter, rel=1e-12)
    assert q2.area == pytest.approx(4 * q.area, rel=1e-12)
    q3 = geometry.quantities(geometry.translate(curve, 5.0 - 2.0j))
    assert q3.perimeter == pytest.approx(q.perimeter, rel=1e-12)
    assert q3.diameter == pytest.approx(q.diameter, rel=1e-12)


def test_scaled_spec():
    q = geometry.quantities(geometry.build_curve(geometry.scaled(geometry.kite(), 2.0), 256))
    assert q.perimeter == pytest.approx(2 * KITE_PERIMETER, rel=1e-10)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000), st.floats(1.1, 3.0))
def test_fourier_domain_scaling_property(seed, alpha):
    rng = np.random.default_rng(seed)
    spec = random_fourier_domain(rng)
    q1 = geometry.quantities(geometry.build_curve(spec, 64))
    q2 = geometry.quantities(geometry.build_curve(geometry.scaled(spec, alpha), 64))
    assert q2.perimeter == pytest.approx(alpha * q1.perimeter, rel=1e-9)
    assert q2.area == pytest.approx(alpha**2 * q1.area, rel=1e-9)
