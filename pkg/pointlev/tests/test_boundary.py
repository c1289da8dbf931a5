"""

Tests for the boundary loop of the spectral square

"""

import numpy as np
import pytest

import pointlev
from pointlev.boundary import (B1, B2, B3, B4, TRAVERSAL_ORDER, BoundaryError, SideId, classify_side,
                               corner_value, dilation_of_t, energy_of_t, full_loop, gamma_at, log_energy_of_t,
                               side_coordinates, side_curve, side_log_energy, side_values)
from pointlev.symbols import AxisPoint, Direction, s_from_log_energy


@pytest.fixture()
def delta3_bound():
    return pointlev.Delta3(-1.0)


def test_traversal_order():
    assert [side.id for side in TRAVERSAL_ORDER] == [SideId.B2, SideId.B3, SideId.B4, SideId.B1]


def test_maps_hit_endpoints_exactly():
    t = np.array([0.0, 0.5, 1.0])
    a = dilation_of_t(t)
    assert a[0] == -np.inf and a[2] == np.inf
    assert np.isclose(a[1], 0.0)
    for model in (pointlev.Delta3(-1.0), pointlev.Delta2(2.0), pointlev.Delta1("inf")):
        eps = energy_of_t(model, t)
        assert eps[0] == 0.0 and eps[2] == np.inf
        assert np.isclose(eps[1], pointlev.characteristic_energy(model), rtol=1e-12)


def test_side_orientation(delta3_bound):
    t = np.array([0.0, 1.0])
    eps, a = side_coordinates(delta3_bound, B2, t)
    assert list(eps) == [0.0, np.inf] and list(a) == [np.inf, np.inf]
    eps, a = side_coordinates(delta3_bound, B3, t)
    assert list(a) == [np.inf, -np.inf] and list(eps) == [np.inf, np.inf]
    eps, a = side_coordinates(delta3_bound, B4, t)
    assert list(eps) == [np.inf, 0.0] and list(a) == [-np.inf, -np.inf]
    eps, a = side_coordinates(delta3_bound, B1, t)
    assert list(a) == [-np.inf, np.inf] and list(eps) == [0.0, 0.0]


@pytest.mark.parametrize("direction", list(Direction))
def test_adjacent_sides_share_corners(delta3_bound, direction):
    loop = full_loop(delta3_bound, 17, direction)
    arcs = loop.arcs
    for first, second in zip(arcs, arcs[1:] + arcs[:1]):
        assert first.values[-1] == second.values[0]


def test_corner_values(delta3_bound):
    #phi(+inf) = 1, phi(-inf) = 0 for Omega_-
    assert corner_value(delta3_bound, 0.0, np.inf) == pointlev.s_function(delta3_bound, 0.0)
    assert corner_value(delta3_bound, np.inf, -np.inf) == 1.0
    assert corner_value(delta3_bound, np.inf, -np.inf, Direction.PLUS) == pointlev.s_function(delta3_bound, np.inf)


def test_gamma_on_sides(delta3_bound):
    value = gamma_at(delta3_bound, AxisPoint.energy(4.0), AxisPoint.dilation("inf"))
    assert np.isclose(value, pointlev.s_function(delta3_bound, 4.0))
    value = gamma_at(delta3_bound, np.inf, 0.3)
    assert np.isclose(value, pointlev.r_function(delta3_bound, 0.3))


def test_gamma_rejects_interior_points(delta3_bound):
    with pytest.raises(BoundaryError):
        gamma_at(delta3_bound, 1.0, 0.0)


def test_side_curve_needs_two_samples(delta3_bound):
    with pytest.raises(BoundaryError):
        side_curve(delta3_bound, "B2", 1)
    with pytest.raises(BoundaryError):
        side_curve(delta3_bound, "B7", 4)


def test_loop_points_are_closed(delta3_bound):
    loop = full_loop(delta3_bound, 33)
    points = loop.points
    assert points[0] == points[-1]
    assert len(points) == 4 * 32 + 1
    assert loop.side_boundaries == (0, 32, 64, 96, 128)


@pytest.mark.parametrize("kind, param, expected", [("delta3", -1.0, ("1", "s", "r", "1")),
                                                   ("delta3", 0.0, ("r", "-1", "r", "1")),
                                                   ("delta2", 0.5, ("1", "s", "1", "1")),
                                                   ("delta1", -1.0, ("r", "s", "1", "1")),
                                                   ("delta1", "inf", ("r", "-1", "r", "1")),
                                                   ("deltaprime1", 0.0, ("1", "1", "1", "1"))])
def test_classify_sides(kind, param, expected):
    model = pointlev.model_factory(kind, param)
    assert tuple(classify_side(model, side) for side in (B1, B2, B3, B4)) == expected


def test_plus_direction_classes(delta3_bound):
    #phi_+(+inf) = 0, phi_+(-inf) = 1: Gamma_4 becomes conj(s)
    assert classify_side(delta3_bound, B2, Direction.PLUS) == "1"
    assert classify_side(delta3_bound, B4, Direction.PLUS) == "s*"


def test_reversed_curve_keeps_generator(delta3_bound):
    curve = side_curve(delta3_bound, B2, 9)
    back = curve.reversed()
    assert np.array_equal(back.values, curve.values[::-1])
    assert np.allclose(back.evaluate(back.t), back.values)


def test_delta1_b1_runs_from_one_to_minus_one():
    curve = side_curve(pointlev.Delta1(-2.0), B1, 33)
    assert curve.values[0] == 1.0
    assert curve.values[-1] == -1.0


@pytest.mark.parametrize("alpha", [-100.0, -60.0, 60.0, 100.0])
def test_delta2_log_energy_stays_finite(alpha):
    model = pointlev.Delta2(alpha)
    t = np.linspace(0.0, 1.0, 9)
    log_eps = log_energy_of_t(model, t)
    assert log_eps[0] == -np.inf and log_eps[-1] == np.inf
    assert np.all(np.isfinite(log_eps[1:-1]))
    assert np.isclose(log_eps[4], model.characteristic_log_energy(), rtol=1e-14)
    #the energies themselves leave the float range
    eps = energy_of_t(model, t)
    assert np.all((eps[1:-1] == 0.0) | np.isinf(eps[1:-1]))


@pytest.mark.parametrize("kind, param", [("delta2", 60.0), ("delta2", -100.0), ("delta3", 1e-170),
                                         ("delta1", 1e-200), ("deltaprime1", 1e200)])
def test_energy_sides_far_outside_the_sweeps(kind, param):
    model = pointlev.model_factory(kind, param)
    t = np.linspace(0.0, 1.0, 65)
    log_eps = side_log_energy(model, B4, t)
    assert log_eps[0] == np.inf and log_eps[-1] == -np.inf
    values = side_values(model, B2, t)
    s = s_from_log_energy(model, side_log_energy(model, B2, t))
    assert np.allclose(values, s, rtol=0.0, atol=1e-12)
    assert classify_side(model, B2) == "s"
