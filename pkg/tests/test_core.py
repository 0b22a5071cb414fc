import math

import pytest

from filippov import AffineField, NonSmoothSystem, Point, lie, lie2

F = AffineField(0.05, -0.95, -0.475, -0.95, 0.05, 0.025)


def test_point_rejects_non_finite():
    with pytest.raises(ValueError):
        Point(math.nan, 0.0)
    with pytest.raises(ValueError):
        Point(0.0, math.inf)


def test_affine_field_evaluates():
    vx, vy = F(0.2, 0.0)
    assert vx == pytest.approx(-0.465, abs=1e-15)
    assert vy == pytest.approx(-0.165, abs=1e-15)


def test_lie_is_vertical_component():
    assert lie(F, Point(0.2, 0.0)) == F(0.2, 0.0)[1]
    assert lie(F, Point(-0.4, 0.3)) == F(-0.4, 0.3)[1]


def test_lie2_matches_finite_difference():
    p = Point(0.3, 0.0)
    h = 1e-6
    up = lie(F, Point(p.x + h * F(p.x, p.y)[0], p.y + h * F(p.x, p.y)[1]))
    down = lie(F, p)
    assert lie2(F, p) == pytest.approx((up - down) / h, rel=1e-5, abs=1e-5)


def test_system_holds_both_fields():
    upper = AffineField(0.0, 0.0, 1.0, -1.0, 0.0, -0.3)
    system = NonSmoothSystem(upper, F)
    assert system.upper is upper
    assert system.lower is F
