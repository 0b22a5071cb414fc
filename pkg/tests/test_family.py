import math

import numpy as np
import pytest

from filippov import (
    DomainViolation,
    FoldSaddleParams,
    ParamOutOfRange,
    Tau,
    VisibleFoldNoReturn,
    build_system,
    landmarks,
    lie,
    lie2,
    lower_fold_x,
    params_from_dict,
    params_to_dict,
    pseudo_eq_closed_form,
    pseudo_eq_coeffs,
    pseudo_eq_roots,
    relay_preset,
    return_map_upper,
    saddle_map_affine,
)
from filippov.core import Point


def test_param_validation():
    FoldSaddleParams(Tau.INVISIBLE, 0.99, -0.99, 0.199)
    for bad in [(1.0, 0.0, 0.0), (0.0, -1.0, 0.0), (0.0, 0.0, 0.2), (0.0, 0.0, -0.25)]:
        with pytest.raises(ParamOutOfRange):
            FoldSaddleParams(Tau.VISIBLE, *bad)


def test_dict_round_trip():
    p = FoldSaddleParams(Tau.VISIBLE, 0.25, -0.45, 0.1)
    assert params_from_dict(params_to_dict(p)) == p
    assert params_from_dict({"tau": "i", "lambda": 0.1, "beta": 0.2}).mu == 0.0
    with pytest.raises(ParamOutOfRange):
        params_from_dict({"tau": "x", "lambda": 0.0, "beta": 0.0})


def test_lower_field_frozen_value():
    # hand-evaluated: mu/2 = 0.05, (mu-2)/2 = -0.95, offset beta = 0.5
    p = FoldSaddleParams(Tau.INVISIBLE, 0.0, 0.5, 0.1)
    system = build_system(p)
    vx, vy = system.lower(0.2, 0.0)
    assert vx == pytest.approx(-0.465, abs=1e-15)
    assert vy == pytest.approx(-0.165, abs=1e-15)


def test_upper_field_sign_convention():
    pi = FoldSaddleParams(Tau.INVISIBLE, 0.3, 0.0, 0.0)
    pv = FoldSaddleParams(Tau.VISIBLE, 0.3, 0.0, 0.0)
    for p, sign in ((pi, -1.0), (pv, 1.0)):
        up = build_system(p).upper
        assert up(0.5, 0.7) == (1.0, sign * (0.5 - 0.3))
        assert lie2(up, Point(p.lam, 0.0)) == sign


def test_lower_fold_position_and_visibility():
    p = FoldSaddleParams(Tau.INVISIBLE, 0.0, 0.5, 0.1)
    assert lower_fold_x(p) == pytest.approx(1.0 / 38.0, abs=1e-16)
    # the fold tangency curves toward the saddle: invisible for beta > 0,
    # visible for beta < 0
    low = build_system(p).lower
    assert lie2(low, Point(lower_fold_x(p), 0.0)) > 0.0
    p2 = FoldSaddleParams(Tau.INVISIBLE, 0.0, -0.5, 0.1)
    low2 = build_system(p2).lower
    assert lie2(low2, Point(lower_fold_x(p2), 0.0)) < 0.0


def test_saddle_and_feet():
    """The saddle sits at (0, -beta); its separatrix directions are the
    symmetric matrix's eigenvectors, so the feet land at x = -beta
    (unstable) and x = +beta (stable) for every mu."""
    for mu in (0.0, 0.1, -0.19):
        p = FoldSaddleParams(Tau.INVISIBLE, 0.2, 0.4, mu)
        system = build_system(p)
        marks = landmarks(p)
        assert marks.saddle == Point(0.0, -0.4)
        assert system.lower(marks.saddle.x, marks.saddle.y) == (0.0, 0.0)
        # independent eigen-route for the feet
        m = np.array([[mu / 2.0, (mu - 2.0) / 2.0], [(mu - 2.0) / 2.0, mu / 2.0]])
        vals, vecs = np.linalg.eig(m)
        for val, vec in zip(vals, vecs.T):
            t = 0.4 / vec[1] if vec[1] != 0 else 0.0
            foot_x = t * vec[0]
            expected = marks.unstable_foot if val > 0 else marks.stable_foot
            assert foot_x == pytest.approx(expected.x, abs=1e-12)
        assert marks.unstable_foot == Point(-0.4, 0.0)
        assert marks.stable_foot == Point(0.4, 0.0)


def test_pseudo_eq_roots_frozen_case():
    # coefficients a=0.1, b=-2.82, c=-0.235 give discriminant 8.0464
    p = FoldSaddleParams(Tau.INVISIBLE, -0.3, 0.5, 0.1)
    a, b, c, _ = pseudo_eq_coeffs(p)
    assert (a, b, c) == pytest.approx((0.1, -2.82, -0.235), abs=1e-15)
    near, far = pseudo_eq_roots(p)
    assert near == pytest.approx((2.82 - math.sqrt(8.0464)) / 0.2, rel=1e-14)
    assert far == pytest.approx((2.82 + math.sqrt(8.0464)) / 0.2, rel=1e-14)


def test_pseudo_eq_mu0_is_exact():
    lam, beta = -0.3, 0.5
    near, far = pseudo_eq_roots(FoldSaddleParams(Tau.INVISIBLE, lam, beta, 0.0))
    assert near == lam * beta / (1.0 + beta)
    assert far is None
    near_v, far_v = pseudo_eq_roots(FoldSaddleParams(Tau.VISIBLE, 0.25, 0.5, 0.0))
    assert near_v == 0.5 * 0.25 / (0.5 - 1.0)
    assert far_v is None


def test_pseudo_eq_small_mu_continuity():
    lam, beta = -0.3, 0.5
    near, _ = pseudo_eq_roots(FoldSaddleParams(Tau.INVISIBLE, lam, beta, 1e-6))
    assert abs(near - lam * beta / (1.0 + beta)) < 1e-5


def test_pseudo_eq_closed_form_is_a_direction_zero():
    from filippov import direction_function

    p = FoldSaddleParams(Tau.VISIBLE, -0.2, -0.45, 0.1)
    system = build_system(p)
    r = pseudo_eq_closed_form(p)
    assert r is not None
    assert direction_function(system, r) == pytest.approx(0.0, abs=1e-9)
    # annihilated pair has no finite branch
    assert pseudo_eq_closed_form(FoldSaddleParams(Tau.VISIBLE, 0.5, 0.9, 0.1)) is None


def test_annihilated_roots_return_none():
    # deep in the visible-fold family the two roots can leave the reals
    p = FoldSaddleParams(Tau.VISIBLE, 0.5, 0.9, 0.1)
    assert pseudo_eq_roots(p) == (None, None)


def test_upper_return_map():
    p = FoldSaddleParams(Tau.INVISIBLE, 0.15, 0.3, 0.05)
    assert return_map_upper(p, -0.4) == 2 * 0.15 + 0.4
    assert return_map_upper(p, return_map_upper(p, -0.4)) == pytest.approx(-0.4)
    with pytest.raises(VisibleFoldNoReturn):
        return_map_upper(FoldSaddleParams(Tau.VISIBLE, 0.15, 0.3, 0.05), -0.4)


def test_saddle_map_affine_endpoints():
    p = FoldSaddleParams(Tau.INVISIBLE, 0.0, 0.5, 0.1)
    i1 = lower_fold_x(p)
    assert saddle_map_affine(p, i1) == pytest.approx(i1, abs=1e-15)
    assert saddle_map_affine(p, 0.5) == pytest.approx(-0.5, abs=1e-15)
    assert saddle_map_affine(FoldSaddleParams(Tau.INVISIBLE, 0.0, 0.5, 0.0), 0.3) == -0.3
    with pytest.raises(DomainViolation):
        saddle_map_affine(p, 0.7)
    with pytest.raises(DomainViolation):
        saddle_map_affine(FoldSaddleParams(Tau.INVISIBLE, 0.0, -0.5, 0.0), 0.1)


def test_relay_preset_matches_family_bitwise():
    rng = np.random.default_rng(3)
    for tau in (Tau.INVISIBLE, Tau.VISIBLE):
        preset = relay_preset(tau)
        system = build_system(preset.params)
        for _ in range(500):
            x = rng.uniform(-1.0, 1.0)
            y = rng.uniform(-1.0, 1.0)
            if y == 0.0:
                continue
            field = system.upper if y > 0.0 else system.lower
            assert preset.field(x, y) == field(x, y)
