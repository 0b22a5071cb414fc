"""The three-parameter fold-saddle family.

Upper field: unit horizontal drift with a quadratic tangency (a fold) at
x = lam, invisible or visible depending on tau.  Lower field: a linear
saddle sitting at (0, -beta) whose separatrices cross the switching line
at (-beta, 0) and (beta, 0); mu moves the weak eigenvalue and thereby
the lower fold.  The admissible box is |lam| < 1, |beta| < 1, |mu| < 0.2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable

from .core import AffineField, NonSmoothSystem, Point, lie2
from .switching import FoldKind
from ._tol import EPS0, TOL_EQ

__all__ = [
    "Tau",
    "FoldSaddleParams",
    "Landmarks",
    "RelayPreset",
    "ParamOutOfRange",
    "VisibleFoldNoReturn",
    "DomainViolation",
    "build_system",
    "landmarks",
    "lower_fold_x",
    "pseudo_eq_coeffs",
    "pseudo_eq_roots",
    "pseudo_eq_closed_form",
    "return_map_upper",
    "saddle_map_affine",
    "relay_preset",
    "params_from_dict",
    "params_to_dict",
]


class Tau(Enum):
    INVISIBLE = "i"
    VISIBLE = "v"


class ParamOutOfRange(ValueError):
    pass


class VisibleFoldNoReturn(RuntimeError):
    """The visible upper fold has no return map to the switching line."""


class DomainViolation(ValueError):
    pass


@dataclass(frozen=True)
class FoldSaddleParams:
    tau: Tau
    lam: float
    beta: float
    mu: float = 0.0

    def __post_init__(self) -> None:
        if not isinstance(self.tau, Tau):
            raise ParamOutOfRange(f"tau must be Tau, got {self.tau!r}")
        for name, value, bound in (
            ("lambda", self.lam, 1.0),
            ("beta", self.beta, 1.0),
            ("mu", self.mu, EPS0),
        ):
            if not (math.isfinite(value) and abs(value) < bound):
                raise ParamOutOfRange(
                    f"{name}={value!r} outside the open interval (-{bound}, {bound})"
                )

    @property
    def alpha(self) -> float:
        """Weak eigenvalue of the lower saddle, mu - 1."""
        return self.mu - 1.0

    @property
    def upper_sign(self) -> float:
        """Sign of the upper field's y-derivative slope in x."""
        return -1.0 if self.tau is Tau.INVISIBLE else 1.0


def params_from_dict(obj: dict) -> FoldSaddleParams:
    """Build params from the flat JSON form {"tau","lambda","beta","mu"}."""
    try:
        tau = Tau(obj["tau"])
        return FoldSaddleParams(
            tau, float(obj["lambda"]), float(obj["beta"]), float(obj.get("mu", 0.0))
        )
    except (KeyError, ValueError) as exc:
        if isinstance(exc, ParamOutOfRange):
            raise
        raise ParamOutOfRange(f"bad parameter object {obj!r}: {exc}") from exc


def params_to_dict(params: FoldSaddleParams) -> dict:
    return {
        "tau": params.tau.value,
        "lambda": params.lam,
        "beta": params.beta,
        "mu": params.mu,
    }


def build_system(params: FoldSaddleParams) -> NonSmoothSystem:
    """Assemble the two affine fields for the given parameters.

    The lower field's coefficients use mu/2 and (mu-2)/2 directly so the
    mu = 0 slice is exact (no cancellation in 1 + alpha).
    """
    s = params.upper_sign
    upper = AffineField(0.0, 0.0, 1.0, s, 0.0, -s * params.lam)
    half_sum = 0.5 * params.mu          # (1 + alpha) / 2
    half_diff = 0.5 * (params.mu - 2.0)  # (alpha - 1) / 2
    lower = AffineField(
        half_sum, half_diff, half_diff * params.beta,
        half_diff, half_sum, half_sum * params.beta,
    )
    return NonSmoothSystem(upper, lower)


def lower_fold_x(params: FoldSaddleParams) -> float:
    """Abscissa of the lower field's tangency, mu*beta/(2-mu).

    Exactly 0 on the mu = 0 slice; coincides with the saddle when
    beta = 0 (degenerate, no true fold there).
    """
    return params.mu * params.beta / (2.0 - params.mu)


@dataclass(frozen=True)
class Landmarks:
    upper_fold: Point
    saddle: Point
    lower_fold: Point | None
    lower_fold_kind: FoldKind | None
    unstable_foot: Point
    stable_foot: Point


def landmarks(params: FoldSaddleParams) -> Landmarks:
    """Distinguished points: folds, saddle, separatrix feet.

    The lower fold is reported absent when beta = 0 (it collides with
    the saddle and the tangency degenerates).  The feet are where the
    saddle's unstable/stable separatrices meet the switching line.
    """
    system = build_system(params)
    fold = Point(lower_fold_x(params), 0.0)
    kind: FoldKind | None
    if abs(params.beta) <= TOL_EQ:
        fold_pt = None
        kind = None
    else:
        fold_pt = fold
        curve = lie2(system.lower, fold)
        kind = FoldKind.VISIBLE if curve < 0.0 else FoldKind.INVISIBLE
    return Landmarks(
        upper_fold=Point(params.lam, 0.0),
        saddle=Point(0.0, -params.beta),
        lower_fold=fold_pt,
        lower_fold_kind=kind,
        unstable_foot=Point(-params.beta, 0.0),
        stable_foot=Point(params.beta, 0.0),
    )


def pseudo_eq_coeffs(params: FoldSaddleParams) -> tuple[float, float, float, float]:
    """Quadratic a x^2 + b x + c whose roots are the direction-function
    zeros, plus the sign relating it to twice the numerator.

    Derived by expanding lower_y * upper_x - upper_y * lower_x on the
    switching line.  Written with mu and 2 - mu directly so that the
    mu -> 0 limit degrades gracefully to the linear case.
    """
    mu, lam, beta = params.mu, params.lam, params.beta
    if params.tau is Tau.INVISIBLE:
        a = mu
        b = -((2.0 - mu) * (1.0 + beta) + lam * mu)
        c = beta * (mu + lam * (2.0 - mu))
        sign = 1.0
    else:
        a = mu
        b = (2.0 - mu) * (1.0 - beta) - lam * mu
        c = -beta * (mu - lam * (2.0 - mu))
        sign = -1.0
    return a, b, c, sign


def pseudo_eq_roots(params: FoldSaddleParams) -> tuple[float | None, float | None]:
    """(near, far) roots of the pseudo-equilibrium quadratic.

    near stays finite as mu -> 0; far scales like 1/mu and escapes any
    bounded window.  Either may be None: both when the discriminant is
    negative (the pair has annihilated), far when the quadratic has
    degenerated to its linear mu = 0 limit.
    """
    a, b, c, _ = pseudo_eq_coeffs(params)
    if abs(a) <= 1e-9:
        if params.tau is Tau.INVISIBLE:
            near = params.lam * params.beta / (1.0 + params.beta)
        else:
            near = params.beta * params.lam / (params.beta - 1.0)
        return near, None
    disc = b * b - 4.0 * a * c
    if disc < 0.0:
        return None, None
    s = math.sqrt(disc)
    sb = 1.0 if b >= 0.0 else -1.0
    q = -0.5 * (b + sb * s)
    if q == 0.0:
        return 0.0, 0.0
    far = q / a
    near = c / q
    return near, far


def pseudo_eq_closed_form(params: FoldSaddleParams) -> float | None:
    """The finite pseudo-equilibrium branch, or None.

    None when the root pair has annihilated or the root leaves (-1, 1).
    """
    near, _ = pseudo_eq_roots(params)
    if near is None or abs(near) >= 1.0:
        return None
    return near


def return_map_upper(params: FoldSaddleParams, x: float) -> float:
    """Return map of the upper field across its invisible fold: 2*lam - x.

    An involution.  For the visible variant the upper arc never comes
    back, so there is nothing to evaluate.
    """
    if params.tau is Tau.VISIBLE:
        raise VisibleFoldNoReturn("visible upper fold: upper arcs do not return")
    return 2.0 * params.lam - x


def saddle_map_affine(params: FoldSaddleParams, x: float) -> float:
    """Affine model of the lower transition between the fold and the
    stable foot, exact on the mu = 0 slice.

    Fixes the lower fold, sends the stable foot's abscissa beta to
    -beta, and reduces to x -> -x at mu = 0.
    """
    if params.beta <= 0.0:
        raise DomainViolation("saddle_map_affine requires beta > 0")
    i1 = lower_fold_x(params)
    if not (i1 - TOL_EQ <= x <= params.beta + TOL_EQ):
        raise DomainViolation(
            f"x={x} outside the transition domain [{i1}, {params.beta}]"
        )
    return (2.0 * i1 * params.beta - x * (i1 + params.beta)) / (params.beta - i1)


@dataclass(frozen=True)
class RelayPreset:
    params: FoldSaddleParams
    system: NonSmoothSystem
    field: Callable[[float, float], tuple[float, float]]


def relay_preset(tau: Tau) -> RelayPreset:
    """The relay-feedback normal form that seeds the family.

    Its literal piecewise formula equals the (tau, 0, 0, 0) member of
    the family at every point off the switching line, exactly.
    """
    params = FoldSaddleParams(tau, 0.0, 0.0, 0.0)

    def field(x: float, y: float) -> tuple[float, float]:
        sgn = 1.0 if y > 0.0 else (-1.0 if y < 0.0 else 0.0)
        feedback = -1.0 if y >= 0.0 else -y
        u = -feedback * sgn
        slope = -1.0 if tau is Tau.INVISIBLE else sgn
        return (u, slope * x)

    return RelayPreset(params, build_system(params), field)
