"""Planar affine vector fields split by the horizontal switching line y = 0.

A non-smooth system is a pair of affine fields: the upper field governs
y > 0, the lower field governs y < 0, and everything interesting happens
on the line between them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "Point",
    "AffineField",
    "NonSmoothSystem",
    "eval_field",
    "lie",
    "lie2",
]


def _require_finite(name: str, *values: float) -> None:
    for v in values:
        if not math.isfinite(v):
            raise ValueError(f"{name} must be finite, got {v!r}")


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self) -> None:
        _require_finite("Point coordinate", self.x, self.y)


@dataclass(frozen=True)
class AffineField:
    """Field (x, y) -> (a11 x + a12 y + c1, a21 x + a22 y + c2)."""

    a11: float
    a12: float
    c1: float
    a21: float
    a22: float
    c2: float

    def __post_init__(self) -> None:
        _require_finite(
            "AffineField coefficient",
            self.a11, self.a12, self.c1, self.a21, self.a22, self.c2,
        )

    def __call__(self, x: float, y: float) -> tuple[float, float]:
        return (
            self.a11 * x + self.a12 * y + self.c1,
            self.a21 * x + self.a22 * y + self.c2,
        )


@dataclass(frozen=True)
class NonSmoothSystem:
    upper: AffineField
    lower: AffineField


def eval_field(field: AffineField, p: Point) -> tuple[float, float]:
    """Value of the field at p."""
    return field(p.x, p.y)


def lie(field: AffineField, p: Point) -> float:
    """Derivative of y along the field at p (second component).

    Its sign on the switching line tells whether the field pushes up or
    down; a zero marks a tangency.
    """
    return field.a21 * p.x + field.a22 * p.y + field.c2


def lie2(field: AffineField, p: Point) -> float:
    """Second derivative of y along the field at p.

    For an affine field this is the gradient of the second component
    contracted with the field value, which is exact (no differencing).
    At a tangency point its sign decides visibility of the fold.
    """
    vx, vy = field(p.x, p.y)
    return field.a21 * vx + field.a22 * vy
