"""Classification and sliding dynamics on the switching line y = 0.

Points on the line are sewing (both fields cross the same way), sliding
(both point at the line), escaping (both point away), or tangencies of
one field or both.  On sliding/escaping intervals the motion along the
line is governed by a scalar direction function whose zeros are the
pseudo-equilibria.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .core import AffineField, NonSmoothSystem, Point, lie, lie2
from ._tol import TOL_COINCIDE, TOL_ROOT, TOL_TANGENCY

__all__ = [
    "SigmaClass",
    "Side",
    "FoldKind",
    "Tangency",
    "SigmaStability",
    "PseudoEquilibrium",
    "Segment",
    "SigmaPartition",
    "DegenerateDenominator",
    "classify_sigma_point",
    "sliding_vector",
    "sliding_vector_geometric",
    "direction_function",
    "find_tangencies",
    "find_pseudo_equilibria",
    "partition_sigma",
]


class SigmaClass(Enum):
    SEWING = "sewing"
    SLIDING = "sliding"
    ESCAPING = "escaping"
    TANGENCY = "tangency"


class Side(Enum):
    UPPER = "upper"
    LOWER = "lower"


class FoldKind(Enum):
    VISIBLE = "visible"
    INVISIBLE = "invisible"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class Tangency:
    """A tangency location on the switching line.

    One record per abscissa: a coincident tangency of both fields carries
    a kind on both sides and counts with multiplicity two.
    """

    x: float
    upper: FoldKind | None
    lower: FoldKind | None

    @property
    def coincident(self) -> bool:
        return self.upper is not None and self.lower is not None

    @property
    def multiplicity(self) -> int:
        return (self.upper is not None) + (self.lower is not None)

    @property
    def side(self) -> Side:
        """The tangent side, defined only for non-coincident records."""
        if self.coincident:
            raise ValueError("coincident tangency has no single side")
        return Side.UPPER if self.upper is not None else Side.LOWER

    @property
    def kind(self) -> FoldKind:
        if self.coincident:
            raise ValueError("coincident tangency has no single kind")
        return self.upper if self.upper is not None else self.lower  # type: ignore[return-value]


class SigmaStability(Enum):
    ATTRACTOR = "sigma-attractor"
    REPELLER = "sigma-repeller"
    SADDLE = "sigma-saddle"


@dataclass(frozen=True)
class PseudoEquilibrium:
    x: float
    region: SigmaClass
    stability: SigmaStability


@dataclass(frozen=True)
class Segment:
    lo: float
    hi: float
    kind: SigmaClass

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)


@dataclass(frozen=True)
class SigmaPartition:
    interval: tuple[float, float]
    segments: tuple[Segment, ...]
    tangencies: tuple[Tangency, ...]
    pseudo_equilibria: tuple[PseudoEquilibrium, ...]


class DegenerateDenominator(ZeroDivisionError):
    """Raised when the two fields have equal y-components at the point."""


# vanishing threshold for the sliding denominator; points inside genuine
# sliding/escaping intervals are bounded well away from it
_DEN_TINY = 1e-13


def _lie_on_line(field: AffineField, x: float) -> float:
    return field.a21 * x + field.c2


def classify_sigma_point(
    system: NonSmoothSystem, x: float, *, tol: float = TOL_TANGENCY
) -> SigmaClass:
    """Classify the point (x, 0).

    A y-derivative within tol of zero on either side is a tangency;
    otherwise the sign pattern decides: same signs sew, upper down and
    lower up slide, upper up and lower down escape.
    """
    uf = _lie_on_line(system.upper, x)
    lf = _lie_on_line(system.lower, x)
    if abs(uf) <= tol or abs(lf) <= tol:
        return SigmaClass.TANGENCY
    if (uf > 0.0) == (lf > 0.0):
        return SigmaClass.SEWING
    if uf < 0.0 < lf:
        return SigmaClass.SLIDING
    return SigmaClass.ESCAPING


def sliding_vector(system: NonSmoothSystem, x: float) -> tuple[float, float]:
    """Filippov convex-combination field at (x, 0).

    Returns (Y2*X - X2*Y) / (Y2 - X2) evaluated componentwise, where X2
    and Y2 are the y-components of the two fields at the point.  The
    second component vanishes identically; the first equals the scalar
    direction function.
    """
    d1, d2 = system.upper(x, 0.0)
    e1, e2 = system.lower(x, 0.0)
    den = e2 - d2
    if abs(den) < _DEN_TINY:
        raise DegenerateDenominator(f"fields have equal y-components at x={x}")
    return ((e2 * d1 - d2 * e1) / den, (e2 * d2 - d2 * e2) / den)


def sliding_vector_geometric(system: NonSmoothSystem, x: float) -> tuple[float, float]:
    """Sliding vector built the geometric way, for cross-checking.

    Intersect the segment from (x,0)+X with the segment endpoint (x,0)+Y
    with the switching line and return the displacement from (x,0) to
    the intersection point.
    """
    d1, d2 = system.upper(x, 0.0)
    e1, e2 = system.lower(x, 0.0)
    den = e2 - d2
    if abs(den) < _DEN_TINY:
        raise DegenerateDenominator(f"fields have equal y-components at x={x}")
    # endpoints (x+d1, d2) and (x+e1, e2); parameter where y vanishes
    t = -d2 / den
    mx = (x + d1) + t * ((x + e1) - (x + d1))
    return (mx - x, 0.0)


def direction_function(system: NonSmoothSystem, x: float) -> float:
    """Scalar velocity of the sliding/escaping motion at (x, 0)."""
    return sliding_vector(system, x)[0]


def _fold_kind(field: AffineField, side: Side, x: float, tol: float) -> FoldKind:
    curve = lie2(field, Point(x, 0.0))
    if abs(curve) <= tol:
        return FoldKind.DEGENERATE
    if side is Side.UPPER:
        return FoldKind.VISIBLE if curve > 0.0 else FoldKind.INVISIBLE
    return FoldKind.VISIBLE if curve < 0.0 else FoldKind.INVISIBLE


def find_tangencies(
    system: NonSmoothSystem,
    interval: tuple[float, float],
    *,
    tol: float = TOL_TANGENCY,
    tol_coincide: float = TOL_COINCIDE,
) -> tuple[Tangency, ...]:
    """All tangency points of either field in the closed interval.

    The y-derivative of an affine field on the line is affine in x, so
    each side has at most one zero, found in closed form.  Zeros of the
    two sides closer than tol_coincide merge into one coincident record.
    """
    lo, hi = interval
    zeros: dict[Side, float] = {}
    for side, field in ((Side.UPPER, system.upper), (Side.LOWER, system.lower)):
        if abs(field.a21) < _DEN_TINY:
            continue  # derivative constant in x: no isolated tangency
        z = -field.c2 / field.a21
        if lo <= z <= hi:
            zeros[side] = z
    if not zeros:
        return ()
    if len(zeros) == 2 and abs(zeros[Side.UPPER] - zeros[Side.LOWER]) <= tol_coincide:
        xm = 0.5 * (zeros[Side.UPPER] + zeros[Side.LOWER])
        return (
            Tangency(
                xm,
                upper=_fold_kind(system.upper, Side.UPPER, xm, tol),
                lower=_fold_kind(system.lower, Side.LOWER, xm, tol),
            ),
        )
    records = []
    for side, z in zeros.items():
        kind = _fold_kind(
            system.upper if side is Side.UPPER else system.lower, side, z, tol
        )
        if side is Side.UPPER:
            records.append(Tangency(z, upper=kind, lower=None))
        else:
            records.append(Tangency(z, upper=None, lower=kind))
    records.sort(key=lambda t: t.x)
    return tuple(records)


def _segments(
    system: NonSmoothSystem,
    interval: tuple[float, float],
    tangencies: tuple[Tangency, ...],
    tol: float,
) -> tuple[Segment, ...]:
    lo, hi = interval
    cuts = [lo] + [t.x for t in tangencies if lo < t.x < hi] + [hi]
    cuts.sort()
    out = []
    for a, b in zip(cuts, cuts[1:]):
        if b - a <= TOL_COINCIDE:
            continue
        kind = classify_sigma_point(system, 0.5 * (a + b), tol=tol)
        out.append(Segment(a, b, kind))
    return tuple(out)


def _quadratic_vertex(system: NonSmoothSystem, a: float, b: float) -> float | None:
    """Abscissa of the extremum of the sliding-vector numerator.

    The numerator is a product of affine factors, hence an exact
    quadratic; three samples determine it.
    """

    def num(x: float) -> float:
        d1, d2 = system.upper(x, 0.0)
        e1, e2 = system.lower(x, 0.0)
        return e2 * d1 - d2 * e1

    m = 0.5 * (a + b)
    h = 0.5 * (b - a)
    f0, f1, f2 = num(a), num(m), num(b)
    # second divided difference = quadratic leading coefficient
    lead = (f0 - 2.0 * f1 + f2) / (2.0 * h * h)
    if abs(lead) < 1e-300:
        return None
    slope_mid = (f2 - f0) / (2.0 * h)
    vx = m - slope_mid / (2.0 * lead)
    if a < vx < b:
        return vx
    return None


_SCAN_POINTS = 33


def _bisect(f, a: float, b: float, fa: float, fb: float, tol: float) -> float:
    while b - a > tol:
        m = 0.5 * (a + b)
        fm = f(m)
        if fm == 0.0:
            return m
        if (fa > 0.0) != (fm > 0.0):
            b, fb = m, fm
        else:
            a, fa = m, fm
    return 0.5 * (a + b)


def find_pseudo_equilibria(
    system: NonSmoothSystem,
    interval: tuple[float, float],
    *,
    tol_root: float = TOL_ROOT,
    tol: float = TOL_TANGENCY,
) -> tuple[PseudoEquilibrium, ...]:
    """Zeros of the direction function inside sliding/escaping segments.

    Brackets come from a sign scan over interior sample points plus the
    numerator's vertex (so a near-double root cannot hide between
    samples); each bracket is refined by bisection.  Segment endpoints
    are never reported.
    """
    tangencies = find_tangencies(system, interval, tol=tol)
    segments = _segments(system, interval, tangencies, tol)
    found: list[PseudoEquilibrium] = []
    for seg in segments:
        if seg.kind not in (SigmaClass.SLIDING, SigmaClass.ESCAPING):
            continue
        width = seg.hi - seg.lo
        xs = [seg.lo + width * (k + 0.5) / _SCAN_POINTS for k in range(_SCAN_POINTS)]
        vx = _quadratic_vertex(system, seg.lo, seg.hi)
        if vx is not None:
            xs.append(vx)
            xs.sort()
        h = lambda x: direction_function(system, x)  # noqa: E731
        vals = [h(x) for x in xs]
        roots: list[float] = []
        for (xa, fa), (xb, fb) in zip(zip(xs, vals), zip(xs[1:], vals[1:])):
            if fa == 0.0:
                roots.append(xa)
                continue
            if (fa > 0.0) != (fb > 0.0):
                roots.append(_bisect(h, xa, xb, fa, fb, tol_root))
        if vals and vals[-1] == 0.0:
            roots.append(xs[-1])
        for r in roots:
            if r - seg.lo <= 10.0 * tol_root or seg.hi - r <= 10.0 * tol_root:
                continue
            if found and abs(found[-1].x - r) <= 10.0 * tol_root:
                continue
            found.append(
                PseudoEquilibrium(r, seg.kind, _stability(h, r, seg.kind, tol_root))
            )
    return tuple(found)


def _stability(h, root: float, region: SigmaClass, tol_root: float) -> SigmaStability:
    delta = 10.0 * tol_root
    for _ in range(4):
        left, right = h(root - delta), h(root + delta)
        if abs(left) > 1e-15 and abs(right) > 1e-15:
            break
        delta *= 100.0
    decreasing = left > right
    if region is SigmaClass.SLIDING:
        return SigmaStability.ATTRACTOR if decreasing else SigmaStability.SADDLE
    return SigmaStability.SADDLE if decreasing else SigmaStability.REPELLER


def partition_sigma(
    system: NonSmoothSystem,
    interval: tuple[float, float],
    *,
    tol: float = TOL_TANGENCY,
    tol_root: float = TOL_ROOT,
) -> SigmaPartition:
    """Split the interval at tangencies and classify every piece.

    Segments are classified by their midpoints (the class is constant
    between tangencies), and pseudo-equilibria are attached.
    """
    tangencies = find_tangencies(system, interval, tol=tol)
    segments = _segments(system, interval, tangencies, tol)
    pes = find_pseudo_equilibria(system, interval, tol_root=tol_root, tol=tol)
    return SigmaPartition(interval, segments, tangencies, pes)
