"""Event-driven integration of trajectories through the switching line.

Smooth arcs run under one field until they cross y = 0 (scipy solve_ivp
with terminal direction-aware events); sliding arcs run the scalar
direction function along the line.  The hybrid loop stitches arcs
together following the crossing/sliding/exit rules and reports a typed
termination.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from enum import Enum

import numpy as np
from scipy.integrate import solve_ivp

from .core import AffineField, NonSmoothSystem, Point, lie
from .switching import (
    FoldKind,
    Segment,
    Side,
    SigmaClass,
    Tangency,
    classify_sigma_point,
    direction_function,
    find_tangencies,
    partition_sigma,
)
from ._tol import (
    ATOL,
    DOMAIN,
    FD_STEP,
    RTOL,
    SADDLE_RADIUS,
    TANGENCY_STOP_RADIUS,
    TOL_EVENT,
    TOL_MULT,
    TOL_ROOT,
    TOL_TANGENCY,
    T_MAX,
)

__all__ = [
    "ArcSide",
    "Arc",
    "TerminationKind",
    "Termination",
    "Trajectory",
    "CycleKind",
    "CycleStability",
    "CanardCycle",
    "LeftDomain",
    "TimeBudget",
    "NoReturn",
    "flow_to_sigma",
    "integrate",
    "first_return",
    "find_canard_cycles",
    "detect_sigma_center",
    "detect_separatrix_connection",
    "trajectory_to_csv",
]


class ArcSide(Enum):
    UPPER = "U"
    LOWER = "L"
    SLIDING = "S"


@dataclass(frozen=True)
class Arc:
    """One smooth or sliding piece; samples are uniform in time."""

    side: ArcSide
    samples: tuple[Point, ...]
    t_span: tuple[float, float]


class TerminationKind(Enum):
    LEFT_DOMAIN = "LeftDomain"
    TIME_BUDGET = "TimeBudget"
    PSEUDO_EQ = "PseudoEqConvergence"
    CLOSED_ORBIT = "ClosedOrbit"
    SADDLE_APPROACH = "SaddleApproach"
    TANGENCY_STOP = "TangencyStop"


@dataclass(frozen=True)
class Termination:
    kind: TerminationKind
    x: float | None = None
    period: float | None = None

    def __str__(self) -> str:
        if self.kind is TerminationKind.PSEUDO_EQ:
            return f"{self.kind.value}({self.x:.6g})"
        if self.kind is TerminationKind.CLOSED_ORBIT:
            return f"{self.kind.value}(period={self.period:.6g})"
        return self.kind.value


@dataclass(frozen=True)
class Trajectory:
    arcs: tuple[Arc, ...]
    termination: Termination
    started_escaping: bool = False


class CycleKind(Enum):
    KIND_I = "I"
    KIND_II = "II"
    KIND_III = "III"


class CycleStability(Enum):
    ATTRACTING = "attracting"
    REPELLING = "repelling"
    NEUTRAL = "neutral"


@dataclass(frozen=True)
class CanardCycle:
    kind: CycleKind
    anchor: float
    multiplier: float
    stability: CycleStability
    hyperbolic: bool


class LeftDomain(RuntimeError):
    """Smooth arc left the square domain before reaching the line."""

    def __init__(self, message: str, arc: Arc | None = None):
        super().__init__(message)
        self.arc = arc


class TimeBudget(RuntimeError):
    """Time budget exhausted before the awaited event."""

    def __init__(self, message: str, arc: Arc | None = None):
        super().__init__(message)
        self.arc = arc


class NoReturn(RuntimeError):
    """First-return map undefined at the point (carries partial arcs)."""

    def __init__(self, message: str, arcs: tuple[Arc, ...] = ()):
        super().__init__(message)
        self.arcs = arcs


class _FlowStatus(Enum):
    HIT = "hit"
    DOMAIN = "domain"
    TIME = "time"
    SADDLE = "saddle"


_N_SAMPLES = 65
_MAX_ARCS = 4096


def _field_equilibrium(f: AffineField) -> Point | None:
    det = f.a11 * f.a22 - f.a12 * f.a21
    if abs(det) < 1e-12:
        return None
    x = (-f.c1 * f.a22 + f.c2 * f.a12) / det
    y = (-f.c2 * f.a11 + f.c1 * f.a21) / det
    return Point(x, y)


def _flow(
    f: AffineField,
    p0: Point,
    side: ArcSide,
    *,
    rtol: float,
    atol: float,
    t_max: float,
    domain: float,
    saddle: Point | None = None,
) -> tuple[_FlowStatus, Point, float, Arc]:
    """One smooth arc from p0 until it crosses the line into the other
    half-plane, leaves the domain, or (optionally) nears the saddle.

    The crossing event is direction-aware (upper arcs only fire on
    downward crossings), which makes starts on the line safe, tangential
    fold exits included.
    """
    if t_max <= 0.0:
        return _FlowStatus.TIME, p0, 0.0, Arc(side, (p0,), (0.0, 0.0))
    if max(abs(p0.x), abs(p0.y)) > domain + 1e-12:
        raise ValueError(f"start point ({p0.x}, {p0.y}) lies outside the domain")
    if abs(p0.y) <= TOL_EVENT:
        entry = lie(f, Point(p0.x, 0.0))
        wrong = entry < -TOL_TANGENCY if side is ArcSide.UPPER else entry > TOL_TANGENCY
        if wrong:
            raise ValueError(
                f"field exits the {side.name.lower()} half-plane at x={p0.x}"
            )

    def y_event(t, s):
        return s[1]

    y_event.terminal = True
    y_event.direction = -1.0 if side is ArcSide.UPPER else 1.0

    def dom_event(t, s):
        return max(abs(s[0]), abs(s[1])) - domain

    dom_event.terminal = True
    dom_event.direction = 1.0

    events = [y_event, dom_event]
    statuses = [_FlowStatus.HIT, _FlowStatus.DOMAIN]
    if saddle is not None:

        def sad_event(t, s):
            return (s[0] - saddle.x) ** 2 + (s[1] - saddle.y) ** 2 - SADDLE_RADIUS**2

        sad_event.terminal = True
        sad_event.direction = -1.0
        events.append(sad_event)
        statuses.append(_FlowStatus.SADDLE)

    sol = solve_ivp(
        lambda t, s: f(s[0], s[1]),
        (0.0, t_max),
        [p0.x, p0.y],
        method="RK45",
        rtol=rtol,
        atol=atol,
        dense_output=True,
        events=events,
        max_step=0.5,
    )
    if sol.status < 0:
        raise RuntimeError(f"integration failed: {sol.message}")

    if sol.status == 1:
        hits = [
            (te[0], k) for k, te in enumerate(sol.t_events) if te is not None and len(te)
        ]
        t_end, which = min(hits)
        state = sol.y_events[which][0]
        status = statuses[which]
    else:
        t_end = sol.t[-1]
        state = sol.y[:, -1]
        status = _FlowStatus.TIME

    ts = np.linspace(0.0, t_end, _N_SAMPLES) if t_end > 0.0 else np.array([0.0])
    vals = sol.sol(ts) if t_end > 0.0 else np.array([[p0.x], [p0.y]])
    pts = [Point(float(vals[0, k]), float(vals[1, k])) for k in range(vals.shape[1])]

    if status is _FlowStatus.HIT:
        if abs(state[1]) > TOL_EVENT:
            raise RuntimeError(
                f"crossing event residual |y|={abs(state[1]):.3e} above tolerance"
            )
        end = Point(float(state[0]), 0.0)
    else:
        end = Point(float(state[0]), float(state[1]))
    pts[-1] = end
    return status, end, t_end, Arc(side, tuple(pts), (0.0, t_end))


def flow_to_sigma(
    f: AffineField,
    p0: Point,
    side: ArcSide,
    *,
    rtol: float = RTOL,
    atol: float = ATOL,
    t_max: float = T_MAX,
    domain: float = DOMAIN,
) -> tuple[Point, float, Arc]:
    """Integrate one smooth arc to its transversal return to the line.

    Returns (hit point, flight time, arc).  Raises LeftDomain or
    TimeBudget, both carrying the partial arc.
    """
    status, end, t_end, arc = _flow(
        f, p0, side, rtol=rtol, atol=atol, t_max=t_max, domain=domain
    )
    if status is _FlowStatus.HIT:
        return end, t_end, arc
    if status is _FlowStatus.DOMAIN:
        raise LeftDomain(f"arc left the domain at ({end.x:.4g}, {end.y:.4g})", arc)
    raise TimeBudget(f"no crossing within t={t_max}", arc)


class _SlideStatus(Enum):
    END_LO = "end-lo"
    END_HI = "end-hi"
    CONVERGED = "converged"
    TIME = "time"


def _slide(
    system: NonSmoothSystem,
    x0: float,
    seg: Segment,
    *,
    rtol: float,
    atol: float,
    t_max: float,
    tol_root: float,
) -> tuple[_SlideStatus, float, float, Arc]:
    """Scalar motion x' = H(x) along one sliding/escaping segment."""
    h0 = direction_function(system, x0)
    if abs(h0) <= tol_root:
        return _SlideStatus.CONVERGED, x0, 0.0, Arc(
            ArcSide.SLIDING, (Point(x0, 0.0),), (0.0, 0.0)
        )
    if t_max <= 0.0:
        return _SlideStatus.TIME, x0, 0.0, Arc(
            ArcSide.SLIDING, (Point(x0, 0.0),), (0.0, 0.0)
        )

    def ev_lo(t, s):
        return s[0] - seg.lo

    ev_lo.terminal = True
    ev_lo.direction = -1.0

    def ev_hi(t, s):
        return s[0] - seg.hi

    ev_hi.terminal = True
    ev_hi.direction = 1.0

    def ev_conv(t, s):
        hh = direction_function(system, float(s[0]))
        return hh * hh - tol_root * tol_root

    ev_conv.terminal = True
    ev_conv.direction = -1.0

    sol = solve_ivp(
        lambda t, s: [direction_function(system, float(s[0]))],
        (0.0, t_max),
        [x0],
        method="RK45",
        rtol=rtol,
        atol=atol,
        dense_output=True,
        events=[ev_lo, ev_hi, ev_conv],
        max_step=0.5,
    )
    if sol.status < 0:
        raise RuntimeError(f"sliding integration failed: {sol.message}")
    statuses = [_SlideStatus.END_LO, _SlideStatus.END_HI, _SlideStatus.CONVERGED]
    if sol.status == 1:
        hits = [
            (te[0], k) for k, te in enumerate(sol.t_events) if te is not None and len(te)
        ]
        t_end, which = min(hits)
        x_end = float(sol.y_events[which][0][0])
        status = statuses[which]
    else:
        t_end = sol.t[-1]
        x_end = float(sol.y[0, -1])
        status = _SlideStatus.TIME

    ts = np.linspace(0.0, t_end, _N_SAMPLES) if t_end > 0.0 else np.array([0.0])
    xs = sol.sol(ts)[0] if t_end > 0.0 else np.array([x0])
    pts = tuple(Point(float(x), 0.0) for x in xs)
    return status, x_end, t_end, Arc(ArcSide.SLIDING, pts, (0.0, t_end))


@dataclass
class _Run:
    """Mutable state of one hybrid integration."""

    arcs: list[Arc] = dc_field(default_factory=list)
    t: float = 0.0
    crossings: list[tuple[float, bool, float]] = dc_field(default_factory=list)
    started_escaping: bool = False

    def match_crossing(self, x: float, up: bool) -> float | None:
        for xo, upo, to in self.crossings:
            if upo is up and abs(xo - x) <= 1e-9:
                return self.t - to
        self.crossings.append((x, up, self.t))
        return None


def integrate(
    system: NonSmoothSystem,
    p0: Point,
    t_max: float = T_MAX,
    *,
    rtol: float = RTOL,
    atol: float = ATOL,
    domain: float = DOMAIN,
    tol_root: float = TOL_ROOT,
) -> Trajectory:
    """Hybrid trajectory from p0 with typed termination.

    Sewing points pass straight through; sliding/escaping intervals run
    the scalar direction function; visible-fold endpoints exit along the
    tangent field, invisible ones along the transversal field.  Escaping
    intervals are only entered when the start point lies in one (the
    trajectory is flagged).  Coincident tangencies terminate the run, as
    do crossing sequences accumulating onto one.
    """
    part = partition_sigma(system, (-domain, domain))
    coincident = [t.x for t in part.tangencies if t.coincident]
    saddle = _field_equilibrium(system.lower)
    # only arm the saddle event where the lower field actually rules
    saddle_low = saddle if saddle is not None and saddle.y <= SADDLE_RADIUS else None
    run = _Run()

    def finish(kind: TerminationKind, **kw) -> Trajectory:
        return Trajectory(
            tuple(run.arcs), Termination(kind, **kw), run.started_escaping
        )

    def remaining() -> float:
        return t_max - run.t

    def nearest_tangency(x: float) -> Tangency | None:
        best = None
        for rec in part.tangencies:
            if best is None or abs(rec.x - x) < abs(best.x - x):
                best = rec
        if best is not None and abs(best.x - x) <= 1e-6:
            return best
        return None

    def adjacent_inflow(x: float) -> Segment | None:
        for seg in part.segments:
            if seg.kind not in (SigmaClass.SLIDING, SigmaClass.ESCAPING):
                continue
            if abs(seg.lo - x) <= 1e-9 and direction_function(system, x) > 0.0:
                return seg
            if abs(seg.hi - x) <= 1e-9 and direction_function(system, x) < 0.0:
                return seg
        return None

    def containing_segment(x: float) -> Segment | None:
        for seg in part.segments:
            if seg.kind in (SigmaClass.SLIDING, SigmaClass.ESCAPING) and (
                seg.lo - 1e-9 <= x <= seg.hi + 1e-9
            ):
                return seg
        return None

    # state machine:
    #   "off"   smooth arc from `p` on `side`
    #   "on"    dispatch at (x, 0)
    #   "slide" scalar arc from x along `seg`
    if abs(p0.y) > TOL_EVENT:
        state = ("off", p0, ArcSide.UPPER if p0.y > 0.0 else ArcSide.LOWER)
    else:
        state = ("on", p0.x)

    first_dispatch = True
    while True:
        if len(run.arcs) >= _MAX_ARCS or remaining() <= 0.0:
            return finish(TerminationKind.TIME_BUDGET)

        if state[0] == "off":
            _, p, side = state
            f = system.upper if side is ArcSide.UPPER else system.lower
            status, end, dt, arc = _flow(
                f,
                p,
                side,
                rtol=rtol,
                atol=atol,
                t_max=remaining(),
                domain=domain,
                saddle=saddle_low if side is ArcSide.LOWER else None,
            )
            run.arcs.append(arc)
            run.t += dt
            if status is _FlowStatus.DOMAIN:
                return finish(TerminationKind.LEFT_DOMAIN)
            if status is _FlowStatus.TIME:
                return finish(TerminationKind.TIME_BUDGET)
            if status is _FlowStatus.SADDLE:
                return finish(TerminationKind.SADDLE_APPROACH)
            state = ("on", end.x)
            continue

        if state[0] == "slide":
            _, x, seg = state
            status, x_end, dt, arc = _slide(
                system,
                x,
                seg,
                rtol=rtol,
                atol=atol,
                t_max=remaining(),
                tol_root=tol_root,
            )
            run.arcs.append(arc)
            run.t += dt
            first_dispatch = False
            if status is _SlideStatus.CONVERGED:
                return finish(TerminationKind.PSEUDO_EQ, x=x_end)
            if status is _SlideStatus.TIME:
                return finish(TerminationKind.TIME_BUDGET)
            x_end = seg.lo if status is _SlideStatus.END_LO else seg.hi
            if abs(x_end) >= domain - 1e-12:
                return finish(TerminationKind.LEFT_DOMAIN)
            state = ("on", x_end)
            continue

        # "on": dispatch at (x, 0)
        _, x = state
        if any(abs(x - cx) <= TANGENCY_STOP_RADIUS for cx in coincident):
            return finish(TerminationKind.TANGENCY_STOP, x=x)
        if (
            saddle is not None
            and abs(saddle.y) <= SADDLE_RADIUS
            and abs(saddle.x - x) <= SADDLE_RADIUS
        ):
            return finish(TerminationKind.SADDLE_APPROACH, x=x)

        cls = classify_sigma_point(system, x)
        if cls is SigmaClass.SEWING:
            up = lie(system.upper, Point(x, 0.0)) > 0.0
            period = run.match_crossing(x, up)
            if period is not None:
                return finish(TerminationKind.CLOSED_ORBIT, period=period)
            state = ("off", Point(x, 0.0), ArcSide.UPPER if up else ArcSide.LOWER)
        elif cls in (SigmaClass.SLIDING, SigmaClass.ESCAPING):
            if cls is SigmaClass.ESCAPING and first_dispatch:
                run.started_escaping = True
            seg = containing_segment(x)
            if seg is None:
                return finish(TerminationKind.TANGENCY_STOP, x=x)
            state = ("slide", x, seg)
        else:  # TANGENCY
            rec = nearest_tangency(x)
            if rec is None or rec.coincident:
                return finish(TerminationKind.TANGENCY_STOP, x=x)
            if rec.kind is FoldKind.VISIBLE:
                exit_side = (
                    ArcSide.UPPER if rec.side is Side.UPPER else ArcSide.LOWER
                )
                state = ("off", Point(rec.x, 0.0), exit_side)
            else:
                seg = adjacent_inflow(rec.x)
                if seg is not None:
                    state = ("slide", rec.x, seg)
                else:
                    other = (
                        system.lower if rec.side is Side.UPPER else system.upper
                    )
                    other_lie = lie(other, Point(rec.x, 0.0))
                    if abs(other_lie) <= TOL_TANGENCY:
                        return finish(TerminationKind.TANGENCY_STOP, x=rec.x)
                    up = other_lie > 0.0
                    period = run.match_crossing(rec.x, up)
                    if period is not None:
                        return finish(TerminationKind.CLOSED_ORBIT, period=period)
                    state = (
                        "off",
                        Point(rec.x, 0.0),
                        ArcSide.UPPER if up else ArcSide.LOWER,
                    )
        first_dispatch = False


def _first_return_detail(
    system: NonSmoothSystem,
    x0: float,
    *,
    rtol: float,
    atol: float,
    t_max: float,
    domain: float,
) -> tuple[float, float]:
    """(upper landing, full return) of the two-arc first-return map."""
    start = Point(x0, 0.0)
    if lie(system.upper, start) <= TOL_TANGENCY:
        raise NoReturn(f"upper field does not enter the upper half-plane at x={x0}")
    try:
        mid, _, arc_u = flow_to_sigma(
            system.upper, start, ArcSide.UPPER,
            rtol=rtol, atol=atol, t_max=t_max, domain=domain,
        )
    except (LeftDomain, TimeBudget) as exc:
        raise NoReturn(f"upper arc from x={x0}: {exc}", (exc.arc,) if exc.arc else ()) from exc
    if classify_sigma_point(system, mid.x) is not SigmaClass.SEWING:
        raise NoReturn(
            f"upper arc lands at x={mid.x:.6g} which is not a sewing point", (arc_u,)
        )
    saddle = _field_equilibrium(system.lower)
    if saddle is not None and saddle.y > SADDLE_RADIUS:
        saddle = None
    status, end, _, arc_l = _flow(
        system.lower, mid, ArcSide.LOWER,
        rtol=rtol, atol=atol, t_max=t_max, domain=domain, saddle=saddle,
    )
    if status is not _FlowStatus.HIT:
        raise NoReturn(
            f"lower arc from x={mid.x:.6g} ended with {status.value}", (arc_u, arc_l)
        )
    return mid.x, end.x


def first_return(
    system: NonSmoothSystem,
    x0: float,
    *,
    rtol: float = RTOL,
    atol: float = ATOL,
    t_max: float = T_MAX,
    domain: float = DOMAIN,
) -> float:
    """Numeric first-return map: one upper arc then one lower arc.

    Defined only when both intermediate landings are transversal sewing
    points; otherwise NoReturn carries the partial itinerary.
    """
    return _first_return_detail(
        system, x0, rtol=rtol, atol=atol, t_max=t_max, domain=domain
    )[1]


def find_canard_cycles(
    system: NonSmoothSystem,
    bracket: tuple[float, float],
    *,
    scan_points: int = 64,
    tol_root: float = TOL_ROOT,
    tol_mult: float = TOL_MULT,
    fd_step: float = FD_STEP,
    rtol: float = RTOL,
    atol: float = ATOL,
    t_max: float = T_MAX,
    domain: float = DOMAIN,
) -> tuple[CanardCycle, ...]:
    """Fixed points of the first-return map inside the bracket.

    Scans for sign changes of eta(x) - x over the bracket (points where
    the map is undefined are skipped), bisects each to tol_root, then
    classifies: kind I when both crossings of the cycle are sewing
    points, kind III when one sits on a tangency; stability from a
    central-difference multiplier.
    """

    def g(x: float) -> float | None:
        try:
            return first_return(
                system, x, rtol=rtol, atol=atol, t_max=t_max, domain=domain
            ) - x
        except NoReturn:
            return None

    lo, hi = bracket
    xs = np.linspace(lo, hi, scan_points)
    roots: list[float] = []
    # Displacements below the dead zone carry no sign information (an
    # identity-like map is all integration noise), so a root needs a firm
    # sign change between two points where the map is defined and nonzero.
    dead = 1e-10
    prev_x: float | None = None
    prev_f: float | None = None
    for x in xs:
        v = g(float(x))
        if v is None:
            prev_x = prev_f = None
            continue
        if abs(v) <= dead:
            continue
        if prev_f is not None and (prev_f > 0.0) != (v > 0.0):
            a, b, fa = prev_x, float(x), prev_f
            ok = True
            while b - a > tol_root:
                m = 0.5 * (a + b)
                fm = g(m)
                if fm is None:
                    ok = False
                    break
                if fm == 0.0:
                    a = b = m
                    break
                if (fa > 0.0) != (fm > 0.0):
                    b = m
                else:
                    a, fa = m, fm
            if ok:
                roots.append(0.5 * (a + b))
        prev_x, prev_f = float(x), v

    cycles: list[CanardCycle] = []
    for r in roots:
        if cycles and abs(cycles[-1].anchor - r) <= 1e-9:
            continue
        gp = g(r + fd_step)
        gm = g(r - fd_step)
        if gp is None or gm is None:
            continue
        mult = (gp - gm) / (2.0 * fd_step) + 1.0
        mid, _ = _first_return_detail(
            system, r, rtol=rtol, atol=atol, t_max=t_max, domain=domain
        )
        k_anchor = classify_sigma_point(system, r)
        k_mid = classify_sigma_point(system, mid)
        if k_anchor is SigmaClass.SEWING and k_mid is SigmaClass.SEWING:
            kind = CycleKind.KIND_I
        elif SigmaClass.TANGENCY in (k_anchor, k_mid):
            kind = CycleKind.KIND_III
        else:
            kind = CycleKind.KIND_II
        if mult > 1.0 + tol_mult:
            stab = CycleStability.REPELLING
        elif mult < 1.0 - tol_mult:
            stab = CycleStability.ATTRACTING
        else:
            stab = CycleStability.NEUTRAL
        cycles.append(
            CanardCycle(kind, r, mult, stab, hyperbolic=abs(mult - 1.0) > tol_mult)
        )
    return tuple(cycles)


def detect_sigma_center(
    system: NonSmoothSystem,
    interval: tuple[float, float],
    *,
    n: int = 10,
    tol: float = 1e-6,
    rtol: float = RTOL,
    atol: float = ATOL,
) -> bool:
    """True when the first-return map is the identity on the interval
    (checked at n equispaced points to within tol)."""
    for x in np.linspace(interval[0], interval[1], n):
        try:
            r = first_return(system, float(x), rtol=rtol, atol=atol)
        except NoReturn:
            return False
        if abs(r - float(x)) > tol:
            return False
    return True


def detect_separatrix_connection(params, *, tol: float = 1e-8) -> bool:
    """True when the upper arc carries the unstable separatrix foot onto
    the stable one.

    Applies to the invisible-fold family with the saddle below the line;
    other regimes return False so callers can test unconditionally.
    """
    from .family import Tau, build_system, landmarks

    if params.tau is not Tau.INVISIBLE or params.beta <= 0.0:
        return False
    system = build_system(params)
    marks = landmarks(params)
    if lie(system.upper, marks.unstable_foot) <= TOL_TANGENCY:
        return False
    try:
        hit, _, _ = flow_to_sigma(system.upper, marks.unstable_foot, ArcSide.UPPER)
    except (LeftDomain, TimeBudget):
        return False
    return abs(hit.x - marks.stable_foot.x) <= tol


def trajectory_to_csv(traj: Trajectory) -> str:
    """CSV dump, one row per sample: arc_index,side,t,x,y.

    Sample times are uniform across each arc's span by construction.
    """
    lines = ["arc_index,side,t,x,y"]
    for k, arc in enumerate(traj.arcs):
        t0, t1 = arc.t_span
        n = len(arc.samples)
        for j, pt in enumerate(arc.samples):
            t = t0 if n == 1 else t0 + (t1 - t0) * j / (n - 1)
            lines.append(
                f"{k},{arc.side.value},{t:.17g},{pt.x:.17g},{pt.y:.17g}"
            )
    return "\n".join(lines) + "\n"
