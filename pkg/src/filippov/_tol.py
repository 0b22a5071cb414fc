"""Pinned numeric tolerances shared across the package.

These are the defaults documented in the CLI help; most public functions
accept keyword overrides.
"""
from __future__ import annotations

# classification of points on the switching line
TOL_TANGENCY = 1e-9
# root refinement (pseudo-equilibria, cycle fixed points)
TOL_ROOT = 1e-12
# two tangencies closer than this count as one coincident point
TOL_COINCIDE = 1e-9
# parameter-space equality (case boundaries)
TOL_EQ = 1e-9
# residual |y| allowed at a reported switching-line hit
TOL_EVENT = 1e-12
# smooth-arc integration
RTOL = 1e-10
ATOL = 1e-12
T_MAX = 100.0
# hyperbolicity margin for return-map multipliers
TOL_MULT = 1e-4
# central finite-difference step for multipliers
FD_STEP = 1e-6
# terminal radius around the lower-field saddle
SADDLE_RADIUS = 1e-6
# crossing sequences accumulating this close to a coincident tangency stop
TANGENCY_STOP_RADIUS = 1e-6
# half-width of the mu parameter interval
EPS0 = 0.2
# the square domain for trajectories is [-DOMAIN, DOMAIN]^2
DOMAIN = 1.0
