import pytest

from filippov import Tau, sweep

SLICES = [(tau, mu) for tau in (Tau.INVISIBLE, Tau.VISIBLE) for mu in (0.0, 0.1, -0.1)]


@pytest.fixture(scope="session")
def all_grids():
    """The six 64x64 slice sweeps, computed once per session."""
    return {(tau, mu): sweep(tau, mu, n=64, jobs=2) for tau, mu in SLICES}
