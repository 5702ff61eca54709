import numpy as np
import pytest

from vnag import QuadraticDiagonal, Vanishing, integrate_flow


@pytest.fixture(scope="session")
def canonical_agd():
    """The vanishing-damping flow on f = x^2/2 from (x0=1, v0=0, t1=0.01)."""
    pot = QuadraticDiagonal([1.0])
    return integrate_flow(pot, Vanishing(3.0), [1.0], [0.0], 0.01, 20.0, 20000)


@pytest.fixture(scope="session")
def warm_state(canonical_agd):
    """State (x, v) of the canonical flow at t = 1."""
    xs, vs = canonical_agd.sample(np.array([1.0]))
    return float(xs[0, 0]), float(vs[0, 0])
