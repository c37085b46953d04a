import numpy as np
import pytest


def cell_averages(antiderivative, x_interface, dx, lo, hi):
    """Exact cell averages of cells lo..hi relative to the interface.

    Cell k spans [x_interface + (k-1)*dx, x_interface + k*dx], so the
    interface sits between cells 0 and 1.
    """
    edges = x_interface + dx * np.arange(lo - 1, hi + 1)
    prim = antiderivative(edges)
    return (prim[1:] - prim[:-1]) / dx


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
