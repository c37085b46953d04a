import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from rbfweno.grid import (FieldSet, Grid, InitializationError, error_norms,
                          init_cell_averages, observed_order)


def test_grid_geometry():
    g = Grid(0.0, 1.0, 20)
    assert g.dx == pytest.approx(0.05)
    assert g.cell_centers()[0] == pytest.approx(0.025)
    assert g.interfaces()[0] == 0.0
    assert g.interfaces()[-1] == 1.0
    np.testing.assert_allclose(np.diff(g.cell_centers()), g.dx)


def test_grid_validation():
    with pytest.raises(ValueError):
        Grid(1.0, 0.0, 10)
    with pytest.raises(ValueError):
        Grid(0.0, 1.0, 10, boundary="bogus")


@given(st.integers(min_value=7, max_value=60), st.integers(min_value=1, max_value=3))
@settings(max_examples=25, deadline=None)
def test_periodic_ghost_fill_idempotent(n, ncomp):
    f = FieldSet(ncomp, n)
    rng = np.random.default_rng(n * 7 + ncomp)
    f.interior[:] = rng.normal(size=(ncomp, n))
    f.fill_ghosts("periodic")
    once = f.data.copy()
    f.fill_ghosts("periodic")
    np.testing.assert_array_equal(f.data, once)
    # wrap is an exact index map
    np.testing.assert_array_equal(f.data[:, :3], f.interior[:, -3:])
    np.testing.assert_array_equal(f.data[:, -3:], f.interior[:, :3])


def test_outflow_ghosts_copy_edge():
    f = FieldSet(1, 8)
    f.interior[0] = np.arange(8.0)
    f.fill_ghosts("outflow")
    assert np.all(f.data[0, :3] == 0.0)
    assert np.all(f.data[0, -3:] == 7.0)


def test_init_constant_exact():
    grid = Grid(-2.0, 3.0, 13)
    f = init_cell_averages(lambda x: 1.0, grid)
    np.testing.assert_array_equal(f.interior[0], 1.0)


def test_init_linear_gives_cell_centers():
    grid = Grid(0.0, 1.0, 9)
    f = init_cell_averages(lambda x: x, grid)
    np.testing.assert_allclose(f.interior[0], grid.cell_centers(), rtol=0, atol=1e-15)


def test_init_sine_matches_antiderivative():
    # closed-form cell averages of 1 + 0.5 sin(4 pi x)
    grid = Grid(0.0, 1.0, 20)
    f = init_cell_averages(lambda x: 1.0 + 0.5 * np.sin(4 * np.pi * x), grid)
    edges = grid.interfaces()
    prim = edges - 0.5 * np.cos(4 * np.pi * edges) / (4 * np.pi)
    exact = np.diff(prim) / grid.dx
    np.testing.assert_allclose(f.interior[0], exact, rtol=0, atol=1e-12)


@given(st.integers(min_value=0, max_value=9))
@settings(max_examples=10, deadline=None)
def test_init_polynomial_exactness(deg):
    # Gauss-Legendre with quad_order=5 integrates degree <= 9 exactly
    grid = Grid(-1.0, 1.0, 7)
    coeffs = np.arange(1.0, deg + 2.0)
    poly = np.polynomial.Polynomial(coeffs)
    f = init_cell_averages(lambda x: poly(x), grid, quad_order=5)
    prim = poly.integ()
    exact = np.diff(prim(grid.interfaces())) / grid.dx
    np.testing.assert_allclose(f.interior[0], exact, rtol=1e-13, atol=1e-13)


def test_init_rejects_non_finite():
    grid = Grid(0.0, 1.0, 4)
    with pytest.raises(InitializationError, match="cell"):
        init_cell_averages(lambda x: 1.0 / (x - x) if x > 0.5 else 1.0, grid)


def test_init_rejects_low_quadrature():
    with pytest.raises(ValueError):
        init_cell_averages(lambda x: 1.0, Grid(0.0, 1.0, 4), quad_order=3)


def test_error_norms_trivial():
    assert error_norms([1.0, 2.0], [1.0, 2.0], 0.1) == (0.0, 0.0, 0.0)
    linf, l1, l2 = error_norms([2.0, 0.0, 0.0], [1.0, 0.0, 0.0], 0.1)
    assert linf == pytest.approx(1.0)
    assert l1 == pytest.approx(0.1)
    assert l2 == pytest.approx(np.sqrt(0.1))


def test_error_norms_match_summation_oracle(rng):
    a = rng.normal(size=300)
    b = rng.normal(size=300)
    dx = 0.003
    linf, l1, l2 = error_norms(a, b, dx)
    # straightforward loop oracle
    o_inf = max(abs(x - y) for x, y in zip(a, b))
    o_l1 = dx * sum(abs(x - y) for x, y in zip(a, b))
    o_l2 = (dx * sum((x - y) ** 2 for x, y in zip(a, b))) ** 0.5
    assert linf == pytest.approx(o_inf, rel=1e-15)
    assert l1 == pytest.approx(o_l1, rel=1e-14)
    assert l2 == pytest.approx(o_l2, rel=1e-14)


def test_error_norms_shape_mismatch():
    with pytest.raises(ValueError):
        error_norms([1.0], [1.0, 2.0], 0.1)


def test_norm_scaling_under_replication(rng):
    # doubling the resolution of the same profile: L1 invariant, L2 / sqrt(2)
    a = rng.normal(size=64)
    dx = 1.0 / 64
    _, l1, l2 = error_norms(a, np.zeros(64), dx)
    a2 = np.repeat(a, 2)
    _, l1r, l2r = error_norms(a2, np.zeros(128), dx / 2)
    assert l1r == pytest.approx(l1, rel=1e-14)
    assert l2r == pytest.approx(l2, rel=1e-14)


def test_observed_order_power_of_two():
    orders = observed_order([(100, 1e-2), (200, 1e-2 / 32)])
    assert orders[0] == pytest.approx(5.0)


def test_observed_order_paper_column():
    # published L-infinity column, n = 40..160 doubling
    errs = [(40, 3.03e-04), (80, 5.70e-06), (160, 8.71e-08)]
    orders = observed_order(errs)
    assert orders[0] == pytest.approx(np.log2(3.03e-4 / 5.70e-6), rel=1e-12)
    assert orders == pytest.approx([5.732, 6.032], abs=5e-3)


def test_observed_order_flat_and_zero():
    assert observed_order([(10, 1.0), (20, 1.0)]) == [0.0]
    assert np.isnan(observed_order([(10, 1.0), (20, 0.0)])[0])


def test_observed_order_requires_doubling():
    with pytest.raises(ValueError):
        observed_order([(10, 1.0), (30, 0.1)])
