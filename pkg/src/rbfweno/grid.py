"""Uniform 1D finite-volume grids, ghosted field storage, and error norms."""

import numpy as np
from dataclasses import dataclass

GHOST_WIDTH = 3  # big-stencil reach (2) plus hybrid detector probing


class InitializationError(Exception):
    """Raised when initial data evaluates to a non-finite value."""


@dataclass(frozen=True)
class Grid:
    """Uniform partition of [x_lo, x_hi] into n_cells cells.

    Cell j spans [x_lo + j*dx, x_lo + (j+1)*dx).
    """

    x_lo: float
    x_hi: float
    n_cells: int
    boundary: str = "periodic"  # "periodic" | "outflow"

    def __post_init__(self):
        if self.n_cells < 1 or self.x_hi <= self.x_lo:
            raise ValueError("need x_hi > x_lo and n_cells >= 1")
        if self.boundary not in ("periodic", "outflow"):
            raise ValueError(f"unknown boundary kind {self.boundary!r}")

    @property
    def dx(self):
        return (self.x_hi - self.x_lo) / self.n_cells

    def cell_centers(self):
        return self.x_lo + (np.arange(self.n_cells) + 0.5) * self.dx

    def interfaces(self):
        return self.x_lo + np.arange(self.n_cells + 1) * self.dx


class FieldSet:
    """Conserved cell averages for a 1-3 component system, with ghost cells.

    data has shape (n_comp, n_cells + 2*GHOST_WIDTH); the interior view is
    data[:, g:-g].  Ghost values are a pure function of the interior values
    and the grid's boundary kind; fill_ghosts is idempotent.
    """

    def __init__(self, n_comp, n_cells):
        if n_comp not in (1, 2, 3):
            raise ValueError("n_comp must be 1, 2 or 3")
        self.n_comp = n_comp
        self.n_cells = n_cells
        self.g = GHOST_WIDTH
        self.data = np.zeros((n_comp, n_cells + 2 * GHOST_WIDTH))

    @property
    def interior(self):
        return self.data[:, self.g:-self.g]

    def copy(self):
        out = FieldSet(self.n_comp, self.n_cells)
        out.data[:] = self.data
        return out

    def fill_ghosts(self, boundary):
        g = self.g
        if boundary == "periodic":
            self.data[:, :g] = self.data[:, -2 * g:-g]
            self.data[:, -g:] = self.data[:, g:2 * g]
        else:  # outflow: zeroth-order extrapolation of the nearest interior cell
            self.data[:, :g] = self.data[:, g:g + 1]
            self.data[:, -g:] = self.data[:, -g - 1:-g]


def gauss_legendre_nodes(quad_order):
    """Nodes/weights on [-1/2, 1/2] (unit cell centered at 0)."""
    xi, w = np.polynomial.legendre.leggauss(quad_order)
    return 0.5 * xi, 0.5 * w


def init_cell_averages(u0, grid, quad_order=5):
    """Cell-average a pointwise initial state by Gauss-Legendre quadrature.

    u0(x) may return a scalar or a length-n_comp array for a single float x.
    Exact for polynomials of degree <= 2*quad_order - 1.
    """
    if quad_order < 5:
        raise ValueError("quad_order must be >= 5")
    xi, w = gauss_legendre_nodes(quad_order)
    centers = grid.cell_centers()
    probe = np.atleast_1d(np.asarray(u0(centers[0]), dtype=float))
    n_comp = probe.shape[0]
    fields = FieldSet(n_comp, grid.n_cells)
    vals = np.empty((n_comp, grid.n_cells, quad_order))
    for q in range(quad_order):
        x = centers + xi[q] * grid.dx
        for j, xj in enumerate(x):
            vals[:, j, q] = u0(xj)
    if not np.all(np.isfinite(vals)):
        bad = np.argwhere(~np.isfinite(vals))[0]
        raise InitializationError(
            f"non-finite initial data in component {bad[0]}, cell {bad[1]}")
    fields.interior[:] = vals @ w
    fields.fill_ghosts(grid.boundary)
    return fields


def error_norms(approx, exact, dx):
    """(Linf, L1, L2) of approx - exact for one component."""
    approx = np.asarray(approx, dtype=float)
    exact = np.asarray(exact, dtype=float)
    if approx.shape != exact.shape:
        raise ValueError("shape mismatch")
    diff = np.abs(approx - exact)
    return diff.max(), dx * diff.sum(), np.sqrt(dx * np.square(diff).sum())


def observed_order(errors):
    """Convergence orders log2(err_{k-1}/err_k) for resolution-doubling runs.

    errors: sequence of (n_cells, err).  A zero error yields NaN for the
    orders it participates in.
    """
    orders = []
    for (n0, e0), (n1, e1) in zip(errors, errors[1:]):
        if n1 != 2 * n0:
            raise ValueError("resolutions must double between entries")
        if e0 > 0 and e1 > 0:
            orders.append(np.log2(e0 / e1))
        else:
            orders.append(float("nan"))
    return orders
