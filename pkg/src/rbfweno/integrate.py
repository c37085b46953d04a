"""Semi-discrete right-hand side and SSP-RK3 time evolution."""

from dataclasses import dataclass

import numpy as np
from numba import njit

from . import hybrid
from .grid import FieldSet
from .physics import (FluxFailure, godunov_pressureless_kernel, hllc_kernel,
                      lax_friedrichs_kernel, max_wave_speed_euler,
                      max_wave_speed_pressureless, roe_fill_eigenvectors)
from .rbf import p1_factor
from .weno import JS5_EPS, fixed_big_kernel, js5_kernel, rbf_weno_kernel

SCHEME_IDS = {"weno_js5": 0, "rbf_weno_p1": 1, "rbf_weno_p2": 2,
              "hybrid_rbf_weno": 2}
FLUX_IDS = {"hllc": 0, "lax_friedrichs": 1, "godunov_pressureless": 2}


class SolverError(Exception):
    """Reconstruction or flux failure, carrying the interface index."""


@dataclass
class StepReport:
    t: float
    dt: float
    max_speed: float
    weno_fraction: float


@njit(cache=True)
def _rhs_euler_kernel(gh, g, dx, scheme, p, use_weno, eps_w, dmag, s_max,
                      root_sign, p1_fac, flux_id, lf_alpha,
                      splus_as_printed, out):
    """Characteristic-projected reconstruction + flux divergence.

    use_weno[i] selects the full WENO branch at interface i (RBF schemes
    only).  Returns 0 on success, -(i+1) for a failure at interface i.
    """
    n = gh.shape[1] - 2 * g
    L = np.empty((3, 3))
    R = np.empty((3, 3))
    w = np.empty((3, 6))
    wm = np.empty(3)
    wp = np.empty(3)
    flux = np.empty((3, n + 1))
    for i in range(n + 1):
        jl = i + g - 1
        # the WENO branch (and the JS5 baseline) reconstructs the
        # characteristic variables; the smooth fixed-stencil branch works
        # componentwise on the conserved averages
        project = scheme == 0 or use_weno[i]
        if project:
            ok = roe_fill_eigenvectors(L, R, gh[0, jl], gh[1, jl], gh[2, jl],
                                       gh[0, jl + 1], gh[1, jl + 1],
                                       gh[2, jl + 1])
            if not ok:
                return -(i + 1)
            for m in range(6):
                col = jl - 2 + m
                a0 = gh[0, col]
                a1 = gh[1, col]
                a2 = gh[2, col]
                for comp in range(3):
                    w[comp, m] = (L[comp, 0] * a0 + L[comp, 1] * a1
                                  + L[comp, 2] * a2)
        else:
            for m in range(6):
                col = jl - 2 + m
                for comp in range(3):
                    w[comp, m] = gh[comp, col]
        for comp in range(3):
            if scheme == 0:
                wm[comp] = js5_kernel(w[comp, 0], w[comp, 1], w[comp, 2],
                                      w[comp, 3], w[comp, 4], JS5_EPS)
                wp[comp] = js5_kernel(w[comp, 5], w[comp, 4], w[comp, 3],
                                      w[comp, 2], w[comp, 1], JS5_EPS)
            elif use_weno[i]:
                wm[comp] = rbf_weno_kernel(w[comp, 0], w[comp, 1], w[comp, 2],
                                           w[comp, 3], w[comp, 4], w[comp, 5],
                                           dx, p, eps_w, dmag, s_max,
                                           root_sign, p1_fac)
                wp[comp] = rbf_weno_kernel(w[comp, 5], w[comp, 4], w[comp, 3],
                                           w[comp, 2], w[comp, 1], w[comp, 0],
                                           dx, p, eps_w, dmag, s_max,
                                           root_sign, p1_fac)
            else:
                wm[comp] = fixed_big_kernel(w[comp, 0], w[comp, 1], w[comp, 2],
                                            w[comp, 3], w[comp, 4], w[comp, 5],
                                            dx, p, dmag, s_max, root_sign,
                                            p1_fac)
                wp[comp] = fixed_big_kernel(w[comp, 5], w[comp, 4], w[comp, 3],
                                            w[comp, 2], w[comp, 1], w[comp, 0],
                                            dx, p, dmag, s_max, root_sign,
                                            p1_fac)
        if project:
            rl = R[0, 0] * wm[0] + R[0, 1] * wm[1] + R[0, 2] * wm[2]
            ml = R[1, 0] * wm[0] + R[1, 1] * wm[1] + R[1, 2] * wm[2]
            El = R[2, 0] * wm[0] + R[2, 1] * wm[1] + R[2, 2] * wm[2]
            rr = R[0, 0] * wp[0] + R[0, 1] * wp[1] + R[0, 2] * wp[2]
            mr = R[1, 0] * wp[0] + R[1, 1] * wp[1] + R[1, 2] * wp[2]
            Er = R[2, 0] * wp[0] + R[2, 1] * wp[1] + R[2, 2] * wp[2]
        else:
            rl = wm[0]
            ml = wm[1]
            El = wm[2]
            rr = wp[0]
            mr = wp[1]
            Er = wp[2]
        if flux_id == 0:
            f0, f1, f2, ok = hllc_kernel(rl, ml, El, rr, mr, Er,
                                         splus_as_printed)
            if not ok:
                return -(i + 1)
        else:
            f0, f1, f2 = lax_friedrichs_kernel(rl, ml, El, rr, mr, Er,
                                               lf_alpha)
        flux[0, i] = f0
        flux[1, i] = f1
        flux[2, i] = f2
    for j in range(n):
        out[0, j] = -(flux[0, j + 1] - flux[0, j]) / dx
        out[1, j] = -(flux[1, j + 1] - flux[1, j]) / dx
        out[2, j] = -(flux[2, j + 1] - flux[2, j]) / dx
    return 0


@njit(cache=True)
def _rhs_pressureless_kernel(gh, g, dx, scheme, p, use_weno, eps_w, dmag,
                             s_max, root_sign, p1_fac, out):
    """Componentwise reconstruction (no characteristic basis) + Godunov flux."""
    n = gh.shape[1] - 2 * g
    flux = np.empty((2, n + 1))
    q = np.empty((2, 2))
    for i in range(n + 1):
        jl = i + g - 1
        for comp in range(2):
            c = gh[comp]
            if scheme == 0:
                q[comp, 0] = js5_kernel(c[jl - 2], c[jl - 1], c[jl],
                                        c[jl + 1], c[jl + 2], JS5_EPS)
                q[comp, 1] = js5_kernel(c[jl + 3], c[jl + 2], c[jl + 1],
                                        c[jl], c[jl - 1], JS5_EPS)
            elif use_weno[i]:
                q[comp, 0] = rbf_weno_kernel(c[jl - 2], c[jl - 1], c[jl],
                                             c[jl + 1], c[jl + 2], c[jl + 3],
                                             dx, p, eps_w, dmag, s_max,
                                             root_sign, p1_fac)
                q[comp, 1] = rbf_weno_kernel(c[jl + 3], c[jl + 2], c[jl + 1],
                                             c[jl], c[jl - 1], c[jl - 2],
                                             dx, p, eps_w, dmag, s_max,
                                             root_sign, p1_fac)
            else:
                q[comp, 0] = fixed_big_kernel(c[jl - 2], c[jl - 1], c[jl],
                                              c[jl + 1], c[jl + 2], c[jl + 3],
                                              dx, p, dmag, s_max, root_sign,
                                              p1_fac)
                q[comp, 1] = fixed_big_kernel(c[jl + 3], c[jl + 2], c[jl + 1],
                                              c[jl], c[jl - 1], c[jl - 2],
                                              dx, p, dmag, s_max, root_sign,
                                              p1_fac)
        f0, f1 = godunov_pressureless_kernel(q[0, 0], q[1, 0], q[0, 1], q[1, 1])
        flux[0, i] = f0
        flux[1, i] = f1
    for j in range(n):
        out[0, j] = -(flux[0, j + 1] - flux[0, j]) / dx
        out[1, j] = -(flux[1, j + 1] - flux[1, j]) / dx
    return 0


def interface_weno_mask(fields, grid, cfg):
    """WENO dispatch per interface: an interface runs WENO when either
    adjacent cell is flagged (ghost neighbours take the boundary image)."""
    n = grid.n_cells
    if not cfg.hybrid:
        return np.ones(n + 1, dtype=bool), 1.0
    cell_mask = hybrid.flags_for_fields(fields, grid.boundary,
                                        theta=cfg.theta, kappa=cfg.kappa,
                                        eps=cfg.eps_hybrid)
    ext = np.empty(n + 2, dtype=bool)
    ext[1:-1] = cell_mask
    if grid.boundary == "periodic":
        ext[0] = cell_mask[-1]
        ext[-1] = cell_mask[0]
    else:
        ext[0] = cell_mask[0]
        ext[-1] = cell_mask[-1]
    mask = ext[:-1] | ext[1:]
    return mask, float(cell_mask.mean())


def rhs(fields, grid, cfg):
    """Flux-divergence time derivative of the interior cell averages.

    Returns (dudt array (n_comp, n_cells), weno_fraction).
    """
    fields.fill_ghosts(grid.boundary)
    gh = fields.data
    scheme = SCHEME_IDS[cfg.scheme]
    use_weno, frac = interface_weno_mask(fields, grid, cfg)
    dmag = cfg.delta_mag if cfg.delta_mag is not None else grid.dx ** 2
    eps_w = cfg.eps_weights if cfg.eps_weights is not None else grid.dx ** 2
    out = np.empty((fields.n_comp, grid.n_cells))
    root_sign = 1.0 if cfg.root_choice == "plus" else -1.0
    p1_fac = p1_factor(grid.dx, grid.x_hi - grid.x_lo)
    if fields.n_comp == 3:
        if cfg.flux == "lax_friedrichs":
            alpha = max_wave_speed_euler(*fields.interior)
        else:
            alpha = 0.0
        status = _rhs_euler_kernel(gh, fields.g, grid.dx, scheme, cfg.p,
                                   use_weno, eps_w, dmag, cfg.s_max,
                                   root_sign, p1_fac, FLUX_IDS[cfg.flux],
                                   alpha, cfg.hllc_splus_as_printed, out)
    else:
        status = _rhs_pressureless_kernel(gh, fields.g, grid.dx, scheme,
                                          cfg.p, use_weno, eps_w, dmag,
                                          cfg.s_max, root_sign, p1_fac, out)
    if status < 0:
        i = -status - 1
        raise SolverError(
            f"flux/reconstruction failure at interface {i} "
            f"(x = {grid.x_lo + i * grid.dx:.6g})")
    return out, frac


def compute_dt(fields, grid, cfg, t, t_final):
    """CFL step, optionally capped at dt_cap_coeff*dx^2, clamped to t_final."""
    if fields.n_comp == 3:
        speed = max_wave_speed_euler(*fields.interior)
    else:
        speed = max_wave_speed_pressureless(*fields.interior)
    remaining = t_final - t
    if speed <= 0.0:
        return remaining, 0.0
    dt = cfg.cfl * grid.dx / speed
    if cfg.dt_cap_coeff is not None:
        dt = min(dt, cfg.dt_cap_coeff * grid.dx ** 2)
    return min(dt, remaining), speed


def ssp_rk3_step(fields, dt, rhs_fn):
    """Shu-Osher three-stage SSP-RK3 update.

    rhs_fn(fields) -> (dudt over the interior, weno_fraction).  Returns
    (new fields, weno_fraction of the first stage).
    """
    u0 = fields.interior.copy()
    k1, frac = rhs_fn(fields)
    u1 = fields.copy()
    u1.interior[:] = u0 + dt * k1
    _abort_if_bad(u1.interior, 1)
    k2, _ = rhs_fn(u1)
    u2 = fields.copy()
    u2.interior[:] = 0.75 * u0 + 0.25 * (u1.interior + dt * k2)
    _abort_if_bad(u2.interior, 2)
    k3, _ = rhs_fn(u2)
    out = fields.copy()
    out.interior[:] = (u0 + 2.0 * (u2.interior + dt * k3)) / 3.0
    _abort_if_bad(out.interior, 3)
    return out, frac


def _abort_if_bad(arr, stage):
    if not np.all(np.isfinite(arr)):
        raise SolverError(f"non-finite field after RK stage {stage}")


def evolve(fields, grid, cfg, t_final, on_step=None):
    """Advance to t_final; returns (fields, list of StepReport)."""
    t = 0.0
    reports = []

    def rhs_fn(f):
        return rhs(f, grid, cfg)

    while t < t_final - 1e-14 * max(1.0, t_final):
        dt, speed = compute_dt(fields, grid, cfg, t, t_final)
        fields, frac = ssp_rk3_step(fields, dt, rhs_fn)
        fields.fill_ghosts(grid.boundary)
        t += dt
        rep = StepReport(t=t, dt=dt, max_speed=speed, weno_fraction=frac)
        reports.append(rep)
        if on_step is not None:
            on_step(rep)
    return fields, reports
