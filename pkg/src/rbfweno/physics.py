"""Euler and pressureless-Euler physics: fluxes and characteristic basis.

Conserved variables are (rho, rho*u, E) for the Euler system with the
ideal-gas law at gamma = 1.4, and (rho, rho*u) for the pressureless system.
"""

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

GAMMA = 1.4


class FluxFailure(Exception):
    """Inadmissible state reached a flux evaluation."""


@dataclass(frozen=True)
class EulerState:
    rho: float
    mom: float
    E: float

    @property
    def u(self):
        return self.mom / self.rho

    @property
    def p(self):
        return (GAMMA - 1.0) * (self.E - 0.5 * self.mom ** 2 / self.rho)

    @property
    def c(self):
        return math.sqrt(GAMMA * self.p / self.rho)

    @property
    def admissible(self):
        return self.rho > 0.0 and self.p > 0.0

    @classmethod
    def from_primitive(cls, rho, u, p):
        return cls(rho, rho * u, p / (GAMMA - 1.0) + 0.5 * rho * u * u)


@dataclass(frozen=True)
class PressurelessState:
    rho: float
    mom: float

    @property
    def u(self):
        return self.mom / self.rho if self.rho > 0.0 else 0.0


@njit(cache=True)
def euler_flux_kernel(r, m, E):
    u = m / r
    p = (GAMMA - 1.0) * (E - 0.5 * m * u)
    return m, m * u + p, u * (E + p)


@njit(cache=True)
def hllc_kernel(rl, ml, El, rr, mr, Er, splus_as_printed):
    """Four-case HLLC flux; returns (f0, f1, f2, ok)."""
    ul = ml / rl
    pl = (GAMMA - 1.0) * (El - 0.5 * ml * ul)
    ur = mr / rr
    pr = (GAMMA - 1.0) * (Er - 0.5 * mr * ur)
    if rl <= 0.0 or pl <= 0.0 or rr <= 0.0 or pr <= 0.0:
        return 0.0, 0.0, 0.0, False
    cl = math.sqrt(GAMMA * pl / rl)
    cr = math.sqrt(GAMMA * pr / rr)
    sm = min(ul - cl, ul, ul + cl)
    if splus_as_printed:
        sp = min(ur - cr, ur, ur + cr)
    else:
        sp = max(ur - cr, ur, ur + cr)
    if sm >= 0.0:
        f0, f1, f2 = euler_flux_kernel(rl, ml, El)
        return f0, f1, f2, True
    if sp <= 0.0:
        f0, f1, f2 = euler_flux_kernel(rr, mr, Er)
        return f0, f1, f2, True
    ss = ((pr - pl + rl * ul * (sm - ul) - rr * ur * (sp - ur))
          / (rl * (sm - ul) - rr * (sp - ur)))
    plr = 0.5 * (pr + pl + rl * (sm - ul) * (ss - ul)
                 + rr * (ss - ur) * (sp - ur))
    if ss >= 0.0:
        f0, f1, f2 = euler_flux_kernel(rl, ml, El)
        return ((ss * (sm * rl - f0)) / (sm - ss),
                (ss * (sm * ml - f1) + sm * plr) / (sm - ss),
                (ss * (sm * El - f2) + sm * plr * ss) / (sm - ss), True)
    f0, f1, f2 = euler_flux_kernel(rr, mr, Er)
    return ((ss * (sp * rr - f0)) / (sp - ss),
            (ss * (sp * mr - f1) + sp * plr) / (sp - ss),
            (ss * (sp * Er - f2) + sp * plr * ss) / (sp - ss), True)


@njit(cache=True)
def lax_friedrichs_kernel(rl, ml, El, rr, mr, Er, alpha):
    fl0, fl1, fl2 = euler_flux_kernel(rl, ml, El)
    fr0, fr1, fr2 = euler_flux_kernel(rr, mr, Er)
    return (0.5 * (fl0 + fr0) - 0.5 * alpha * (rr - rl),
            0.5 * (fl1 + fr1) - 0.5 * alpha * (mr - ml),
            0.5 * (fl2 + fr2) - 0.5 * alpha * (Er - El))


@njit(cache=True)
def godunov_pressureless_kernel(rl, ml, rr, mr):
    """Six-case Godunov flux for the pressureless system.

    Vacuum (rho = 0) states carry u = 0; reconstruction undershoots below
    zero density are treated as vacuum.
    """
    if rl < 0.0:
        rl = 0.0
    if rr < 0.0:
        rr = 0.0
    ul = ml / rl if rl > 0.0 else 0.0
    ur = mr / rr if rr > 0.0 else 0.0
    if rl == 0.0 and rr == 0.0:
        return 0.0, 0.0
    if ul > 0.0 and ur > 0.0:
        return rl * ul, rl * ul * ul
    if ul <= 0.0 and ur > 0.0:
        return 0.0, 0.0
    if ul <= 0.0 and ur <= 0.0:
        return rr * ur, rr * ur * ur
    # ul > 0 >= ur: sticky collision, direction set by the sqrt-rho mean
    v = (math.sqrt(rl) * ul + math.sqrt(rr) * ur) / (math.sqrt(rl) + math.sqrt(rr))
    if v > 0.0:
        return rl * ul, rl * ul * ul
    if v < 0.0:
        return rr * ur, rr * ur * ur
    return 0.5 * (rl * ul + rr * ur), rl * ul * ul


@njit(cache=True)
def roe_fill_eigenvectors(L, R, rl, ml, El, rr, mr, Er):
    """Fill left/right eigenvector matrices at the Roe average of two states.

    Rows of L are the left eigenvectors; L @ R = I.  Returns False for a
    degenerate basis (non-positive density or sound speed).
    """
    if rl <= 0.0 or rr <= 0.0:
        return False
    ul = ml / rl
    ur = mr / rr
    pl = (GAMMA - 1.0) * (El - 0.5 * ml * ul)
    pr = (GAMMA - 1.0) * (Er - 0.5 * mr * ur)
    Hl = (El + pl) / rl
    Hr = (Er + pr) / rr
    wl = math.sqrt(rl)
    wr = math.sqrt(rr)
    u = (wl * ul + wr * ur) / (wl + wr)
    H = (wl * Hl + wr * Hr) / (wl + wr)
    c2 = (GAMMA - 1.0) * (H - 0.5 * u * u)
    if c2 <= 0.0:
        return False
    c = math.sqrt(c2)
    R[0, 0] = 1.0
    R[1, 0] = u - c
    R[2, 0] = H - u * c
    R[0, 1] = 1.0
    R[1, 1] = u
    R[2, 1] = 0.5 * u * u
    R[0, 2] = 1.0
    R[1, 2] = u + c
    R[2, 2] = H + u * c
    b1 = (GAMMA - 1.0) / c2
    b2 = 0.5 * b1 * u * u
    L[0, 0] = 0.5 * (b2 + u / c)
    L[0, 1] = -0.5 * (b1 * u + 1.0 / c)
    L[0, 2] = 0.5 * b1
    L[1, 0] = 1.0 - b2
    L[1, 1] = b1 * u
    L[1, 2] = -b1
    L[2, 0] = 0.5 * (b2 - u / c)
    L[2, 1] = -0.5 * (b1 * u - 1.0 / c)
    L[2, 2] = 0.5 * b1
    return True


# ---------------------------------------------------------------------------
# numpy-facing API

def euler_flux(state):
    return np.array(euler_flux_kernel(state.rho, state.mom, state.E))


def hllc_flux(left, right, splus_as_printed=False):
    if not (left.admissible and right.admissible):
        raise FluxFailure(f"inadmissible state: left={left}, right={right}")
    f0, f1, f2, ok = hllc_kernel(left.rho, left.mom, left.E,
                                 right.rho, right.mom, right.E,
                                 splus_as_printed)
    if not ok:
        raise FluxFailure(f"HLLC failure: left={left}, right={right}")
    return np.array((f0, f1, f2))


def lax_friedrichs_flux(left, right, alpha):
    if alpha < 0.0:
        raise ValueError("dissipation constant must be >= 0")
    return np.array(lax_friedrichs_kernel(left.rho, left.mom, left.E,
                                          right.rho, right.mom, right.E,
                                          alpha))


def godunov_pressureless_flux(left, right):
    if left.rho < 0.0 or right.rho < 0.0:
        raise FluxFailure(f"negative density: left={left}, right={right}")
    return np.array(godunov_pressureless_kernel(left.rho, left.mom,
                                                right.rho, right.mom))


def max_wave_speed_euler(rho, mom, E):
    """max_j (|u| + c) over cells; raises on inadmissible states."""
    rho = np.asarray(rho, dtype=float)
    u = mom / rho
    p = (GAMMA - 1.0) * (E - 0.5 * mom * u)
    if np.any(rho <= 0.0) or np.any(p <= 0.0):
        j = int(np.argmax((rho <= 0.0) | (p <= 0.0)))
        raise FluxFailure(f"inadmissible state in cell {j}")
    return float(np.max(np.abs(u) + np.sqrt(GAMMA * p / rho)))


def max_wave_speed_pressureless(rho, mom):
    rho = np.asarray(rho, dtype=float)
    u = np.where(rho > 0.0, mom / np.where(rho > 0.0, rho, 1.0), 0.0)
    return float(np.max(np.abs(u)))


def roe_eigenvectors(left, right):
    """(L, R) at the Roe average of two EulerStates; rows of L are left
    eigenvectors and L @ R = I."""
    L = np.empty((3, 3))
    R = np.empty((3, 3))
    ok = roe_fill_eigenvectors(L, R, left.rho, left.mom, left.E,
                               right.rho, right.mom, right.E)
    if not ok:
        raise FluxFailure("degenerate characteristic basis")
    return L, R


def characteristic_project(stencil, left, right):
    """Project conserved cell averages (3, m) onto the characteristic basis
    of the Roe average of (left, right)."""
    L, _ = roe_eigenvectors(left, right)
    return L @ np.asarray(stencil, dtype=float)


def characteristic_unproject(stencil, left, right):
    _, R = roe_eigenvectors(left, right)
    return R @ np.asarray(stencil, dtype=float)
