"""Interface reconstruction: hybrid RBF-WENO and the WENO-JS5 baseline.

The left-biased trace u^-_{j+1/2} is built from the six cell averages
ubar_{j-2..j+3}; the right trace u^+ reuses the same routine on the
reversed window.  Smoothness indicators combine squared first differences
with exponentially weighted differences whose rate parameter gamma is
fitted to the local data, so that they vanish faster on smooth data than
classical undivided differences.
"""

import math

import numpy as np
from numba import njit

from .rbf import (four_point_kernel, p1_factor, shape_global_kernel,
                  shape_local_kernel, two_point_kernel, S_MAX)

JS5_EPS = 1e-6
JS5_D = (0.1, 0.6, 0.3)
GAMMA_DX_MAX = 30.0  # exp overflow guard for jump data near vacuum


class LinearWeightError(Exception):
    """Substencil end-coefficient vanished; linear weights are undefined."""


@njit(cache=True)
def _gamma_dx(diff, den):
    g = -diff / den
    if g > GAMMA_DX_MAX:
        return GAMMA_DX_MAX
    if g < -GAMMA_DX_MAX:
        return -GAMMA_DX_MAX
    return g


@njit(cache=True)
def indicators_kernel(f0, f1, f2, f3, dmag):
    """(beta0, beta1, beta2, tau3) from four stencil values f_{i-1..i+2}."""
    den = f1 + dmag if f1 >= 0.0 else f1 - dmag
    g0 = _gamma_dx(f1 - f0, den)
    g1 = _gamma_dx(f2 - f1, den)
    g2 = _gamma_dx(f3 - f2, den)
    d0 = f1 - f0
    d1 = f2 - f1
    d2 = f3 - f2
    p0 = math.exp(g0) * f1 - f0
    p1 = math.exp(g1) * f2 - f1
    p2 = math.exp(g2) * f3 - f2
    b0 = d0 * d0 + p0 * p0
    b1 = d1 * d1 + p1 * p1
    b2 = 0.5 * (b1 + d2 * d2 + p2 * p2)
    return b0, b1, b2, abs(b2 - b0)


@njit(cache=True)
def nonlinear_weights_kernel(b0, b1, b2, tau3, d0, d1, d2, eps):
    a0 = d0 * (1.0 + tau3 / (b0 + eps) + (b0 / (tau3 + eps)) ** 2)
    a1 = d1 * (1.0 + tau3 / (b1 + eps) + (b1 / (tau3 + eps)) ** 2)
    a2 = d2 * (1.0 + tau3 / (b2 + eps) + (b2 / (tau3 + eps)) ** 2)
    asum = a0 + a1 + a2
    return a0 / asum, a1 / asum, a2 / asum


@njit(cache=True)
def fixed_big_kernel(u0, u1, u2, u3, u4, u5, dx, p, dmag, s_max, root_sign,
                     p1_fac):
    """Big-stencil trace at the interface between u2's and u3's cells.

    The window holds cells j-2..j+3; the reconstruction itself uses the
    four cells j-1..j+2, the outer ones feed the shape estimate.
    """
    sg, _ = shape_global_kernel(u0, u1, u2, u3, u4, u5, dx, p, dmag, s_max,
                                root_sign, p1_fac)
    C_end, C_mid = four_point_kernel(sg)
    ce = C_end.real
    cm = C_mid.real
    return ce * u1 + cm * u2 + cm * u3 + ce * u4


@njit(cache=True)
def rbf_weno_kernel(u0, u1, u2, u3, u4, u5, dx, p, eps_w, dmag, s_max,
                    root_sign, p1_fac):
    """Full RBF-WENO left trace (shape fit, linear and nonlinear weights).

    Falls back to the fixed big-stencil value if a linear weight is
    negative (no splitting technique for negative-weight combinations).
    """
    sl, _ = shape_local_kernel(u1, u2, u3, u4, dx, dmag, s_max)
    sg, _ = shape_global_kernel(u0, u1, u2, u3, u4, u5, dx, p, dmag, s_max,
                                root_sign, p1_fac)
    c00, c01 = two_point_kernel(sl, 0)
    c10, c11 = two_point_kernel(sl, 1)
    c20, c21 = two_point_kernel(sl, 2)
    v0 = c00 * u1 + c01 * u2
    v1 = c10 * u2 + c11 * u3
    v2 = c20 * u3 + c21 * u4
    C_end, C_mid = four_point_kernel(sg)
    ce = C_end.real
    cm = C_mid.real
    ubig = ce * u1 + cm * u2 + cm * u3 + ce * u4
    d0 = ce / c00
    d2 = ce / c21
    d1 = 1.0 - d0 - d2
    if d0 < 0.0 or d1 < 0.0 or d2 < 0.0:
        return ubig
    b0, b1, b2, tau3 = indicators_kernel(u1, u2, u3, u4, dmag)
    w0, w1, w2 = nonlinear_weights_kernel(b0, b1, b2, tau3, d0, d1, d2, eps_w)
    return w0 * v0 + w1 * v1 + w2 * v2


@njit(cache=True)
def js5_kernel(u0, u1, u2, u3, u4, eps):
    """Classical fifth-order WENO-JS left trace from ubar_{j-2..j+2}."""
    v0 = u0 / 3.0 - 7.0 * u1 / 6.0 + 11.0 * u2 / 6.0
    v1 = -u1 / 6.0 + 5.0 * u2 / 6.0 + u3 / 3.0
    v2 = u2 / 3.0 + 5.0 * u3 / 6.0 - u4 / 6.0
    k1 = 13.0 / 12.0
    b0 = k1 * (u0 - 2.0 * u1 + u2) ** 2 + 0.25 * (u0 - 4.0 * u1 + 3.0 * u2) ** 2
    b1 = k1 * (u1 - 2.0 * u2 + u3) ** 2 + 0.25 * (u1 - u3) ** 2
    b2 = k1 * (u2 - 2.0 * u3 + u4) ** 2 + 0.25 * (3.0 * u2 - 4.0 * u3 + u4) ** 2
    a0 = 0.1 / (b0 + eps) ** 2
    a1 = 0.6 / (b1 + eps) ** 2
    a2 = 0.3 / (b2 + eps) ** 2
    asum = a0 + a1 + a2
    return (a0 * v0 + a1 * v1 + a2 * v2) / asum


# ---------------------------------------------------------------------------
# numpy-facing API

def smoothness_indicators(f, delta_mag):
    """beta (3,), tau3, gamma*dx (3,) for stencil values f_{i-1..i+2}."""
    f = np.asarray(f, dtype=float)
    b0, b1, b2, tau3 = indicators_kernel(f[0], f[1], f[2], f[3], delta_mag)
    den = f[1] + delta_mag if f[1] >= 0.0 else f[1] - delta_mag
    gamma_dx = np.clip(-(f[1:] - f[:-1]) / den, -GAMMA_DX_MAX, GAMMA_DX_MAX)
    return np.array([b0, b1, b2]), tau3, gamma_dx


def linear_weights(c_sub, c_big):
    """d_k from substencil coefficients (3,2) and big-stencil coefficients (4,)."""
    c_sub = np.asarray(c_sub, dtype=float)
    c_big = np.asarray(c_big, dtype=float)
    if c_sub[0, 0] == 0.0 or c_sub[2, 1] == 0.0:
        raise LinearWeightError("vanishing substencil end coefficient")
    d0 = c_big[0] / c_sub[0, 0]
    d2 = c_big[3] / c_sub[2, 1]
    return np.array([d0, 1.0 - d0 - d2, d2])


def nonlinear_weights(beta, tau3, d, eps):
    """(alpha, omega) from indicators and linear weights."""
    beta = np.asarray(beta, dtype=float)
    d = np.asarray(d, dtype=float)
    alpha = d * (1.0 + tau3 / (beta + eps) + (beta / (tau3 + eps)) ** 2)
    return alpha, alpha / alpha.sum()


def reconstruct_minus(window6, dx, p=2, eps_weights=None, delta_mag=None,
                      s_max=S_MAX, root="plus", length=1.0):
    """RBF-WENO trace at the interface between window6[2] and window6[3]."""
    w = np.asarray(window6, dtype=float)
    if eps_weights is None:
        eps_weights = dx * dx
    if delta_mag is None:
        delta_mag = dx * dx
    rs = 1.0 if root == "plus" else -1.0
    return rbf_weno_kernel(w[0], w[1], w[2], w[3], w[4], w[5], dx, p,
                           eps_weights, delta_mag, s_max, rs,
                           p1_factor(dx, length))


def reconstruct_interface_pair(window6, dx, p=2, eps_weights=None,
                               delta_mag=None, s_max=S_MAX, root="plus",
                               length=1.0):
    """(u_minus, u_plus) at the interface between window6[2] and window6[3].

    u_plus comes from the reflected window, so u_plus(data) ==
    u_minus(data[::-1]) identically.
    """
    w = np.asarray(window6, dtype=float)
    um = reconstruct_minus(w, dx, p, eps_weights, delta_mag, s_max, root,
                           length)
    up = reconstruct_minus(w[::-1], dx, p, eps_weights, delta_mag, s_max,
                           root, length)
    return um, up


def reconstruct_fixed_big_stencil(window6, dx, p=2, delta_mag=None,
                                  s_max=S_MAX, root="plus", length=1.0):
    """Smooth-branch trace: big stencil only, no indicators or weights."""
    w = np.asarray(window6, dtype=float)
    if delta_mag is None:
        delta_mag = dx * dx
    rs = 1.0 if root == "plus" else -1.0
    return fixed_big_kernel(w[0], w[1], w[2], w[3], w[4], w[5], dx, p,
                            delta_mag, s_max, rs, p1_factor(dx, length))


def weno_js5_minus(window5, eps=JS5_EPS):
    """Baseline WENO-JS5 trace at the interface right of window5[2]."""
    w = np.asarray(window5, dtype=float)
    return js5_kernel(w[0], w[1], w[2], w[3], w[4], eps)
