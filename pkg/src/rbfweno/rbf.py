"""Gaussian-RBF reconstruction coefficients and optimal shape parameters.

Interface values are reconstructed by interpolating the primitive function
of the cell averages with the Gaussian kernel exp(-lam^2 x^2) and
differentiating at the interface.  Everything is parametrized by the
dimensionless shape parameter s = lam^2 * dx^2; negative s corresponds to
purely imaginary lam.  When the quartic error-cancellation equation for the
big stencil has complex roots, s is complex and the reconstruction uses the
real part of the coefficients, which still cancels the leading error term.

All coefficient functions are 0/0 at s = 0 in closed form and switch to
Taylor series for |s| < S_SERIES.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np
from numba import njit
from scipy import special

S_MAX = 1.0       # |s| clamp; keeps the exponentials well-conditioned
S_SERIES = 1e-3   # series/closed-form crossover

# Taylor coefficients about s = 0, degree 4 (derived symbolically from the
# primitive-interpolation linear systems and cross-checked against a
# high-precision solve in the test suite).
_C10 = (0.5, 0.5, -1.0 / 12.0, -0.25, 7.0 / 720.0)          # centered, both
_C00 = (-0.5, 0.0, -2.0 / 3.0, 1.0, -103.0 / 180.0)          # left-biased c0
_C01 = (1.5, -2.0, 1.0, 0.0, -0.2)                           # left-biased c1
_C20 = (1.5, -2.0, 2.0, -1.0, 13.0 / 60.0)                   # right-biased c0
_C21 = (-0.5, 0.0, 1.0 / 3.0, 0.0, -7.0 / 45.0)              # right-biased c1
_CEND = (-1.0 / 12.0, -1.0 / 3.0, -1.0 / 3.0, 4.0 / 9.0, 43.0 / 45.0)
_CMID = (7.0 / 12.0, 1.0 / 3.0, -2.0 / 3.0, -1.0 / 9.0, 221.0 / 180.0)
_CDIR = (0.5, 1.0 / 6.0, -7.0 / 90.0, -8.0 / 945.0)          # direct-integral


@dataclass
class ShapeParams:
    """Estimated shape parameters for one interface (s = lam^2 dx^2)."""

    s_local: float
    s_global: complex
    local_clamped: bool = False
    global_clamped: bool = False
    root_choice: str = "minus"


@njit(cache=True)
def _poly4(s, c0, c1, c2, c3, c4):
    return c0 + s * (c1 + s * (c2 + s * (c3 + s * c4)))


@njit(cache=True)
def two_point_kernel(s, k):
    """Substencil coefficients (c0, c1) at real shape s, k in {0,1,2}.

    k=1 is the centered substencil {ubar_j, ubar_{j+1}} with both
    coefficients 2s e^{3s}/(e^{4s}-1); k=0/k=2 are the left/right-shifted
    substencils, primitive anchored at each substencil's leftmost interface.
    """
    if abs(s) < S_SERIES:
        if k == 0:
            return (_poly4(s, -0.5, 0.0, -2.0 / 3.0, 1.0, -103.0 / 180.0),
                    _poly4(s, 1.5, -2.0, 1.0, 0.0, -0.2))
        elif k == 1:
            c = _poly4(s, 0.5, 0.5, -1.0 / 12.0, -0.25, 7.0 / 720.0)
            return c, c
        else:
            return (_poly4(s, 1.5, -2.0, 2.0, -1.0, 13.0 / 60.0),
                    _poly4(s, -0.5, 0.0, 1.0 / 3.0, 0.0, -7.0 / 45.0))
    e1 = math.exp(s)
    e2 = e1 * e1
    e3 = e2 * e1
    e4 = e2 * e2
    den = e4 - 1.0
    if k == 0:
        return (-2.0 * s * (e4 - e3 + 2.0 * e2 - 2.0 * e1 + 1.0) / (e1 * den),
                2.0 * s * (e2 + 2.0) / den)
    elif k == 1:
        c = 2.0 * s * e3 / den
        return c, c
    else:
        return (2.0 * s * (e4 - e3 + 2.0 * e2 + 1.0) / (e1 * den),
                -2.0 * s * e2 / den)  # = -s/sinh(2s)


@njit(cache=True)
def four_point_kernel(s):
    """Big-stencil coefficients (C_end, C_mid) at complex shape s.

    The four coefficients are (C_end, C_mid, C_mid, C_end): the five-node
    primitive interpolation is symmetric about the target interface.
    """
    if abs(s) < S_SERIES:
        C_end = (-1.0 / 12.0 + s * (-1.0 / 3.0 + s * (-1.0 / 3.0
                 + s * (4.0 / 9.0 + s * (43.0 / 45.0)))))
        C_mid = (7.0 / 12.0 + s * (1.0 / 3.0 + s * (-2.0 / 3.0
                 + s * (-1.0 / 9.0 + s * (221.0 / 180.0)))))
        return C_end, C_mid
    e1 = cmath.exp(s)
    e2 = e1 * e1
    e3 = e2 * e1
    e4 = e2 * e2
    e6 = e3 * e3
    e8 = e4 * e4
    e10 = e6 * e4
    C_end = -2.0 * s * e10 / ((e4 - 1.0) * (e4 + 1.0) * (e4 + e2 + 1.0))
    C_mid = (2.0 * s * (e6 + e4 + e3 + 2.0 * e2 + e1 + 1.0) * e3
             / ((e8 - 1.0) * (e2 + e1 + 1.0)))
    return C_end, C_mid


@njit(cache=True)
def clamp_kernel(s, s_max):
    """Clamp real s to [-s_max, s_max]; non-finite maps to 0."""
    if not math.isfinite(s):
        return 0.0, True
    if s > s_max:
        return s_max, True
    if s < -s_max:
        return -s_max, True
    return s, False


@njit(cache=True)
def clamp_kernel_c(s, s_max):
    """Magnitude clamp for complex s; non-finite maps to 0."""
    if not (math.isfinite(s.real) and math.isfinite(s.imag)):
        return 0.0 + 0.0j, True
    m = abs(s)
    if m > s_max:
        return s * (s_max / m), True
    return s, False


@njit(cache=True)
def _safe_den(u, dmag):
    # shift by a sign-matched delta; sign(0) treated as +
    if u >= 0.0:
        return u + dmag
    return u - dmag


@njit(cache=True)
def shape_local_kernel(w0, w1, w2, w3, dx, dmag, s_max):
    """s = -(u''/(6u)) dx^2 at the interface between cells of w1 and w2.

    u and u'' come from second-order interface-centered differences of the
    four cell averages.
    """
    u = 0.5 * (w1 + w2)
    upp = (w0 - w1 - w2 + w3) / (2.0 * dx * dx)
    s = -upp * dx * dx / (6.0 * _safe_den(u, dmag))
    return clamp_kernel(s, s_max)


@njit(cache=True)
def shape_direct_kernel(w0, w1, w2, w3, dx, dmag, s_max):
    """Direct-integral variant: s = -(u''/(2u)) dx^2."""
    u = 0.5 * (w1 + w2)
    upp = (w0 - w1 - w2 + w3) / (2.0 * dx * dx)
    s = -upp * dx * dx / (2.0 * _safe_den(u, dmag))
    return clamp_kernel(s, s_max)


@njit(cache=True)
def shape_global_kernel(w0, w1, w2, w3, w4, w5, dx, p, dmag, s_max,
                        root_sign, p1_fac):
    """Big-stencil shape from the quartic error cancellation.

    s = dx^2 [-u''/3 +- sqrt(u''^2/9 - u*u4/15)] / (2u) with u4 the fourth
    derivative, all estimated by second-order interface-centered
    differences of the six cell averages (cells j-2..j+3 around the target
    interface).  p = 1 degrades the estimate to first order through the
    smooth relative rescaling s*p1_fac, p1_fac = 1 - O(dx); additive or
    stencil-shifted constructions put truncation spikes wherever the
    discriminant changes sign.  A negative discriminant yields a complex
    s (conjugate pair; either root gives the same real coefficient set).
    """
    dx2 = dx * dx
    u = 0.5 * (w2 + w3)
    upp = (w1 - w2 - w3 + w4) / (2.0 * dx2)
    u4 = (w0 - 3.0 * w1 + 2.0 * w2 + 2.0 * w3 - 3.0 * w4 + w5) / (2.0 * dx2 * dx2)
    den = 2.0 * _safe_den(u, dmag)
    disc = upp * upp / 9.0 - u * u4 / 15.0
    if disc >= 0.0:
        sq = math.sqrt(disc)
        s = complex((-upp / 3.0 + root_sign * sq) / den * dx2, 0.0)
    else:
        sq = math.sqrt(-disc)
        s = complex(-upp / 3.0, root_sign * sq) / den * dx2
    if p < 2:
        s = s * p1_fac
    return clamp_kernel_c(s, s_max)


@njit(cache=True)
def shape_odd3_kernel(w0, w1, w2, w3, dx, dmag, s_max):
    """Three-node variant: s = -(u'''/(12u')) dx^2 (odd-N cancellation)."""
    up = (w2 - w1) / dx
    uppp = (-w0 + 3.0 * w1 - 3.0 * w2 + w3) / (dx * dx * dx)
    s = -uppp * dx * dx / (12.0 * _safe_den(up, dmag))
    return clamp_kernel(s, s_max)


# ---------------------------------------------------------------------------
# numpy-facing API

def clamp_shape(s, s_max=S_MAX):
    if np.iscomplexobj(np.asarray(s)):
        return clamp_kernel_c(complex(s), s_max)[0]
    return clamp_kernel(float(s), s_max)[0]


def two_point_coeffs(s, k):
    """(c0, c1) for substencil k; s scalar or array, |s| <= S_MAX required."""
    s_arr = np.atleast_1d(np.asarray(s, dtype=float))
    if np.any(np.abs(s_arr) > S_MAX + 1e-12):
        raise ValueError("|s| exceeds S_MAX; clamp first")
    c0 = np.empty_like(s_arr)
    c1 = np.empty_like(s_arr)
    for i, si in enumerate(s_arr):
        c0[i], c1[i] = two_point_kernel(si, k)
    if np.isscalar(s) or np.asarray(s).ndim == 0:
        return float(c0[0]), float(c1[0])
    return c0, c1


def four_point_coeffs(s):
    """(C_-1, C_0, C_1, C_2) for the big stencil; s may be complex."""
    s_arr = np.atleast_1d(np.asarray(s, dtype=complex))
    if np.any(np.abs(s_arr) > S_MAX + 1e-12):
        raise ValueError("|s| exceeds S_MAX; clamp first")
    C_end = np.empty_like(s_arr)
    C_mid = np.empty_like(s_arr)
    for i, si in enumerate(s_arr):
        C_end[i], C_mid[i] = four_point_kernel(si)
    out = (C_end, C_mid, C_mid.copy(), C_end.copy())
    if np.isscalar(s) or np.asarray(s).ndim == 0:
        if np.iscomplexobj(np.asarray(s)):
            return tuple(c[0] for c in out)
        return tuple(float(c[0].real) for c in out)
    if not np.iscomplexobj(np.asarray(s)):
        return tuple(c.real.copy() for c in out)
    return out


def _center(window):
    # target interface lies between window[c] and window[c+1]
    return (len(window) - 1) // 2


def shape_local(window, dx, delta_mag):
    """Local shape from >=4 cell averages around the interface.

    The interface sits between window[c] and window[c+1] with
    c = (len(window)-1)//2.
    """
    w = np.asarray(window, dtype=float)
    c = _center(w)
    s, clamped = shape_local_kernel(w[c - 1], w[c], w[c + 1], w[c + 2],
                                    dx, delta_mag, S_MAX)
    return s, clamped


def shape_direct(window, dx, delta_mag):
    w = np.asarray(window, dtype=float)
    c = _center(w)
    s, clamped = shape_direct_kernel(w[c - 1], w[c], w[c + 1], w[c + 2],
                                     dx, delta_mag, S_MAX)
    return s, clamped


def p1_factor(dx, length):
    """First-order relative rescaling applied to the p=1 shape estimate."""
    return 1.0 - 2.0 * dx / length


def shape_global(window, dx, p, delta_mag, root="plus", length=1.0):
    """Big-stencil shape from >=6 cell averages; p in {1, 2}.

    For p=1 the optimal shape is rescaled by p1_factor(dx, length), which
    makes the estimate first-order accurate; length is the domain size.
    """
    w = np.asarray(window, dtype=float)
    c = _center(w)
    rs = -1.0 if root == "minus" else 1.0
    s, clamped = shape_global_kernel(w[c - 2], w[c - 1], w[c], w[c + 1],
                                     w[c + 2], w[c + 3], dx, p, delta_mag,
                                     S_MAX, rs, p1_factor(dx, length))
    return s, clamped


def shape_odd3(window, dx, delta_mag):
    w = np.asarray(window, dtype=float)
    c = _center(w)
    s, clamped = shape_odd3_kernel(w[c - 1], w[c], w[c + 1], w[c + 2],
                                   dx, delta_mag, S_MAX)
    return s, clamped


def estimate_shapes(window, dx, p=2, delta_mag=None, root="plus", length=1.0):
    """ShapeParams for one interface from a >=6-cell window."""
    if delta_mag is None:
        delta_mag = dx * dx
    sl, cl = shape_local(window, dx, delta_mag)
    sg, cg = shape_global(window, dx, p, delta_mag, root, length)
    return ShapeParams(s_local=sl, s_global=sg, local_clamped=cl,
                       global_clamped=cg, root_choice=root)


def reconstruct_direct_two_point(u_j, u_j1, s):
    """Interface value by the direct integral-constrained Gaussian fit.

    The coefficient multiplying (ubar_j + ubar_{j+1}) is
    2 z e^{-z^2/4} / (sqrt(pi) (erf(z/2) + erf(3z/2))) with z = sqrt(s);
    imaginary z (s < 0) is handled through erfi.
    """
    if abs(s) > S_MAX + 1e-12:
        raise ValueError("|s| exceeds S_MAX; clamp first")
    if abs(s) < S_SERIES:
        coef = _CDIR[0] + s * (_CDIR[1] + s * (_CDIR[2] + s * _CDIR[3]))
    elif s > 0:
        z = math.sqrt(s)
        coef = (2.0 * z * math.exp(-s / 4.0)
                / (math.sqrt(math.pi)
                   * (special.erf(z / 2.0) + special.erf(3.0 * z / 2.0))))
    else:
        y = math.sqrt(-s)
        coef = (2.0 * y * math.exp(-s / 4.0)
                / (math.sqrt(math.pi)
                   * (special.erfi(y / 2.0) + special.erfi(3.0 * y / 2.0))))
    return coef * (u_j + u_j1)
