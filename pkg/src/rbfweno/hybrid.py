"""Per-cell smooth/non-smooth dispatch for the hybrid scheme.

A relative-smoothness ratio of undivided differences is computed per cell,
thresholded against min(theta, kappa*(r_min+eps)/(r_max+eps)), and the
resulting mask is dilated by a 4-cell buffer on each side.
"""

import numpy as np
from numba import njit

THETA = 1.5
KAPPA = 5.0
EPS_HYBRID = 1e-10
BUFFER = 4


@njit(cache=True)
def relative_smoothness_kernel(gh, g, eps, out):
    """r per interior cell from a ghosted 1-component array gh (needs g >= 3)."""
    n = gh.shape[0] - 2 * g
    for i in range(n):
        c = i + g
        # second-order undivided differences: central first/second at i,
        # backward at i-1, forward at i+1
        d1 = 0.5 * (gh[c + 1] - gh[c - 1])
        d2 = gh[c + 1] - 2.0 * gh[c] + gh[c - 1]
        bw = 0.5 * (3.0 * gh[c - 1] - 4.0 * gh[c - 2] + gh[c - 3])
        d2m = gh[c] - 2.0 * gh[c - 1] + gh[c - 2]
        fw = 0.5 * (-3.0 * gh[c + 1] + 4.0 * gh[c + 2] - gh[c + 3])
        d2p = gh[c + 2] - 2.0 * gh[c + 1] + gh[c]
        den = abs(bw) + abs(d2m) + abs(fw) + abs(d2p)
        if den == 0.0:
            den = eps
        out[i] = 2.0 * (abs(d1) + abs(d2)) / den
    return out


def relative_smoothness(ghosted, ghost_width, eps=EPS_HYBRID):
    ghosted = np.ascontiguousarray(ghosted, dtype=float)
    out = np.empty(ghosted.shape[0] - 2 * ghost_width)
    relative_smoothness_kernel(ghosted, ghost_width, eps, out)
    return out


def dilate_mask(mask, radius, periodic):
    """Flag `radius` cells on each side of every flagged cell."""
    out = mask.copy()
    for shift in range(1, radius + 1):
        if periodic:
            out |= np.roll(mask, shift)
            out |= np.roll(mask, -shift)
        else:
            out[shift:] |= mask[:-shift]
            out[:-shift] |= mask[shift:]
    return out


def hybrid_flags(r, theta=THETA, kappa=KAPPA, eps=EPS_HYBRID, periodic=True,
                 buffer=BUFFER):
    """Boolean WENO mask per cell (True = use WENO) with buffer dilation."""
    r = np.asarray(r, dtype=float)
    r_tol = min(theta, kappa * (r.min() + eps) / (r.max() + eps))
    return dilate_mask(r >= r_tol, buffer, periodic)


def flags_for_fields(fields, boundary, theta=THETA, kappa=KAPPA,
                     eps=EPS_HYBRID, buffer=BUFFER):
    """Union of per-component flags for a FieldSet."""
    periodic = boundary == "periodic"
    mask = np.zeros(fields.n_cells, dtype=bool)
    for comp in range(fields.n_comp):
        r = relative_smoothness(fields.data[comp], fields.g, eps)
        mask |= (r >= min(theta, kappa * (r.min() + eps) / (r.max() + eps)))
    return dilate_mask(mask, buffer, periodic)
