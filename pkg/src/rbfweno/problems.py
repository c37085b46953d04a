"""Benchmark problems: initial data, boundaries, final times, exact solutions."""

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .physics import GAMMA


@dataclass(frozen=True)
class ProblemSpec:
    name: str
    system: str                 # "euler" | "pressureless"
    x_lo: float
    x_hi: float
    boundary: str               # "periodic" | "outflow"
    t_final: float
    initial: Callable           # x -> conserved state vector
    exact: Optional[Callable] = None   # (x, t) -> conserved state vector
    ref_n: int = 100            # resolution used in the published profiles
    default_flux: str = "hllc"

    @property
    def n_comp(self):
        return 3 if self.system == "euler" else 2


def _euler_conserved(rho, u, p):
    return np.array([rho, rho * u, p / (GAMMA - 1.0) + 0.5 * rho * u * u])


def smooth_advection():
    """Entropy wave rho = 1 + 0.5 sin(4 pi x) advected at u = 1, p = 1."""
    def initial(x):
        return _euler_conserved(1.0 + 0.5 * math.sin(4.0 * math.pi * x), 1.0, 1.0)

    def exact(x, t):
        return _euler_conserved(
            1.0 + 0.5 * math.sin(4.0 * math.pi * (x - t)), 1.0, 1.0)

    return ProblemSpec("smooth_advection", "euler", 0.0, 1.0, "periodic",
                       1.0, initial, exact, ref_n=80)


def _riemann_euler(name, left, right, x_split, x_lo, x_hi, t_final, ref_n):
    Ul = _euler_conserved(*left)
    Ur = _euler_conserved(*right)

    def initial(x):
        return Ul if x < x_split else Ur

    return ProblemSpec(name, "euler", x_lo, x_hi, "outflow", t_final,
                       initial, ref_n=ref_n)


def lax_problem():
    return _riemann_euler("lax", (0.445, 0.698, 3.528), (0.50, 0.0, 0.571),
                          0.0, -5.0, 5.0, 1.3, ref_n=200)


def sod_problem():
    return _riemann_euler("sod", (1.0, 0.75, 1.0), (0.125, 0.0, 0.1),
                          0.5, 0.0, 1.0, 0.2, ref_n=100)


def shu_osher(k=5.0, eps=0.2):
    """Shock / entropy-wave interaction with tunable wave number and amplitude."""
    Ul = _euler_conserved(3.857143, 2.629369, 10.33333)

    def initial(x):
        if x < -4.0:
            return Ul
        return _euler_conserved(1.0 + eps * math.sin(k * x), 0.0, 1.0)

    return ProblemSpec("shu_osher", "euler", -5.0, 5.0, "outflow", 1.8,
                       initial, ref_n=300)


def titarev_toro():
    Ul = _euler_conserved(1.515695, 0.523346, 1.80500)

    def initial(x):
        if x < -4.5:
            return Ul
        return _euler_conserved(1.0 + 0.1 * math.sin(20.0 * math.pi * x), 0.0, 1.0)

    return ProblemSpec("titarev_toro", "euler", -5.0, 5.0, "outflow", 5.0,
                       initial, ref_n=2000)


def _char_foot(x, t, tol=1e-14, max_iter=100):
    """Solve x0 + t*u0(x0) = x for u0 = sin + 2 by safeguarded Newton.

    Monotone for t < 1 since d/dx0 (x0 + t u0) = 1 + t cos(x0) > 0.
    """
    lo = x - 3.0 * t
    hi = x - t
    x0 = x - 2.0 * t
    for _ in range(max_iter):
        f = x0 + t * (math.sin(x0) + 2.0) - x
        if abs(f) <= tol * max(1.0, abs(x)):
            return x0
        if f > 0.0:
            hi = x0
        else:
            lo = x0
        df = 1.0 + t * math.cos(x0)
        step = x0 - f / df
        x0 = step if lo < step < hi else 0.5 * (lo + hi)
    raise RuntimeError(f"characteristic solve failed at x={x}, t={t}")


def pressureless_smooth():
    """rho0 = u0 = sin(x) + 2 on a 2-pi-periodic domain (delta-free for t < 1)."""
    def initial(x):
        rho = math.sin(x) + 2.0
        return np.array([rho, rho * rho])

    def exact(x, t):
        if t == 0.0:
            return initial(x)
        x0 = _char_foot(x, t)
        u0 = math.sin(x0) + 2.0
        rho = (math.sin(x0) + 2.0) / (1.0 + t * math.cos(x0))
        return np.array([rho, rho * u0])

    return ProblemSpec("pressureless_smooth", "pressureless", 0.0,
                       2.0 * math.pi, "periodic", 0.1, initial, exact,
                       ref_n=80, default_flux="godunov_pressureless")


def blast_wave_pressureless():
    """Sticky-gas Riemann data forming a delta-shock near x = 0.2 at t = 0.3."""
    def initial(x):
        if x < 0.0:
            return np.array([1.0, 1.0])
        return np.array([0.25, 0.0])

    return ProblemSpec("blast_wave_pressureless", "pressureless", -0.5, 1.0,
                       "outflow", 0.3, initial, ref_n=120,
                       default_flux="godunov_pressureless")


PROBLEMS = {
    "smooth_advection": smooth_advection,
    "lax": lax_problem,
    "sod": sod_problem,
    "shu_osher": shu_osher,
    "titarev_toro": titarev_toro,
    "pressureless_smooth": pressureless_smooth,
    "blast_wave_pressureless": blast_wave_pressureless,
}


def get_problem(name, **kwargs):
    if name not in PROBLEMS:
        raise KeyError(f"unknown problem {name!r}; choices: {sorted(PROBLEMS)}")
    return PROBLEMS[name](**kwargs)
