"""Run configuration shared by the solver and the CLI."""

from dataclasses import dataclass, field, replace

SCHEMES = ("weno_js5", "rbf_weno_p1", "rbf_weno_p2", "hybrid_rbf_weno")
FLUXES = ("hllc", "lax_friedrichs", "godunov_pressureless")


@dataclass
class RunConfig:
    problem: str = "smooth_advection"
    scheme: str = "rbf_weno_p2"
    flux: str = "hllc"
    n_cells: int = 100
    cfl: float = 0.4
    t_final: float | None = None      # None -> problem default
    quad_order: int = 5
    out: str | None = None
    # hybrid dispatch
    hybrid: bool | None = None        # None -> on for RBF schemes
    theta: float = 1.5
    kappa: float = 5.0
    eps_hybrid: float = 1e-10
    # shape/weight safeguards; None -> dx^2 at run time
    s_max: float = 1.0
    root_choice: str = "plus"   # branch of the quartic error cancellation
    delta_mag: float | None = None
    eps_weights: float | None = None
    # time stepping
    dt_cap_coeff: float | None = None  # dt <= coeff*dx^2 when set
    # HLLC wave-speed estimate: True reproduces the published min/min form
    hllc_splus_as_printed: bool = False
    p: int = field(init=False, default=2)

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if self.flux not in FLUXES:
            raise ValueError(f"unknown flux {self.flux!r}")
        if not 0.0 < self.cfl <= 1.0:
            raise ValueError("cfl must be in (0, 1]")
        if self.quad_order < 5:
            raise ValueError("quad_order must be >= 5")
        self.p = 1 if self.scheme == "rbf_weno_p1" else 2
        if self.hybrid is None:
            self.hybrid = self.scheme != "weno_js5"

    def with_(self, **kw):
        return replace(self, **kw)
