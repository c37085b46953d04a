"""Superconvergent finite-volume RBF-WENO schemes for 1D conservation laws."""

from .config import RunConfig
from .grid import (FieldSet, Grid, error_norms, init_cell_averages,
                   observed_order)
from .integrate import SolverError, StepReport, evolve, rhs, ssp_rk3_step
from .problems import PROBLEMS, ProblemSpec, get_problem

__all__ = [
    "FieldSet", "Grid", "ProblemSpec", "PROBLEMS", "RunConfig", "SolverError",
    "StepReport", "error_norms", "evolve", "get_problem",
    "init_cell_averages", "observed_order", "rhs", "ssp_rk3_step",
]
