"""Command-line harness: single runs, convergence studies, scheme comparison.

Outputs are CSV files with '#'-prefixed metadata header lines; bodies are
deterministic for a fixed configuration.
"""

import argparse
import subprocess
import sys
import time

import numpy as np

from .config import FLUXES, SCHEMES, RunConfig
from .grid import Grid, error_norms, init_cell_averages, observed_order
from .integrate import SolverError, compute_dt, evolve
from .physics import FluxFailure
from .problems import PROBLEMS, get_problem

EXIT_OK = 0
EXIT_SOLVER = 1
EXIT_USAGE = 2


def _commit_id():
    try:
        out = subprocess.run(["git", "rev-parse", "--short", "HEAD"],
                             capture_output=True, text=True, timeout=5)
        if out.returncode == 0:
            return out.stdout.strip()
    except OSError:
        pass
    return "unknown"


def _header_lines(cfg, grid, problem, extra=()):
    lines = [
        f"# problem = {problem.name}",
        f"# scheme = {cfg.scheme}",
        f"# flux = {cfg.flux}",
        f"# n_cells = {grid.n_cells}",
        f"# dx = {grid.dx:.17g}",
        f"# t_final = {cfg.t_final:.17g}",
        f"# commit = {_commit_id()}",
    ]
    lines.extend(extra)
    return lines


def _write_csv(path, header_lines, columns, rows):
    with open(path, "w") as fh:
        for line in header_lines:
            fh.write(line + "\n")
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(f"{v:.17g}" if isinstance(v, float) else str(v)
                              for v in row) + "\n")


def load_config_file(path):
    """Flat key=value text; '#' starts a comment."""
    out = {}
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"bad config line: {raw.rstrip()}")
            key, val = (s.strip() for s in line.split("=", 1))
            out[key] = val
    return out


def setup_run(cfg):
    """(problem, grid, fields, cfg with t_final resolved)."""
    problem = get_problem(cfg.problem)
    if cfg.t_final is None:
        cfg = cfg.with_(t_final=problem.t_final)
    if problem.system == "pressureless" and cfg.flux != "godunov_pressureless":
        cfg = cfg.with_(flux="godunov_pressureless")
    grid = Grid(problem.x_lo, problem.x_hi, cfg.n_cells, problem.boundary)
    fields = init_cell_averages(problem.initial, grid, cfg.quad_order)
    return problem, grid, fields, cfg


def run_case(cfg):
    """Evolve one configuration; returns (problem, grid, fields, reports)."""
    problem, grid, fields, cfg = setup_run(cfg)
    fields, reports = evolve(fields, grid, cfg, cfg.t_final)
    if cfg.out:
        centers = grid.cell_centers()
        comps = [f"u{c}" for c in range(fields.n_comp)]
        frac = np.mean([r.weno_fraction for r in reports]) if reports else 0.0
        rows = [(f"{x:.17g}", *[float(fields.interior[c, j])
                                for c in range(fields.n_comp)])
                for j, x in enumerate(centers)]
        _write_csv(cfg.out, _header_lines(cfg, grid, problem,
                                          [f"# steps = {len(reports)}",
                                           f"# mean_weno_fraction = {frac:.6f}"]),
                   ["x_center", *comps], rows)
    return problem, grid, fields, reports


def exact_cell_averages(problem, grid, t, quad_order):
    return init_cell_averages(lambda x: problem.exact(x, t), grid, quad_order)


def convergence_study(cfg, resolutions):
    """Error-vs-resolution report rows against the cell-averaged exact solution.

    Returns list of dicts with n, errors, orders and wall time.  The time
    step is capped at C*dx^2 with C matched to the CFL step on the coarsest
    grid, so that third-order time error stays below the spatial error.
    """
    problem = get_problem(cfg.problem)
    if problem.exact is None:
        raise ValueError(f"problem {cfg.problem!r} has no exact solution")
    if cfg.t_final is None:
        cfg = cfg.with_(t_final=problem.t_final)
    resolutions = sorted(resolutions)
    _, grid0, fields0, cfg0 = setup_run(cfg.with_(n_cells=resolutions[0]))
    dt0, _ = compute_dt(fields0, grid0, cfg0, 0.0, cfg0.t_final)
    cap = dt0 / grid0.dx ** 2
    rows = []
    for n in resolutions:
        t0 = time.perf_counter()
        run_cfg = cfg.with_(n_cells=n, dt_cap_coeff=cap, out=None)
        problem, grid, fields, _ = run_case(run_cfg)
        exact = exact_cell_averages(problem, grid, run_cfg.t_final,
                                    run_cfg.quad_order)
        linf, l1, l2 = error_norms(fields.interior[0], exact.interior[0],
                                   grid.dx)
        rows.append({"n": n, "linf": linf, "l1": l1, "l2": l2,
                     "seconds": time.perf_counter() - t0})
    for key in ("linf", "l1"):
        orders = observed_order([(r["n"], r[key]) for r in rows])
        rows[0][f"order_{key}"] = float("nan")
        for r, o in zip(rows[1:], orders):
            r[f"order_{key}"] = o
    return rows


def format_convergence_table(cfg, rows):
    lines = [f"{'n':>6} {'Linf':>12} {'rate':>6} {'L1':>12} {'rate':>6}  seconds"]
    for r in rows:
        o_inf = f"{r['order_linf']:.2f}" if np.isfinite(r["order_linf"]) else "---"
        o_l1 = f"{r['order_l1']:.2f}" if np.isfinite(r["order_l1"]) else "---"
        lines.append(f"{r['n']:>6} {r['linf']:>12.3e} {o_inf:>6} "
                     f"{r['l1']:>12.3e} {o_l1:>6}  {r['seconds']:.2f}")
    return "\n".join(lines)


def compare_schemes(cfg, schemes):
    """Run several schemes on one grid; returns (x, {scheme: interior fields})."""
    if "weno_js5" not in schemes:
        schemes = ["weno_js5", *schemes]
    profiles = {}
    grid = None
    for scheme in schemes:
        problem, grid, fields, _ = run_case(cfg.with_(scheme=scheme, out=None))
        profiles[scheme] = fields.interior.copy()
    return grid.cell_centers(), profiles


# ---------------------------------------------------------------------------
# argument handling

def _add_common(sub):
    sub.add_argument("--problem", required=True, choices=sorted(PROBLEMS))
    sub.add_argument("--scheme", default="rbf_weno_p2", choices=SCHEMES)
    sub.add_argument("--flux", default=None, choices=FLUXES)
    sub.add_argument("--cfl", type=float, default=0.4)
    sub.add_argument("--tfinal", type=float, default=None)
    sub.add_argument("--out", default=None)
    sub.add_argument("--p", type=int, choices=(1, 2), default=None,
                     help="shape-estimate accuracy override")
    sub.add_argument("--hybrid", choices=("on", "off"), default=None)
    sub.add_argument("--config", default=None,
                     help="key=value file; command-line flags win")


def _build_config(args, n_cells):
    file_opts = load_config_file(args.config) if args.config else {}
    problem = args.problem or file_opts.get("problem")
    scheme = args.scheme if args.scheme is not None else "rbf_weno_p2"
    scheme = file_opts.get("scheme", scheme) if args.scheme is None else scheme
    kw = dict(
        problem=problem,
        scheme=scheme,
        n_cells=n_cells,
        cfl=args.cfl,
        t_final=args.tfinal,
        out=args.out,
    )
    for key in ("theta", "kappa", "eps_hybrid", "s_max", "cfl"):
        if key in file_opts:
            kw[key] = float(file_opts[key])
    if args.flux:
        kw["flux"] = args.flux
    elif "flux" in file_opts:
        kw["flux"] = file_opts["flux"]
    else:
        kw["flux"] = get_problem(problem).default_flux
    if args.hybrid is not None:
        kw["hybrid"] = args.hybrid == "on"
    elif "hybrid" in file_opts:
        kw["hybrid"] = file_opts["hybrid"] in ("on", "true", "1")
    cfg = RunConfig(**kw)
    if args.p is not None:
        cfg.p = args.p
    return cfg


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="rbfweno",
        description="finite-volume RBF-WENO solver for 1D conservation laws")
    subs = parser.add_subparsers(dest="command", required=True)

    run_p = subs.add_parser("run", help="evolve one case and dump the profile")
    _add_common(run_p)
    run_p.add_argument("--n", type=int, default=None,
                       help="cells (problem reference resolution by default)")

    conv_p = subs.add_parser("converge", help="grid-convergence study")
    _add_common(conv_p)
    conv_p.add_argument("--resolutions", default="20,40,80,160,320",
                        help="comma-separated cell counts (must double)")

    comp_p = subs.add_parser("compare", help="side-by-side scheme profiles")
    _add_common(comp_p)
    comp_p.add_argument("--n", type=int, default=None)
    comp_p.add_argument("--schemes", default="rbf_weno_p2",
                        help="comma-separated scheme ids (JS5 always added)")

    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK

    try:
        problem = get_problem(args.problem)
        n = getattr(args, "n", None) or problem.ref_n
        if args.command == "converge":
            resolutions = [int(s) for s in args.resolutions.split(",")]
            cfg = _build_config(args, resolutions[0])
            rows = convergence_study(cfg, resolutions)
            print(format_convergence_table(cfg, rows))
            if args.out:
                grid = Grid(problem.x_lo, problem.x_hi, resolutions[0],
                            problem.boundary)
                cfg_hdr = cfg.with_(t_final=cfg.t_final or problem.t_final)
                _write_csv(args.out,
                           _header_lines(cfg_hdr, grid, problem),
                           ["n_cells", "linf", "l1", "l2", "order_linf",
                            "order_l1", "seconds"],
                           [(r["n"], r["linf"], r["l1"], r["l2"],
                             r["order_linf"], r["order_l1"], r["seconds"])
                            for r in rows])
        elif args.command == "run":
            cfg = _build_config(args, n)
            _, grid, fields, reports = run_case(cfg)
            frac = (np.mean([r.weno_fraction for r in reports])
                    if reports else 0.0)
            print(f"{cfg.problem}: {len(reports)} steps to t={cfg.t_final}, "
                  f"mean WENO fraction {frac:.3f}")
        else:
            cfg = _build_config(args, n)
            schemes = [s.strip() for s in args.schemes.split(",") if s.strip()]
            for s in schemes:
                if s not in SCHEMES:
                    raise ValueError(f"unknown scheme {s!r}")
            x, profiles = compare_schemes(cfg, schemes)
            if args.out:
                names = list(profiles)
                cols = ["x_center"] + [f"{s}_u{c}" for s in names
                                       for c in range(profiles[s].shape[0])]
                rows = []
                for j, xj in enumerate(x):
                    row = [f"{xj:.17g}"]
                    row += [float(profiles[s][c, j]) for s in names
                            for c in range(profiles[s].shape[0])]
                    rows.append(tuple(row))
                grid = Grid(problem.x_lo, problem.x_hi, len(x),
                            problem.boundary)
                cfg_hdr = cfg.with_(t_final=cfg.t_final or problem.t_final)
                _write_csv(args.out, _header_lines(cfg_hdr, grid, problem,
                                                   [f"# schemes = {','.join(names)}"]),
                           cols, rows)
            print(f"compared {', '.join(profiles)} on {cfg.problem}")
    except (ValueError, KeyError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SolverError, FluxFailure, RuntimeError) as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
