#!/usr/bin/env python3
"""Graphon Entropy v1.0 — Interface en ligne de commande

Usage:
    python main.py optimize --e 0.3 --t 0.0001                  # Optimum (JSON sur stdout)
    python main.py optimize --e 0.6 --t 0.1416 --diagnostics    # + recherche des worths et départs
    python main.py sweep --e-min 0.4 --e-max 0.6 --e-steps 3 \\
        --t-min 0.05 --t-max 0.3 --t-steps 3 --out sweep.csv --svg sweep.svg
    python main.py sweep --t-mode relative --t-min 0.02 --t-max 0.02 ...
    python main.py boundary --e-min 0.5 --e-max 0.75 --steps 6  # Table des bords (CSV)
    python main.py classify graphon.json                         # Phase d'un graphon donné
    python main.py ergm --e 0.5 --t 0.34                         # Visibilité ERGM (JSON)
    python main.py ergm --grid-e 0.2 0.5 --grid-t 0.01 0.1       # Grille de visibilité (CSV)
    python main.py scaling --kind flat --e 0.3                   # Étude d'échelle (CSV)
    python main.py worthcheck ref.json --alpha 0.405 --beta 40   # Diagnostics variationnels

Codes de sortie: 0 ok, 1 solveur en échec, 2 point hors domaine,
64 usage, 65 fichier graphon invalide, 73 sortie non inscriptible.
"""
import argparse
import itertools
import logging
import sys
from dataclasses import asdict
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from config import EXIT_CODES, SOLVER, SWEEP

logger = logging.getLogger("graphon_entropy")

SCALING_KINDS = ("flat", "scallop", "top")


class UsageParser(argparse.ArgumentParser):
    """ArgumentParser dont les erreurs d'usage sortent avec le code 64."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CODES["usage"], f"{self.prog}: error: {message}\n")


# =============================================================================
# ARGUMENTS
# =============================================================================

def parse_args(argv=None):
    common = UsageParser(add_help=False)
    common.add_argument("--out", type=str, default=None, help="Fichier de sortie (défaut: stdout)")
    common.add_argument("--verbose", action="store_true", help="Logs DEBUG sur stderr")

    solver = UsageParser(add_help=False)
    solver.add_argument("--k-max", type=int, default=SOLVER["k_max"], help="k maximal (défaut: %(default)s)")
    solver.add_argument("--starts", type=int, default=SOLVER["n_starts"], help="Départs par k (défaut: %(default)s)")
    solver.add_argument("--seed", type=int, default=SOLVER["seed"], help="Graine (défaut: %(default)s)")
    solver.add_argument("--tol", type=float, default=SOLVER["tol"], help="Tolérance des contraintes")
    solver.add_argument("--jobs", type=int, default=SOLVER["workers"], help="Processus pour les départs d'un point (défaut: %(default)s)")

    parser = UsageParser(description="Graphon Entropy — maximisation d'entropie sous contraintes arête/triangle")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("optimize", parents=[common, solver], help="Optimum en un point (JSON)")
    p.add_argument("--e", type=float, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--k", type=int, default=None, help="k fixé (défaut: meilleur k ≤ k-max)")
    p.add_argument("--diagnostics", action="store_true", help="Ajoute la recherche des worths et les départs")

    p = sub.add_parser("sweep", parents=[common, solver], help="Balayage du diagramme de phases (CSV)")
    p.add_argument("--e-min", type=float, required=True)
    p.add_argument("--e-max", type=float, required=True)
    p.add_argument("--e-steps", type=int, default=1)
    p.add_argument("--t-min", type=float, required=True)
    p.add_argument("--t-max", type=float, required=True)
    p.add_argument("--t-steps", type=int, default=1)
    p.add_argument("--t-mode", choices=["absolute", "relative"], default="absolute")
    p.add_argument("--workers", type=int, default=SWEEP["workers"])
    p.add_argument("--svg", type=str, default=None, help="Diagramme SVG des cellules")

    p = sub.add_parser("boundary", parents=[common], help="Table des bords du triangle (CSV)")
    p.add_argument("--e-min", type=float, default=0.0)
    p.add_argument("--e-max", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=11)

    p = sub.add_parser("classify", parents=[common, solver], help="Phase d'un graphon (JSON)")
    p.add_argument("graphon", nargs="?", default=None, help="Fichier graphon JSON")
    p.add_argument("--e", type=float, default=None)
    p.add_argument("--t", type=float, default=None)

    p = sub.add_parser("ergm", parents=[common, solver], help="Test d'invisibilité ERGM")
    p.add_argument("--e", type=float, default=None)
    p.add_argument("--t", type=float, default=None)
    p.add_argument("--grid-e", type=float, nargs="+", default=None)
    p.add_argument("--grid-t", type=float, nargs="+", default=None)

    p = sub.add_parser("scaling", parents=[common, solver], help="Étude d'échelle près d'un bord (CSV)")
    p.add_argument("--kind", choices=SCALING_KINDS, required=True)
    p.add_argument("--e", type=float, required=True)
    p.add_argument("--deltas", type=float, nargs="+", default=None, help="Distances au bord")
    p.add_argument("--aux", action="store_true", help="Colonnes auxiliaires (rapports, largeurs)")

    p = sub.add_parser("worthcheck", parents=[common], help="Diagnostics variationnels d'un graphon (JSON)")
    p.add_argument("graphon", help="Fichier graphon JSON")
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--beta", type=float, default=None)

    args = parser.parse_args(argv)

    if args.command == "classify" and args.graphon is None and (args.e is None or args.t is None):
        parser.error("classify: fichier graphon ou --e et --t requis")
    if args.command == "ergm":
        grid = args.grid_e is not None or args.grid_t is not None
        if grid and (args.grid_e is None or args.grid_t is None):
            parser.error("ergm: --grid-e et --grid-t vont ensemble")
        if not grid and (args.e is None or args.t is None):
            parser.error("ergm: --e et --t (ou --grid-e/--grid-t) requis")
    if args.command == "worthcheck" and (args.alpha is None) != (args.beta is None):
        parser.error("worthcheck: --alpha et --beta vont ensemble")
    return args


def _solver_options(args):
    from src.optimizer.solver import SolverOptions
    return SolverOptions(n_starts=args.starts, seed=args.seed, tol=args.tol, k_max=args.k_max, workers=args.jobs)


def _emit(text: str, out) -> None:
    """Écrit sur stdout ou dans --out (OSError propagée → code 73)."""
    if out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return
    path = Path(out)
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(text if text.endswith("\n") else text + "\n")
    logger.info(f"Écrit: {path}")


# =============================================================================
# COMMANDES
# =============================================================================

def cmd_optimize(args) -> int:
    from src.optimizer.solver import maximize_entropy, maximize_entropy_auto
    from src.phase.classify import classify
    from src.reports.exports import result_to_dict, to_json
    from src.variational.worth import diagnose

    opts = _solver_options(args)
    if args.k is not None:
        result = maximize_entropy(args.e, args.t, args.k, opts)
    else:
        result = maximize_entropy_auto(args.e, args.t, opts)

    diagnostics = diagnose(result.graphon, result.multipliers) if args.diagnostics else None
    _emit(to_json(result_to_dict(result, classify(result), diagnostics)), args.out)
    return EXIT_CODES["ok"]


def cmd_sweep(args) -> int:
    from src.reports.exports import write_csv
    from src.reports.svg import sweep_svg
    from src.sweep import SweepSpec, run_sweep

    try:
        spec = SweepSpec(
            e_min=args.e_min, e_max=args.e_max, e_steps=args.e_steps,
            t_min=args.t_min, t_max=args.t_max, t_steps=args.t_steps,
            t_mode=args.t_mode, opts=_solver_options(args), workers=args.workers,
        )
    except ValueError as exc:
        print(f"sweep: {exc}", file=sys.stderr)
        return EXIT_CODES["usage"]

    df = run_sweep(spec)
    _emit(write_csv(df), args.out)
    if args.svg:
        sweep_svg(df, args.svg)
    return EXIT_CODES["ok"]


def cmd_boundary(args) -> int:
    import numpy as np
    from src.boundary.razborov import boundary_table
    from src.reports.exports import write_csv

    if args.steps < 1 or not 0.0 <= args.e_min <= args.e_max <= 1.0:
        print("boundary: exige 0 ≤ e-min ≤ e-max ≤ 1 et steps ≥ 1", file=sys.stderr)
        return EXIT_CODES["usage"]
    e_values = np.linspace(args.e_min, args.e_max, args.steps) if args.steps > 1 else [args.e_min]
    _emit(write_csv(boundary_table(e_values)), args.out)
    return EXIT_CODES["ok"]


def cmd_classify(args) -> int:
    from src.graphon.densities import edge_density, triangle_density
    from src.optimizer.solver import maximize_entropy_auto
    from src.phase.classify import classify, classify_graphon
    from src.reports.exports import phase_to_dict, to_json
    from src.validation.graphon_validator import load_graphon

    if args.graphon is not None:
        g = load_graphon(args.graphon).graphon
        e = edge_density(g) if args.e is None else args.e
        t = triangle_density(g) if args.t is None else args.t
        label = classify_graphon(g, e, t)
    else:
        e, t = args.e, args.t
        label = classify(maximize_entropy_auto(e, t, _solver_options(args)))

    payload = {"e": e, "t": t, "phase": phase_to_dict(label)}
    _emit(to_json(payload), args.out)
    return EXIT_CODES["ok"]


def cmd_ergm(args) -> int:
    from src.ergm.invisibility import invisibility_grid, invisibility_test
    from src.reports.exports import report_to_dict, to_json, write_csv

    opts = _solver_options(args)
    if args.grid_e is not None:
        points = list(itertools.product(args.grid_e, args.grid_t))
        _emit(write_csv(invisibility_grid(points, opts)), args.out)
    else:
        report = invisibility_test(args.e, args.t, opts)
        _emit(to_json(report_to_dict(report)), args.out)
    return EXIT_CODES["ok"]


def cmd_scaling(args) -> int:
    from src.errors import SolverError
    from src.reports.exports import write_csv
    from src.scaling.studies import flat_boundary_study, scallop_study, top_boundary_study

    opts = _solver_options(args)
    try:
        if args.kind == "flat":
            report = flat_boundary_study(args.e, args.deltas, workers=args.jobs)
        elif args.kind == "scallop":
            report = scallop_study(args.e, args.deltas, opts)
        else:
            report = top_boundary_study(args.e, args.deltas, opts)
    except SolverError as exc:
        if exc.partial is not None and exc.partial.samples:
            _emit(write_csv(exc.partial.to_frame(args.aux)), args.out)
        raise

    logger.info(f"Exposant ajusté {report.fitted_exponent:.4f} (r² = {report.fitted_r2:.4f})")
    _emit(write_csv(report.to_frame(args.aux)), args.out)
    return EXIT_CODES["ok"]


def cmd_worthcheck(args) -> int:
    from src.reports.exports import to_json
    from src.validation.graphon_validator import load_graphon
    from src.variational.multipliers import Multipliers, extract_multipliers
    from src.variational.worth import diagnose, maximize_worth

    loaded = load_graphon(args.graphon)
    g = loaded.graphon
    if args.alpha is not None:
        mult = Multipliers(alpha=args.alpha, beta=args.beta)
    elif loaded.multipliers is not None:
        mult = loaded.multipliers
    else:
        mult = extract_multipliers(g)

    report = diagnose(g, mult)
    search = maximize_worth(g, mult)
    payload = {
        "graphon": g.to_dict(),
        "diagnostics": asdict(report),
        "maximizers": [{"profile": m.profile.values, "worth": m.worth} for m in search.maximizers],
    }
    _emit(to_json(payload), args.out)
    return EXIT_CODES["ok"]


COMMANDS = {
    "optimize": cmd_optimize,
    "sweep": cmd_sweep,
    "boundary": cmd_boundary,
    "classify": cmd_classify,
    "ergm": cmd_ergm,
    "scaling": cmd_scaling,
    "worthcheck": cmd_worthcheck,
}


# =============================================================================
# MAIN
# =============================================================================

def main(argv=None) -> int:
    args = parse_args(argv)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        datefmt="%H:%M:%S",
        stream=sys.stderr,
    )

    from src.errors import (
        AnsatzInfeasibleError,
        GraphonFormatError,
        InfeasiblePointError,
        SaturatedGraphonError,
        SolverError,
    )

    try:
        return COMMANDS[args.command](args)
    except (InfeasiblePointError, AnsatzInfeasibleError) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_CODES["infeasible"]
    except (GraphonFormatError, SaturatedGraphonError) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_CODES["data"]
    except SolverError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_CODES["solver_failure"]
    except OSError as exc:
        print(f"cannot write output: {exc}", file=sys.stderr)
        return EXIT_CODES["cant_create"]
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_CODES["usage"]


if __name__ == "__main__":
    sys.exit(main())
