"""Command-line front end.

Subcommands: ``bounds``, ``solve``, ``certify``, ``construct``, ``sweep``.
Exit codes: 0 success, 1 I/O error, 2 malformed JSON or schema violation,
3 invariant violation, 4 precondition violation (wrong message count,
mismatched dimensions, unsupported method).

Table output rounds to 6 decimal places; JSON and CSV carry full
round-trip precision.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .bounds import bound_report, dimension_ceiling, spectral_bound
from .constructions import mixed_tight, pure_tight
from .ensemble import read_ensemble, read_spectrum, write_ensemble
from .errors import PreconditionError, SchemaError, ValidationError
from .measurement import (
    ModelMeasurement,
    Povm,
    extract_certificate,
    model_from_povm,
    read_measurement,
    success_probability,
    success_probability_povm,
    write_measurement,
)
from .plotting import save_sweep_figure
from .sampling import random_ensemble
from .solvers import (
    SolverConfig,
    brute_force_qubit,
    helstrom,
    helstrom_measurement,
    optimize_povm,
    pgm,
)

SWEEP_COLUMNS = ("seed", "d", "m", "spectral_bound", "ceiling", "pgm",
                 "fixed_point", "gap")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="statedisc",
        description="Bounds, certificates, and solvers for one-shot "
                    "minimum-error state discrimination.",
    )
    parser.add_argument("--format", choices=("table", "json", "csv"),
                        default="table", help="stdout rendering")
    parser.add_argument("--no-compress", action="store_true",
                        help="use the ambient dimension instead of the joint support")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="compute every applicable upper bound")
    p.add_argument("ensemble", help="ensemble JSON file")

    p = sub.add_parser("solve", help="estimate the achievable optimum")
    p.add_argument("ensemble", help="ensemble JSON file")
    p.add_argument("--method", choices=("fixed-point", "pgm", "helstrom", "brute"),
                   default="fixed-point")
    p.add_argument("--tol", type=float, default=1e-10,
                   help="fixed-point stopping gain")
    p.add_argument("--max-iters", type=int, default=20000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=3)
    p.add_argument("--grid", type=int, default=400, help="brute-force mesh size")
    p.add_argument("--emit-measurement", metavar="PATH",
                   help="write the solver's measurement as JSON")

    p = sub.add_parser("certify", help="extract and check the budget certificate")
    p.add_argument("ensemble", help="ensemble JSON file")
    p.add_argument("measurement", help="measurement JSON file")

    p = sub.add_parser("construct", help="emit a bound-achieving instance")
    kinds = p.add_subparsers(dest="kind", required=True)
    c = kinds.add_parser("pure", help="basis encoding of the most likely messages")
    c.add_argument("--priors", required=True,
                   help="comma-separated prior probabilities")
    c.add_argument("--dim", type=int, required=True)
    c.add_argument("--out-ensemble", required=True)
    c.add_argument("--out-measurement", required=True)
    c = kinds.add_parser("mixed", help="realise a prescribed weighted spectrum")
    c.add_argument("--spectrum", required=True, help="weighted-spectrum JSON file")
    c.add_argument("--dim", type=int, required=True)
    c.add_argument("--out-ensemble", required=True)
    c.add_argument("--out-measurement", required=True)

    p = sub.add_parser("sweep", help="random instances to CSV (plus a figure)")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--messages", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", help="CSV path (stdout when omitted)")
    p.add_argument("--plot", help="figure path (defaults next to --out)")
    p.add_argument("--no-plot", action="store_true")
    p.add_argument("--pure", action="store_true", help="draw pure-state ensembles")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-iters", type=int, default=20000)
    p.add_argument("--restarts", type=int, default=3)

    return parser


# --- rendering -----------------------------------------------------------


def _table_value(v) -> str:
    if v is None:
        return "n/a"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, float):
        return f"{v:.6f}"
    return str(v)


def _csv_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _print_report(summary: dict, fmt: str, records: list[dict] | None = None,
                  records_key: str = "rows") -> None:
    if fmt == "json":
        doc = dict(summary)
        if records is not None:
            doc[records_key] = records
        print(json.dumps(doc, indent=2))
        return
    if fmt == "csv":
        if records is not None:
            keys = list(records[0].keys()) if records else []
            print(",".join(keys))
            for rec in records:
                print(",".join(_csv_value(rec[k]) for k in keys))
        else:
            keys = list(summary.keys())
            print(",".join(keys))
            print(",".join(_csv_value(summary[k]) for k in keys))
        return
    if records is not None and records:
        keys = list(records[0].keys())
        widths = [max(len(k), 12) for k in keys]
        print("  ".join(k.ljust(w) for k, w in zip(keys, widths)))
        for rec in records:
            print("  ".join(_table_value(rec[k]).ljust(w) for k, w in zip(keys, widths)))
        print()
    width = max(len(k) for k in summary)
    for key, value in summary.items():
        print(f"{key.ljust(width)}  {_table_value(value)}")


# --- subcommands ----------------------------------------------------------


def _cmd_bounds(args) -> int:
    e = read_ensemble(args.ensemble)
    report = bound_report(e, compress_support=not args.no_compress)
    _print_report(
        {
            "classical_top_d": report.classical_top_d,
            "dimension_ceiling": report.dimension_ceiling,
            "spectral_bound": report.spectral_bound,
            "pure_bound": report.pure_bound,
            "effective_dimension": report.effective_dimension,
        },
        args.format,
    )
    return 0


def _cmd_solve(args) -> int:
    e = read_ensemble(args.ensemble)
    bound = spectral_bound(e, compress_support=not args.no_compress)
    measurement = None
    iterations, converged, residual = 0, True, 0.0
    if args.method == "fixed-point":
        cfg = SolverConfig(tol=args.tol, max_iters=args.max_iters,
                           seed=args.seed, restarts=args.restarts)
        result = optimize_povm(e, cfg)
        success = result.success
        measurement = result.measurement
        iterations, converged, residual = (
            result.iterations, result.converged, result.residual,
        )
    elif args.method == "pgm":
        measurement = pgm(e)
        success = success_probability_povm(e, measurement)
    elif args.method == "helstrom":
        success = helstrom(e)
        measurement = helstrom_measurement(e)
    else:
        success = brute_force_qubit(e, grid=args.grid)
        if args.emit_measurement:
            raise PreconditionError(
                "the brute-force method does not produce a measurement file"
            )
    if args.emit_measurement and measurement is not None:
        write_measurement(measurement, args.emit_measurement)
    _print_report(
        {
            "method": args.method,
            "success": success,
            "spectral_bound": bound,
            "gap_to_spectral_bound": bound - success,
            "iterations": iterations,
            "converged": converged,
            "residual": residual,
        },
        args.format,
    )
    return 0


def _cmd_certify(args) -> int:
    e = read_ensemble(args.ensemble)
    meas = read_measurement(args.measurement)
    if isinstance(meas, Povm):
        meas = model_from_povm(meas)
    certificate = extract_certificate(e, meas)
    direct = success_probability(e, meas)
    s_values = [b.s_value for b in certificate.budgets]
    s_range_ok = all(-1e-10 <= s <= 1.0 + 1e-10 for s in s_values)
    total_ok = certificate.total <= e.dimension + 1e-9
    identity_gap = abs(certificate.reproduced_success - direct)
    identity_ok = identity_gap <= 1e-10
    records = [
        {"message": b.message, "eigen": b.eigen, "s_value": b.s_value}
        for b in certificate.budgets
    ]
    _print_report(
        {
            "total_budget": certificate.total,
            "dimension": e.dimension,
            "reproduced_success": certificate.reproduced_success,
            "direct_success": direct,
            "identity_gap": identity_gap,
            "s_range_check": "PASS" if s_range_ok else "FAIL",
            "total_budget_check": "PASS" if total_ok else "FAIL",
            "identity_check": "PASS" if identity_ok else "FAIL",
        },
        args.format,
        records=records,
        records_key="budgets",
    )
    return 0


def _cmd_construct(args) -> int:
    if args.kind == "pure":
        priors = [float(x) for x in args.priors.split(",") if x.strip()]
        instance = pure_tight(priors, args.dim)
    else:
        spectrum = read_spectrum(args.spectrum)
        instance = mixed_tight(spectrum, args.dim)
    write_ensemble(instance.ensemble, args.out_ensemble)
    write_measurement(instance.measurement, args.out_measurement)
    achieved = success_probability(instance.ensemble, instance.measurement)
    _print_report(
        {
            "kind": args.kind,
            "claimed_value": instance.claimed_value,
            "achieved_success": achieved,
            "dimension": instance.ensemble.dimension,
            "messages": instance.ensemble.message_count,
            "ensemble_path": str(args.out_ensemble),
            "measurement_path": str(args.out_measurement),
        },
        args.format,
    )
    return 0


def sweep_rows(count: int, dim: int, messages: int, seed: int,
               pure: bool = False, compress_support: bool = True,
               cfg: SolverConfig | None = None) -> list[dict]:
    """One record per random instance; the per-row seed derives from ``seed``."""
    if count < 1 or dim < 1 or messages < 1:
        raise PreconditionError("count, dim, and messages must be positive")
    row_seeds = np.random.default_rng(seed).integers(0, 2**31 - 1, size=count)
    rows = []
    for row_seed in (int(s) for s in row_seeds):
        rng = np.random.default_rng(row_seed)
        e = random_ensemble(dim, messages, rng, pure=pure)
        bound = spectral_bound(e, compress_support=compress_support)
        ceiling = dimension_ceiling(e, compress_support=compress_support)
        pgm_success = success_probability_povm(e, pgm(e))
        solver_cfg = cfg or SolverConfig()
        solver_cfg = SolverConfig(tol=solver_cfg.tol, max_iters=solver_cfg.max_iters,
                                  seed=row_seed, restarts=solver_cfg.restarts)
        fixed = optimize_povm(e, solver_cfg).success
        rows.append({
            "seed": row_seed,
            "d": dim,
            "m": messages,
            "spectral_bound": bound,
            "ceiling": ceiling,
            "pgm": pgm_success,
            "fixed_point": fixed,
            "gap": bound - fixed,
        })
    return rows


def render_sweep_csv(rows: list[dict]) -> str:
    lines = [",".join(SWEEP_COLUMNS)]
    for row in rows:
        lines.append(",".join(_csv_value(row[k]) for k in SWEEP_COLUMNS))
    return "\n".join(lines) + "\n"


def _cmd_sweep(args) -> int:
    cfg = SolverConfig(tol=args.tol, max_iters=args.max_iters,
                       restarts=args.restarts)
    rows = sweep_rows(args.count, args.dim, args.messages, args.seed,
                      pure=args.pure, compress_support=not args.no_compress,
                      cfg=cfg)
    text = render_sweep_csv(rows)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if not args.no_plot and (args.plot or args.out):
        figure_path = args.plot or str(Path(args.out).with_suffix(".png"))
        save_sweep_figure(
            [r["spectral_bound"] for r in rows],
            [r["ceiling"] for r in rows],
            [r["pgm"] for r in rows],
            [r["fixed_point"] for r in rows],
            figure_path,
        )
    return 0


_DISPATCH = {
    "bounds": _cmd_bounds,
    "solve": _cmd_solve,
    "certify": _cmd_certify,
    "construct": _cmd_construct,
    "sweep": _cmd_sweep,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _DISPATCH[args.command](args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (json.JSONDecodeError, SchemaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
