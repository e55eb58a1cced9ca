"""
Command-Line Entry Point

Subcommands run, verify, sweep, kernel-study and compare. Every command
writes its artifacts into a run directory under the output root and
prints the manifest as JSON on stdout.
"""

import argparse
import json
import logging
import math
import sys
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from .config import settings
from .evolve.family import compare_variants
from .evolve.snapshots import restore_checkpoint
from .evolve.solver import grid_for
from .exceptions import ConfigError, LabError
from .models.report_models import ManifestStatus, RunManifest
from .operators.studies import kernel_norm_study
from .operators.symbols import MultiplierSymbol, SymbolName
from .services.config_loader import load_config, load_sweep_config
from .services.run_store import RunStore, compute_run_id, data_hash
from .spectral.grid import make_grid
from .spectral.profiles import initial_profile
from .tasks import execute_run, run_sweep
from .utils.logging_config import configure_logging
from .verification.suites import SuiteName, run_verification

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="whitham-lab",
        description=f"{settings.app_name} {settings.app_version}",
    )
    parser.add_argument("--out", type=str, default=None, help="Output directory (overrides WHITHAM_OUTPUT_DIR)")
    parser.add_argument("--seed", type=int, default=None, help="Seed for the random-corpus suites")
    parser.add_argument("--jobs", type=int, default=None, help="Concurrent members")
    parser.add_argument("--log-level", type=str, default=settings.log_level)
    parser.add_argument("--log-format", choices=["json", "text"], default=settings.log_format)
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="Integrate one configuration")
    run_p.add_argument("--config", type=str, required=True, help="Run configuration (YAML)")
    run_p.add_argument("--resume", action="store_true", help="Continue from the latest checkpoint of this run")
    run_p.add_argument("--rho", type=float, default=2.0, help="Last exponent of the regularity ladder")

    verify_p = sub.add_parser("verify", help="Run property suites at desk scale")
    verify_p.add_argument("suite", nargs="?", default=SuiteName.ALL.value, choices=[s.value for s in SuiteName])

    sweep_p = sub.add_parser("sweep", help="Run every member of a sweep file")
    sweep_p.add_argument("--config", type=str, required=True, help="Sweep configuration (YAML)")

    kernel_p = sub.add_parser("kernel-study", help="Kernel norm decay against time")
    kernel_p.add_argument("--config", type=str, default=None, help="Run configuration supplying the grid")
    kernel_p.add_argument("--symbol", choices=[s.value for s in SymbolName], default=SymbolName.QUARTIC.value)
    kernel_p.add_argument("--orders", type=float, nargs="+", default=[1.0, 1.5, 2.0])
    kernel_p.add_argument("--times", type=float, nargs=3, default=[1.0e-4, 1.0e-1, 13],
                          metavar=("T_MIN", "T_MAX", "COUNT"))
    kernel_p.add_argument("--norm", choices=["l2", "l1"], default="l2")
    kernel_p.add_argument("--epsilon", type=float, default=1.0)

    compare_p = sub.add_parser("compare", help="Modified against classic law from shared data")
    compare_p.add_argument("--config", type=str, required=True, help="Run configuration (YAML)")
    return parser


def _print_manifest(manifest: RunManifest):
    print(manifest.model_dump_json(indent=2))


def _plumbing_manifest(store: RunStore, kind: str, payload: Dict[str, Any]) -> RunManifest:
    return store.create_manifest(payload, kind=kind, run_id=f"{kind}-{compute_run_id(payload)}")


def cmd_run(args: argparse.Namespace, store: RunStore) -> int:
    cfg = load_config(args.config)
    u0 = initial_profile(grid_for(cfg), cfg.equation.initial_data)
    resume = None
    run_id = None
    if args.resume:
        run_id = compute_run_id(cfg, data_hash(u0))
        checkpoints = sorted(store.run_dir(run_id, "checkpoints").glob("checkpoint_*.npz"))
        if not checkpoints:
            raise ConfigError(f"no checkpoint to resume for run {run_id}")
        resume = restore_checkpoint(checkpoints[-1])
        if resume.config != cfg:
            raise ConfigError(f"checkpoint {checkpoints[-1].name} was written with a different configuration")
        logger.info(f"Resuming run {run_id} from {checkpoints[-1].name}")

    manifest, record = execute_run(cfg, u0 if resume is None else None, store,
                                   resume=resume, rho_target=args.rho, run_id=run_id)
    _print_manifest(manifest)
    return EXIT_OK if record.completed else EXIT_FAILED


def cmd_verify(args: argparse.Namespace, store: RunStore) -> int:
    seed = settings.default_seed if args.seed is None else args.seed
    payload = {"suite": args.suite, "seed": seed}
    manifest = _plumbing_manifest(store, "verify", payload)
    reports = run_verification(SuiteName(args.suite), seed, args.jobs)
    store.write_report(manifest, "verification.json", [r.model_dump(mode="json") for r in reports])
    store.write_table(manifest, "checks.csv", [
        {"suite": c.suite, "name": c.name, "passed": c.passed, "message": c.message,
         "measured": json.dumps(c.measured, default=str)}
        for r in reports for c in r.results
    ])
    passed = all(r.passed for r in reports)
    for r in reports:
        logger.info(f"suite {r.suite}: {r.passed_checks}/{r.total_checks} checks passed")
    store.finalize(manifest, ManifestStatus.COMPLETED if passed else ManifestStatus.FAILED,
                   None if passed else "failed suites: " + ", ".join(r.suite for r in reports if not r.passed))
    _print_manifest(manifest)
    return EXIT_OK if passed else EXIT_FAILED


def cmd_sweep(args: argparse.Namespace, store: RunStore) -> int:
    sweep_cfg = load_sweep_config(args.config)
    results = run_sweep(sweep_cfg, store, jobs=args.jobs)
    _print_manifest(results["manifest"])
    return EXIT_FAILED if results["members_failed"] else EXIT_OK


def _study_times(values: Sequence[float]) -> List[float]:
    t_min, t_max, count = values
    if t_min <= 0 or t_max <= t_min or count < 2:
        raise ConfigError(f"--times needs 0 < T_MIN < T_MAX and COUNT >= 2, got {list(values)}")
    return [float(t) for t in np.logspace(math.log10(t_min), math.log10(t_max), int(count))]


def cmd_kernel_study(args: argparse.Namespace, store: RunStore) -> int:
    if args.config:
        grid = grid_for(load_config(args.config))
    else:
        grid = make_grid(1024, 8.0 * math.pi)
    times = _study_times(args.times)
    symbol = MultiplierSymbol(SymbolName(args.symbol), grid)
    payload = {"symbol": args.symbol, "orders": args.orders, "times": times, "norm": args.norm,
               "epsilon": args.epsilon, "grid": {"n_points": grid.n_points, "half_length": grid.half_length}}
    manifest = _plumbing_manifest(store, "kernel-study", payload)
    try:
        studies = [kernel_norm_study(symbol, order, times, args.norm, args.epsilon) for order in args.orders]
        store.write_report(manifest, "kernel_study.json", [s.model_dump(mode="json") for s in studies])
        store.write_table(manifest, "kernel_study.csv", [
            {"derivative_order": s.derivative_order, "t": row.parameter, "norm": row.value, "slope": s.slope}
            for s in studies for row in s.rows
        ])
    except ValueError as e:
        store.finalize(manifest, ManifestStatus.FAILED, str(e))
        raise ConfigError(str(e)) from e
    except LabError as e:
        store.finalize(manifest, ManifestStatus.FAILED, str(e))
        raise
    store.finalize(manifest, ManifestStatus.COMPLETED)
    _print_manifest(manifest)
    return EXIT_OK


def cmd_compare(args: argparse.Namespace, store: RunStore) -> int:
    cfg = load_config(args.config)
    u0 = initial_profile(grid_for(cfg), cfg.equation.initial_data)
    manifest = store.create_manifest(cfg, data_hash(u0), kind="compare",
                                     run_id="compare-" + compute_run_id(cfg, data_hash(u0)))
    try:
        comparison = compare_variants(cfg, u0, args.jobs or settings.default_jobs)
    except LabError as e:
        store.finalize(manifest, ManifestStatus.FAILED, str(e))
        raise
    store.write_report(manifest, "compare.json", comparison)
    store.write_table(manifest, "compare.csv", [
        {"t": t, "l2_modified": a, "l2_classic": b, "dx_linf_modified": c, "dx_linf_classic": d, "distance": e}
        for t, a, b, c, d, e in zip(comparison.times, comparison.l2_modified, comparison.l2_classic,
                                    comparison.dx_linf_modified, comparison.dx_linf_classic, comparison.distance)
    ])
    store.finalize(manifest, ManifestStatus.COMPLETED)
    _print_manifest(manifest)
    return EXIT_OK


COMMANDS = {
    "run": cmd_run,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
    "kernel-study": cmd_kernel_study,
    "compare": cmd_compare,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level, args.log_format)
    if args.jobs is not None and args.jobs < 1:
        args.jobs = 1

    try:
        store = RunStore(args.out)
        return COMMANDS[args.command](args, store)
    except ConfigError as e:
        logger.error(f"Configuration error: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except (LabError, OSError) as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
