"""
Run and Sweep Tasks

Executes single runs into their run directories and fans sweep members out
over a bounded worker pool. Member failures are recorded per member; the
summary is written once every member has finished.
"""

from typing import Any, Dict, List, Optional, Tuple
import logging
import math
from datetime import datetime

from .config import settings
from .diagnostics.energy import energy_audit
from .diagnostics.orchestrator import run_diagnostics
from .diagnostics.stability import response_table, twin_run_stability
from .evolve.family import cauchy_table
from .evolve.snapshots import Checkpoint
from .evolve.solver import grid_for, run
from .models.config_models import SolverConfig, SweepConfig, SweepKind
from .models.report_models import EpsilonFamilyTable, ManifestStatus, RunManifest
from .models.run_models import RunRecord
from .services.run_store import RunStore, compute_run_id, data_hash
from .spectral.field import SpectralField
from .spectral.profiles import initial_profile
from .utils.parallel import map_members

logger = logging.getLogger(__name__)

SUMMARY_NAME = "summary.csv"
DEFAULT_RHO_TARGET = 2.0


def execute_run(
    cfg: SolverConfig,
    u0: Optional[SpectralField],
    store: RunStore,
    resume: Optional[Checkpoint] = None,
    diagnostics: bool = True,
    rho_target: float = DEFAULT_RHO_TARGET,
    run_id: Optional[str] = None,
) -> Tuple[RunManifest, RunRecord]:
    """
    One run into its own directory: manifest, series, snapshots, energy audit

    Args:
        cfg: Run configuration
        u0: Initial data (None when resuming)
        store: Run store for the output root
        resume: Checkpoint to continue from
        diagnostics: Also run the ladder and L-infinity monitors
        rho_target: Last exponent of the regularity ladder
        run_id: Existing run directory to write into (resume)

    Returns:
        (finalized manifest, run record)
    """
    digest = data_hash(u0) if u0 is not None else f"checkpoint:{resume.step if resume else 0}"
    manifest = store.create_manifest(cfg, digest, run_id=run_id)
    try:
        record = run(
            cfg,
            u0,
            snapshot_dir=store.snapshot_dir(manifest) if cfg.output.write_snapshots else None,
            checkpoint_dir=store.checkpoint_dir(manifest) if cfg.output.checkpoint_stride else None,
            resume=resume,
        )
        store.write_series(manifest, record)
        if record.samples:
            budget, audit = energy_audit(record)
            record.energy = budget
            store.write_table(manifest, "energy.csv", budget)
            store.write_report(manifest, "energy_audit.json", audit)
        if diagnostics and record.samples:
            state = run_diagnostics(record, rho_target=rho_target, run_id=manifest.run_id)
            store.write_report(manifest, "diagnostics.json", state.summary())
    except Exception as e:
        logger.error(f"Run {manifest.run_id} failed: {e}")
        store.finalize(manifest, ManifestStatus.FAILED, str(e))
        raise

    store.finalize(manifest, ManifestStatus(record.status.value), record.error)
    return manifest, record


def _member_summary(label: str, value: float, outcome: Any) -> Dict[str, Any]:
    if isinstance(outcome, BaseException):
        return {"member": label, "value": value, "run_id": "", "status": ManifestStatus.FAILED.value,
                "final_l2": math.nan, "error": str(outcome)}
    manifest, record = outcome
    final_l2 = float(record.samples[-1].l2) if record.samples else math.nan
    return {"member": label, "value": value, "run_id": manifest.run_id, "status": manifest.status.value,
            "final_l2": final_l2, "error": manifest.error or ""}


def epsilon_sweep(
    base: SolverConfig,
    values: List[float],
    u0: SpectralField,
    store: RunStore,
    jobs: int = 1,
) -> Tuple[List[Dict[str, Any]], EpsilonFamilyTable]:
    """
    One member per epsilon plus an eps = 0 reference

    Returns:
        (member summaries, Cauchy table over the completed members)
    """
    eps_values = sorted(set(float(v) for v in values), reverse=True)
    if not eps_values:
        return [], EpsilonFamilyTable(rows=[], monotone=True)
    members = eps_values if 0.0 in eps_values else eps_values + [0.0]
    configs = [base.updated(equation={"epsilon": e}) for e in members]
    outcomes = map_members(lambda cfg: execute_run(cfg, u0, store, diagnostics=False), configs, jobs)
    summaries = [_member_summary(f"eps={e:g}", e, o) for e, o in zip(members, outcomes)]

    completed = {
        e: o[1] for e, o in zip(members, outcomes)
        if not isinstance(o, BaseException) and o[1].completed
    }
    positive = [e for e in members if e > 0.0 and e in completed]
    table = cauchy_table(positive, [completed[e] for e in positive], completed.get(0.0))
    return summaries, table


def perturbation_sweep(
    base: SolverConfig,
    scales: List[float],
    u0: SpectralField,
    perturbation: SpectralField,
    jobs: int = 1,
) -> Tuple[List[Dict[str, Any]], List[Dict[str, Any]]]:
    """
    Twin runs per perturbation scale

    Returns:
        (member summaries, linear-response rows over the completed scales)
    """
    outcomes = map_members(lambda s: twin_run_stability(u0, perturbation * s, base), list(scales), jobs)
    summaries = []
    done: List[Tuple[float, Any]] = []
    for scale, outcome in zip(scales, outcomes):
        if isinstance(outcome, BaseException):
            summaries.append({"member": f"scale={scale:g}", "value": scale, "status": ManifestStatus.FAILED.value,
                              "max_difference": math.nan, "gronwall_k": math.nan, "error": str(outcome)})
            continue
        done.append((scale, outcome))
        summaries.append({"member": f"scale={scale:g}", "value": scale, "status": ManifestStatus.COMPLETED.value,
                          "max_difference": outcome.max_difference, "gronwall_k": outcome.gronwall_k, "error": ""})
    table = response_table(
        [s for s, _ in done],
        [r.max_difference for _, r in done],
        [r.below_envelope for _, r in done],
    )
    logger.info(f"perturbation sweep: {len(done)}/{len(scales)} scales completed, linear={table.linear}")
    return summaries, [r.model_dump() for r in table.rows]


def run_sweep(
    sweep_cfg: SweepConfig,
    store: RunStore,
    u0: Optional[SpectralField] = None,
    jobs: Optional[int] = None,
) -> Dict[str, Any]:
    """
    Execute every sweep member and write the summary

    Args:
        sweep_cfg: Base configuration and swept values
        store: Run store for the output root
        u0: Initial data (the base profile by default)
        jobs: Concurrent members (settings.default_jobs by default)

    Returns:
        Aggregated sweep results with the summary manifest
    """
    jobs = settings.default_jobs if jobs is None else jobs
    start_time = datetime.utcnow()
    base = sweep_cfg.base
    grid = grid_for(base)
    u0 = u0 if u0 is not None else initial_profile(grid, base.equation.initial_data)

    payload = sweep_cfg.model_dump(mode="json")
    manifest = store.create_manifest(payload, data_hash(u0), kind="sweep",
                                     run_id="sweep-" + compute_run_id(payload, data_hash(u0)))
    values = list(sweep_cfg.sweep.values)
    logger.info(f"Sweep {manifest.run_id}: {sweep_cfg.sweep.kind.value} over {values} with {jobs} jobs")

    if sweep_cfg.sweep.kind == SweepKind.EPSILON:
        summaries, family = epsilon_sweep(base, values, u0, store, jobs)
        table_name = "cauchy_distances.csv"
        table = [r.model_dump() for r in family.rows]
        if family.rows:
            store.write_report(manifest, "epsilon_family.json", family)
    else:
        perturbation = initial_profile(grid, sweep_cfg.sweep.perturbation)
        summaries, table = perturbation_sweep(base, values, u0, perturbation, jobs)
        table_name = "linear_response.csv"

    store.write_table(manifest, SUMMARY_NAME, summaries)
    if table:
        store.write_table(manifest, table_name, table)
    failed = sum(1 for s in summaries if s["status"] == ManifestStatus.FAILED.value)
    store.finalize(
        manifest,
        ManifestStatus.FAILED if summaries and failed == len(summaries) else ManifestStatus.COMPLETED,
        f"{failed} of {len(summaries)} members failed" if failed else None,
    )

    results = {
        "manifest": manifest,
        "members": summaries,
        "members_failed": failed,
        "table": table,
        "total_time_ms": (datetime.utcnow() - start_time).total_seconds() * 1000,
    }
    logger.info(
        f"Sweep completed in {results['total_time_ms']:.2f}ms: "
        f"{len(summaries) - failed} completed, {failed} failed"
    )
    return results
