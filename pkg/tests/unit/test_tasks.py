"""
Tests for run and sweep execution into run directories
"""

import json
import shutil
import tempfile
from pathlib import Path
from unittest.mock import patch

import pandas as pd
import pytest

from app.evolve.solver import grid_for
from app.models.config_models import SweepConfig
from app.models.report_models import ManifestStatus
from app.models.run_models import RunStatus
from app.services.run_store import RunStore
from app.spectral.field import SpectralField
from app.spectral.profiles import initial_profile, single_mode
from app.tasks import epsilon_sweep, execute_run, perturbation_sweep, run_sweep


class TestExecuteRun:
    """Test single runs on disk"""

    def setup_method(self):
        self.temp_dir = tempfile.mkdtemp()
        self.store = RunStore(self.temp_dir)

    def teardown_method(self):
        shutil.rmtree(self.temp_dir, ignore_errors=True)

    def test_artifacts(self, small_config):
        u0 = initial_profile(grid_for(small_config), small_config.equation.initial_data)
        manifest, record = execute_run(small_config, u0, self.store, rho_target=1.0)
        run_dir = Path(self.temp_dir) / manifest.run_id
        assert manifest.status == ManifestStatus.COMPLETED
        assert record.completed
        for name in ["manifest.json", "series.csv", "energy.csv", "energy_audit.json", "diagnostics.json"]:
            assert (run_dir / name).exists(), name
        audit = json.loads((run_dir / "energy_audit.json").read_text())
        assert audit["inequality_holds"] is True
        diagnostics = json.loads((run_dir / "diagnostics.json").read_text())
        assert set(diagnostics) == {"energy", "ladder", "linf"}
        assert len(record.energy) == len(record.samples)

    def test_same_inputs_same_directory(self, small_config):
        u0 = initial_profile(grid_for(small_config), small_config.equation.initial_data)
        first, _ = execute_run(small_config, u0, self.store, diagnostics=False)
        second, _ = execute_run(small_config, u0, self.store, diagnostics=False)
        assert first.run_id == second.run_id

    def test_stepper_failure_recorded_in_manifest(self, small_config):
        cfg = small_config.updated(stepper={"cfl_limit": 1e-6})
        u0 = initial_profile(grid_for(cfg), cfg.equation.initial_data)
        manifest, record = execute_run(cfg, u0, self.store, diagnostics=False)
        assert record.status == RunStatus.CFL_VIOLATION
        assert manifest.status == ManifestStatus.CFL_VIOLATION
        assert manifest.error

    def test_exception_finalizes_failed(self, small_config):
        u0 = initial_profile(grid_for(small_config), small_config.equation.initial_data)
        with patch("app.tasks.run", side_effect=RuntimeError("disk full")):
            with pytest.raises(RuntimeError):
                execute_run(small_config, u0, self.store)
        manifests = [self.store.load_manifest(p.name) for p in Path(self.temp_dir).iterdir()]
        assert [m.status for m in manifests] == [ManifestStatus.FAILED]
        assert manifests[0].error == "disk full"


class TestSweeps:
    """Test sweep members and summaries"""

    def setup_method(self):
        self.temp_dir = tempfile.mkdtemp()
        self.store = RunStore(self.temp_dir)

    def teardown_method(self):
        shutil.rmtree(self.temp_dir, ignore_errors=True)

    def test_epsilon_sweep_adds_reference(self, small_config):
        u0 = initial_profile(grid_for(small_config), small_config.equation.initial_data)
        summaries, family = epsilon_sweep(small_config, [0.01, 0.1], u0, self.store)
        rows = family.rows
        assert [s["value"] for s in summaries] == [0.1, 0.01, 0.0]
        assert all(s["status"] == "completed" for s in summaries)
        assert [r.epsilon for r in rows] == [0.1, 0.01]
        assert rows[0].distance_to_next is not None
        assert rows[-1].distance_to_next is None
        assert rows[0].distance_to_zero > rows[1].distance_to_zero > 0.0
        assert family.monotone
        assert len(family.observed_rates) == 1

    def test_empty_epsilon_sweep(self, small_config):
        u0 = initial_profile(grid_for(small_config), small_config.equation.initial_data)
        summaries, family = epsilon_sweep(small_config, [], u0, self.store)
        assert summaries == []
        assert family.rows == []

    def test_perturbation_sweep(self, small_config):
        grid = grid_for(small_config)
        u0 = initial_profile(grid, small_config.equation.initial_data)
        summaries, rows = perturbation_sweep(small_config, [1e-4, 1e-5], u0, single_mode(grid, 3, 1.0))
        assert [s["status"] for s in summaries] == ["completed", "completed"]
        assert len(rows) == 2
        assert rows[1]["expected_ratio"] == pytest.approx(0.1)
        assert rows[1]["ratio_to_previous"] == pytest.approx(0.1, rel=1e-3)

    def test_run_sweep_writes_summary(self, small_config):
        sweep_cfg = SweepConfig.model_validate({
            "base": small_config.model_dump(mode="json"),
            "sweep": {"kind": "epsilon", "values": [0.1]},
        })
        results = run_sweep(sweep_cfg, self.store, jobs=2)
        manifest = results["manifest"]
        assert manifest.run_id.startswith("sweep-")
        assert manifest.status == ManifestStatus.COMPLETED
        assert results["members_failed"] == 0
        summary = pd.read_csv(Path(self.temp_dir) / manifest.run_id / "summary.csv")
        assert summary["value"].tolist() == [0.1, 0.0]
        assert (Path(self.temp_dir) / manifest.run_id / "cauchy_distances.csv").exists()
        family = json.loads((Path(self.temp_dir) / manifest.run_id / "epsilon_family.json").read_text())
        assert family["monotone"] is True
        assert [r["epsilon"] for r in family["rows"]] == [0.1]

    def test_failed_members_are_recorded(self, small_config):
        sweep_cfg = SweepConfig.model_validate({
            "base": small_config.model_dump(mode="json"),
            "sweep": {"kind": "epsilon", "values": [0.1]},
        })
        with patch("app.tasks.execute_run", side_effect=RuntimeError("member crashed")):
            results = run_sweep(sweep_cfg, self.store)
        assert results["members_failed"] == 2
        assert results["manifest"].status == ManifestStatus.FAILED
        assert all(m["error"] == "member crashed" for m in results["members"])

    def test_perturbation_run_sweep(self, small_config):
        sweep_cfg = SweepConfig.model_validate({
            "base": small_config.model_dump(mode="json"),
            "sweep": {"kind": "perturbation", "values": [1e-4],
                      "perturbation": {"profile": "gaussian", "amplitude": 1.0, "width": 2.0}},
        })
        u0 = initial_profile(grid_for(small_config), small_config.equation.initial_data)
        results = run_sweep(sweep_cfg, self.store, u0=u0)
        assert results["members_failed"] == 0
        assert (Path(self.temp_dir) / results["manifest"].run_id / "linear_response.csv").exists()
