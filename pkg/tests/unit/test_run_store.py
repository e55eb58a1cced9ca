"""
Tests for the run store: run ids, manifest lifecycle and artifacts
"""

import json
import shutil
import tempfile
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from app.evolve.solver import grid_for, run
from app.exceptions import ManifestError
from app.models.report_models import ManifestStatus
from app.models.run_models import EnergyBudget
from app.services.config_loader import load_config
from app.services.run_store import RunStore, compute_run_id, data_hash, get_run_store
from app.spectral.profiles import initial_profile, single_mode
from app.utils.paths import OutputPathError


class TestRunIds:
    """Test content-hash run ids"""

    def test_deterministic(self, small_config):
        assert compute_run_id(small_config, "abc") == compute_run_id(small_config, "abc")
        assert len(compute_run_id(small_config)) == 16

    def test_config_and_data_change_id(self, small_config):
        base = compute_run_id(small_config, "abc")
        assert compute_run_id(small_config, "abd") != base
        assert compute_run_id(small_config.updated(stepper={"dt": 0.01}), "abc") != base

    def test_dict_and_model_agree(self, small_config):
        assert compute_run_id(small_config.model_dump(mode="json")) == compute_run_id(small_config)

    def test_file_profile_id_independent_of_location(self):
        """Test one config and data file copied to two checkouts share a run id"""
        temp_dir = tempfile.mkdtemp()
        try:
            ids = []
            for name, value in (("first", 0.1), ("second", 0.1), ("changed", 0.2)):
                checkout = Path(temp_dir) / name
                checkout.mkdir()
                np.save(checkout / "u0.npy", np.full(64, value))
                (checkout / "run.yaml").write_text(
                    "grid:\n  n_points: 64\n"
                    "equation:\n  initial_data:\n    profile: file\n    path: u0.npy\n"
                )
                cfg = load_config(checkout / "run.yaml")
                ids.append(compute_run_id(cfg, data_hash(initial_profile(grid_for(cfg), cfg.equation.initial_data))))
            assert ids[0] == ids[1]
            assert ids[2] != ids[0]
        finally:
            shutil.rmtree(temp_dir, ignore_errors=True)

    def test_data_hash(self, grid):
        a = single_mode(grid, 2, 0.1)
        assert data_hash(a) == data_hash(single_mode(grid, 2, 0.1))
        assert data_hash(a) != data_hash(single_mode(grid, 2, 0.2))
        assert data_hash(None) == ""


class TestRunStore:
    """Test manifests and artifacts on disk"""

    def setup_method(self):
        self.temp_dir = tempfile.mkdtemp()
        self.store = RunStore(self.temp_dir)

    def teardown_method(self):
        shutil.rmtree(self.temp_dir, ignore_errors=True)

    def test_manifest_lifecycle(self, small_config):
        manifest = self.store.create_manifest(small_config, "abc")
        assert manifest.status == ManifestStatus.RUNNING
        assert manifest.run_id == compute_run_id(small_config, "abc")

        loaded = self.store.load_manifest(manifest.run_id)
        assert loaded.status == ManifestStatus.RUNNING
        assert loaded.config == small_config.model_dump(mode="json")

        self.store.finalize(manifest, ManifestStatus.RESOLUTION_LOST, "tail too large")
        loaded = self.store.load_manifest(manifest.run_id)
        assert loaded.status == ManifestStatus.RESOLUTION_LOST
        assert loaded.error == "tail too large"
        assert loaded.finalized

    def test_double_finalize(self, small_config):
        manifest = self.store.create_manifest(small_config)
        self.store.finalize(manifest, ManifestStatus.COMPLETED)
        with pytest.raises(ManifestError):
            self.store.finalize(manifest, ManifestStatus.FAILED)

    def test_missing_manifest(self):
        assert self.store.load_manifest("0000000000000000") is None

    def test_explicit_run_id_and_kind(self):
        manifest = self.store.create_manifest({"suite": "symbols"}, kind="verify", run_id="verify-1")
        assert (Path(self.temp_dir) / "verify-1" / "manifest.json").exists()
        assert self.store.load_manifest("verify-1").kind == "verify"

    def test_write_series_full_precision(self, small_config):
        record = run(small_config, initial_profile(grid_for(small_config), small_config.equation.initial_data))
        manifest = self.store.create_manifest(small_config)
        path = self.store.write_series(manifest, record)
        frame = pd.read_csv(path)
        assert list(frame.columns) == record.samples[0].csv_columns()
        assert len(frame) == len(record.samples)
        assert np.allclose(frame["l2"].to_numpy(), record.series("l2"), rtol=1e-15, atol=0.0)
        assert manifest.series_path == str(path)

    def test_write_table_and_report(self, small_config):
        manifest = self.store.create_manifest(small_config)
        rows = [EnergyBudget(t=0.0, kinetic=1.0, dissipation_n=0.0, dissipation_eps=0.0, residual=0.0),
                {"t": 0.1, "kinetic": 0.9, "dissipation_n": 0.1, "dissipation_eps": 0.0, "residual": 0.0}]
        table = self.store.write_table(manifest, "energy.csv", rows)
        assert pd.read_csv(table)["kinetic"].tolist() == [1.0, 0.9]

        report = self.store.write_report(manifest, "extra.json", {"values": [1, 2], "nested": rows[0]})
        data = json.loads(report.read_text())
        assert data["nested"]["kinetic"] == 1.0
        assert manifest.report_paths == [str(table), str(report)]

    def test_unsafe_artifact_name(self, small_config):
        manifest = self.store.create_manifest(small_config)
        with pytest.raises(OutputPathError):
            self.store.write_report(manifest, "../escape.json", {})

    def test_get_run_store(self):
        store = get_run_store(self.temp_dir)
        assert store.base_dir == Path(self.temp_dir).resolve()
        assert get_run_store() is store
