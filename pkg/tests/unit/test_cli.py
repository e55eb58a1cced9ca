"""
Tests for the command-line entry point
"""

import json
import logging
import shutil
import tempfile
from pathlib import Path
from unittest.mock import patch

import pandas as pd
import pytest

from app.main import EXIT_CONFIG, EXIT_FAILED, EXIT_OK, build_parser, main
from app.models.report_models import SuiteReport

SMALL_RUN = """
grid:
  n_points: 64
  half_length: 8pi
equation:
  initial_data:
    profile: sech2
    amplitude: 0.1
    width: 4.0
stepper:
  dt: 0.02
  t_end: 0.2
output:
  snapshot_stride: 2
  checkpoint_stride: 5
"""


class TestParser:
    """Test argument parsing"""

    def test_global_flags(self):
        args = build_parser().parse_args(["--out", "/tmp/x", "--seed", "3", "--jobs", "2", "verify", "norms"])
        assert args.out == "/tmp/x"
        assert args.seed == 3
        assert args.jobs == 2
        assert args.suite == "norms"

    def test_verify_defaults_to_all(self):
        assert build_parser().parse_args(["verify"]).suite == "all"

    def test_kernel_study_defaults(self):
        args = build_parser().parse_args(["kernel-study"])
        assert args.symbol == "quartic"
        assert args.orders == [1.0, 1.5, 2.0]
        assert args.norm == "l2"

    def test_unknown_suite_exits(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(["verify", "everything"])


class TestCommands:
    """Test commands end to end in a temporary output root"""

    def setup_method(self):
        self.temp_dir = tempfile.mkdtemp()
        self.out = str(Path(self.temp_dir) / "runs")
        self.config = Path(self.temp_dir) / "run.yaml"
        self.config.write_text(SMALL_RUN)

    def teardown_method(self):
        shutil.rmtree(self.temp_dir, ignore_errors=True)
        logging.getLogger().handlers.clear()

    def cli(self, *args):
        return main(["--out", self.out, "--log-format", "text", *args])

    def test_run(self, capsys):
        assert self.cli("run", "--config", str(self.config), "--rho", "1.0") == EXIT_OK
        manifest = json.loads(capsys.readouterr().out)
        run_dir = Path(self.out) / manifest["run_id"]
        assert manifest["status"] == "completed"
        assert (run_dir / "series.csv").exists()
        assert len(list((run_dir / "snapshots").glob("snapshot_*.npz"))) == 6
        assert len(list((run_dir / "checkpoints").glob("checkpoint_*.npz"))) == 2

    def test_resume(self, capsys):
        assert self.cli("run", "--config", str(self.config), "--rho", "1.0") == EXIT_OK
        first = json.loads(capsys.readouterr().out)
        assert self.cli("run", "--config", str(self.config), "--rho", "1.0", "--resume") == EXIT_OK
        resumed = json.loads(capsys.readouterr().out)
        assert resumed["run_id"] == first["run_id"]
        assert resumed["status"] == "completed"

    def test_resume_without_checkpoint(self):
        assert self.cli("run", "--config", str(self.config), "--resume") == EXIT_CONFIG

    def test_invalid_config(self, capsys):
        self.config.write_text("grid:\n  n_points: 63\n")
        assert self.cli("run", "--config", str(self.config)) == EXIT_CONFIG
        assert "grid.n_points" in capsys.readouterr().err

    def test_missing_config(self):
        assert self.cli("run", "--config", str(Path(self.temp_dir) / "absent.yaml")) == EXIT_CONFIG

    def test_empty_sweep(self, capsys):
        sweep = Path(self.temp_dir) / "sweep.yaml"
        sweep.write_text("base:\n  grid:\n    n_points: 64\nsweep:\n  kind: epsilon\n  values: []\n")
        assert self.cli("sweep", "--config", str(sweep)) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["status"] == "completed"

    def test_verify_symbols(self, capsys):
        assert self.cli("--seed", "5", "verify", "symbols") == EXIT_OK
        manifest = json.loads(capsys.readouterr().out)
        run_dir = Path(self.out) / manifest["run_id"]
        assert manifest["run_id"].startswith("verify-")
        checks = pd.read_csv(run_dir / "checks.csv")
        assert checks["passed"].all()
        assert json.loads((run_dir / "verification.json").read_text())[0]["suite"] == "symbols"

    def test_verify_failure_exit_code(self, capsys):
        failing = SuiteReport(suite="norms", passed=False, total_checks=1, passed_checks=0,
                              failed_checks=1, results=[])
        with patch("app.main.run_verification", return_value=[failing]):
            assert self.cli("verify", "norms") == EXIT_FAILED
        assert json.loads(capsys.readouterr().out)["status"] == "failed"

    def test_kernel_study(self, capsys):
        code = self.cli("kernel-study", "--orders", "1.0", "--times", "1e-4", "1e-1", "5")
        assert code == EXIT_OK
        manifest = json.loads(capsys.readouterr().out)
        table = pd.read_csv(Path(self.out) / manifest["run_id"] / "kernel_study.csv")
        assert len(table) == 5

    def test_kernel_study_bad_times(self):
        assert self.cli("kernel-study", "--times", "1e-1", "1e-3", "5") == EXIT_CONFIG

    def test_compare(self, capsys):
        assert self.cli("compare", "--config", str(self.config)) == EXIT_OK
        manifest = json.loads(capsys.readouterr().out)
        assert manifest["run_id"].startswith("compare-")
        table = pd.read_csv(Path(self.out) / manifest["run_id"] / "compare.csv")
        assert table["distance"].iloc[0] == pytest.approx(0.0, abs=1e-12)

    def test_kernel_study_under_resolved(self, capsys):
        code = self.cli("kernel-study", "--config", str(self.config), "--times", "1e-4", "1e-1", "5")
        assert code == EXIT_FAILED
        assert "Nyquist" in capsys.readouterr().err

    def test_kernel_study_short_span(self):
        assert self.cli("kernel-study", "--times", "1e-2", "1e-1", "5") == EXIT_CONFIG
