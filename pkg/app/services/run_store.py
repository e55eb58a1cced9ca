"""
Run Store Service

File-based persistence for run directories: manifests, CSV series,
JSON reports, snapshots and checkpoints. Each run owns one directory
under the output root, named by its run id.
"""

import hashlib
import json
import logging
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np
import pandas as pd
from pydantic import BaseModel

from ..config import settings
from ..exceptions import ManifestError
from ..models.config_models import SolverConfig
from ..models.report_models import ManifestStatus, RunManifest
from ..models.run_models import RunRecord
from ..spectral.field import SpectralField
from ..utils.paths import safe_join, validate_artifact_name

logger = logging.getLogger(__name__)

MANIFEST_NAME = "manifest.json"
SERIES_NAME = "series.csv"


def canonical_json(data: Any) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"), default=str)


def data_hash(field: Optional[SpectralField]) -> str:
    """sha256 of the float64 little-endian samples; empty for no data"""
    if field is None:
        return ""
    return hashlib.sha256(np.ascontiguousarray(field.samples, dtype="<f8").tobytes()).hexdigest()


def _file_digest(path: str) -> str:
    try:
        return "sha256:" + hashlib.sha256(Path(path).read_bytes()).hexdigest()
    except OSError:
        return Path(path).name


def _pin_file_profiles(data: Any) -> Any:
    """File profiles hash by content, so the id does not depend on where the file lives"""
    if isinstance(data, dict):
        pinned = {k: _pin_file_profiles(v) for k, v in data.items()}
        if pinned.get("profile") == "file" and pinned.get("path"):
            pinned["path"] = _file_digest(pinned["path"])
        return pinned
    if isinstance(data, list):
        return [_pin_file_profiles(v) for v in data]
    return data


def compute_run_id(config: Union[SolverConfig, Dict[str, Any]], data_digest: str = "") -> str:
    """Content hash of the canonical configuration JSON plus the data hash"""
    payload = config.model_dump(mode="json") if isinstance(config, BaseModel) else config
    digest = hashlib.sha256()
    digest.update(canonical_json(_pin_file_profiles(payload)).encode("utf-8"))
    digest.update(data_digest.encode("utf-8"))
    return digest.hexdigest()[:16]


class RunStore:
    """Manages run directories under the output root"""

    def __init__(self, base_dir: Optional[Union[str, Path]] = None):
        self.base_dir = settings.get_output_path(str(base_dir) if base_dir else None)

    def run_dir(self, run_id: str, *parts: str) -> Path:
        path = safe_join(self.base_dir, run_id, *parts)
        path.mkdir(parents=True, exist_ok=True)
        return path

    def artifact_path(self, manifest: RunManifest, name: str) -> Path:
        return safe_join(self.base_dir, manifest.run_id, validate_artifact_name(name))

    # Manifest lifecycle

    def create_manifest(
        self,
        config: Union[SolverConfig, Dict[str, Any]],
        data_digest: str = "",
        kind: str = "run",
        run_id: Optional[str] = None,
    ) -> RunManifest:
        """Write a RUNNING manifest before any work starts"""
        payload = config.model_dump(mode="json") if isinstance(config, BaseModel) else dict(config)
        run_id = run_id or compute_run_id(payload, data_digest)
        manifest = RunManifest(run_id=run_id, kind=kind, config=payload)
        path = self.run_dir(run_id) / MANIFEST_NAME
        if path.exists():
            logger.info(f"Replacing manifest of run {run_id}")
        self.save_manifest(manifest)
        logger.info(f"Created manifest for {kind} {run_id}")
        return manifest

    def save_manifest(self, manifest: RunManifest) -> Path:
        path = self.run_dir(manifest.run_id) / MANIFEST_NAME
        path.write_text(manifest.model_dump_json(indent=2))
        return path

    def load_manifest(self, run_id: str) -> Optional[RunManifest]:
        path = safe_join(self.base_dir, run_id, MANIFEST_NAME)
        if not path.exists():
            return None
        return RunManifest.model_validate_json(path.read_text())

    def finalize(self, manifest: RunManifest, status: ManifestStatus, error: Optional[str] = None) -> RunManifest:
        """
        Close a manifest with its final status

        Raises:
            ManifestError: If the manifest was already finalized
        """
        if manifest.finalized:
            raise ManifestError(f"manifest {manifest.run_id} was already finalized as {manifest.status.value}")
        manifest.status = ManifestStatus(status)
        manifest.error = error
        manifest.finalized_at = datetime.utcnow()
        self.save_manifest(manifest)
        logger.info(f"Finalized {manifest.kind} {manifest.run_id}: {manifest.status.value}")
        return manifest

    # Artifacts

    def snapshot_dir(self, manifest: RunManifest) -> Path:
        return self.run_dir(manifest.run_id, "snapshots")

    def checkpoint_dir(self, manifest: RunManifest) -> Path:
        return self.run_dir(manifest.run_id, "checkpoints")

    def write_series(self, manifest: RunManifest, record: RunRecord) -> Path:
        """Sample table as CSV with full float precision"""
        columns = record.samples[0].csv_columns() if record.samples else ["t", "l2", "n", "linf"]
        frame = pd.DataFrame([s.csv_row() for s in record.samples], columns=columns)
        path = self.artifact_path(manifest, SERIES_NAME)
        frame.to_csv(path, index=False, float_format=settings.series_float_format)
        manifest.series_path = str(path)
        manifest.snapshot_paths = list(record.snapshot_paths)
        return path

    def write_table(self, manifest: RunManifest, name: str, rows: Sequence[Union[BaseModel, Dict[str, Any]]]) -> Path:
        """List of models or dicts as one CSV"""
        records = [r.model_dump(mode="json") if isinstance(r, BaseModel) else dict(r) for r in rows]
        path = self.artifact_path(manifest, name)
        pd.DataFrame.from_records(records).to_csv(path, index=False, float_format=settings.series_float_format)
        manifest.report_paths.append(str(path))
        return path

    def write_report(self, manifest: RunManifest, name: str, report: Union[BaseModel, Dict[str, Any], List[Any]]) -> Path:
        """JSON report next to the manifest"""
        path = self.artifact_path(manifest, name)
        if isinstance(report, BaseModel):
            path.write_text(report.model_dump_json(indent=2))
        else:
            path.write_text(json.dumps(_jsonable(report), indent=2, default=str))
        manifest.report_paths.append(str(path))
        return path


def _jsonable(value: Any) -> Any:
    if isinstance(value, BaseModel):
        return value.model_dump(mode="json")
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


# Singleton instance
_run_store: Optional[RunStore] = None


def get_run_store(base_dir: Optional[Union[str, Path]] = None) -> RunStore:
    """Get or create the run store; an explicit base_dir replaces the current one"""
    global _run_store
    if _run_store is None or base_dir is not None:
        _run_store = RunStore(base_dir)
    return _run_store
