"""Services package for the spectral lab"""

from .config_loader import dump_config, load_config, load_sweep_config, parse_config_text
from .run_store import RunStore, compute_run_id, data_hash, get_run_store

__all__ = [
    "dump_config",
    "load_config",
    "load_sweep_config",
    "parse_config_text",
    "RunStore",
    "compute_run_id",
    "data_hash",
    "get_run_store",
]
