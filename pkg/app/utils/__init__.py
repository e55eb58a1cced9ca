"""
Utils package for shared utility functions
"""

from .logging_config import configure_logging, log_measurement
from .parallel import gather_members, map_members
from .paths import OutputPathError, safe_join, validate_artifact_name

__all__ = [
    "configure_logging",
    "log_measurement",
    "gather_members",
    "map_members",
    "OutputPathError",
    "safe_join",
    "validate_artifact_name",
]
