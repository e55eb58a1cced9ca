"""
Output Path Utilities

Artifact names and output paths are validated so that every file a run,
sweep or verify command writes stays inside the output directory.
"""

import logging
from pathlib import Path
from typing import Union

from ..exceptions import LabError

logger = logging.getLogger(__name__)


class OutputPathError(LabError):
    """Raised when an artifact path would leave the output directory"""
    pass


class PathLimits:
    """Path validation constants"""

    DANGEROUS_PATTERNS = [
        "..",
        "~",
        "//",
        "\x00",
        "\r",
        "\n",
    ]

    DANGEROUS_COMPONENTS = {"..", ".", "~", ""}

    MAX_NAME_LENGTH = 255

    # run directory / member directory / snapshots / file
    MAX_DIRECTORY_DEPTH = 6


def validate_artifact_name(name: str) -> str:
    """
    Validate one artifact or directory name

    Args:
        name: File or directory name, no separators

    Returns:
        The name unchanged

    Raises:
        OutputPathError: If the name holds separators, traversal patterns or control characters
        ValueError: If the name is empty
    """
    if not name or not isinstance(name, str) or name.isspace():
        raise ValueError("Artifact name must be a non-empty string")
    if len(name) > PathLimits.MAX_NAME_LENGTH:
        raise OutputPathError(f"Artifact name too long: {len(name)} > {PathLimits.MAX_NAME_LENGTH}")
    for pattern in PathLimits.DANGEROUS_PATTERNS:
        if pattern in name:
            raise OutputPathError(f"Dangerous pattern {pattern!r} in artifact name: {name!r}")
    if "/" in name or "\\" in name:
        raise OutputPathError(f"Path separator in artifact name: {name!r}")
    if any(ord(char) < 32 for char in name):
        raise OutputPathError(f"Control characters in artifact name: {name!r}")
    return name


def safe_join(base_dir: Union[str, Path], *components: str) -> Path:
    """
    Join validated components under base_dir and check the result stays inside

    The base directory is created when missing.

    Raises:
        OutputPathError: If a component is unsafe or the result escapes base_dir
    """
    base_path = Path(base_dir).expanduser().resolve()
    base_path.mkdir(parents=True, exist_ok=True)

    target = base_path
    for component in components:
        for part in str(component).split("/"):
            if part in PathLimits.DANGEROUS_COMPONENTS:
                raise OutputPathError(f"Dangerous path component: {part!r}")
            target = target / validate_artifact_name(part)

    resolved = target.resolve()
    try:
        relative = resolved.relative_to(base_path)
    except ValueError:
        logger.warning(f"Rejected output path {resolved} outside {base_path}")
        raise OutputPathError(f"Resolved path {resolved} is outside the output directory {base_path}")

    if len(relative.parts) > PathLimits.MAX_DIRECTORY_DEPTH:
        raise OutputPathError(
            f"Directory depth {len(relative.parts)} exceeds maximum {PathLimits.MAX_DIRECTORY_DEPTH}"
        )
    return resolved
