"""
Configuration Loader

Reads run and sweep YAML files into the pydantic config models. Syntax
errors carry line and column; validation errors carry the dotted field
path and, when the key is present in the file, its line.
"""

import logging
from pathlib import Path
from typing import Any, Optional, Sequence, Type, TypeVar, Union

import yaml
from pydantic import BaseModel, ValidationError

from ..exceptions import ConfigError
from ..models.config_models import InitialData, ProfileKind, SolverConfig, SweepConfig

logger = logging.getLogger(__name__)

M = TypeVar('M', bound=BaseModel)


def _node_line(node: Optional[yaml.Node], loc: Sequence[Union[str, int]]) -> Optional[int]:
    """1-based line of the deepest node along loc that exists in the document"""
    line = None
    for key in loc:
        if isinstance(node, yaml.MappingNode):
            match = next((v for k, v in node.value if k.value == str(key)), None)
            if match is None:
                break
            line = next(k for k, v in node.value if v is match).start_mark.line + 1
            node = match
        elif isinstance(node, yaml.SequenceNode) and isinstance(key, int) and key < len(node.value):
            node = node.value[key]
            line = node.start_mark.line + 1
        else:
            break
    return line


def _format_validation_error(error: ValidationError, root: Optional[yaml.Node], source: str) -> str:
    messages = []
    for item in error.errors():
        loc = [part for part in item["loc"] if not isinstance(part, str) or not part.startswith("function-")]
        path = ".".join(str(part) for part in loc) or "<root>"
        line = _node_line(root, loc)
        where = f"{source}:{line}" if line else source
        messages.append(f"{where}: {path}: {item['msg']}")
    return "; ".join(messages)


def parse_config_text(text: str, model: Type[M] = SolverConfig, source: str = "<config>") -> M:
    """
    Parse YAML text into a config model

    Raises:
        ConfigError: With line/column for syntax errors or field paths for invalid values
    """
    try:
        data = yaml.safe_load(text)
        root = yaml.compose(text)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        if mark is not None:
            raise ConfigError(
                f"{source}:{mark.line + 1}:{mark.column + 1}: {getattr(e, 'problem', None) or e}"
            ) from e
        raise ConfigError(f"{source}: {e}") from e

    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError(f"{source}: top level must be a mapping, got {type(data).__name__}")

    try:
        return model.model_validate(data)
    except ValidationError as e:
        raise ConfigError(_format_validation_error(e, root, source)) from e


def _resolve_profile(descriptor: InitialData, base_dir: Path) -> InitialData:
    if descriptor.profile != ProfileKind.FILE or descriptor.path is None:
        return descriptor
    path = Path(descriptor.path).expanduser()
    if not path.is_absolute():
        path = (base_dir / path).resolve()
    return descriptor.model_copy(update={"path": str(path)})


def _resolve_paths(config: Any, base_dir: Path) -> Any:
    """File profiles given relative to the config file's directory"""
    if isinstance(config, SolverConfig):
        equation = config.equation.model_copy(
            update={"initial_data": _resolve_profile(config.equation.initial_data, base_dir)}
        )
        return config.model_copy(update={"equation": equation})
    if isinstance(config, SweepConfig):
        sweep = config.sweep.model_copy(
            update={"perturbation": _resolve_profile(config.sweep.perturbation, base_dir)}
        )
        return config.model_copy(update={"base": _resolve_paths(config.base, base_dir), "sweep": sweep})
    return config


def load_config(path: Union[str, Path], model: Type[M] = SolverConfig) -> M:
    """
    Load a run (or sweep) configuration file

    Raises:
        ConfigError: If the file is missing, unreadable or invalid
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise ConfigError(f"{path}: cannot read configuration: {e}") from e
    config = parse_config_text(text, model, source=str(path))
    logger.info(f"Loaded {model.__name__} from {path}")
    return _resolve_paths(config, path.parent.resolve())


def load_sweep_config(path: Union[str, Path]) -> SweepConfig:
    return load_config(path, SweepConfig)


def dump_config(config: BaseModel) -> str:
    """YAML text that parses back to an equal model"""
    return yaml.safe_dump(config.model_dump(mode="json"), sort_keys=False)
