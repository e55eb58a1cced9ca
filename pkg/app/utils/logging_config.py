"""
Logging setup shared by the CLI and worker threads.
"""

import logging
from typing import Optional

from pythonjsonlogger import jsonlogger

TEXT_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
JSON_FORMAT = '%(asctime)s %(name)s %(levelname)s %(message)s'


def configure_logging(level: str = "INFO", fmt: str = "json", stream=None) -> logging.Logger:
    """
    Configure the root logger once per process

    Args:
        level: Log level name
        fmt: "json" for python-json-logger records, "text" for plain lines
        stream: Optional stream for the handler (stderr by default)

    Returns:
        The configured root logger
    """
    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)

    handler = logging.StreamHandler(stream)
    if fmt == "json":
        handler.setFormatter(jsonlogger.JsonFormatter(JSON_FORMAT))
    else:
        handler.setFormatter(logging.Formatter(TEXT_FORMAT))

    root.addHandler(handler)
    root.setLevel(getattr(logging, level.upper(), logging.INFO))
    return root


def log_measurement(logger: logging.Logger, name: str, value: float, extra: Optional[dict] = None):
    """Log a measured constant with its name as structured fields"""
    fields = {"measurement": name, "value": value}
    if extra:
        fields.update(extra)
    logger.info(f"measured {name} = {value:.6g}", extra=fields)
