"""
Property suites driven by the verify subcommand.
"""

from .suites import SuiteName, VerificationRunner, desk_config, run_verification

__all__ = [
    "SuiteName",
    "VerificationRunner",
    "desk_config",
    "run_verification",
]
