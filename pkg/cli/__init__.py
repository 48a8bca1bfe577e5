"""Batch front end: run, sweep and verify"""

from .check_base import CheckLevel, CheckResult, CheckStatus, VerifyCheck
from .check_manager import CheckManager, VerifyReport
from .runner import (LIBRARY_VERSION, ExitStatus, RunOutcome, SweepOutcome, parse_axis, run_config,
                     sweep, worker_count)

__all__ = [
    "CheckLevel", "CheckManager", "CheckResult", "CheckStatus", "ExitStatus", "LIBRARY_VERSION",
    "RunOutcome", "SweepOutcome", "VerifyCheck", "VerifyReport", "parse_axis", "run_config", "sweep",
    "worker_count",
]
