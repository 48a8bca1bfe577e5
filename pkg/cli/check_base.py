import logging
import time
from abc import ABC, abstractmethod
from dataclasses import asdict, dataclass
from enum import Enum
from typing import Any, Dict, Optional


class CheckStatus(Enum):
    PASS = "pass"
    FAIL = "fail"
    DOCUMENTED_OPEN = "documented-open"
    SKIPPED = "skipped"


class CheckLevel(Enum):
    FAST = "fast"
    FULL = "full"


@dataclass
class CheckResult:
    name: str
    anchor: str
    status: CheckStatus
    computed: Any = None
    reference: Any = None
    tolerance: Any = None
    detail: str = ""
    runtime: float = 0.0

    @property
    def failed(self) -> bool:
        return self.status is CheckStatus.FAIL

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["status"] = self.status.value
        return data


class VerifyCheck(ABC):
    """Base class for acceptance checks run by ``verify``"""

    level = CheckLevel.FAST
    order = 100

    def __init__(self, tol: Optional[float] = None):
        self.tol = tol
        self.logger = logging.getLogger(f"check.{self.get_name()}")

    @abstractmethod
    def get_name(self) -> str:
        """Return check name"""
        pass

    @abstractmethod
    def get_anchor(self) -> str:
        """Return the formula or property the check certifies"""
        pass

    @abstractmethod
    def evaluate(self) -> CheckResult:
        """Compute the check; may raise, which counts as a failure"""
        pass

    def result(self, passed: bool, computed: Any, reference: Any, tolerance: Any,
               detail: str = "") -> CheckResult:
        status = CheckStatus.PASS if passed else CheckStatus.FAIL
        return CheckResult(self.get_name(), self.get_anchor(), status, computed, reference,
                           tolerance, detail)

    def runs_at(self, level: CheckLevel) -> bool:
        return level is CheckLevel.FULL or self.level is CheckLevel.FAST

    def run(self, level: CheckLevel = CheckLevel.FAST) -> CheckResult:
        if not self.runs_at(level):
            return CheckResult(self.get_name(), self.get_anchor(), CheckStatus.SKIPPED,
                               detail="runs with --full only")
        start = time.perf_counter()
        try:
            outcome = self.evaluate()
        except Exception as e:
            self.logger.error("Check %s raised: %s", self.get_name(), e)
            outcome = CheckResult(self.get_name(), self.get_anchor(), CheckStatus.FAIL,
                                  detail=f"{type(e).__name__}: {e}")
        outcome.runtime = time.perf_counter() - start
        if outcome.failed:
            self.logger.error("FAIL %s: %s", outcome.name, outcome.detail or outcome.computed)
        else:
            self.logger.info("%s %s (%.2fs)", outcome.status.value, outcome.name, outcome.runtime)
        return outcome
