import importlib
import inspect
import logging
import pkgutil
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Type

from colorama import Fore, Style

from .check_base import CheckLevel, CheckResult, CheckStatus, VerifyCheck

CHECKS_PACKAGE = "cli.checks"

_STATUS_COLOURS = {
    CheckStatus.PASS: Fore.GREEN,
    CheckStatus.FAIL: Fore.RED,
    CheckStatus.DOCUMENTED_OPEN: Fore.YELLOW,
    CheckStatus.SKIPPED: Fore.CYAN,
}


@dataclass
class VerifyReport:
    level: CheckLevel
    results: List[CheckResult] = field(default_factory=list)

    @property
    def counts(self) -> Dict[str, int]:
        counts = {status.value: 0 for status in CheckStatus}
        for result in self.results:
            counts[result.status.value] += 1
        return counts

    @property
    def failed(self) -> bool:
        return any(result.failed for result in self.results)

    @property
    def exit_status(self) -> int:
        return 1 if self.failed else 0

    def to_dict(self) -> Dict[str, Any]:
        return {"level": self.level.value, "checks": [r.to_dict() for r in self.results],
                "summary": self.counts, "failed": self.failed}

    def text_summary(self, colour: bool = True) -> str:
        lines = []
        for result in self.results:
            label = result.status.value.upper()
            if colour:
                label = f"{_STATUS_COLOURS[result.status]}{label}{Style.RESET_ALL}"
            line = f"[{label}] {result.name} ({result.anchor})"
            if result.status is not CheckStatus.SKIPPED:
                line += f": computed={result.computed} reference={result.reference} tol={result.tolerance}"
            if result.detail:
                line += f" - {result.detail}"
            lines.append(line)
        totals = ", ".join(f"{count} {status}" for status, count in self.counts.items())
        lines.append(f"{len(self.results)} checks: {totals}")
        return "\n".join(lines)


class CheckManager:
    def __init__(self, level: CheckLevel = CheckLevel.FAST, tol: Optional[float] = None,
                 package: str = CHECKS_PACKAGE):
        self.level = level
        self.tol = tol
        self.package = package
        self.logger = logging.getLogger(__name__)
        self.checks: Dict[str, VerifyCheck] = {}

    def discover(self) -> List[Type[VerifyCheck]]:
        """Find every VerifyCheck subclass in the checks package"""
        package = importlib.import_module(self.package)
        classes = []
        for info in pkgutil.iter_modules(package.__path__):
            module_path = f"{self.package}.{info.name}"
            try:
                module = importlib.import_module(module_path)
            except ImportError as e:
                self.logger.error("Could not import check module %s: %s", module_path, e)
                continue
            for name, obj in inspect.getmembers(module):
                if (inspect.isclass(obj) and issubclass(obj, VerifyCheck) and obj is not VerifyCheck
                        and not inspect.isabstract(obj) and obj.__module__ == module.__name__):
                    classes.append(obj)
                    self.logger.debug("Found check class: %s", name)
        return classes

    def load_checks(self) -> Dict[str, VerifyCheck]:
        self.checks = {}
        for check_class in self.discover():
            try:
                check = check_class(self.tol)
            except Exception as e:
                self.logger.error("Error creating check %s: %s", check_class.__name__, e)
                continue
            if check.get_name() in self.checks:
                self.logger.warning("Duplicate check name %s, keeping the first", check.get_name())
                continue
            self.checks[check.get_name()] = check
        self.logger.info("Loaded %d checks", len(self.checks))
        return self.checks

    def ordered_checks(self) -> List[VerifyCheck]:
        return sorted(self.checks.values(), key=lambda c: (c.order, c.get_name()))

    def run_all(self) -> VerifyReport:
        if not self.checks:
            self.load_checks()
        report = VerifyReport(self.level)
        for check in self.ordered_checks():
            report.results.append(check.run(self.level))
        self.logger.info("Verify (%s): %s", self.level.value, report.counts)
        return report
