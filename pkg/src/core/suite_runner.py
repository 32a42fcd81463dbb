"""
Check execution for the verification suites shared by the CLI and the HTTP surface
"""
import logging
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Union

from ..api.models import CheckModel, Report

logger = logging.getLogger(__name__)


class CheckStatus(Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIP = "skip"


@dataclass
class CheckResult:
    """Result of one check within a suite run"""
    name: str
    paper_anchor: str
    status: CheckStatus
    details: Dict[str, Any] = field(default_factory=dict)
    elapsed_ms: int = 0

    def to_model(self, record_timings: bool = False) -> CheckModel:
        return CheckModel(
            name=self.name,
            paper_anchor=self.paper_anchor,
            status=self.status.value,
            details=self.details,
            elapsed_ms=self.elapsed_ms if record_timings else 0,
        )


# A check body returns either a flag, or a flag with details.
CheckOutcome = Union[bool, tuple]


class SuiteRunner:
    """
    Runs named checks in order, timing each and turning exceptions into
    failed checks so one broken check never stops the suite.
    """

    def __init__(self, command: str, parameters: Dict[str, Any], record_timings: bool = False):
        self.command = command
        self.parameters = parameters
        self.record_timings = record_timings
        self.results: List[CheckResult] = []

    def check(self, name: str, paper_anchor: str, body: Callable[[], CheckOutcome]) -> CheckResult:
        """
        Run one check body and record its outcome
        """
        start_time = time.perf_counter()
        try:
            outcome = body()
            if isinstance(outcome, tuple):
                passed, details = outcome
            else:
                passed, details = outcome, {}
            details = jsonable(details)
            status = CheckStatus.PASS if passed else CheckStatus.FAIL
        except Exception as e:
            logger.error(f"Check '{name}' raised: {str(e)}")
            status = CheckStatus.FAIL
            details = {"error": f"{type(e).__name__}: {e}"}
        elapsed_ms = int((time.perf_counter() - start_time) * 1000)
        result = CheckResult(name, paper_anchor, status, details, elapsed_ms)
        self.results.append(result)
        logger.info(f"[{status.value}] {paper_anchor}: {name} ({elapsed_ms} ms)")
        return result

    def skip(self, name: str, paper_anchor: str, reason: str) -> CheckResult:
        result = CheckResult(name, paper_anchor, CheckStatus.SKIP, {"reason": reason})
        self.results.append(result)
        logger.info(f"[skip] {paper_anchor}: {name} ({reason})")
        return result

    def extend(self, other: "SuiteRunner") -> None:
        self.results.extend(other.results)

    @property
    def passed(self) -> bool:
        return all(r.status is not CheckStatus.FAIL for r in self.results)

    def get_counts(self) -> Dict[str, int]:
        """
        Get count of checks by status
        """
        counts = {status.value: 0 for status in CheckStatus}
        for result in self.results:
            counts[result.status.value] += 1
        return counts

    def report(self) -> Report:
        return Report(
            command=self.command,
            parameters=self.parameters,
            checks=[r.to_model(self.record_timings) for r in self.results],
        )

    def render_text(self) -> str:
        lines = [f"{self.command}: " + ", ".join(f"{k}={v}" for k, v in self.parameters.items())]
        for result in self.results:
            lines.append(f"  [{result.status.value.upper():4}] {result.paper_anchor}: {result.name}")
            for key, value in result.details.items():
                lines.append(f"         {key}: {_render_value(value)}")
        counts = self.get_counts()
        lines.append(f"{counts['pass']} passed, {counts['fail']} failed, {counts['skip']} skipped")
        return "\n".join(lines)


def _render_value(value: Any) -> str:
    if isinstance(value, list):
        return "[" + ", ".join(_render_value(v) for v in value) + "]"
    if isinstance(value, dict):
        return "{" + ", ".join(f"{k}: {_render_value(v)}" for k, v in value.items()) + "}"
    return str(value)


def jsonable(value: Any) -> Any:
    """Fractions and tuples rendered for JSON details."""
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    return str(value)


def optional_param(value: Optional[Any], default: Any) -> Any:
    return default if value is None else value
