"""Seeded selftest: runs the property suites and summarises them with pandas."""

from dataclasses import dataclass
from typing import List, Optional, TextIO

import pandas as pd

from checks.result import TestResult
from checks.suites import SUITES, SuiteContext, run_suites
from utils.config import DEFAULT_CAP, DEFAULT_SEED, GENERATOR_CAP, SELFTEST_BUDGET
from utils.logger import setup_logger

logger = setup_logger(__name__)

STATUSES = ("pass", "fail", "skip", "warn")


@dataclass
class SelftestReport:
    result: TestResult
    context: SuiteContext
    table: pd.DataFrame
    paths: pd.DataFrame

    @property
    def ok(self) -> bool:
        return self.result.failed == 0

    def to_text(self) -> str:
        lines = [f"selftest seed={self.context.seed} budget={self.context.budget} "
                 f"cap={self.context.cap}", "", self.table.to_string()]
        if self.context.skips:
            lines += ["", "cap/limit skips: " + ", ".join(
                f"{name}={count}" for name, count in sorted(self.context.skips.items()))]
        if not self.paths.empty:
            lines += ["", "generated instances:", self.paths.to_string(index=False)]
        return "\n".join(lines)


def summarize(result: TestResult) -> pd.DataFrame:
    """Counts per suite and status, suites in run order."""
    frame = pd.DataFrame([{"suite": r.suite, "status": r.status} for r in result.records],
                         columns=["suite", "status"])
    order = list(dict.fromkeys(frame["suite"]))
    table = (pd.crosstab(frame["suite"], frame["status"])
             .reindex(index=order, columns=list(STATUSES), fill_value=0))
    table.index.name = "suite"
    table.columns.name = None
    return table


def run_selftest(seed: int = DEFAULT_SEED,
                 budget: int = SELFTEST_BUDGET,
                 cap: int = DEFAULT_CAP,
                 stream: Optional[TextIO] = None,
                 suites: Optional[List[str]] = None,
                 generator_cap: int = GENERATOR_CAP) -> SelftestReport:
    """Run the property suites with a fixed seed.

    Args:
        seed: Base seed; each suite derives its own stream from it
        budget: Scales the number of random instances per suite
        cap: Monoid cap for random instances
        stream: Where the per-check listing goes; None silences it
        suites: Suite names to run, all of them by default
        generator_cap: Monoid cap for generated hardness instances

    Returns:
        SelftestReport whose `ok` is False when any check failed
    """
    if budget < 1:
        raise ValueError("selftest budget must be at least 1")
    result = TestResult(stream=stream, quiet=stream is None)
    context = SuiteContext(seed=seed, budget=budget, cap=cap, generator_cap=generator_cap)
    logger.info(f"Selftest: suites={','.join(suites or SUITES)} seed={seed} budget={budget}")
    run_suites(result, context, suites)
    result.print_summary()
    paths = pd.DataFrame(context.paths,
                         columns=["kind", "system", "n", "path", "expected", "status"])
    report = SelftestReport(result, context, summarize(result), paths)
    logger.info(f"Selftest finished: {result.passed} passed, {result.failed} failed, "
                f"{result.skipped} skipped, {result.warnings} warnings")
    return report
