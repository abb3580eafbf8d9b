"""Test-result tracking shared by the test scripts and the selftest suites."""

import sys
from dataclasses import dataclass
from typing import List, Optional, TextIO, Tuple


class Colors:
    """ANSI color codes for terminal output."""
    GREEN = '\033[92m'
    RED = '\033[91m'
    YELLOW = '\033[93m'
    BLUE = '\033[94m'
    BOLD = '\033[1m'
    END = '\033[0m'


class _Plain:
    GREEN = RED = YELLOW = BLUE = BOLD = END = ''


@dataclass(frozen=True)
class Record:
    suite: str
    name: str
    status: str
    message: str = ""


class TestResult:
    """Track test results.

    Output goes to `stream` (standard output for test scripts); colors are
    used only when the stream is a terminal.
    """

    __test__ = False

    def __init__(self, stream: Optional[TextIO] = None, quiet: bool = False):
        self.stream = stream if stream is not None else sys.stdout
        self.quiet = quiet
        self.colors = Colors if getattr(self.stream, "isatty", lambda: False)() else _Plain
        self.total = 0
        self.passed = 0
        self.failed = 0
        self.skipped = 0
        self.warnings = 0
        self.errors: List[Tuple[str, str]] = []
        self.records: List[Record] = []
        self.suite = ""

    def _print(self, text: str) -> None:
        if not self.quiet:
            print(text, file=self.stream)

    def section(self, title: str) -> None:
        """Start a new group of checks."""
        self.suite = title
        c = self.colors
        self._print("\n" + "=" * 80)
        self._print(f"{c.BLUE}{c.BOLD}{title}{c.END}")
        self._print("=" * 80)

    def add_pass(self, test_name: str, message: str = ""):
        self.total += 1
        self.passed += 1
        self.records.append(Record(self.suite, test_name, "pass", message))
        self._print(f"   {self.colors.GREEN}✅ PASS{self.colors.END}: {test_name}")
        if message:
            self._print(f"      {message}")

    def add_fail(self, test_name: str, error: str):
        self.total += 1
        self.failed += 1
        self.errors.append((test_name, error))
        self.records.append(Record(self.suite, test_name, "fail", error))
        c = self.colors
        self._print(f"   {c.RED}❌ FAIL{c.END}: {test_name}")
        self._print(f"      {c.RED}Error: {error}{c.END}")

    def add_skip(self, test_name: str, reason: str):
        self.skipped += 1
        self.records.append(Record(self.suite, test_name, "skip", reason))
        self._print(f"   {self.colors.YELLOW}⏭  SKIP{self.colors.END}: {test_name} ({reason})")

    def add_warning(self, test_name: str, message: str):
        self.warnings += 1
        self.records.append(Record(self.suite, test_name, "warn", message))
        self._print(f"   {self.colors.YELLOW}⚠️  WARN{self.colors.END}: {test_name}")
        self._print(f"      {message}")

    def check(self, test_name: str, condition: bool, message: str = "") -> bool:
        """Record a pass or a failure; returns `condition`."""
        if condition:
            self.add_pass(test_name)
        else:
            self.add_fail(test_name, message or "condition is false")
        return bool(condition)

    def expect_equal(self, test_name: str, actual, expected) -> bool:
        return self.check(test_name, actual == expected, f"expected {expected!r}, got {actual!r}")

    def expect_raises(self, test_name: str, error: type, call, *args, **kwargs) -> bool:
        try:
            call(*args, **kwargs)
        except error:
            self.add_pass(test_name)
            return True
        except Exception as e:
            self.add_fail(test_name, f"expected {error.__name__}, got {type(e).__name__}: {e}")
            return False
        self.add_fail(test_name, f"expected {error.__name__}, nothing was raised")
        return False

    def print_summary(self) -> bool:
        c = self.colors
        self._print("\n" + "=" * 80)
        self._print(f"{c.BOLD}TEST SUMMARY{c.END}")
        self._print("=" * 80)
        self._print(f"Total Tests: {self.total}")
        self._print(f"{c.GREEN}Passed: {self.passed}{c.END}")
        self._print(f"{c.RED}Failed: {self.failed}{c.END}")
        self._print(f"{c.YELLOW}Skipped: {self.skipped}{c.END}")
        self._print(f"{c.YELLOW}Warnings: {self.warnings}{c.END}")

        if self.failed > 0:
            self._print(f"\n{c.RED}{c.BOLD}FAILED TESTS:{c.END}")
            for test_name, error in self.errors:
                self._print(f"  • {test_name}: {error}")
            return False
        self._print(f"\n{c.GREEN}{c.BOLD}✅ All tests passed!{c.END}")
        return True
