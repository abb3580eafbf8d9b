"""Manifest runner: one subcommand line per manifest line, optionally in parallel."""

import io
import logging
import shlex
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, List, Optional, Sequence, TextIO

from games.arena import Outcome
from utils.errors import ParseError, UsageError
from utils.logger import set_log_level, setup_logger

logger = setup_logger(__name__)

Runner = Callable[[Sequence[str], Optional[TextIO], Optional[TextIO]], int]


@dataclass(frozen=True)
class ManifestEntry:
    line: int
    argv: List[str]

    @property
    def text(self) -> str:
        return " ".join(self.argv)


@dataclass(frozen=True)
class EntryResult:
    entry: ManifestEntry
    exit_code: int
    result: str
    output: str


def read_manifest(path: Path) -> List[ManifestEntry]:
    """Non-blank, non-comment lines of `path`, each split shell-style.

    Raises:
        ParseError: on unbalanced quotes
        UsageError: when a line is itself a batch run
    """
    entries = []
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            argv = shlex.split(line)
        except ValueError as e:
            raise ParseError(str(e), lineno) from e
        if argv[0] == "batch":
            raise UsageError(f"manifest line {lineno}: nested batch runs are not supported")
        entries.append(ManifestEntry(lineno, argv))
    return entries


def _run_entry(entry: ManifestEntry, runner: Runner) -> EntryResult:
    out, err = io.StringIO(), io.StringIO()
    code = runner(entry.argv, out, err)
    lines = out.getvalue().splitlines()
    result = next((line.split(" ", 1)[1] for line in reversed(lines) if line.startswith("RESULT ")),
                  "error")
    listing = [line for line in lines if not line.startswith("RESULT ")]
    return EntryResult(entry, code, result, "\n".join(listing + err.getvalue().splitlines()))


def requested_log_level(debug: bool, verbose: bool) -> Optional[str]:
    if debug:
        return "DEBUG"
    if verbose:
        return "INFO"
    return None


def batch_log_level(entries: Sequence[ManifestEntry]) -> Optional[str]:
    """Most detailed level any manifest line asks for."""
    flags = {arg for entry in entries for arg in entry.argv}
    return requested_log_level("--debug" in flags, "--verbose" in flags)


def aggregate(codes: Sequence[int]) -> Outcome:
    if all(code == 0 for code in codes):
        return Outcome.HOLDS
    if all(code in (0, 1) for code in codes):
        return Outcome.FAILS
    return Outcome.INCONCLUSIVE


def run_batch(manifest: Path, jobs: int, err: TextIO, runner: Runner) -> Outcome:
    """Run every manifest line and report per-line results in manifest order.

    The log level is settled once, before any line runs; `runner` must not
    change it.
    """
    entries = read_manifest(manifest)
    logger.info(f"Batch {manifest}: {len(entries)} lines, {jobs} job(s)")
    level = batch_log_level(entries)
    if level is not None and logging.getLevelName(level) < logger.getEffectiveLevel():
        set_log_level(level)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda e: _run_entry(e, runner), entries))
    else:
        results = [_run_entry(e, runner) for e in entries]

    for r in results:
        print(f"[line {r.entry.line}] exit={r.exit_code} result={r.result} :: {r.entry.text}", file=err)
        if r.output:
            for line in r.output.splitlines():
                print(f"    {line}", file=err)
    return aggregate([r.exit_code for r in results])
