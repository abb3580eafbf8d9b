"""End-to-end tests for the buffsim command line: exit codes, RESULT lines and written files."""

import io
import logging
import tempfile
from pathlib import Path

from automata.formats import load_nba
from checks.result import Colors, TestResult
from cli.batch import aggregate, batch_log_level, read_manifest, run_batch
from cli.commands import run_argv
from cli.parser import parse_args
from games.arena import Outcome
from utils.config import FIXTURES_DIR, LOG_LEVEL
from utils.errors import UsageError
from utils.logger import set_log_level, setup_logger

logger = setup_logger(__name__)

TILING = "tiles: t1 t2 t3\nh: t1 t1\nh: t1 t3\nh: t3 t3\nv: t1 t2\nv: t2 t1\nv: t2 t3\ninitial: t1\nfinal: t3\n"


def _pair(name: str):
    return str(FIXTURES_DIR / f"{name}.A"), str(FIXTURES_DIR / f"{name}.B")


def _run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_argv([str(x) for x in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def test_sim(result: TestResult):
    result.section("1. sim and incl")
    a, b = _pair("branching")
    code, out, _ = _run("sim", a, b, "--relation", "lookahead")
    result.expect_equal("look-ahead fair holds on branching", (code, out), (0, "RESULT holds\n"))
    code, out, _ = _run("sim", a, b)
    result.expect_equal("plain fair fails on branching", (code, out), (1, "RESULT fails\n"))
    code, out, _ = _run("sim", a, b, "--relation", "bounded", "--k", "2", "--mode", "continuous")
    result.expect_equal("bounded continuous k=2 fails on branching", code, 1)

    gap_a, gap_b = _pair("inclusion-gap")
    code, out, _ = _run("incl", gap_a, gap_b)
    result.expect_equal("inclusion holds on inclusion-gap", (code, out), (0, "RESULT holds\n"))
    code, _, _ = _run("sim", gap_a, gap_b, "--relation", "continuous")
    result.expect_equal("continuous fair fails on inclusion-gap", code, 1)

    code, out, _ = _run("sim", a, b, "--relation", "continuous", "--cap", "5")
    result.expect_equal("a tiny cap is inconclusive", (code, out), (2, "RESULT inconclusive\n"))

    code, out, err = _run("sim", a, b, "--relation", "lookahead", "--verbose")
    result.check("--verbose lists the report on standard output",
                 "relation=lookahead-fair" in out and out.endswith("RESULT holds\n"), out)
    code, out, err = _run("sim", a, b, "--relation", "lookahead")
    result.check("quiet runs list the report on standard error", "relation=lookahead-fair" in err, err)

    code, out, _ = _run("sim", a, b, "--relation", "continuous", "--replay", "ab:a", "--verbose")
    result.check("replay prints the Duplicator run", code == 0 and "Duplicator run: b0" in out, out)

    with tempfile.TemporaryDirectory() as tmp:
        cert, dot, strategy = Path(tmp) / "q.cert", Path(tmp) / "q.dot", Path(tmp) / "plain.txt"
        code, _, _ = _run("sim", a, b, "--relation", "lookahead", "--certificate", cert, "--dot", dot)
        result.check("certificate and DOT are written", code == 0 and cert.exists() and dot.exists())
        result.check("certificate header", cert.read_text(encoding="utf-8").startswith("# buffsim certificate"))
        code, _, _ = _run("sim", a, b, "--certificate", strategy)
        result.check("plain games write their strategy",
                     code == 1 and "winner: spoiler" in strategy.read_text(encoding="utf-8"))


def test_usage(result: TestResult):
    result.section("2. Usage Errors")
    a, b = _pair("branching")
    for label, argv in (
        ("no subcommand", []),
        ("unknown subcommand", ["frobnicate"]),
        ("--k without a bounded game", ["sim", a, b, "--k", "2"]),
        ("quotient games are fair only", ["sim", a, b, "--relation", "continuous", "--acceptance", "direct"]),
        ("--replay needs a quotient game", ["sim", a, b, "--replay", "ab:a"]),
        ("--prune needs a direct preorder", ["minimize", a, "--relation", "delayed", "--prune", "-o", "x"]),
        ("--n must be positive", ["gen", "pspace", "--tiling", "ts.txt", "--n", "0", "-o", "x"]),
        ("--cap must be at least 2", ["monoid", a, "--cap", "1"]),
    ):
        code, out, err = _run(*argv)
        result.check(f"{label}: exit 2 with the usage line", code == 2 and "usage:" in err and not out,
                     f"exit {code}, stderr {err!r}")

    code, out, _ = _run("sim", "missing.A", b)
    result.expect_equal("unreadable input is an error", (code, out), (2, ""))
    result.expect_raises("parse_args reports usage errors", UsageError, parse_args, ["sim", a])
    config = parse_args(["sim", a, b, "--relation", "bounded"])
    result.expect_equal("bounded defaults", (config.k, config.mode), (1, "lookahead"))


def test_files(result: TestResult):
    result.section("3. gen, monoid and minimize")
    a, _ = _pair("branching")
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        tiling = tmp / "caption.ts"
        tiling.write_text(TILING, encoding="utf-8")
        code, out, _ = _run("gen", "exptime", "--tiling", tiling, "--n", "1", "-o", tmp / "game")
        result.expect_equal("gen prints the expected verdict", (code, out), (0, "RESULT holds\n"))
        result.check("gen writes both automata",
                     (tmp / "game.A.nba").exists() and (tmp / "game.B.nba").exists())
        result.check("generated automata load back", len(load_nba(tmp / "game.B.nba").states) > 1)
        code, out, _ = _run("gen", "exptime", "--tiling", tiling, "--n", "2", "-o", tmp / "game2")
        result.expect_equal("gen exits 0 for a negative expectation", (code, out), (0, "RESULT fails\n"))

        dot = tmp / "cayley.dot"
        code, out, err = _run("monoid", a, "--dot", dot)
        result.check("monoid lists its elements", code == 0 and "elements:" in err and "idempotents:" in err)
        result.check("Cayley graph is written", dot.read_text(encoding="utf-8").startswith("digraph"))

        reduced = tmp / "reduced.ba"
        code, out, _ = _run("minimize", a, "--relation", "direct", "--prune", "-o", reduced, "--verify")
        result.expect_equal("minimize verifies the language", (code, out), (0, "RESULT holds\n"))
        result.check("minimize writes ba format for .ba outputs",
                     reduced.read_text(encoding="utf-8").lstrip().startswith("["))


def test_batch(result: TestResult):
    result.section("4. batch")
    result.expect_equal("all zero aggregates to holds", aggregate([0, 0]), Outcome.HOLDS)
    result.expect_equal("a negative verdict aggregates to fails", aggregate([0, 1]), Outcome.FAILS)
    result.expect_equal("an error aggregates to inconclusive", aggregate([1, 2]), Outcome.INCONCLUSIVE)

    a, b = _pair("branching")
    with tempfile.TemporaryDirectory() as tmp:
        manifest = Path(tmp) / "runs.txt"
        manifest.write_text(
            "# reference verdicts\n"
            f"sim {a} {b} --relation lookahead\n"
            "\n"
            f"sim {a} {b}\n", encoding="utf-8")
        entries = read_manifest(manifest)
        result.expect_equal("comments and blank lines are skipped", [e.line for e in entries], [2, 4])
        for jobs in ("1", "2"):
            code, out, err = _run("batch", manifest, "--jobs", jobs)
            result.expect_equal(f"jobs={jobs}: aggregate verdict", (code, out), (1, "RESULT fails\n"))
            result.check(f"jobs={jobs}: per-line reports in manifest order",
                         err.index("[line 2] exit=0 result=holds") < err.index("[line 4] exit=1 result=fails"),
                         err)

        nested = Path(tmp) / "nested.txt"
        nested.write_text(f"batch {manifest}\n", encoding="utf-8")
        result.expect_raises("nested batch runs are refused", UsageError, read_manifest, nested)
        code, _, _ = _run("batch", nested)
        result.expect_equal("nested batch exits 2", code, 2)

        debug = Path(tmp) / "debug.txt"
        debug.write_text(f"sim {a} {b} --relation lookahead --debug\nsim {a} {b}\n", encoding="utf-8")
        seen = []

        def recording(argv, out, err):
            seen.append(logger.getEffectiveLevel())
            print("RESULT holds", file=out)
            return 0

        try:
            set_log_level("WARNING")
            run_batch(debug, 2, io.StringIO(), recording)
            result.expect_equal("every line runs at the level settled before the pool",
                                seen, [logging.DEBUG, logging.DEBUG])
            result.expect_equal("a --debug line raises the batch level",
                                batch_log_level(read_manifest(debug)), "DEBUG")
            result.expect_equal("plain lines leave the level alone",
                                batch_log_level(read_manifest(manifest)), None)

            set_log_level("WARNING")
            run_argv(["sim", a, b, "--debug"], io.StringIO(), io.StringIO(), adjust_logging=False)
            result.expect_equal("batch lines do not touch the shared log level",
                                logger.getEffectiveLevel(), logging.WARNING)
        finally:
            set_log_level(LOG_LEVEL)


def test_selftest(result: TestResult):
    result.section("5. selftest")
    code, out, err = _run("selftest", "--budget", "2", "--suite", "verdicts")
    result.expect_equal("reference verdicts pass", (code, out), (0, "RESULT holds\n"))
    result.check("selftest prints its summary table", "selftest seed=" in err and "Reference verdict matrix" in err, err)


def main():
    """Run the command-line tests."""
    print("\n" + "=" * 80)
    print(f"{Colors.BOLD}buffsim - CLI Tests{Colors.END}")
    print("=" * 80)

    result = TestResult()
    test_sim(result)
    test_usage(result)
    test_files(result)
    test_batch(result)
    test_selftest(result)

    success = result.print_summary()
    return 0 if success else 1


if __name__ == "__main__":
    exit(main())
