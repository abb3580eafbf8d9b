"""Tests for the quotient games, certificates and strategy replay."""

import tempfile
from pathlib import Path

from algebra.monoid import build_monoid
from automata.fixtures import fixture
from automata.nba import UltimatelyPeriodicWord, disjoint_union
from automata.oracles import find_accepting_lasso
from checks.result import Colors, TestResult
from games.arena import Outcome, Player
from games.certificate import HEADER, format_certificate, write_certificate
from games.quotient import RefuterTurn, Relation, build_lookahead_quotient, decide
from games.replay import MIN_ROUNDS, replay
from utils.config import DEFAULT_CAP
from utils.errors import ReplayFailure
from utils.logger import setup_logger

logger = setup_logger(__name__)

EXPECTED = {
    ("branching", Relation.CONTINUOUS_FAIR): Outcome.HOLDS,
    ("branching", Relation.LOOKAHEAD_FAIR): Outcome.HOLDS,
    ("lookahead-gap", Relation.CONTINUOUS_FAIR): Outcome.HOLDS,
    ("lookahead-gap", Relation.LOOKAHEAD_FAIR): Outcome.FAILS,
    ("inclusion-gap", Relation.CONTINUOUS_FAIR): Outcome.FAILS,
    ("inclusion-gap", Relation.LOOKAHEAD_FAIR): Outcome.FAILS,
}


def test_verdicts(result: TestResult):
    result.section("1. Quotient Game Verdicts")
    for (name, relation), expected in EXPECTED.items():
        a, b = fixture(name)
        report = decide(a, b, relation, DEFAULT_CAP)
        result.expect_equal(f"{name}: {relation.value}", report.outcome, expected)

    a, b = fixture("branching")
    report = decide(a, b, Relation.LOOKAHEAD_FAIR, DEFAULT_CAP)
    result.expect_equal("game starts with an empty abstract buffer", report.arena.start,
                        RefuterTurn("a0", "b0", report.monoid.identity.index))
    result.check("Prover wins and has a strategy",
                 report.winner is Player.DUPLICATOR and len(report.strategy) > 0)
    result.check("witness words cover the strategy classes",
                 all(report.monoid.elements[i].witness == w for i, w in report.witness_words.items())
                 and len(report.witness_words) > 0)
    result.check("summary names the relation", report.summary().startswith("relation=lookahead-fair"))

    strict = decide(*fixture("branching"), Relation.CONTINUOUS_FAIR, DEFAULT_CAP)
    all_accepting = decide(a.all_accepting(), b, Relation.CONTINUOUS_FAIR, DEFAULT_CAP)
    result.check("an all-accepting left automaton breaks continuous simulation",
                 strict.holds is True and all_accepting.holds is False)

    capped = decide(a, b, Relation.CONTINUOUS_FAIR, 5)
    result.expect_equal("tiny cap is inconclusive", (capped.outcome, capped.holds),
                        (Outcome.INCONCLUSIVE, None))
    result.check("inconclusive reports carry no arena", capped.arena is None and capped.monoid_size == 5)
    limited = decide(a, b, Relation.CONTINUOUS_FAIR, DEFAULT_CAP, limit=3)
    result.expect_equal("tiny arena limit is inconclusive", limited.outcome, Outcome.INCONCLUSIVE)
    result.check("monoid survives an arena limit", limited.monoid is not None)

    result.expect_raises("monoid must belong to the union", ValueError,
                         build_lookahead_quotient, a, b, build_monoid(a, DEFAULT_CAP))
    union_monoid = build_monoid(disjoint_union(a, b).automaton, DEFAULT_CAP)
    arena = build_lookahead_quotient(a, b, union_monoid)
    result.expect_equal("arena built from an explicit monoid", len(arena), report.arena_size)


def test_certificates(result: TestResult):
    result.section("2. Certificates")
    a, b = fixture("branching")
    report = decide(a, b, Relation.LOOKAHEAD_FAIR, DEFAULT_CAP)
    text = format_certificate(report)
    lines = text.splitlines()
    result.expect_equal("header line", lines[0], HEADER)
    result.check("relation, verdict and winner are listed",
                 {"relation: lookahead-fair", "verdict: holds", "winner: prover"} <= set(lines), text)
    positions = [line for line in lines if line.startswith("POSITION ")]
    result.check("strategy edges are listed", len(positions) > 0)
    result.check("Prover moves name their witnesses",
                 any("[witness: w1=" in line for line in positions), text)
    result.check("classes are listed with witness words", any(line.startswith("CLASS e") for line in lines))
    result.expect_equal("certificates are reproducible",
                        format_certificate(decide(a, b, Relation.LOOKAHEAD_FAIR, DEFAULT_CAP)), text)

    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "branching.cert"
        count = write_certificate(report, path)
        result.expect_equal("written edge count", count, len(positions))
        result.expect_equal("written text", path.read_text(encoding="utf-8"), text)

    failing = decide(*fixture("inclusion-gap"), Relation.CONTINUOUS_FAIR, DEFAULT_CAP)
    result.check("failing reports name the Refuter", "winner: refuter" in format_certificate(failing))
    capped = decide(a, b, Relation.CONTINUOUS_FAIR, 5)
    result.expect_raises("inconclusive reports have no certificate", ValueError, format_certificate, capped)


def test_replay(result: TestResult):
    result.section("3. Strategy Replay")
    a, b = fixture("branching")
    lasso = find_accepting_lasso(a, UltimatelyPeriodicWord.of("ab", "a"))
    for relation in Relation:
        report = decide(a, b, relation, DEFAULT_CAP)
        try:
            outcome = replay(report, a, b, lasso)
        except ReplayFailure as e:
            result.add_fail(f"{relation.value}: replay", str(e))
            continue
        result.expect_equal(f"{relation.value}: Duplicator ends in b2", outcome.final_state, "b2")
        result.expect_equal(f"{relation.value}: rounds played", len(outcome.rounds), MIN_ROUNDS)
        result.check(f"{relation.value}: Duplicator never overtakes Spoiler",
                     all(r.consumed_to <= r.spoiler_to for r in outcome.rounds))
        result.check(f"{relation.value}: Duplicator run starts at b0",
                     outcome.duplicator_run.states[0] == "b0")

    gap_a, gap_b = fixture("lookahead-gap")
    failing = decide(gap_a, gap_b, Relation.LOOKAHEAD_FAIR, DEFAULT_CAP)
    gap_lasso = find_accepting_lasso(gap_a, UltimatelyPeriodicWord.of("a", "b"))
    result.expect_raises("replay needs a holding report", ValueError,
                         replay, failing, gap_a, gap_b, gap_lasso)
    other = decide(gap_a, gap_b, Relation.CONTINUOUS_FAIR, DEFAULT_CAP)
    result.expect_raises("replay needs the report's own automata", ValueError,
                         replay, other, a, b, lasso)


def main():
    """Run the quotient game tests."""
    print("\n" + "=" * 80)
    print(f"{Colors.BOLD}buffsim - Quotient Game Tests{Colors.END}")
    print("=" * 80)

    result = TestResult()
    test_verdicts(result)
    test_certificates(result)
    test_replay(result)

    success = result.print_summary()
    return 0 if success else 1


if __name__ == "__main__":
    exit(main())
