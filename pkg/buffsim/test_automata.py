"""Tests for the automaton model, file formats and membership oracles."""

from algebra.profile import ACCEPTING_PATH, NO_PATH
from automata.fixtures import FIXTURE_NAMES, all_fixtures, fixture
from automata.formats import automaton_to_dot, emit_nba, load_nba, parse_nba
from automata.nba import Nba, UltimatelyPeriodicWord, disjoint_union, format_word
from automata.oracles import (dead_ends, eliminate_epsilon, find_accepting_lasso, find_path,
                              periodic_membership, word_profile)
from checks.oracles import naive_membership
from checks.random_instances import make_rng, random_nba, random_periodic_word
from checks.result import Colors, TestResult
from utils.config import FIXTURES_DIR
from utils.errors import (AlphabetMismatchError, AutomatonError, InvalidRunError, ParseError,
                          UnknownLetterError)
from utils.logger import setup_logger

logger = setup_logger(__name__)


def test_model_invariants(result: TestResult):
    """Constructor checks and derived automata."""
    result.section("1. Automaton Model")
    result.expect_raises("duplicate states rejected", AutomatonError,
                         Nba.build, ["q", "q"], ["a"], [], "q", [])
    result.expect_raises("undeclared initial state rejected", AutomatonError,
                         Nba.build, ["q"], ["a"], [], "p", [])
    result.expect_raises("transition on an undeclared letter rejected", AutomatonError,
                         Nba.build, ["q"], ["a"], [("q", "b", "q")], "q", [])

    a, _ = fixture("branching")
    result.expect_equal("successors in declared order", a.successors("a1", "a"), ("a1",))
    result.expect_raises("successors of an unknown letter", UnknownLetterError, a.successors, "a0", "z")
    result.expect_equal("with_initial moves only the initial state",
                        (a.with_initial("a1").initial, a.with_initial("a1").transitions),
                        ("a1", a.transitions))
    result.expect_raises("with_initial on an unknown state", AutomatonError, a.with_initial, "zz")
    result.expect_equal("all_accepting marks every state",
                        a.all_accepting().accepting, frozenset(a.states))
    trimmed = a.restricted_to(["a0", "a1", "a2"])
    result.check("restricted_to drops edges into removed states",
                 all("a3" not in (s, t) for s, _, t in trimmed.transitions))

    union = disjoint_union(*fixture("branching"))
    result.expect_equal("union tags left and right states",
                        (union.automaton.states[0], union.automaton.states[-1]), ("A:a0", "B:b4"))
    result.expect_equal("union accepting states", len(union.automaton.accepting), 4)
    result.expect_raises("union needs a shared alphabet", AlphabetMismatchError, disjoint_union,
                         fixture("branching")[0], fixture("inclusion-gap")[1])


def test_words(result: TestResult):
    result.section("2. Ultimately Periodic Words")
    w = UltimatelyPeriodicWord.parse("ab:a", ["a", "b", "c"])
    result.expect_equal("compact notation splits per character", (w.stem, w.period), (("a", "b"), ("a",)))
    spaced = UltimatelyPeriodicWord.parse("(t1,0) $:#", ["(t1,0)", "$", "#"])
    result.expect_equal("spaced notation splits on spaces", spaced.stem, ("(t1,0)", "$"))
    result.expect_equal("letter_at wraps around the period", w.letter_at(7), "a")
    result.expect_equal("rendering", str(w), "ab:a")
    result.expect_equal("empty word renders as ε", format_word(()), "ε")
    result.expect_raises("missing colon", ValueError, UltimatelyPeriodicWord.parse, "ab", ["a", "b"])
    result.expect_raises("empty period", ValueError, UltimatelyPeriodicWord.parse, "ab:", ["a", "b"])
    result.expect_raises("unknown letter", UnknownLetterError, UltimatelyPeriodicWord.parse, "ad:a", ["a", "b"])


def test_formats(result: TestResult):
    """Native and ba formats, fixture files and DOT output."""
    result.section("3. File Formats")
    for name, (a, b) in all_fixtures().items():
        result.check(f"{name}.A file matches the built-in fixture", load_nba(FIXTURES_DIR / f"{name}.A") == a)
        result.check(f"{name}.B file matches the built-in fixture", load_nba(FIXTURES_DIR / f"{name}.B") == b)

    a, _ = fixture("branching")
    result.check("native output parses back to the same automaton", parse_nba(emit_nba(a)) == a)
    ba = parse_nba(emit_nba(a, "ba"), "ba")
    result.expect_equal("ba output keeps initial, accepting and transitions",
                        (ba.initial, ba.accepting, ba.transitions),
                        (a.initial, a.accepting, a.transitions))

    hashes = "# a comment line\nstates: q\nalphabet: # $\ninitial: q\naccepting: q\ntrans: q # q\n"
    parsed = parse_nba(hashes)
    result.expect_equal("'#' is a letter outside full-line comments", parsed.successors("q", "#"), ("q",))

    try:
        parse_nba("states: q\nalphabet: a\ninitial: q\nfoo: bar\n")
        result.add_fail("unknown key rejected", "no ParseError")
    except ParseError as e:
        result.expect_equal("unknown key rejected with its line", e.line, 4)
    result.expect_raises("undeclared letter in a transition", ParseError, parse_nba,
                         "states: q\nalphabet: a\ninitial: q\ntrans: q b q\n")
    result.expect_raises("missing initial line", ParseError, parse_nba, "states: q\nalphabet: a\n")
    result.expect_raises("second initial bracket in ba", ParseError, parse_nba,
                         "[p]\n[q]\na,[p]->[q]\n", "ba")
    ba_text = "[p]\na,[p]->[q]\nb,[q]->[q]\n[q]\n"
    parsed = parse_nba(ba_text, "ba")
    result.expect_equal("ba brackets after transitions are accepting", parsed.accepting, frozenset({"q"}))
    result.expect_equal("ba alphabet in order of appearance", parsed.alphabet, ("a", "b"))

    dot = automaton_to_dot(a)
    result.check("DOT marks accepting states", "doublecircle" in dot)
    result.check("DOT uses numeric node ids", "s0 -> s1" in dot, dot)


def test_oracles(result: TestResult):
    result.section("4. Membership Oracles")
    a, b = fixture("branching")
    result.check("ab·a^ω is accepted", periodic_membership(a, UltimatelyPeriodicWord.of("ab", "a")))
    result.check("a^ω is rejected", not periodic_membership(a, UltimatelyPeriodicWord.of("", "a")))

    profile = word_profile(a, ("a", "b"))
    i = a.index
    result.expect_equal("f_ab(a0, a2) is an accepting path", profile[i["a0"], i["a2"]], ACCEPTING_PATH)
    result.expect_equal("f_ab(a0, a1) has no path", profile[i["a0"], i["a1"]], NO_PATH)

    lasso = find_accepting_lasso(a, UltimatelyPeriodicWord.of("ab", "a"))
    if lasso is None:
        result.add_fail("accepting lasso found", "none returned")
    else:
        try:
            lasso.validate(a)
            result.add_pass("accepting lasso validates")
        except InvalidRunError as e:
            result.add_fail("accepting lasso validates", str(e))
        run = lasso.unroll(6)
        result.expect_equal("unrolled run length", (len(run), run.states[0]), (6, "a0"))
    result.expect_equal("no lasso for a rejected word",
                        find_accepting_lasso(a, UltimatelyPeriodicWord.of("", "a")), None)

    result.expect_equal("path search", find_path(b, "b0", ("a", "b"), "b2"), ["b0", "b1", "b2"])
    result.expect_equal("path search without a path", find_path(b, "b0", ("a", "b"), "b4"), None)

    sink = Nba.build(["p", "q"], ["a"], [("p", "a", "q")], "p", ["q"])
    result.expect_equal("dead ends", dead_ends(sink), {"q"})

    states, transitions = eliminate_epsilon(
        ["p", "q", "r", "s"], [("p", None, "q"), ("q", "x", "r"), ("s", "x", "s")], "p")
    result.expect_equal("ε-closure and trim", (states, transitions), (["p", "r"], [("p", "x", "r")]))

    rng = make_rng(11)
    disagreements = 0
    for _ in range(100):
        x = random_nba(rng, max_states=3)
        w = random_periodic_word(rng, x.alphabet)
        if periodic_membership(x, w) != naive_membership(x, w):
            disagreements += 1
    result.expect_equal("lasso product agrees with the block-graph oracle", disagreements, 0)


def main():
    """Run the automaton tests."""
    print("\n" + "=" * 80)
    print(f"{Colors.BOLD}buffsim - Automata Tests{Colors.END}")
    print("=" * 80)
    print(f"Fixtures: {', '.join(FIXTURE_NAMES)}")

    result = TestResult()
    test_model_invariants(result)
    test_words(result)
    test_formats(result)
    test_oracles(result)

    success = result.print_summary()
    return 0 if success else 1


if __name__ == "__main__":
    exit(main())
