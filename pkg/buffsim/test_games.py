"""Tests for game arenas, the solver and the plain and bounded simulation games."""

from automata.fixtures import FIXTURE_NAMES, fixture
from automata.nba import Nba
from checks.oracles import brute_force_parity
from checks.random_instances import make_rng, random_pair
from checks.result import Colors, TestResult
from games.arena import (SPOILER_WINS, Condition, GameArena, Outcome, Parity, Player,
                         Reachability, Safety, arena_to_dot, play_against)
from games.certificate import format_strategy
from games.simulation import (Acceptance, BufferMode, build_bounded_buffer_arena,
                              build_plain_sim_arena)
from games.solver import solve
from utils.errors import AlphabetMismatchError, ArenaTooLarge, BudgetExceeded
from utils.logger import setup_logger

logger = setup_logger(__name__)

D, S = Player.DUPLICATOR, Player.SPOILER


def _safety_arena(escape: bool) -> GameArena:
    answers = ("bad", "s") if escape else ("bad",)
    return GameArena("s", {"s": S, "d1": D, "bad": D},
                     {"s": ("d1",), "d1": answers, "bad": ("bad",)},
                     Safety(frozenset({"bad"})), "safety")


def _parity_arena(chooser: Player) -> GameArena:
    return GameArena("p0", {"p0": chooser, "p1": S, "p2": S},
                     {"p0": ("p1", "p2"), "p1": ("p0",), "p2": ("p0",)},
                     Parity({"p0": 0, "p1": 1, "p2": 2}), "parity")


def test_solver(result: TestResult):
    """Safety, reachability and parity on small hand-built arenas."""
    result.section("1. Solver")
    safe = solve(_safety_arena(escape=True))
    result.check("safety: Duplicator escapes", safe.holds and safe.winner is D)
    result.expect_equal("safety: strategy avoids the unsafe position", safe.strategy.get("d1"), "s")
    trapped = solve(_safety_arena(escape=False))
    result.check("safety: forced into the unsafe position", not trapped.holds and trapped.winner is S)

    reach = GameArena("s", {"s": D, "x": S, "t": S}, {"s": ("x", "t"), "x": ("x",), "t": ("t",)},
                      Reachability(frozenset({"t"})))
    verdict = solve(reach)
    result.check("reachability: target reached", verdict.holds)
    result.expect_equal("reachability: strategy picks the target", verdict.strategy.get("s"), "t")

    even = solve(_parity_arena(D))
    result.check("parity: Duplicator keeps the even priority", even.holds)
    result.expect_equal("parity: strategy", even.strategy.get("p0"), "p2")
    odd = solve(_parity_arena(S))
    result.check("parity: Spoiler keeps the odd priority", not odd.holds)
    result.expect_equal("parity: Spoiler strategy", odd.strategy.get("p0"), "p1")
    result.check("parity: Duplicator region excludes the start", "p0" not in odd.duplicator_region)

    spoiler_stuck = GameArena("s", {"s": S}, {"s": ()}, Safety(frozenset()))
    result.check("a stuck Spoiler loses", solve(spoiler_stuck).holds)
    duplicator_stuck = GameArena("d", {"d": D}, {"d": ()}, Safety(frozenset()))
    result.check("a stuck Duplicator loses", not solve(duplicator_stuck).holds)

    result.expect_raises("unknown conditions are rejected", TypeError, solve,
                         GameArena("s", {"s": D}, {"s": ("s",)}, Condition()))
    broken = GameArena("s", {"s": D}, {"s": ("t",)}, Safety(frozenset()))
    result.expect_raises("edges leaving the arena fail validation", ValueError, broken.validate)

    result.expect_equal("outcome of a boolean", (Outcome.of(True), Outcome.of(False)),
                        (Outcome.HOLDS, Outcome.FAILS))
    result.expect_equal("outcome of no answer", Outcome.of(None), Outcome.INCONCLUSIVE)


def test_strategies(result: TestResult):
    """Strategies survive arbitrary opponents and render as text and DOT."""
    result.section("2. Strategies")
    arena = _safety_arena(escape=True)
    verdict = solve(arena)
    play = play_against(arena, verdict, lambda position, succ: succ[-1], max_steps=12)
    result.check("strategy never visits the unsafe position", "bad" not in play, str(play))
    result.expect_equal("play length", len(play), 13)

    parity = _parity_arena(D)
    play = play_against(parity, solve(parity), lambda position, succ: succ[0], max_steps=10)
    result.check("parity play never visits the odd priority", "p1" not in play, str(play))

    text = format_strategy(arena, solve(arena))
    lines = text.splitlines()
    result.expect_equal("strategy header", lines[0], "# buffsim strategy")
    result.check("strategy lists the verdict and winner",
                 "verdict: holds" in lines and "winner: duplicator" in lines, text)
    result.check("strategy lists the winning move", "d1 -> s" in lines, text)

    dot = arena_to_dot(arena, solve(arena))
    result.check("DOT draws Spoiler positions as boxes", "shape=box" in dot, dot)
    result.check("DOT marks strategy edges", "style=bold" in dot, dot)
    result.check("parity DOT shows priorities", "xlabel=2" in arena_to_dot(_parity_arena(D)))


def test_plain_games(result: TestResult):
    result.section("3. Plain Simulation Games")
    for name in FIXTURE_NAMES:
        a, _ = fixture(name)
        for acceptance in Acceptance:
            result.check(f"{name}: A simulates itself ({acceptance.value})",
                         solve(build_plain_sim_arena(a, a, acceptance)).holds)

    a, b = fixture("branching")
    for acceptance in Acceptance:
        verdict = solve(build_plain_sim_arena(a, b, acceptance))
        result.check(f"branching: plain {acceptance.value} simulation fails",
                     not verdict.holds and verdict.winner is S)

    arena = build_plain_sim_arena(a, b, Acceptance.FAIR)
    result.check("arena starts at the initial pair", arena.start.spoiler == "a0"
                 and arena.start.duplicator == "b0")
    try:
        arena.validate()
        result.add_pass("plain arena is closed under successors")
    except ValueError as e:
        result.add_fail("plain arena is closed under successors", str(e))
    result.expect_raises("alphabets must agree", AlphabetMismatchError, build_plain_sim_arena,
                         a, fixture("inclusion-gap")[1], Acceptance.FAIR)

    rng = make_rng(23)
    compared = disagreements = 0
    for _ in range(30):
        left, right = random_pair(rng, max_states=2)
        arena = build_plain_sim_arena(left, right, Acceptance.FAIR)
        try:
            expected = brute_force_parity(arena)
        except BudgetExceeded:
            continue
        compared += 1
        if solve(arena).holds != expected:
            disagreements += 1
    result.check("random pairs were compared", compared > 0)
    result.expect_equal("solver agrees with strategy enumeration", disagreements, 0)


def test_bounded_games(result: TestResult):
    result.section("4. Bounded-Buffer Games")
    a, b = fixture("branching")
    for k in range(1, 4):
        verdict = solve(build_bounded_buffer_arena(a, b, k, BufferMode.LOOKAHEAD, Acceptance.FAIR))
        result.check(f"branching: look-ahead k={k} fails", not verdict.holds)

    gap_a, gap_b = fixture("lookahead-gap")
    continuous = {k: solve(build_bounded_buffer_arena(gap_a, gap_b, k, BufferMode.CONTINUOUS,
                                                      Acceptance.FAIR)).holds for k in (1, 2, 3)}
    result.expect_equal("lookahead-gap: continuous verdicts by k", continuous,
                        {1: False, 2: True, 3: True})
    for k in (1, 2, 3):
        verdict = solve(build_bounded_buffer_arena(gap_a, gap_b, k, BufferMode.LOOKAHEAD,
                                                   Acceptance.FAIR))
        result.check(f"lookahead-gap: look-ahead k={k} fails", not verdict.holds)

    for name in FIXTURE_NAMES:
        x, _ = fixture(name)
        for acceptance in Acceptance:
            verdict = solve(build_bounded_buffer_arena(x, x, 2, BufferMode.LOOKAHEAD, acceptance))
            result.check(f"{name}: A simulates itself with a buffer ({acceptance.value})",
                         verdict.holds)

    plain = solve(build_plain_sim_arena(gap_a, gap_b, Acceptance.FAIR)).holds
    one = solve(build_bounded_buffer_arena(gap_a, gap_b, 1, BufferMode.LOOKAHEAD,
                                           Acceptance.FAIR)).holds
    result.expect_equal("look-ahead k=1 agrees with the plain game", one, plain)

    result.expect_raises("k must be positive", ValueError, build_bounded_buffer_arena,
                         a, b, 0, BufferMode.LOOKAHEAD, Acceptance.FAIR)
    try:
        build_bounded_buffer_arena(a, b, 3, BufferMode.CONTINUOUS, Acceptance.FAIR, limit=5)
        result.add_fail("position limit is enforced", "no ArenaTooLarge")
    except ArenaTooLarge as e:
        result.expect_equal("position limit is enforced", e.limit, 5)

    stuck = build_bounded_buffer_arena(gap_a, gap_a.restricted_to(["a0"]), 1,
                                       BufferMode.LOOKAHEAD, Acceptance.FAIR)
    result.check("Duplicator without an answer loses", not solve(stuck).holds)
    result.check("a lost answer leads to the Spoiler sink", SPOILER_WINS in stuck.owner)

    # hop reads one letter into a dead end; mute cannot answer it, echo can.
    hop = Nba.build(["x", "y"], ["a"], [("x", "a", "y")], "x", ["x", "y"], "hop")
    mute = Nba.build(["z"], ["a"], [], "z", ["z"], "mute")
    echo = Nba.build(["z"], ["a"], [("z", "a", "z")], "z", ["z"], "echo")
    for mode in BufferMode:
        for k in (2, 3):
            for acceptance in Acceptance:
                unanswered = solve(build_bounded_buffer_arena(hop, mute, k, mode, acceptance)).holds
                result.check(f"{mode.value} k={k} {acceptance.value}: a stuck Spoiler leaves letters "
                             "that still need answers", not unanswered)
                answered = solve(build_bounded_buffer_arena(hop, echo, k, mode, acceptance)).holds
                result.check(f"{mode.value} k={k} {acceptance.value}: answering the buffer wins",
                             answered)

    rng = make_rng(41)
    ladder_breaks, plain_breaks = [], []
    for i in range(20):
        left, right = random_pair(rng, max_states=2)
        held = {(mode, k): solve(build_bounded_buffer_arena(left, right, k, mode, Acceptance.FAIR)).holds
                for mode in BufferMode for k in (1, 2, 3)}
        for mode in BufferMode:
            for k in (1, 2):
                if held[mode, k] and not held[mode, k + 1]:
                    ladder_breaks.append(f"pair {i}: {mode.value} k={k}")
        for k in (1, 2, 3):
            if held[BufferMode.LOOKAHEAD, k] and not held[BufferMode.CONTINUOUS, k]:
                ladder_breaks.append(f"pair {i}: look-ahead beats continuous at k={k}")
        for acceptance in Acceptance:
            plain = solve(build_plain_sim_arena(left, right, acceptance)).holds
            one = solve(build_bounded_buffer_arena(left, right, 1, BufferMode.LOOKAHEAD, acceptance)).holds
            if plain != one:
                plain_breaks.append(f"pair {i} {acceptance.value}")
    result.expect_equal("a larger buffer never loses a won game", ladder_breaks, [])
    result.expect_equal("look-ahead k=1 matches the plain game on random pairs", plain_breaks, [])


def main():
    """Run the game tests."""
    print("\n" + "=" * 80)
    print(f"{Colors.BOLD}buffsim - Game Tests{Colors.END}")
    print("=" * 80)

    result = TestResult()
    test_solver(result)
    test_strategies(result)
    test_plain_games(result)
    test_bounded_games(result)

    success = result.print_summary()
    return 0 if success else 1


if __name__ == "__main__":
    exit(main())
