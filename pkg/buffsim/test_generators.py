"""Tests for tiling systems, the tiling oracles and the hardness generators."""

from itertools import product

from automata.formats import emit_nba
from automata.nba import UltimatelyPeriodicWord
from automata.oracles import find_path, periodic_membership
from checks.random_instances import make_rng
from checks.result import Colors, TestResult
from games.arena import Outcome
from generators.hardness import (END, SEPARATOR, exptime_alphabet, expected_verdict, gen_exptime,
                                 gen_pspace, pspace_alphabet, tagged)
from generators.tiling import (Tiling, TilingGameResult, TilingSystem, brute_force_tiling,
                               brute_force_tiling_game, parse_tiling_system, random_tiling_system)
from utils.errors import BudgetExceeded, ParseError
from utils.logger import setup_logger

logger = setup_logger(__name__)

CAPTION = """\
# three tiles, t2 never fits horizontally
tiles: t1 t2 t3
h: t1 t1
h: t1 t3
h: t3 t3
v: t1 t2
v: t2 t1
v: t2 t3
initial: t1
final: t3
"""


def _single_tile() -> TilingSystem:
    pair = frozenset({("t1", "t1")})
    return TilingSystem(("t1",), pair, pair, "t1", "t1")


def test_tiling_systems(result: TestResult):
    result.section("1. Tiling Systems")
    ts = parse_tiling_system(CAPTION)
    result.expect_equal("tiles keep their order", ts.tiles, ("t1", "t2", "t3"))
    result.expect_equal("horizontal successors", ts.h_successors("t1"), ["t1", "t3"])
    result.expect_equal("vertical successors", ts.v_successors("t2"), ["t1", "t3"])
    result.check("rows stack cell by cell", ts.stacks(("t1", "t2"), ("t2", "t1")))
    result.expect_equal("text form parses back", parse_tiling_system(ts.to_text()), ts)

    try:
        parse_tiling_system("tiles: t1\nh: t1 t1 t1\ninitial: t1\nfinal: t1\n")
        result.add_fail("pairs need two tiles", "no ParseError")
    except ParseError as e:
        result.expect_equal("pairs need two tiles, reported with the line", e.line, 2)
    result.expect_raises("unknown directive", ParseError, parse_tiling_system, "tiles: t1\ncolor: red\n")
    result.expect_raises("missing final tile", ParseError, parse_tiling_system, "tiles: t1\ninitial: t1\n")
    result.expect_raises("pairs must use known tiles", ParseError, parse_tiling_system,
                         "tiles: t1\nv: t1 t9\ninitial: t1\nfinal: t1\n")
    result.expect_raises("duplicate tiles", ValueError, TilingSystem,
                         ("t1", "t1"), frozenset(), frozenset(), "t1", "t1")

    rng = make_rng(5)
    systems = [random_tiling_system(rng, max_tiles=3) for _ in range(10)]
    result.check("random systems are well formed",
                 all(s.initial_tile in s.tiles and s.final_tile in s.tiles for s in systems))


def test_tiling_oracles(result: TestResult):
    result.section("2. Tiling Oracles")
    ts = parse_tiling_system(CAPTION)
    single_row = brute_force_tiling(ts, 3, 1)
    result.expect_equal("least 3×1 tiling", single_row.grid if single_row else None, (("t1", "t1", "t3"),))
    result.check("the tiling is valid", single_row is not None and single_row.is_valid(ts))
    result.expect_equal("no 3×8 tiling", brute_force_tiling(ts, 3, 8), None)
    result.expect_equal("no 3×2 tiling", brute_force_tiling(ts, 3, 2), None)

    bad = Tiling(3, 1, (("t1", "t3", "t1"),))
    result.check("H violations are invalid", not bad.is_valid(ts))
    result.check("wrong corner tiles are invalid", not Tiling(1, 1, (("t1",),)).is_valid(ts))

    result.expect_equal("single tile system tiles every rectangle",
                        str(brute_force_tiling(_single_tile(), 2, 2)), "t1 t1\nt1 t1")
    result.expect_raises("tilings need a positive size", ValueError, brute_force_tiling, ts, 0, 1)
    result.expect_raises("row states are budgeted", BudgetExceeded, brute_force_tiling, ts, 12, 1)

    game = {n: brute_force_tiling_game(ts, n) for n in (1, 2, 3)}
    result.expect_equal("tiling game by row width", game, {
        1: TilingGameResult.STARTER_WINS,
        2: TilingGameResult.COMPLETER_WINS,
        3: TilingGameResult.COMPLETER_WINS,
    })
    result.expect_equal("t_I = t_F is an immediate Completer win",
                        brute_force_tiling_game(_single_tile(), 4), TilingGameResult.COMPLETER_WINS)

    stuck = TilingSystem(("t1", "t2"), frozenset({("t1", "t1")}), frozenset(), "t1", "t2")
    result.expect_equal("Starter without a vertical successor is stuck",
                        brute_force_tiling_game(stuck, 2), TilingGameResult.COMPLETER_WINS)


def test_pspace_generator(result: TestResult):
    result.section("3. Tiling-Problem Instances")
    ts = parse_tiling_system(CAPTION)
    a, b = gen_pspace(ts, 2)
    result.check("both sides use the tagged alphabet",
                 list(a.alphabet) == pspace_alphabet(ts) == list(b.alphabet))
    result.check("every state is accepting",
                 a.accepting == frozenset(a.states) and b.accepting == frozenset(b.states))
    result.expect_equal("generation is reproducible", [emit_nba(x) for x in gen_pspace(ts, 2)],
                        [emit_nba(a), emit_nba(b)])
    result.expect_raises("n must be positive", ValueError, gen_pspace, ts, 0)

    trivial = _single_tile()
    left, right = gen_pspace(trivial, 1)
    valid = UltimatelyPeriodicWord.of((SEPARATOR, tagged("t1", 0), SEPARATOR, tagged("t1", 1)), (END,))
    result.check("left side accepts an encoded tiling", periodic_membership(left, valid))
    result.check("right side rejects a valid tiling", not periodic_membership(right, valid))

    mismatch = TilingSystem(("t1", "t2"), frozenset((t, u) for t in ("t1", "t2") for u in ("t1", "t2")),
                            frozenset({("t1", "t1")}), "t1", "t2")
    left, right = gen_pspace(mismatch, 1)
    broken = UltimatelyPeriodicWord.of((SEPARATOR, tagged("t1", 0), SEPARATOR, tagged("t2", 1)), (END,))
    result.check("left side accepts a vertically broken encoding", periodic_membership(left, broken))
    result.check("right side catches the vertical mismatch", periodic_membership(right, broken))

    result.expect_equal("n=1 has no 1×2 tiling", expected_verdict("pspace", ts, 1), Outcome.HOLDS)
    result.expect_equal("single tile system always tiles", expected_verdict("pspace", trivial, 2),
                        Outcome.FAILS)
    result.expect_raises("unknown generator kind", ValueError, expected_verdict, "np", ts, 1)


def test_exptime_generator(result: TestResult):
    result.section("4. Tiling-Game Instances")
    ts = parse_tiling_system(CAPTION)
    a, b = gen_exptime(ts, 3)
    result.check("both sides read tiles and row bits",
                 list(a.alphabet) == exptime_alphabet(ts) == list(b.alphabet))
    result.check("every state is accepting",
                 a.accepting == frozenset(a.states) and b.accepting == frozenset(b.states))
    result.check("no ε-edges survive", all(letter is not None for _, letter, _ in b.transitions))

    rows = UltimatelyPeriodicWord.of(("0",), ("t1", "t1", "t3", "1"))
    result.check("left side reads bit-separated rows", periodic_membership(a, rows))
    result.check("left side enforces horizontal compatibility",
                 not periodic_membership(a, UltimatelyPeriodicWord.of(("0",), ("t1", "t2", "t3", "1"))))
    repeated = UltimatelyPeriodicWord.of(("0",), ("t1", "t1", "t1", "1"))
    result.check("right side accepts endless repetitions of a t_F-free row", periodic_membership(b, repeated))

    clash = TilingSystem(("0", "t1"), frozenset(), frozenset(), "0", "t1")
    result.expect_raises("tiles may not be named like row bits", ValueError, gen_exptime, clash, 1)
    result.expect_raises("n must be positive", ValueError, gen_exptime, ts, 0)

    verdicts = {n: expected_verdict("exptime", ts, n) for n in (1, 2)}
    result.expect_equal("oracle verdicts by row width", verdicts, {1: Outcome.HOLDS, 2: Outcome.FAILS})


def test_exptime_paths(result: TestResult):
    result.section("5. Tiling-Game Paths")
    ts = parse_tiling_system(CAPTION)
    _, b = gen_exptime(ts, 2)
    states = {t: f"B.q.{t}" for t in ts.tiles}
    result.check("every tile has a right-side state", all(q in b.index for q in states.values()))

    rows = [v for v in product(ts.tiles, repeat=2) if ts.final_tile not in v]
    loops = [(t, v) for t, v in product(ts.tiles, rows)
             if find_path(b, states[t], ("1",) + v, states[t]) is None]
    result.expect_equal("a repeated t_F-free row loops back", loops, [])

    moves = {(t, u) for t, u, v in product(ts.tiles, ts.tiles, rows)
             if find_path(b, states[t], ("0",) + v, states[u]) is not None}
    result.expect_equal("a new row moves exactly to vertical successors", moves, set(ts.vertical))

    for t in ts.tiles:
        start = b.with_initial(states[t])
        result.check(f"B.q.{t}: a next row with the wrong first tile is accepted",
                     all(periodic_membership(start, UltimatelyPeriodicWord.of(("0", u), ("1",)))
                         for u in ts.tiles if u != t))

    broken = UltimatelyPeriodicWord.of(("1", "t3", "t1", "1", "t3", "t3"), ("0",))
    clash = UltimatelyPeriodicWord.of(("0", "t3", "t2", "0", "t1", "t1"), ("1",))
    for t in ts.tiles:
        start = b.with_initial(states[t])
        result.check(f"B.q.{t}: a broken repetition after t_F is accepted",
                     periodic_membership(start, broken))
        result.check(f"B.q.{t}: a vertical clash after a 0 bit is accepted",
                     periodic_membership(start, clash))
    result.check("a faithful repetition is not an error on its own",
                 not periodic_membership(b.with_initial(states["t3"]),
                                         UltimatelyPeriodicWord.of(("1", "t3", "t3", "1"), ("0", "t2"))))


def main():
    """Run the generator tests."""
    print("\n" + "=" * 80)
    print(f"{Colors.BOLD}buffsim - Generator Tests{Colors.END}")
    print("=" * 80)

    result = TestResult()
    test_tiling_systems(result)
    test_tiling_oracles(result)
    test_pspace_generator(result)
    test_exptime_generator(result)
    test_exptime_paths(result)

    success = result.print_summary()
    return 0 if success else 1


if __name__ == "__main__":
    exit(main())
