"""Property and differential suites run by `selftest`.

Every suite takes a TestResult tracker and a SuiteContext. Suites draw
from their own RNG stream, seeded by (seed, suite salt), so running one
suite alone reproduces exactly what it does inside the full selftest.
"""

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from algebra.inclusion import InclusionVerdict, language_inclusion
from algebra.monoid import build_monoid, check_factorisation, monoid_table, ramsey_factorize
from algebra.profile import compose
from automata.fixtures import FIXTURE_NAMES, fixture
from automata.formats import emit_nba
from automata.nba import Nba, UltimatelyPeriodicWord
from automata.oracles import find_accepting_lasso, find_path, periodic_membership, word_profile
from checks.oracles import brute_force_parity, exhaustive_inclusion
from checks.random_instances import (random_accepting_lasso, random_nba, random_pair,
                                     random_periodic_word, random_word)
from checks.result import TestResult
from games.arena import SPOILER_WINS, DUPLICATOR_WINS, Outcome, Player, play_against
from games.certificate import format_certificate
from games.quotient import Relation, decide
from games.replay import replay
from games.simulation import (Acceptance, BufferMode, build_bounded_buffer_arena,
                              build_plain_sim_arena)
from games.solver import solve
from generators.hardness import (END, SEPARATOR, expected_verdict, gen_exptime, gen_pspace,
                                 tagged)
from generators.tiling import brute_force_tiling, random_tiling_system
from reduction.preorder import PreorderKind, compute_preorder
from reduction.reduce import minimize_pipeline, prune, quotient, verify_language
from utils.config import DEFAULT_CAP, DEFAULT_SEED, GENERATOR_CAP, SELFTEST_BUDGET
from utils.errors import (ArenaTooLarge, BudgetExceeded, CapExceeded, DelayedPruningRefused,
                          ReplayFailure)
from utils.logger import setup_logger

logger = setup_logger(__name__)

# Arena limit for generated instances and their bounded fallbacks.
GENERATOR_ARENA_LIMIT = 100000
SKIP_RATE_WARNING = 0.10
INCONCLUSIVE_RATE_WARNING = 0.50
# Buffer bounds compared against each other in the implication suite.
BUFFER_LADDER = (1, 2, 3, 4)
ROW_ERROR_SAMPLES = 4


@dataclass
class SuiteContext:
    seed: int = DEFAULT_SEED
    budget: int = SELFTEST_BUDGET
    cap: int = DEFAULT_CAP
    generator_cap: int = GENERATOR_CAP
    arena_limit: int = GENERATOR_ARENA_LIMIT
    # Instances that ran into a cap or a limit, per suite.
    skips: Dict[str, int] = field(default_factory=dict)
    # Which verdict path ran for each generated instance.
    paths: List[Dict[str, str]] = field(default_factory=list)

    def rng(self, salt: int) -> np.random.Generator:
        return np.random.default_rng([self.seed, salt])

    def count(self, fraction: float, minimum: int = 1) -> int:
        return max(minimum, int(self.budget * fraction))


def _tally(result: TestResult, name: str, violations: List[str], checked: int) -> bool:
    """One record for a batch of checks; lists at most five violations."""
    if violations:
        shown = "; ".join(violations[:5])
        more = f" (+{len(violations) - 5} more)" if len(violations) > 5 else ""
        result.add_fail(name, f"{len(violations)}/{checked} violations: {shown}{more}")
        return False
    result.add_pass(name, f"{checked} instances")
    return True


def _implies(left: Optional[bool], right: Optional[bool]) -> bool:
    return not (left is True and right is False)


# ---------------------------------------------------------------------------
# Reference verdicts
# ---------------------------------------------------------------------------

def verdict_matrix(result: TestResult, ctx: SuiteContext) -> None:
    result.section("Reference verdict matrix")
    a, b = fixture("branching")
    result.expect_equal("branching: plain fair fails",
                        solve(build_plain_sim_arena(a, b, Acceptance.FAIR)).holds, False)
    for k in range(1, 6):
        arena = build_bounded_buffer_arena(a, b, k, BufferMode.LOOKAHEAD, Acceptance.FAIR)
        result.expect_equal(f"branching: bounded look-ahead fair k={k} fails", solve(arena).holds, False)
    result.expect_equal("branching: look-ahead fair holds",
                        decide(a, b, Relation.LOOKAHEAD_FAIR, ctx.cap).outcome, Outcome.HOLDS)
    result.expect_equal("branching: continuous fair holds",
                        decide(a, b, Relation.CONTINUOUS_FAIR, ctx.cap).outcome, Outcome.HOLDS)
    result.expect_equal("branching: continuous fails on the all-accepting reading",
                        decide(a.all_accepting(), b.all_accepting(), Relation.CONTINUOUS_FAIR,
                               ctx.cap).outcome, Outcome.FAILS)

    a, b = fixture("lookahead-gap")
    result.expect_equal("lookahead-gap: continuous fair holds",
                        decide(a, b, Relation.CONTINUOUS_FAIR, ctx.cap).outcome, Outcome.HOLDS)
    result.expect_equal("lookahead-gap: look-ahead fair fails",
                        decide(a, b, Relation.LOOKAHEAD_FAIR, ctx.cap).outcome, Outcome.FAILS)

    a, b = fixture("inclusion-gap")
    result.expect_equal("inclusion-gap: languages included",
                        language_inclusion(a, b, ctx.cap).verdict, InclusionVerdict.INCLUDED)
    result.expect_equal("inclusion-gap: continuous fair fails",
                        decide(a, b, Relation.CONTINUOUS_FAIR, ctx.cap).outcome, Outcome.FAILS)


# ---------------------------------------------------------------------------
# Relation hierarchy
# ---------------------------------------------------------------------------

def implication_chain(result: TestResult, ctx: SuiteContext) -> None:
    result.section("Implication chain on random pairs")
    rng = ctx.rng(2)
    pairs = ctx.count(1.0)
    violations: List[str] = []
    ladder: List[str] = []
    disagreements: List[str] = []
    skipped = 0
    for i in range(pairs):
        a, b = random_pair(rng, max_states=3)
        plain = solve(build_plain_sim_arena(a, b, Acceptance.FAIR)).holds
        bounded = {
            (mode, k): solve(build_bounded_buffer_arena(a, b, k, mode, Acceptance.FAIR)).holds
            for mode in BufferMode for k in BUFFER_LADDER
        }
        lookahead = decide(a, b, Relation.LOOKAHEAD_FAIR, ctx.cap).holds
        continuous = decide(a, b, Relation.CONTINUOUS_FAIR, ctx.cap).holds
        included = language_inclusion(a, b, ctx.cap).included
        if None in (lookahead, continuous, included):
            skipped += 1
        chain = [("plain", plain), ("bounded-1", bounded[BufferMode.LOOKAHEAD, 1]),
                 ("bounded-2", bounded[BufferMode.LOOKAHEAD, 2]),
                 ("lookahead", lookahead), ("continuous", continuous), ("included", included)]
        for (left_name, left), (right_name, right) in zip(chain, chain[1:]):
            if not _implies(left, right):
                violations.append(f"pair {i}: {left_name} holds but {right_name} fails")

        unbounded = {BufferMode.LOOKAHEAD: lookahead, BufferMode.CONTINUOUS: continuous}
        for mode, k in product(BufferMode, BUFFER_LADDER[:-1]):
            if not _implies(bounded[mode, k], bounded[mode, k + 1]):
                ladder.append(f"pair {i}: {mode.value}-{k} holds but {mode.value}-{k + 1} fails")
        for mode, k in product(BufferMode, BUFFER_LADDER):
            if not _implies(bounded[mode, k], unbounded[mode]):
                ladder.append(f"pair {i}: {mode.value}-{k} holds but unbounded {mode.value} fails")
        for k in BUFFER_LADDER:
            if not _implies(bounded[BufferMode.LOOKAHEAD, k], bounded[BufferMode.CONTINUOUS, k]):
                ladder.append(f"pair {i}: lookahead-{k} holds but continuous-{k} fails")

        for acceptance in Acceptance:
            one = solve(build_plain_sim_arena(a, b, acceptance)).holds
            buffered = solve(build_bounded_buffer_arena(a, b, 1, BufferMode.LOOKAHEAD, acceptance)).holds
            if one != buffered:
                disagreements.append(f"pair {i} {acceptance.value}: plain {one}, look-ahead-1 {buffered}")
    _tally(result, "plain ⇒ bounded-1 ⇒ bounded-2 ⇒ look-ahead ⇒ continuous ⇒ included",
           violations, pairs)
    _tally(result, "bounded k ⇒ k+1 ⇒ unbounded, look-ahead k ⇒ continuous k (k ≤ 4)",
           ladder, pairs)
    _tally(result, "look-ahead k=1 agrees with the plain game (fair, direct, delayed)",
           disagreements, pairs)
    ctx.skips["implication"] = skipped
    rate = skipped / pairs
    if rate > SKIP_RATE_WARNING:
        result.add_warning("cap skip rate", f"{skipped}/{pairs} pairs ({rate:.0%}) hit cap {ctx.cap}")
    else:
        result.add_pass("cap skip rate", f"{skipped}/{pairs} pairs ({rate:.0%})")


# ---------------------------------------------------------------------------
# Monoid
# ---------------------------------------------------------------------------

def monoid_properties(result: TestResult, ctx: SuiteContext) -> None:
    result.section("Transition monoid")
    rng = ctx.rng(3)
    automata = ctx.count(0.25)
    words_each = 20
    product_violations: List[str] = []
    size_violations: List[str] = []
    witness_violations: List[str] = []
    assoc_violations: List[str] = []
    products = 0
    triples = 0
    triples_each = max(1, 200 // automata + 1)
    for i in range(automata):
        a = random_nba(rng, max_states=3)
        try:
            m = build_monoid(a, ctx.cap)
        except CapExceeded:
            continue
        n = len(a.states)
        # [ε] is its own class next to the at most 3^(n²) nonempty-word profiles.
        if len(m) - 1 > 3 ** (n * n):
            size_violations.append(f"automaton {i}: {len(m)} classes for {n} states")
        for e in m:
            if m.word_class(e.witness).index != e.index:
                witness_violations.append(f"automaton {i}: witness of e{e.index} maps elsewhere")
        for _ in range(words_each):
            u = random_word(rng, a.alphabet, 0, 4)
            v = random_word(rng, a.alphabet, 0, 4)
            expected = word_profile(a, u + v)
            products += 1
            if m.compose(m.word_class(u), m.word_class(v)).profile != expected:
                product_violations.append(f"automaton {i}: [{u}]·[{v}]")
            elif compose(word_profile(a, u), word_profile(a, v)) != expected:
                product_violations.append(f"automaton {i}: f_u ∘ f_v for {u}, {v}")
        for _ in range(triples_each):
            x, y, z = (m.elements[int(j)] for j in rng.integers(len(m), size=3))
            triples += 1
            if m.compose(m.compose(x, y), z) != m.compose(x, m.compose(y, z)):
                assoc_violations.append(f"automaton {i}: e{x.index} e{y.index} e{z.index}")
    _tally(result, "class composition matches word profiles", product_violations, products)
    _tally(result, "monoid size bound", size_violations, automata)
    _tally(result, "witness words map back to their class", witness_violations, automata)
    _tally(result, "composition is associative", assoc_violations, triples)


# ---------------------------------------------------------------------------
# Inclusion
# ---------------------------------------------------------------------------

def inclusion_oracle(result: TestResult, ctx: SuiteContext) -> None:
    result.section("Inclusion against exhaustive lasso search")
    rng = ctx.rng(4)
    pairs = ctx.count(2.5)
    disagreements: List[str] = []
    bad_counterexamples: List[str] = []
    skipped = 0
    for i in range(pairs):
        a, b = random_pair(rng, max_states=3)
        answer = language_inclusion(a, b, ctx.cap)
        if answer.included is None:
            skipped += 1
            continue
        naive = exhaustive_inclusion(a, b)
        if naive is not None and answer.included:
            disagreements.append(f"pair {i}: {naive} separates but inclusion reported")
        word = answer.counterexample
        if answer.included is False:
            if word is None or not periodic_membership(a, word) or periodic_membership(b, word):
                bad_counterexamples.append(f"pair {i}: {word}")
    _tally(result, "inclusion agrees with exhaustive search", disagreements, pairs - skipped)
    _tally(result, "counterexamples re-verify", bad_counterexamples, pairs - skipped)
    ctx.skips["inclusion"] = skipped


# ---------------------------------------------------------------------------
# Minimisation
# ---------------------------------------------------------------------------

def minimization(result: TestResult, ctx: SuiteContext) -> None:
    result.section("Minimisation soundness")
    rng = ctx.rng(5)
    count = ctx.count(1.0)
    language: List[str] = []
    growth: List[str] = []
    inclusion_order: List[str] = []
    skipped = 0
    for i in range(count):
        a = random_nba(rng, max_states=4)
        preorders = {(kind, k): compute_preorder(a, kind, k)
                     for kind in PreorderKind for k in (1, 2)}
        for k in (1, 2):
            if not preorders[(PreorderKind.DIRECT, k)].relation <= preorders[(PreorderKind.DELAYED, k)].relation:
                inclusion_order.append(f"automaton {i}: direct-{k} ⊄ delayed-{k}")
        for kind in PreorderKind:
            if not preorders[(kind, 1)].relation <= preorders[(kind, 2)].relation:
                inclusion_order.append(f"automaton {i}: {kind.value}-1 ⊄ {kind.value}-2")

        reduced: List[Tuple[str, Nba]] = []
        for k in (1, 2):
            reduced.append((f"delayed-{k} quotient", quotient(a, preorders[(PreorderKind.DELAYED, k)])))
            reduced.append((f"direct-{k} quotient+prune",
                            minimize_pipeline(a, PreorderKind.DIRECT, k, prune_transitions=True).automaton))
        for label, smaller in reduced:
            if len(smaller.states) > len(a.states) or len(smaller.transitions) > len(a.transitions):
                growth.append(f"automaton {i}: {label} grew")
            outcome = verify_language(a, smaller, ctx.cap)
            if outcome is Outcome.INCONCLUSIVE:
                skipped += 1
            elif outcome is Outcome.FAILS:
                language.append(f"automaton {i}: {label} changed the language")
    _tally(result, "reductions preserve the language", language, count)
    _tally(result, "reductions never grow the automaton", growth, count)
    _tally(result, "direct ⊆ delayed and k=1 ⊆ k=2", inclusion_order, count)
    ctx.skips["minimization"] = skipped

    a = random_nba(rng, max_states=4)
    delayed = compute_preorder(a, PreorderKind.DELAYED, 1)
    result.expect_raises("prune refuses a delayed preorder", DelayedPruningRefused, prune, a, delayed)
    result.expect_raises("pipeline refuses delayed pruning", DelayedPruningRefused,
                         minimize_pipeline, a, PreorderKind.DELAYED, 1, True)


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------

def _tiling_word(tiling, n: int) -> UltimatelyPeriodicWord:
    """$ block_0 $ block_1 ... block_{m-1} #^ω with row r tagged by the bits of r."""
    stem: List[str] = [SEPARATOR]
    for r in range(tiling.height):
        if r > 0:
            stem.append(SEPARATOR)
        row = tiling.grid[r]
        stem.extend(tagged(row[j], (r >> j) & 1) for j in range(n))
    return UltimatelyPeriodicWord.of(stem, (END,))


def _generated_verdict(ctx: SuiteContext, a: Nba, b: Nba, relation: Relation,
                       mode: BufferMode, n: int) -> Tuple[Optional[bool], str]:
    """Quotient verdict, or the bounded-k answer when the quotient is out of reach.

    A bounded win carries over to the unbounded relation; a bounded loss
    does not, so it is returned as None.
    """
    report = decide(a, b, relation, ctx.generator_cap, ctx.arena_limit)
    if report.holds is not None:
        return report.holds, "quotient"
    k = n * 2 ** n + 2
    try:
        arena = build_bounded_buffer_arena(a, b, k, mode, Acceptance.FAIR, ctx.arena_limit)
    except ArenaTooLarge:
        return None, "none"
    logger.info(f"Falling back to bounded-{k} {mode.value} game for {a.name}")
    return (True if solve(arena).holds else None), f"bounded-{k}"


def _differential(ctx: SuiteContext, kind: str, ts, n: int, index: int,
                  mismatches: List[str]) -> None:
    if kind == "pspace":
        a, b = gen_pspace(ts, n)
        holds, path = _generated_verdict(ctx, a, b, Relation.LOOKAHEAD_FAIR, BufferMode.LOOKAHEAD, n)
    else:
        a, b = gen_exptime(ts, n)
        holds, path = _generated_verdict(ctx, a, b, Relation.CONTINUOUS_FAIR, BufferMode.CONTINUOUS, n)
    expected = expected_verdict(kind, ts, n)
    status = "inconclusive"
    if holds is not None:
        status = "agree" if Outcome.of(holds) is expected else "mismatch"
        if status == "mismatch":
            mismatches.append(f"{kind} system {index} n={n}: {path} says {Outcome.of(holds).value}, "
                              f"oracle says {expected.value}")
    ctx.paths.append({"kind": kind, "system": str(index), "n": str(n), "path": path,
                      "expected": expected.value, "status": status})


def _pspace_membership(ts, n: int, index: int, violations: List[str]) -> None:
    a, b = gen_pspace(ts, n)
    tiling = brute_force_tiling(ts, n, 2 ** n)
    if tiling is not None:
        word = _tiling_word(tiling, n)
        if not periodic_membership(a, word):
            violations.append(f"system {index} n={n}: tiling word rejected by A")
        if periodic_membership(b, word):
            violations.append(f"system {index} n={n}: tiling word accepted by B")
    block = [tagged(ts.initial_tile, 0)] * n
    repeated = UltimatelyPeriodicWord.of([SEPARATOR] + block + [SEPARATOR] + block, (END,))
    if not periodic_membership(b, repeated):
        violations.append(f"system {index} n={n}: repeated tag 0 rejected by B")


def _exptime_properties(ts, n: int, index: int, rng: np.random.Generator,
                        violations: List[str]) -> None:
    _, b = gen_exptime(ts, n)
    tiles = list(ts.tiles)
    present = [t for t in tiles if f"B.q.{t}" in b.index]
    rows = [v for v in product(tiles, repeat=n) if ts.final_tile not in v]
    sigma = list(b.alphabet)
    for t in present:
        q = f"B.q.{t}"
        for v in rows:
            if find_path(b, q, ("1",) + v, q) is None:
                violations.append(f"system {index} n={n}: no 1{''.join(v)} loop at {q}")
            for u in present:
                reaches = find_path(b, q, ("0",) + v, f"B.q.{u}") is not None
                if reaches != ((t, u) in ts.vertical):
                    violations.append(f"system {index} n={n}: {q} -0{''.join(v)}-> B.q.{u} is {reaches}")
        start = b.with_initial(q)
        for other in tiles:
            if other == t:
                continue
            period = random_word(rng, sigma, 1, 3)
            word = UltimatelyPeriodicWord.of(("0", other), period)
            if not periodic_membership(start, word):
                violations.append(f"system {index} n={n}: {q} rejects 0 {other} then {period}")
        # Broken repetitions across a 1 and vertical clashes across a 0 are
        # accepted from any bit, final tile included.
        for _ in range(ROW_ERROR_SAMPLES):
            bit = random_word(rng, ["0", "1"], 1, 1)
            v, w = random_word(rng, tiles, n, n), random_word(rng, tiles, n, n)
            period = random_word(rng, sigma, 1, 3)
            if v != w:
                word = UltimatelyPeriodicWord.of(bit + v + ("1",) + w, period)
                if not periodic_membership(start, word):
                    violations.append(f"system {index} n={n}: {q} rejects {word}")
            if any((x, y) not in ts.vertical for x, y in zip(v, w)):
                word = UltimatelyPeriodicWord.of(bit + v + ("0",) + w, period)
                if not periodic_membership(start, word):
                    violations.append(f"system {index} n={n}: {q} rejects {word}")


def generator_differential(result: TestResult, ctx: SuiteContext) -> None:
    result.section("Hardness generators against tiling oracles")
    rng = ctx.rng(6)
    systems = ctx.count(0.05, minimum=10)
    mismatches: List[str] = []
    membership: List[str] = []
    properties: List[str] = []
    acceptance: List[str] = []
    before = len(ctx.paths)
    for index in range(systems):
        ts = random_tiling_system(rng, max_tiles=3)
        try:
            for n in (1, 2):
                _differential(ctx, "pspace", ts, n, index, mismatches)
                _pspace_membership(ts, n, index, membership)
            _differential(ctx, "exptime", ts, 1, index, mismatches)
            for n in (1, 2, 3):
                _exptime_properties(ts, n, index, rng, properties)
        except BudgetExceeded as e:
            result.add_skip(f"system {index}", str(e))
            continue

        a, b = gen_pspace(ts, 1)
        for k in (1, 2):
            try:
                verdicts = {acc: solve(build_bounded_buffer_arena(a, b, k, BufferMode.LOOKAHEAD, acc,
                                                                  ctx.arena_limit)).holds
                            for acc in Acceptance}
            except ArenaTooLarge:
                continue
            if len(set(verdicts.values())) != 1:
                acceptance.append(f"system {index} k={k}: {verdicts}")

    _tally(result, "generated verdicts match the tiling oracles", mismatches, systems)
    _tally(result, "pspace membership properties", membership, systems)
    _tally(result, "exptime path properties", properties, systems)
    _tally(result, "fair, direct and delayed agree on all-accepting pairs", acceptance, systems)

    runs = ctx.paths[before:]
    inconclusive = [r for r in runs if r["status"] == "inconclusive"]
    rate = len(inconclusive) / len(runs) if runs else 0.0
    ctx.skips["generators"] = len(inconclusive)
    listing = ", ".join(f"{r['kind']}#{r['system']}/n={r['n']}" for r in inconclusive[:10])
    if rate >= INCONCLUSIVE_RATE_WARNING:
        result.add_warning("inconclusive generated instances", f"{len(inconclusive)}/{len(runs)}: {listing}")
    else:
        result.add_pass("inconclusive generated instances",
                        f"{len(inconclusive)}/{len(runs)}" + (f": {listing}" if listing else ""))


# ---------------------------------------------------------------------------
# Ramsey factorisation
# ---------------------------------------------------------------------------

def ramsey(result: TestResult, ctx: SuiteContext) -> None:
    result.section("Ramsey factorisation")
    rng = ctx.rng(7)
    wanted = ctx.count(0.5)
    violations: List[str] = []
    found = 0
    for attempt in range(wanted * 5):
        if found >= wanted:
            break
        a = random_nba(rng, max_states=3)
        lasso = random_accepting_lasso(rng, a)
        if lasso is None:
            continue
        try:
            m = build_monoid(a, ctx.cap)
        except CapExceeded:
            continue
        found += 1
        stem = len(lasso.stem_states) - 1
        loop = len(lasso.loop_states) - 1
        run = lasso.unroll(stem + loop * (2 * len(m) + 3))
        triple = ramsey_factorize(a, run)
        if triple is None:
            violations.append(f"attempt {attempt}: no triple on {lasso.word}")
        elif not check_factorisation(a, run, triple):
            violations.append(f"attempt {attempt}: triple {triple} fails the re-check")
    _tally(result, "accepting lassos factorise", violations, found)


# ---------------------------------------------------------------------------
# Solver
# ---------------------------------------------------------------------------

def solver_crosscheck(result: TestResult, ctx: SuiteContext) -> None:
    result.section("Solver against brute-force strategies")
    rng = ctx.rng(8)
    count = ctx.count(0.5)
    disagreements: List[str] = []
    unsound: List[str] = []
    checked = 0
    skipped = 0
    for i in range(count):
        a, b = random_pair(rng, max_states=2)
        for acceptance in (Acceptance.FAIR, Acceptance.DELAYED):
            arena = build_plain_sim_arena(a, b, acceptance)
            verdict = solve(arena)
            try:
                naive = brute_force_parity(arena)
            except BudgetExceeded:
                skipped += 1
                continue
            checked += 1
            if naive != verdict.holds:
                disagreements.append(f"pair {i} {acceptance.value}: solver {verdict.holds}, brute force {naive}")

            region = verdict.region_of(arena, verdict.winner)
            losing_sink = SPOILER_WINS if verdict.winner is Player.DUPLICATOR else DUPLICATOR_WINS

            def opponent(position, successors):
                return successors[int(rng.integers(len(successors)))]

            play = play_against(arena, verdict, opponent, 40)
            if losing_sink in play or any(p not in region for p in play):
                unsound.append(f"pair {i} {acceptance.value}: winner left its region")
    _tally(result, "Zielonka agrees with brute force", disagreements, checked)
    _tally(result, "winning strategies stay in the winning region", unsound, checked)
    ctx.skips["solver"] = skipped


# ---------------------------------------------------------------------------
# Determinism
# ---------------------------------------------------------------------------

def determinism(result: TestResult, ctx: SuiteContext) -> None:
    result.section("Determinism")
    for name in FIXTURE_NAMES:
        a, b = fixture(name)
        for relation in Relation:
            first = decide(a, b, relation, ctx.cap)
            second = decide(a, b, relation, ctx.cap)
            same = (first.summary() == second.summary()
                    and format_certificate(first) == format_certificate(second))
            result.check(f"{name}: {relation.value} report is reproducible", same,
                         "certificates differ between runs")
        table = monoid_table(build_monoid(a, ctx.cap))
        result.check(f"{name}: monoid listing is reproducible",
                     table.equals(monoid_table(build_monoid(a, ctx.cap))))

    ts = random_tiling_system(ctx.rng(9), max_tiles=3)
    first = [emit_nba(x) for x in gen_pspace(ts, 2)]
    second = [emit_nba(x) for x in gen_pspace(ts, 2)]
    result.expect_equal("generated pspace pair is reproducible", first, second)


# ---------------------------------------------------------------------------
# Replay
# ---------------------------------------------------------------------------

def strategy_replay(result: TestResult, ctx: SuiteContext) -> None:
    result.section("Strategy replay")
    a, b = fixture("branching")
    lasso = find_accepting_lasso(a, UltimatelyPeriodicWord.of(("a", "b"), ("a",)))
    for relation in Relation:
        report = decide(a, b, relation, ctx.cap)
        try:
            outcome = replay(report, a, b, lasso)
            result.check(f"branching {relation.value}: Duplicator follows into b2",
                         outcome.final_state == "b2", f"ended in {outcome.final_state}")
        except ReplayFailure as e:
            result.add_fail(f"branching {relation.value}: replay", str(e))

    rng = ctx.rng(10)
    count = ctx.count(0.25)
    failures: List[str] = []
    replayed = 0
    for i in range(count):
        a, b = random_pair(rng, max_states=3)
        relation = Relation.CONTINUOUS_FAIR if i % 2 == 0 else Relation.LOOKAHEAD_FAIR
        report = decide(a, b, relation, ctx.cap)
        if report.holds is not True:
            continue
        lasso = None
        for _ in range(10):
            lasso = find_accepting_lasso(a, random_periodic_word(rng, a.alphabet))
            if lasso is not None:
                break
        if lasso is None:
            continue
        replayed += 1
        try:
            replay(report, a, b, lasso)
        except ReplayFailure as e:
            failures.append(f"pair {i} {relation.value}: {e}")
    _tally(result, "holding strategies replay on random lassos", failures, replayed)


Suite = Callable[[TestResult, SuiteContext], None]

SUITES: Dict[str, Suite] = {
    "verdicts": verdict_matrix,
    "implication": implication_chain,
    "monoid": monoid_properties,
    "inclusion": inclusion_oracle,
    "minimization": minimization,
    "generators": generator_differential,
    "ramsey": ramsey,
    "solver": solver_crosscheck,
    "determinism": determinism,
    "replay": strategy_replay,
}


def run_suites(result: TestResult, ctx: SuiteContext, names: Optional[List[str]] = None) -> None:
    """Run the named suites (all by default); a crashing suite is recorded as a failure."""
    for name in names or list(SUITES):
        if name not in SUITES:
            raise KeyError(f"unknown suite {name!r}; expected one of {', '.join(SUITES)}")
        logger.info(f"Running suite {name} (seed={ctx.seed}, budget={ctx.budget})")
        try:
            SUITES[name](result, ctx)
        except Exception as e:
            logger.error(f"Suite {name} crashed: {e}", exc_info=True)
            result.add_fail(f"{name} suite", f"{type(e).__name__}: {e}")
