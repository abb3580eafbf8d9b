"""Subcommand execution.

Exit codes: 0 positive verdict or success, 1 negative verdict, 2 error or
inconclusive. The only standard-output line in non-verbose mode is
`RESULT holds|fails|inconclusive`; listings go to standard error unless
--verbose routes them to standard output.
"""

import sys
from functools import partial
from pathlib import Path
from typing import Callable, Dict, Optional, Sequence, TextIO

from algebra.inclusion import language_inclusion
from algebra.monoid import build_monoid, monoid_table
from automata.formats import emit_nba, load_nba
from automata.nba import Nba, UltimatelyPeriodicWord
from automata.oracles import find_accepting_lasso
from checks.selftest import run_selftest
from cli.batch import requested_log_level, run_batch
from cli.parser import RunConfig, build_parser, parse_args
from games.arena import Outcome, arena_to_dot
from games.certificate import format_strategy, write_certificate
from games.quotient import Relation, decide
from games.replay import replay
from games.simulation import (Acceptance, BufferMode, build_bounded_buffer_arena,
                              build_plain_sim_arena)
from games.solver import solve
from generators.hardness import expected_verdict, gen_exptime, gen_pspace
from generators.tiling import parse_tiling_system
from reduction.preorder import PreorderKind
from reduction.reduce import counterexample, minimize_pipeline, verify_language
from utils.errors import ArenaTooLarge, BudgetExceeded, BuffsimError, CapExceeded, UsageError
from utils.logger import set_log_level, setup_logger

logger = setup_logger(__name__)

EXIT_CODES = {Outcome.HOLDS: 0, Outcome.FAILS: 1, Outcome.INCONCLUSIVE: 2}
QUOTIENT_RELATIONS = {"continuous": Relation.CONTINUOUS_FAIR, "lookahead": Relation.LOOKAHEAD_FAIR}


def _write(path: Path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")
    logger.info(f"Wrote {path}")


class CommandExecutor:
    """Runs one validated RunConfig and reports through `out` and `err`."""

    def __init__(self, out: Optional[TextIO] = None, err: Optional[TextIO] = None,
                 adjust_logging: bool = True):
        self.out = out if out is not None else sys.stdout
        self.err = err if err is not None else sys.stderr
        self.verbose = False
        # Batch workers share the process-wide log level set by the batch run.
        self.adjust_logging = adjust_logging

    @property
    def listing(self) -> TextIO:
        return self.out if self.verbose else self.err

    def emit(self, outcome: Outcome) -> int:
        print(f"RESULT {outcome.value}", file=self.out)
        return EXIT_CODES[outcome]

    def execute(self, config: RunConfig) -> int:
        """Dispatch to the subcommand; library errors become exit code 2."""
        self.verbose = config.verbose
        level = requested_log_level(config.debug, config.verbose)
        if self.adjust_logging and level is not None:
            set_log_level(level)
        function_map: Dict[str, Callable[[RunConfig], int]] = {
            "sim": self._sim,
            "incl": self._incl,
            "minimize": self._minimize,
            "gen": self._gen,
            "monoid": self._monoid,
            "selftest": self._selftest,
            "batch": self._batch,
        }
        if config.subcommand not in function_map:
            logger.error(f"Unknown subcommand: {config.subcommand}")
            return 2
        try:
            return function_map[config.subcommand](config)
        except (CapExceeded, ArenaTooLarge) as e:
            logger.error(f"{config.subcommand}: {e}")
            return self.emit(Outcome.INCONCLUSIVE)
        except (BuffsimError, ValueError, OSError) as e:
            logger.error(f"{config.subcommand} failed: {e}")
            return 2

    def _pair(self, config: RunConfig):
        left, right = config.inputs[:2]
        return load_nba(left), load_nba(right)

    def _sim(self, config: RunConfig) -> int:
        a, b = self._pair(config)
        if config.relation in QUOTIENT_RELATIONS:
            return self._quotient_sim(config, a, b)

        acceptance = Acceptance(config.acceptance)
        if config.relation == "bounded":
            arena = build_bounded_buffer_arena(a, b, config.k, BufferMode(config.mode), acceptance)
        else:
            arena = build_plain_sim_arena(a, b, acceptance)
        verdict = solve(arena)
        if config.certificate is not None:
            _write(config.certificate, format_strategy(arena, verdict))
        if config.dot is not None:
            _write(config.dot, arena_to_dot(arena, verdict))
        return self.emit(Outcome.of(verdict.holds))

    def _quotient_sim(self, config: RunConfig, a: Nba, b: Nba) -> int:
        report = decide(a, b, QUOTIENT_RELATIONS[config.relation], config.cap)
        print(report.summary(), file=self.listing)
        if report.holds is None:
            return self.emit(Outcome.INCONCLUSIVE)
        if config.certificate is not None:
            write_certificate(report, config.certificate)
        if config.dot is not None:
            _write(config.dot, arena_to_dot(report.arena, report.verdict))
        if config.replay is not None:
            if not report.holds:
                logger.warning("Replay skipped: the relation does not hold")
            else:
                word = UltimatelyPeriodicWord.parse(config.replay, a.alphabet)
                lasso = find_accepting_lasso(a, word)
                if lasso is None:
                    logger.error(f"{word} is not accepted by {a.name}")
                    return 2
                outcome = replay(report, a, b, lasso)
                for i, r in enumerate(outcome.rounds, start=1):
                    print(f"round {i}: {r.prover.canonical()} -> {r.answer.canonical()} "
                          f"(Spoiler {r.spoiler_from}..{r.spoiler_to}, "
                          f"Duplicator {r.consumed_from}..{r.consumed_to})", file=self.listing)
                print(f"Duplicator run: {' '.join(outcome.duplicator_run.states)}", file=self.listing)
        return self.emit(report.outcome)

    def _incl(self, config: RunConfig) -> int:
        a, b = self._pair(config)
        answer = language_inclusion(a, b, config.cap)
        print(f"monoid={answer.monoid_size} pairs={answer.pairs_checked}", file=self.listing)
        if answer.counterexample is not None:
            print(f"counterexample: {answer.counterexample}", file=self.err)
        return self.emit(Outcome.of(answer.included))

    def _minimize(self, config: RunConfig) -> int:
        a = load_nba(config.inputs[0])
        reduced = minimize_pipeline(a, PreorderKind(config.relation), config.k, config.prune)
        fmt = "ba" if config.output.endswith(".ba") else "native"
        _write(Path(config.output), emit_nba(reduced.automaton, fmt))
        print(reduced.summary(), file=self.listing)
        if not config.verify:
            return self.emit(Outcome.HOLDS)
        outcome = verify_language(a, reduced.automaton, config.cap)
        if outcome is Outcome.FAILS:
            logger.error(f"Reduction changed the language; witness "
                         f"{counterexample(a, reduced.automaton, config.cap)}")
        return self.emit(outcome)

    def _gen(self, config: RunConfig) -> int:
        ts = parse_tiling_system(Path(config.inputs[0]).read_text(encoding="utf-8"))
        build = gen_pspace if config.kind == "pspace" else gen_exptime
        a, b = build(ts, config.n)
        _write(Path(f"{config.output}.A.nba"), emit_nba(a))
        _write(Path(f"{config.output}.B.nba"), emit_nba(b))
        try:
            expected = expected_verdict(config.kind, ts, config.n)
        except BudgetExceeded as e:
            logger.error(f"Oracle verdict unavailable: {e}")
            return self.emit(Outcome.INCONCLUSIVE)
        print(f"RESULT {expected.value}", file=self.out)
        return 0

    def _monoid(self, config: RunConfig) -> int:
        a = load_nba(config.inputs[0])
        m = build_monoid(a, config.cap)
        print(f"elements: {len(m)}", file=self.listing)
        print(f"idempotents: {len(m.idempotents())}", file=self.listing)
        print(monoid_table(m).to_string(index=False), file=self.listing)
        if config.dot is not None:
            _write(config.dot, m.cayley_dot())
        return self.emit(Outcome.HOLDS)

    def _selftest(self, config: RunConfig) -> int:
        report = run_selftest(config.seed, config.budget, config.cap, stream=self.listing,
                              suites=config.suites, generator_cap=config.generator_cap)
        print(report.to_text(), file=self.listing)
        return self.emit(Outcome.HOLDS if report.ok else Outcome.FAILS)

    def _batch(self, config: RunConfig) -> int:
        outcome = run_batch(config.inputs[0], config.jobs, self.err,
                            partial(run_argv, adjust_logging=False))
        return self.emit(outcome)


def run_argv(argv: Sequence[str], out: Optional[TextIO] = None,
             err: Optional[TextIO] = None, adjust_logging: bool = True) -> int:
    """Parse `argv` and execute it; usage errors print the usage line and return 2."""
    err = err if err is not None else sys.stderr
    try:
        config = parse_args(argv)
    except UsageError as e:
        print(build_parser().format_usage().rstrip(), file=err)
        logger.error(f"Usage error: {e}")
        return 2
    return CommandExecutor(out, err, adjust_logging).execute(config)
