"""Concrete replay of a Prover strategy against a Spoiler lasso run.

Each round factorises the remaining Spoiler run as w1 · w2 · w2' with
[w2] = [w2'] idempotent (a Ramsey triple over the union automaton), asks
the Prover strategy for q_i', and realises the claimed class-path by a
path search in the right automaton. In the continuous game Duplicator
stays one w2-block behind Spoiler; in the look-ahead game she flushes.
"""

from dataclasses import dataclass, field
from typing import List, Tuple

from algebra.monoid import ramsey_factorize
from automata.nba import LassoRun, Nba, RunPath, disjoint_union, format_word
from automata.oracles import find_path, word_profile
from games.quotient import ProverTurn, RefuterTurn, Relation, SimulationReport
from utils.errors import InvalidRunError, ReplayFailure
from utils.logger import setup_logger

logger = setup_logger(__name__)

MIN_ROUNDS = 3


@dataclass(frozen=True)
class ReplayRound:
    """One strategy round: Spoiler moved from `spoiler_from` to
    `spoiler_to`, Duplicator consumed word[consumed_from:consumed_to]."""

    refuter: RefuterTurn
    prover: ProverTurn
    answer: RefuterTurn
    spoiler_from: int
    spoiler_to: int
    consumed_from: int
    consumed_to: int


@dataclass
class ReplayResult:
    spoiler_run: RunPath
    duplicator_run: RunPath
    rounds: List[ReplayRound] = field(default_factory=list)

    @property
    def final_state(self) -> str:
        return self.duplicator_run.states[-1]


def replay(report: SimulationReport, a: Nba, b: Nba, lasso: LassoRun,
           rounds: int = MIN_ROUNDS) -> ReplayResult:
    """Play `report`'s Prover strategy along an accepting lasso run of `a`.

    Raises:
        ValueError: when the report does not hold or carries no monoid
        InvalidRunError: when `lasso` is not an accepting lasso of `a`
        ReplayFailure: when a strategy move has no concrete realisation
    """
    if report.holds is not True or report.monoid is None:
        raise ValueError("replay needs a holding report with its monoid")
    lasso.validate(a)
    rounds = max(rounds, MIN_ROUNDS)
    continuous = report.relation is Relation.CONTINUOUS_FAIR
    union = disjoint_union(a, b)
    monoid = report.monoid
    if monoid.automaton != union.automaton:
        raise ValueError("report was computed for a different automaton pair")

    stem_len = len(lasso.stem_states) - 1
    loop_len = len(lasso.loop_states) - 1
    # A triple is guaranteed once the loop is repeated past the idempotent power.
    window_limit = stem_len + loop_len * (2 * len(monoid) + 3)

    def spoiler_prefix(length: int) -> RunPath:
        return lasso.unroll(length)

    def find_triple(position: int) -> Tuple[int, int, int, RunPath]:
        window = stem_len + 4 * loop_len
        while True:
            run = spoiler_prefix(position + window)
            suffix = RunPath(tuple(union.left_state(q) for q in run.states[position:]),
                             run.word[position:])
            triple = ramsey_factorize(union.automaton, suffix)
            if triple is not None:
                i, j, k = triple
                return position + i, position + j, position + k, run
            if window >= window_limit:
                raise ReplayFailure(f"no Ramsey triple within {window} steps of position {position}")
            window = min(window * 2, window_limit)

    spoiler_pos = 0
    dup_pos = 0
    dup_states = [b.initial]
    position = RefuterTurn(a.initial, b.initial, monoid.identity.index)
    history: List[ReplayRound] = []

    for _ in range(rounds):
        i, j, k, run = find_triple(spoiler_pos)
        word = run.word
        w1 = monoid.word_class(word[spoiler_pos:i])
        w2 = monoid.word_class(word[i:j])
        target = run.states[i]
        prover = ProverTurn(position.spoiler, position.duplicator, position.beta,
                            w1.index, w2.index, target)
        answer = report.strategy.get(prover)
        if answer is None:
            raise ReplayFailure(f"strategy has no answer at {prover.canonical()}")
        if not isinstance(answer, RefuterTurn):
            raise ReplayFailure(f"strategy leaves the game at {prover.canonical()}")

        consume_to = j
        spoiler_to = k if continuous else j
        segment = word[dup_pos:consume_to]
        path = find_path(b, dup_states[-1], segment, answer.duplicator)
        if path is None:
            raise ReplayFailure(
                f"no path of {b.name} from {dup_states[-1]} to {answer.duplicator} "
                f"on {format_word(segment)}")

        loop_word = word[j:k] if continuous else word[i:j]
        loop = word_profile(b, loop_word)
        row = b.index[answer.duplicator]
        if not loop.has_accepting_path(row, row):
            raise ReplayFailure(
                f"{answer.duplicator} has no accepting loop on {format_word(loop_word)}")
        if continuous and monoid.word_class(word[j:k]).index != answer.beta:
            raise ReplayFailure(f"buffer {format_word(word[j:k])} left the class e{answer.beta}")

        history.append(ReplayRound(position, prover, answer, spoiler_pos, spoiler_to,
                                   dup_pos, consume_to))
        logger.debug(f"Round {len(history)}: {prover.canonical()} -> {answer.canonical()}")
        dup_states.extend(path[1:])
        dup_pos = consume_to
        spoiler_pos = spoiler_to
        position = answer

    spoiler_run = spoiler_prefix(spoiler_pos)
    duplicator_run = RunPath(tuple(dup_states), spoiler_run.word[:dup_pos])
    try:
        duplicator_run.validate(b)
    except InvalidRunError as e:
        raise ReplayFailure(f"replayed run is not a run of {b.name}: {e}") from e
    logger.info(f"Replayed {len(history)} rounds: Spoiler at {spoiler_pos}, Duplicator at {dup_pos}")
    return ReplayResult(spoiler_run, duplicator_run, history)
