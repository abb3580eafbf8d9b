"""Quotient games over the transition monoid.

Refuter abstracts Spoiler: from (q, q', β) he names classes [w1], [w2]
and a state q_i of the left automaton with q --w1--> q_i and an accepting
w2-loop on q_i, [w2] idempotent. Prover abstracts Duplicator and answers
with q_i' reached from q' on β·w1·w2 (continuous) or w1·w2 (look-ahead)
that carries an accepting w2-loop. In the continuous game the abstract
buffer becomes [w2]. Prover wins every infinite play and every play in
which Refuter is stuck.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, NamedTuple, Optional, Tuple

from algebra.monoid import MonoidElement, TransitionMonoid, build_monoid
from automata.nba import DisjointUnion, Nba, disjoint_union
from games.arena import (DUPLICATOR_WINS, SPOILER_WINS, GameArena, Outcome, Player,
                         Position, Safety, Sink, Verdict, expand_sink, explore)
from games.solver import solve
from utils.errors import ArenaTooLarge, CapExceeded
from utils.logger import setup_logger

logger = setup_logger(__name__)


class Relation(Enum):
    CONTINUOUS_FAIR = "continuous-fair"
    LOOKAHEAD_FAIR = "lookahead-fair"


class RefuterTurn(NamedTuple):
    spoiler: str
    duplicator: str
    beta: int

    def canonical(self) -> str:
        return f"R({self.spoiler},{self.duplicator},e{self.beta})"


class ProverTurn(NamedTuple):
    spoiler: str
    duplicator: str
    beta: int
    w1: int
    w2: int
    target: str

    def canonical(self) -> str:
        return (f"P({self.spoiler},{self.duplicator},e{self.beta},"
                f"e{self.w1},e{self.w2},{self.target})")


RefuterMove = Tuple[MonoidElement, MonoidElement, str]


class _QuotientBuilder:
    """Shared move generation for both quotient games."""

    def __init__(self, a: Nba, b: Nba, m: TransitionMonoid, continuous: bool):
        union = disjoint_union(a, b)
        if m.automaton != union.automaton:
            raise ValueError("monoid was not built for the disjoint union of the two automata")
        self.a = a
        self.b = b
        self.m = m
        self.union: DisjointUnion = union
        self.continuous = continuous
        self._refuter_moves: Dict[str, List[RefuterMove]] = {}
        self._loops = [e for e in m.idempotents() if not e.is_identity]

    def refuter_moves(self, q: str) -> List[RefuterMove]:
        """All (w1, w2, q_i) available from q, in witness order."""
        if q not in self._refuter_moves:
            row = self.union.left[q]
            moves: List[Tuple[Tuple, RefuterMove]] = []
            for w1 in self.m.elements:
                for target in self.a.states:
                    col = self.union.left[target]
                    if not w1.profile.has_path(row, col):
                        continue
                    for w2 in self._loops:
                        if w2.profile.has_accepting_path(col, col):
                            key = (w1.witness, w2.witness, self.a.index[target])
                            moves.append((key, (w1, w2, target)))
            moves.sort(key=lambda item: item[0])
            self._refuter_moves[q] = [move for _, move in moves]
        return self._refuter_moves[q]

    def prover_moves(self, duplicator: str, step: MonoidElement,
                     loop: MonoidElement) -> List[str]:
        """States q_i' of the right automaton reachable on `step` from
        `duplicator` that carry an accepting `loop`-loop."""
        row = self.union.right[duplicator]
        answers = []
        for target in self.b.states:
            col = self.union.right[target]
            if step.profile.has_path(row, col) and loop.profile.has_accepting_path(col, col):
                answers.append(target)
        return answers

    def expand(self, position: Position):
        if isinstance(position, Sink):
            return expand_sink(position)
        m = self.m
        if isinstance(position, RefuterTurn):
            moves: List[Position] = [
                ProverTurn(position.spoiler, position.duplicator, position.beta,
                           w1.index, w2.index, target)
                for w1, w2, target in self.refuter_moves(position.spoiler)
            ]
            return Player.SPOILER, moves or [DUPLICATOR_WINS]

        w1 = m.elements[position.w1]
        w2 = m.elements[position.w2]
        step = m.compose(w1, w2)
        if self.continuous:
            step = m.compose(m.elements[position.beta], step)
        next_beta = w2.index if self.continuous else m.identity.index
        answers: List[Position] = [
            RefuterTurn(position.target, target, next_beta)
            for target in self.prover_moves(position.duplicator, step, w2)
        ]
        return Player.DUPLICATOR, answers or [SPOILER_WINS]

    def build(self, limit: Optional[int] = None) -> GameArena:
        start = RefuterTurn(self.a.initial, self.b.initial, self.m.identity.index)
        kind = "continuous" if self.continuous else "lookahead"
        label = f"{kind}-quotient({self.a.name},{self.b.name})"
        arena = explore(start, self.expand,
                        lambda positions: Safety(frozenset(
                            p for p in positions if p == SPOILER_WINS)),
                        label, limit)
        logger.info(f"Built {label}: {len(arena)} positions over {len(self.m)} classes")
        return arena


def build_continuous_quotient(a: Nba, b: Nba, m: TransitionMonoid,
                              limit: Optional[int] = None) -> GameArena:
    """Continuous quotient game; `m` is the monoid of a ⊎ b."""
    return _QuotientBuilder(a, b, m, continuous=True).build(limit)


def build_lookahead_quotient(a: Nba, b: Nba, m: TransitionMonoid,
                             limit: Optional[int] = None) -> GameArena:
    """Look-ahead quotient game: no abstract buffer, |Q|² Refuter positions at most."""
    return _QuotientBuilder(a, b, m, continuous=False).build(limit)


@dataclass
class SimulationReport:
    """Outcome of a quotient-game decision.

    `strategy` is the winner's positional strategy (Prover's when the
    relation holds, Refuter's otherwise); `witness_words` covers every
    class named by a strategy position.
    """

    relation: Relation
    outcome: Outcome
    monoid_size: int
    arena_size: int = 0
    winner: Optional[Player] = None
    strategy: Dict[Position, Position] = field(default_factory=dict)
    witness_words: Dict[int, Tuple[str, ...]] = field(default_factory=dict)
    arena: Optional[GameArena] = None
    monoid: Optional[TransitionMonoid] = None
    verdict: Optional[Verdict] = None

    @property
    def holds(self) -> Optional[bool]:
        if self.outcome is Outcome.INCONCLUSIVE:
            return None
        return self.outcome is Outcome.HOLDS

    def summary(self) -> str:
        return (f"relation={self.relation.value} outcome={self.outcome.value} "
                f"monoid={self.monoid_size} arena={self.arena_size} "
                f"strategy-edges={len(self.strategy)}")


def _used_classes(strategy: Dict[Position, Position]) -> List[int]:
    used = set()
    for source, target in strategy.items():
        for p in (source, target):
            if isinstance(p, RefuterTurn):
                used.add(p.beta)
            elif isinstance(p, ProverTurn):
                used.update((p.beta, p.w1, p.w2))
    return sorted(used)


def decide(a: Nba, b: Nba, relation: Relation, cap: int,
           limit: Optional[int] = None) -> SimulationReport:
    """Decide continuous or look-ahead fair simulation of `a` by `b`.

    Never answers a boolean past the monoid cap: CapExceeded and oversized
    arenas yield an INCONCLUSIVE report.
    """
    relation = Relation(relation)
    union = disjoint_union(a, b)
    try:
        monoid = build_monoid(union.automaton, cap)
    except CapExceeded as e:
        logger.warning(f"{relation.value}: {e}")
        return SimulationReport(relation, Outcome.INCONCLUSIVE, e.partial_size)

    try:
        if relation is Relation.CONTINUOUS_FAIR:
            arena = build_continuous_quotient(a, b, monoid, limit)
        else:
            arena = build_lookahead_quotient(a, b, monoid, limit)
    except ArenaTooLarge as e:
        logger.warning(f"{relation.value}: {e}")
        return SimulationReport(relation, Outcome.INCONCLUSIVE, len(monoid), monoid=monoid)

    verdict = solve(arena)
    witness_words = {i: monoid.elements[i].witness for i in _used_classes(verdict.strategy)}
    report = SimulationReport(relation, Outcome.of(verdict.holds), len(monoid), len(arena),
                              verdict.winner, verdict.strategy, witness_words, arena,
                              monoid, verdict)
    logger.info(f"Decided {report.summary()}")
    return report
