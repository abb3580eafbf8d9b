"""Two-player game arenas with safety, reachability and parity conditions.

Duplicator (the simulating side, Prover in quotient games) is player 0 and
wins even parity, safety, and reachability objectives; Spoiler (Refuter)
is player 1.
"""

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import (Any, Callable, Dict, FrozenSet, Hashable, Iterable, List,
                    NamedTuple, Optional, Tuple)

import graphviz

from utils.config import MAX_ARENA_POSITIONS
from utils.errors import ArenaTooLarge
from utils.logger import setup_logger

logger = setup_logger(__name__)

Position = Hashable


class Player(Enum):
    DUPLICATOR = 0
    SPOILER = 1

    @property
    def opponent(self) -> "Player":
        return Player.SPOILER if self is Player.DUPLICATOR else Player.DUPLICATOR


class Sink(NamedTuple):
    """Absorbing position that decides the play for `winner`."""

    winner: Player

    def canonical(self) -> str:
        return f"SINK({self.winner.name.lower()})"


DUPLICATOR_WINS = Sink(Player.DUPLICATOR)
SPOILER_WINS = Sink(Player.SPOILER)


class Condition:
    """Winning condition, stated from Duplicator's point of view."""

    name = "condition"


@dataclass(frozen=True)
class Safety(Condition):
    """Duplicator wins iff no position of `unsafe` is ever visited."""

    unsafe: FrozenSet[Position]
    name = "safety"


@dataclass(frozen=True)
class Reachability(Condition):
    """Duplicator wins iff some position of `target` is visited."""

    target: FrozenSet[Position]
    name = "reachability"


@dataclass(frozen=True, eq=False)
class Parity(Condition):
    """Duplicator wins iff the largest priority seen infinitely often is even."""

    priority: Dict[Position, int] = field(default_factory=dict)
    name = "parity"

    def of(self, position: Position) -> int:
        return self.priority.get(position, 0)


def canonical(position: Position) -> str:
    """Stable textual id of a position, used in certificates and DOT."""
    describe = getattr(position, "canonical", None)
    if callable(describe):
        return describe()
    return str(position)


class GameArena:
    """Explicit game graph with ordered successor lists.

    A position without successors is lost by its owner.
    """

    def __init__(self,
                 start: Position,
                 owner: Dict[Position, Player],
                 successors: Dict[Position, Tuple[Position, ...]],
                 condition: Condition,
                 label: str = ""):
        self.start = start
        self.owner = owner
        self.successors = successors
        self.condition = condition
        self.label = label
        self.positions: List[Position] = list(owner)
        self._predecessors: Optional[Dict[Position, List[Position]]] = None

    def __len__(self) -> int:
        return len(self.positions)

    @property
    def edge_count(self) -> int:
        return sum(len(s) for s in self.successors.values())

    def predecessors(self) -> Dict[Position, List[Position]]:
        if self._predecessors is None:
            preds: Dict[Position, List[Position]] = {p: [] for p in self.positions}
            for p in self.positions:
                for s in self.successors[p]:
                    preds[s].append(p)
            self._predecessors = preds
        return self._predecessors

    def validate(self) -> None:
        """Raise ValueError if an edge or the start leaves the arena."""
        if self.start not in self.owner:
            raise ValueError("start position is not part of the arena")
        for p in self.positions:
            for s in self.successors.get(p, ()):
                if s not in self.owner:
                    raise ValueError(f"edge {canonical(p)} -> {canonical(s)} leaves the arena")

    def stats(self) -> Dict[str, int]:
        return {"positions": len(self.positions), "edges": self.edge_count}


def explore(start: Position,
            expand: Callable[[Position], Tuple[Player, Iterable[Position]]],
            condition_factory: Callable[[List[Position]], Condition],
            label: str = "",
            limit: Optional[int] = None) -> GameArena:
    """Build the arena reachable from `start` breadth-first.

    Args:
        start: Initial position
        expand: Maps a position to its owner and ordered successors
        condition_factory: Builds the winning condition from the explored positions
        label: Name used in logs and DOT output
        limit: Position limit; defaults to the configured maximum

    Raises:
        ArenaTooLarge: when more than `limit` positions are reachable
    """
    limit = MAX_ARENA_POSITIONS if limit is None else limit
    owner: Dict[Position, Player] = {}
    successors: Dict[Position, Tuple[Position, ...]] = {}
    queue = deque([start])
    discovered = {start}
    while queue:
        position = queue.popleft()
        player, succ = expand(position)
        succ = tuple(dict.fromkeys(succ))
        owner[position] = player
        successors[position] = succ
        for s in succ:
            if s not in discovered:
                discovered.add(s)
                if len(discovered) > limit:
                    raise ArenaTooLarge(limit)
                queue.append(s)
    positions = list(owner)
    arena = GameArena(start, owner, successors, condition_factory(positions), label)
    logger.debug(f"Explored arena {label}: {len(arena)} positions, {arena.edge_count} edges")
    return arena


def expand_sink(sink: Sink) -> Tuple[Player, Tuple[Position, ...]]:
    return sink.winner.opponent, (sink,)


@dataclass
class Verdict:
    """Solver outcome from the start position.

    `strategy` maps winner-owned positions of the winner's region to the
    chosen successor; `duplicator_region` is Duplicator's winning region.
    """

    holds: bool
    winner: Player
    strategy: Dict[Position, Position]
    duplicator_region: FrozenSet[Position]
    stats: Dict[str, Any] = field(default_factory=dict)

    def region_of(self, arena: GameArena, player: Player) -> FrozenSet[Position]:
        if player is Player.DUPLICATOR:
            return self.duplicator_region
        return frozenset(p for p in arena.positions if p not in self.duplicator_region)


def play_against(arena: GameArena,
                 verdict: Verdict,
                 opponent_choice: Callable[[Position, Tuple[Position, ...]], Position],
                 max_steps: int) -> List[Position]:
    """Play the winner's strategy against an arbitrary opponent.

    Stops at a dead end or after `max_steps` moves.
    """
    play = [arena.start]
    position = arena.start
    for _ in range(max_steps):
        succ = arena.successors.get(position, ())
        if not succ:
            break
        if arena.owner[position] is verdict.winner:
            position = verdict.strategy.get(position, succ[0])
        else:
            position = opponent_choice(position, succ)
        play.append(position)
    return play


def arena_to_dot(arena: GameArena, verdict: Optional[Verdict] = None) -> str:
    """DOT source; Spoiler positions are boxes, strategy edges bold."""
    g = graphviz.Digraph(arena.label or "arena")
    ids = {p: f"p{i}" for i, p in enumerate(arena.positions)}
    for p in arena.positions:
        shape = "box" if arena.owner[p] is Player.SPOILER else "ellipse"
        attrs = {"shape": shape}
        if isinstance(arena.condition, Parity):
            attrs["xlabel"] = str(arena.condition.of(p))
        if p == arena.start:
            attrs["penwidth"] = "2"
        g.node(ids[p], label=graphviz.nohtml(canonical(p)), **attrs)
    for p in arena.positions:
        chosen = verdict.strategy.get(p) if verdict else None
        for s in arena.successors[p]:
            g.edge(ids[p], ids[s], **({"style": "bold"} if s == chosen else {}))
    return g.source


class Outcome(Enum):
    """Three-valued answer of every decision procedure."""

    HOLDS = "holds"
    FAILS = "fails"
    INCONCLUSIVE = "inconclusive"

    @classmethod
    def of(cls, holds: Optional[bool]) -> "Outcome":
        if holds is None:
            return cls.INCONCLUSIVE
        return cls.HOLDS if holds else cls.FAILS
