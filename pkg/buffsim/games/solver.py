"""Attractor and Zielonka solvers with deterministic positional strategies."""

from collections import deque
from typing import Callable, Dict, List, Set, Tuple

from games.arena import (DUPLICATOR_WINS, SPOILER_WINS, GameArena, Parity, Player,
                         Position, Reachability, Safety, Sink, Verdict)
from utils.logger import setup_logger

logger = setup_logger(__name__)

Strategy = Dict[Position, Position]


class _View:
    """Total version of an arena: dead ends move to the opponent's sink."""

    def __init__(self, arena: GameArena):
        self.positions: List[Position] = list(arena.positions)
        self.owner: Dict[Position, Player] = dict(arena.owner)
        self.successors: Dict[Position, Tuple[Position, ...]] = {}
        self.virtual: Set[Position] = set()
        for p in arena.positions:
            succ = arena.successors.get(p, ())
            if not succ:
                sink = SPOILER_WINS if self.owner[p] is Player.DUPLICATOR else DUPLICATOR_WINS
                succ = (sink,)
                self._add_sink(sink)
            self.successors[p] = succ
        self.predecessors: Dict[Position, List[Position]] = {p: [] for p in self.positions}
        for p in self.positions:
            for s in self.successors[p]:
                self.predecessors[s].append(p)
        self.attractor_calls = 0

    def _add_sink(self, sink: Sink) -> None:
        if sink in self.owner:
            return
        self.positions.append(sink)
        self.owner[sink] = sink.winner.opponent
        self.successors[sink] = (sink,)
        self.virtual.add(sink)


def attractor(view: _View, target: Set[Position], player: Player,
              within: Set[Position]) -> Tuple[Set[Position], Strategy]:
    """Positions of `within` from which `player` forces a visit to `target`.

    Returns the attractor and, for player-owned positions outside
    `target`, the first successor (in order) that makes progress.
    """
    view.attractor_calls += 1
    rank: Dict[Position, int] = {}
    remaining: Dict[Position, int] = {}
    queue = deque()
    for v in view.positions:
        if v in within and v in target:
            rank[v] = 0
            queue.append(v)
    for v in view.positions:
        if v in within and v not in rank and view.owner[v] is not player:
            remaining[v] = sum(1 for s in view.successors[v] if s in within)
            if remaining[v] == 0:
                rank[v] = 0
                queue.append(v)

    while queue:
        u = queue.popleft()
        for v in view.predecessors[u]:
            if v not in within or v in rank:
                continue
            if view.owner[v] is player:
                rank[v] = rank[u] + 1
                queue.append(v)
            else:
                remaining[v] -= 1
                if remaining[v] == 0:
                    rank[v] = rank[u] + 1
                    queue.append(v)

    strategy: Strategy = {}
    for v in view.positions:
        if v in rank and rank[v] > 0 and view.owner[v] is player and v not in target:
            for s in view.successors[v]:
                if s in rank and rank[s] < rank[v]:
                    strategy[v] = s
                    break
    return set(rank), strategy


def _stay_in(view: _View, region: Set[Position], player: Player) -> Strategy:
    """First successor inside `region` for every player-owned position of it."""
    strategy: Strategy = {}
    for v in view.positions:
        if v in region and view.owner[v] is player:
            for s in view.successors[v]:
                if s in region:
                    strategy[v] = s
                    break
    return strategy


def _solve_safety(view: _View, unsafe: Set[Position]) -> Tuple[Set[Position], Strategy, Strategy]:
    everything = set(view.positions)
    lost, spoiler_strategy = attractor(view, unsafe | {SPOILER_WINS}, Player.SPOILER, everything)
    region = everything - lost
    return region, _stay_in(view, region, Player.DUPLICATOR), spoiler_strategy


def _solve_reachability(view: _View, target: Set[Position]) -> Tuple[Set[Position], Strategy, Strategy]:
    everything = set(view.positions)
    region, duplicator_strategy = attractor(view, target | {DUPLICATOR_WINS},
                                            Player.DUPLICATOR, everything)
    spoiler_strategy = _stay_in(view, everything - region, Player.SPOILER)
    return region, duplicator_strategy, spoiler_strategy


def _zielonka(view: _View, nodes: Set[Position],
              priority: Callable[[Position], int]) -> Tuple[Dict[int, Set[Position]], Dict[int, Strategy]]:
    """Zielonka's recursion; the second recursive call is unrolled into a loop."""
    won: Dict[int, Set[Position]] = {0: set(), 1: set()}
    strategies: Dict[int, Strategy] = {0: {}, 1: {}}
    nodes = set(nodes)
    while nodes:
        top = max(priority(v) for v in nodes)
        me = top % 2
        other = 1 - me
        player = Player(me)
        tops = {v for v in nodes if priority(v) == top}
        a, a_strategy = attractor(view, tops, player, nodes)
        sub_won, sub_strategies = _zielonka(view, nodes - a, priority)

        if not sub_won[other]:
            won[me] |= nodes
            strategies[me].update(sub_strategies[me])
            strategies[me].update(a_strategy)
            for v in view.positions:
                if v in tops and view.owner[v] is player:
                    strategies[me][v] = next(s for s in view.successors[v] if s in nodes)
            return won, strategies

        b, b_strategy = attractor(view, sub_won[other], Player(other), nodes)
        won[other] |= b
        strategies[other].update({v: s for v, s in sub_strategies[other].items()
                                  if v in sub_won[other]})
        strategies[other].update(b_strategy)
        nodes -= b
    return won, strategies


def _solve_parity(view: _View, condition: Parity) -> Tuple[Set[Position], Strategy, Strategy]:
    def priority(v: Position) -> int:
        if v == SPOILER_WINS:
            return 1
        if v == DUPLICATOR_WINS:
            return 0
        return condition.of(v)

    won, strategies = _zielonka(view, set(view.positions), priority)
    return won[0], strategies[0], strategies[1]


def solve(arena: GameArena) -> Verdict:
    """Winner from the start position plus the winner's positional strategy.

    Ties are broken by the first successor in the arena's order, so equal
    arenas always yield equal strategies.
    """
    view = _View(arena)
    condition = arena.condition
    if isinstance(condition, Safety):
        region, dup_strategy, spo_strategy = _solve_safety(view, set(condition.unsafe))
    elif isinstance(condition, Reachability):
        region, dup_strategy, spo_strategy = _solve_reachability(view, set(condition.target))
    elif isinstance(condition, Parity):
        region, dup_strategy, spo_strategy = _solve_parity(view, condition)
    else:
        raise TypeError(f"unsupported winning condition: {condition!r}")

    holds = arena.start in region
    winner = Player.DUPLICATOR if holds else Player.SPOILER
    chosen = dup_strategy if holds else spo_strategy
    real = set(arena.positions)
    winner_region = region if holds else set(view.positions) - region
    strategy = {v: s for v, s in chosen.items()
                if v in real and v in winner_region and arena.owner[v] is winner
                and s in real}

    stats = {
        "positions": len(arena),
        "edges": arena.edge_count,
        "iterations": view.attractor_calls,
        "condition": condition.name,
    }
    logger.info(f"Solved {arena.label or 'arena'} ({condition.name}): "
                f"{'Duplicator' if holds else 'Spoiler'} wins, {stats['positions']} positions, "
                f"{stats['iterations']} attractor passes")
    return Verdict(holds, winner, strategy,
                   frozenset(v for v in region if v in real), stats)
