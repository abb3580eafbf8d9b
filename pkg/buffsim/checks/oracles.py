"""Naive reference oracles used to cross-check the real decision procedures."""

from itertools import product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from automata.nba import Nba, UltimatelyPeriodicWord
from automata.oracles import word_profile
from games.arena import GameArena, Parity, Player, Position
from utils.errors import BudgetExceeded


def naive_membership(a: Nba, word: UltimatelyPeriodicWord) -> bool:
    """Membership through the block graph of the period.

    Nodes are states, with an edge q -> q' when the period leads from q to
    q'; u·v^ω is accepted iff some cycle reachable from the states after u
    uses an edge whose path visits an accepting state.
    """
    start_row = a.index[a.initial]
    stem = word_profile(a, word.stem)
    period = word_profile(a, word.period)
    graph = nx.DiGraph()
    graph.add_nodes_from(range(len(a.states)))
    accepting_edges = []
    for i in range(len(a.states)):
        for j in range(len(a.states)):
            if period.has_path(i, j):
                graph.add_edge(i, j)
                if period.has_accepting_path(i, j):
                    accepting_edges.append((i, j))
    entry = {j for j in range(len(a.states)) if stem.has_path(start_row, j)}
    reachable = set(entry)
    for j in entry:
        reachable |= nx.descendants(graph, j)
    component = {}
    for k, scc in enumerate(nx.strongly_connected_components(graph)):
        for node in scc:
            component[node] = k
    return any(i in reachable and component[i] == component[j]
               for i, j in accepting_edges)


def all_words(alphabet: Sequence[str], min_length: int, max_length: int) -> Iterator[Tuple[str, ...]]:
    for length in range(min_length, max_length + 1):
        yield from product(sorted(alphabet), repeat=length)


def exhaustive_inclusion(a: Nba, b: Nba, max_stem: int = 3,
                         max_period: int = 3) -> Optional[UltimatelyPeriodicWord]:
    """First u·v^ω with |u| ≤ max_stem, 1 ≤ |v| ≤ max_period in L(a) \\ L(b)."""
    for period in all_words(a.alphabet, 1, max_period):
        for stem in all_words(a.alphabet, 0, max_stem):
            word = UltimatelyPeriodicWord(stem, period)
            if naive_membership(a, word) and not naive_membership(b, word):
                return word
    return None


def _spoiler_wins_graph(graph: nx.DiGraph, start: Position, priority) -> bool:
    """Some cycle reachable from `start` has an odd maximal priority."""
    reachable = nx.descendants(graph, start) | {start}
    sub = graph.subgraph(reachable)
    for top in sorted({priority(v) for v in reachable}):
        if top % 2 == 0:
            continue
        low = sub.subgraph([v for v in reachable if priority(v) <= top])
        for scc in nx.strongly_connected_components(low):
            if not any(priority(v) == top for v in scc):
                continue
            if len(scc) > 1 or any(low.has_edge(v, v) for v in scc):
                return True
    return False


def brute_force_parity(arena: GameArena, budget: int = 4096) -> bool:
    """True iff Duplicator wins a parity arena, by trying all her positional strategies.

    Dead ends lose for their owner.

    Raises:
        BudgetExceeded: when Duplicator has more than `budget` strategies
    """
    condition = arena.condition
    if not isinstance(condition, Parity):
        raise TypeError("brute_force_parity expects a parity arena")
    choices: List[Tuple[Position, Tuple[Position, ...]]] = []
    count = 1
    for p in arena.positions:
        if arena.owner[p] is Player.DUPLICATOR and len(arena.successors[p]) > 1:
            choices.append((p, arena.successors[p]))
            count *= len(arena.successors[p])
            if count > budget:
                raise BudgetExceeded(f"more than {budget} Duplicator strategies")

    lost_dead_end = "dead-end:spoiler-wins"

    def priority(v) -> int:
        return 1 if v == lost_dead_end else condition.of(v)

    for picks in product(*(succ for _, succ in choices)):
        chosen: Dict[Position, Position] = {p: s for (p, _), s in zip(choices, picks)}
        graph = nx.DiGraph()
        graph.add_node(lost_dead_end)
        graph.add_edge(lost_dead_end, lost_dead_end)
        for p in arena.positions:
            graph.add_node(p)
            succ = arena.successors[p]
            if not succ:
                if arena.owner[p] is Player.DUPLICATOR:
                    graph.add_edge(p, lost_dead_end)
                continue
            if arena.owner[p] is Player.DUPLICATOR:
                graph.add_edge(p, chosen.get(p, succ[0]))
            else:
                graph.add_edges_from((p, s) for s in succ)
        # A Spoiler dead end is a Duplicator win: it has no outgoing cycle.
        if not _spoiler_wins_graph(graph, arena.start, priority):
            return True
    return False
