"""Exact word- and run-level oracles over a single automaton."""

from collections import deque
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx
import numpy as np

from algebra.profile import ACCEPTING_PATH, NO_PATH, PLAIN_PATH, Profile
from automata.nba import LassoRun, Nba, UltimatelyPeriodicWord
from utils.logger import setup_logger

logger = setup_logger(__name__)

ProductNode = Tuple[str, int]


def dead_ends(a: Nba) -> Set[str]:
    """States with no outgoing transition."""
    return {q for q in a.states if not a.out_edges(q)}


def word_profile(a: Nba, word: Sequence[str]) -> Profile:
    """Brute-force profile of `word` by tracking (state, visited-accepting) pairs.

    Position 0 of a path never counts towards acceptance.
    """
    a.check_word(word)
    n = len(a.states)
    matrix = np.full((n, n), NO_PATH, dtype=np.int8)
    for start in a.states:
        frontier = {(start, False)}
        for letter in word:
            frontier = {(target, seen or target in a.accepting)
                        for state, seen in frontier
                        for target in a.successors(state, letter)}
        row = a.index[start]
        for state, seen in frontier:
            col = a.index[state]
            if seen:
                matrix[row, col] = ACCEPTING_PATH
            elif matrix[row, col] == NO_PATH:
                matrix[row, col] = PLAIN_PATH
    return Profile(matrix)


def _lasso_product(a: Nba, word: UltimatelyPeriodicWord) -> Tuple[nx.DiGraph, ProductNode]:
    """Reachable part of a × (lasso automaton of stem·period^ω)."""
    a.check_word(word.letters())
    length = len(word.stem) + len(word.period)

    def advance(position: int) -> int:
        return position + 1 if position + 1 < length else len(word.stem)

    start = (a.initial, 0)
    graph = nx.DiGraph()
    graph.add_node(start)
    queue = deque([start])
    while queue:
        state, position = queue.popleft()
        letter = word.letter_at(position)
        for target in a.successors(state, letter):
            node = (target, advance(position))
            if node not in graph:
                graph.add_node(node)
                queue.append(node)
            graph.add_edge((state, position), node)
    return graph, start


def _accepting_cycle_nodes(a: Nba, graph: nx.DiGraph) -> List[ProductNode]:
    """Accepting product nodes lying on some cycle, in exploration order."""
    on_cycle: Set[ProductNode] = set()
    for component in nx.strongly_connected_components(graph):
        if len(component) > 1:
            on_cycle.update(component)
        else:
            node = next(iter(component))
            if graph.has_edge(node, node):
                on_cycle.add(node)
    return [node for node in graph.nodes if node in on_cycle and node[0] in a.accepting]


def periodic_membership(a: Nba, word: UltimatelyPeriodicWord) -> bool:
    """True iff `a` has an accepting run on stem·period^ω."""
    if not a.accepting:
        return False
    graph, _ = _lasso_product(a, word)
    return bool(_accepting_cycle_nodes(a, graph))


def find_accepting_lasso(a: Nba, word: UltimatelyPeriodicWord) -> Optional[LassoRun]:
    """An accepting lasso-shaped run of `a` on stem·period^ω, if any."""
    if not a.accepting:
        return None
    graph, start = _lasso_product(a, word)
    candidates = _accepting_cycle_nodes(a, graph)
    if not candidates:
        return None
    target = candidates[0]
    stem_path = nx.shortest_path(graph, start, target)

    loop_path = None
    for successor in graph.successors(target):
        if successor == target:
            loop_path = [target, target]
            break
        if nx.has_path(graph, successor, target):
            loop_path = [target] + nx.shortest_path(graph, successor, target)
            break
    if loop_path is None:
        return None

    run = LassoRun(word,
                   tuple(state for state, _ in stem_path),
                   tuple(state for state, _ in loop_path))
    logger.debug(f"Accepting lasso for {word}: stem {len(stem_path) - 1}, loop {len(loop_path) - 1}")
    return run


def eliminate_epsilon(states: Sequence[str],
                      transitions: Iterable[Tuple[str, Optional[str], str]],
                      initial: str) -> Tuple[List[str], List[Tuple[str, str, str]]]:
    """Remove ε-edges (letter None) by closure, then drop unreachable states.

    Every state closes over its ε-successors; a lettered edge leaving a
    state in the closure of q becomes an edge leaving q. Acceptance is
    not adjusted, so callers use this only when every state is accepting.

    Returns:
        (reachable states in input order, lettered transitions between them)
    """
    epsilon: Dict[str, Set[str]] = {q: set() for q in states}
    lettered: List[Tuple[str, str, str]] = []
    for src, letter, dst in transitions:
        if letter is None:
            epsilon[src].add(dst)
        else:
            lettered.append((src, letter, dst))

    def closure(state: str) -> Set[str]:
        seen = {state}
        stack = [state]
        while stack:
            current = stack.pop()
            for nxt in epsilon[current]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return seen

    leaving: Dict[str, List[Tuple[str, str]]] = {q: [] for q in states}
    for src, letter, dst in lettered:
        leaving[src].append((letter, dst))

    closed: Set[Tuple[str, str, str]] = set()
    for q in states:
        for member in closure(q):
            for letter, dst in leaving[member]:
                closed.add((q, letter, dst))

    graph = nx.DiGraph()
    graph.add_nodes_from(states)
    graph.add_edges_from((src, dst) for src, _, dst in closed)
    reachable = nx.descendants(graph, initial) | {initial}
    kept_states = [q for q in states if q in reachable]
    kept = [t for t in closed if t[0] in reachable]
    return kept_states, sorted(kept)


def find_path(a: Nba, start: str, word: Sequence[str], target: str) -> Optional[List[str]]:
    """States of a path of `a` from `start` to `target` reading `word`, if any.

    Among several paths the one through the earliest-declared states wins.
    """
    a.check_word(word)
    layers: List[Dict[str, Optional[str]]] = [{start: None}]
    for letter in word:
        layer: Dict[str, Optional[str]] = {}
        for state in layers[-1]:
            for nxt in a.successors(state, letter):
                if nxt not in layer:
                    layer[nxt] = state
        layers.append(layer)
    if target not in layers[-1]:
        return None
    path = [target]
    for layer in reversed(layers[1:]):
        path.append(layer[path[-1]])
    return list(reversed(path))
