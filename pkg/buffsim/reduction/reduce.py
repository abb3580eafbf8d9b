"""Quotienting and pruning with a state preorder."""

from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import networkx as nx

from algebra.inclusion import language_inclusion
from automata.nba import Nba
from games.arena import Outcome
from reduction.preorder import PreorderKind, StatePreorder, compute_preorder
from utils.errors import DelayedPruningRefused
from utils.logger import setup_logger

logger = setup_logger(__name__)


def _block_name(block: Tuple[str, ...]) -> str:
    return block[0] if len(block) == 1 else "|".join(block)


def quotient(a: Nba, r: StatePreorder) -> Nba:
    """Merge the states equivalent under `r`.

    A block is accepting iff some member is; the initial block holds the
    initial state.
    """
    blocks = r.classes()
    block_of: Dict[str, str] = {}
    for block in blocks:
        for q in block:
            block_of[q] = _block_name(block)
    states = [_block_name(block) for block in blocks]
    transitions = {(block_of[s], x, block_of[t]) for s, x, t in a.transitions}
    accepting = {block_of[q] for q in a.accepting}
    result = Nba.build(states, a.alphabet, transitions, block_of[a.initial], accepting,
                       f"{a.name}/{r.provenance}" if a.name else "")
    logger.info(f"Quotient by {r.provenance}: {len(a.states)} -> {len(states)} states")
    return result


def prune(a: Nba, r: StatePreorder) -> Nba:
    """Drop q -x-> q1 when some q -x-> q2 has q1 strictly below q2, then
    drop states that became unreachable.

    Raises:
        DelayedPruningRefused: when `r` comes from delayed simulation
    """
    if r.kind is not PreorderKind.DIRECT:
        raise DelayedPruningRefused(f"pruning with a {r.provenance} preorder is unsound")
    kept = set()
    for src, letter, q1 in a.transitions:
        subsumed = any(q2 != q1 and r.strictly_below(q1, q2)
                       for q2 in a.successors(src, letter))
        if not subsumed:
            kept.add((src, letter, q1))

    graph = nx.DiGraph()
    graph.add_nodes_from(a.states)
    graph.add_edges_from((s, t) for s, _, t in kept)
    reachable = nx.descendants(graph, a.initial) | {a.initial}
    pruned = Nba.build(a.states, a.alphabet, kept, a.initial, a.accepting,
                       a.name).restricted_to(reachable)
    logger.info(f"Pruned by {r.provenance}: {len(a.transitions)} -> "
                f"{len(pruned.transitions)} transitions, {len(pruned.states)} states")
    return pruned


@dataclass
class MinimizeResult:
    automaton: Nba
    preorder: StatePreorder
    states_before: int
    transitions_before: int
    pruned: bool

    @property
    def states_after(self) -> int:
        return len(self.automaton.states)

    @property
    def transitions_after(self) -> int:
        return len(self.automaton.transitions)

    def summary(self) -> str:
        return (f"{self.preorder.provenance}{' +prune' if self.pruned else ''}: "
                f"states {self.states_before} -> {self.states_after}, "
                f"transitions {self.transitions_before} -> {self.transitions_after}")


def minimize_pipeline(a: Nba, kind: PreorderKind, k: int, prune_transitions: bool = False) -> MinimizeResult:
    """compute_preorder, quotient, and optionally prune with a preorder
    recomputed on the quotient."""
    kind = PreorderKind(kind)
    if prune_transitions and kind is not PreorderKind.DIRECT:
        raise DelayedPruningRefused("pruning requires a direct preorder")
    preorder = compute_preorder(a, kind, k)
    reduced = quotient(a, preorder)
    if prune_transitions:
        preorder = compute_preorder(reduced, kind, k)
        reduced = prune(reduced, preorder)
    return MinimizeResult(reduced, preorder, len(a.states), len(a.transitions), prune_transitions)


def verify_language(a: Nba, reduced: Nba, cap: int) -> Outcome:
    """Check L(a) = L(reduced) with the inclusion oracle in both directions."""
    forward = language_inclusion(a, reduced, cap).included
    if forward is False:
        return Outcome.FAILS
    backward = language_inclusion(reduced, a, cap).included
    if backward is False:
        return Outcome.FAILS
    return Outcome.of(None if forward is None or backward is None else True)


def counterexample(a: Nba, reduced: Nba, cap: int) -> Optional[str]:
    """A word on which the two languages differ, rendered u:v, if any."""
    for left, right in ((a, reduced), (reduced, a)):
        result = language_inclusion(left, right, cap)
        if result.counterexample is not None:
            return str(result.counterexample)
    return None
