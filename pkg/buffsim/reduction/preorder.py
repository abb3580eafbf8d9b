"""State preorders from bounded buffered simulation between states of one automaton."""

from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, List, Tuple

import networkx as nx

from automata.nba import Nba
from games.simulation import Acceptance, BufferMode, build_bounded_buffer_arena
from games.solver import solve
from utils.logger import setup_logger

logger = setup_logger(__name__)


class PreorderKind(Enum):
    DIRECT = "direct"
    DELAYED = "delayed"


@dataclass(frozen=True)
class StatePreorder:
    """(q, q') ∈ relation iff A(q) is simulated by A(q')."""

    automaton: Nba
    relation: FrozenSet[Tuple[str, str]]
    kind: PreorderKind
    k: int

    @property
    def provenance(self) -> str:
        return f"{self.kind.value}-{self.k}"

    def holds(self, q: str, q2: str) -> bool:
        return (q, q2) in self.relation

    def strictly_below(self, q: str, q2: str) -> bool:
        return self.holds(q, q2) and not self.holds(q2, q)

    def classes(self) -> List[Tuple[str, ...]]:
        """Blocks of the mutual relation, ordered by their first member.

        Connected components are taken because bounded look-ahead
        simulation need not be transitive.
        """
        graph = nx.Graph()
        graph.add_nodes_from(self.automaton.states)
        graph.add_edges_from((q, q2) for q, q2 in self.relation
                             if q != q2 and (q2, q) in self.relation)
        index = self.automaton.index
        blocks = [tuple(sorted(c, key=index.__getitem__))
                  for c in nx.connected_components(graph)]
        return sorted(blocks, key=lambda block: index[block[0]])


def compute_preorder(a: Nba, kind: PreorderKind, k: int) -> StatePreorder:
    """Bounded-k look-ahead simulation preorder with direct or delayed acceptance.

    Raises:
        ValueError: when k < 1
    """
    if k < 1:
        raise ValueError("buffer bound k must be at least 1")
    kind = PreorderKind(kind)
    acceptance = Acceptance.DIRECT if kind is PreorderKind.DIRECT else Acceptance.DELAYED
    relation = set()
    for q in a.states:
        relation.add((q, q))
        left = a.with_initial(q)
        for q2 in a.states:
            if q2 == q:
                continue
            arena = build_bounded_buffer_arena(left, a.with_initial(q2), k,
                                               BufferMode.LOOKAHEAD, acceptance)
            if solve(arena).holds:
                relation.add((q, q2))
    preorder = StatePreorder(a, frozenset(relation), kind, k)
    logger.info(f"{preorder.provenance} preorder on {a.name or 'automaton'}: "
                f"{len(relation)} pairs over {len(a.states)} states")
    return preorder
