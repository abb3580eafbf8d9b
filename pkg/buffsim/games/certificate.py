"""Plain-text strategy certificates for quotient-game decisions.

Layout:

    # buffsim certificate
    relation: continuous-fair
    verdict: holds
    winner: prover
    monoid: 12
    start: R(a0,b0,e0)
    POSITION <id> -> <id> [witness: w1=<word>, w2=<word>]
    ...
    CLASS e<index> = <witness word>
    ...

Only strategy edges reachable from the start under the strategy are listed.
Plain and bounded games get the shorter `format_strategy` listing.
"""

from collections import deque
from pathlib import Path
from typing import Dict, List, Union

from automata.nba import format_word
from games.arena import GameArena, Player, Position, Sink, Verdict, canonical
from games.quotient import ProverTurn, RefuterTurn, SimulationReport
from utils.logger import setup_logger

logger = setup_logger(__name__)

HEADER = "# buffsim certificate"


def _reachable_edges(arena: GameArena, strategy: Dict[Position, Position],
                     winner: Player) -> List[tuple]:
    edges = []
    seen = {arena.start}
    queue = deque([arena.start])
    while queue:
        position = queue.popleft()
        if isinstance(position, Sink):
            continue
        if arena.owner[position] is winner:
            chosen = strategy.get(position)
            if chosen is None:
                continue
            edges.append((position, chosen))
            successors = (chosen,)
        else:
            successors = arena.successors[position]
        for s in successors:
            if s not in seen:
                seen.add(s)
                queue.append(s)
    return edges


def _witness(report: SimulationReport, source: Position, target: Position) -> str:
    move = source if isinstance(source, ProverTurn) else target
    if not isinstance(move, ProverTurn):
        return ""
    m = report.monoid
    return (f" [witness: w1={m.elements[move.w1].label}, "
            f"w2={m.elements[move.w2].label}]")


def format_certificate(report: SimulationReport) -> str:
    """Render a decided report; raises ValueError for inconclusive ones."""
    if report.arena is None or report.monoid is None or report.holds is None:
        raise ValueError("only decided reports have certificates")
    winner = "prover" if report.winner is Player.DUPLICATOR else "refuter"
    lines = [
        HEADER,
        f"relation: {report.relation.value}",
        f"verdict: {report.outcome.value}",
        f"winner: {winner}",
        f"monoid: {report.monoid_size}",
        f"start: {canonical(report.arena.start)}",
    ]
    edges = _reachable_edges(report.arena, report.strategy, report.winner)
    used = set()
    for source, target in edges:
        lines.append(f"POSITION {canonical(source)} -> {canonical(target)}"
                     f"{_witness(report, source, target)}")
        for p in (source, target):
            if isinstance(p, ProverTurn):
                used.update((p.beta, p.w1, p.w2))
            elif isinstance(p, RefuterTurn):
                used.add(p.beta)
    for index in sorted(used):
        lines.append(f"CLASS e{index} = {format_word(report.monoid.elements[index].witness)}")
    return "\n".join(lines) + "\n"


def write_certificate(report: SimulationReport, path: Union[str, Path]) -> int:
    """Write the certificate to `path`; returns the number of strategy edges."""
    text = format_certificate(report)
    Path(path).write_text(text, encoding="utf-8")
    count = sum(1 for line in text.splitlines() if line.startswith("POSITION "))
    logger.info(f"Wrote certificate with {count} strategy edges to {path}")
    return count


def format_strategy(arena: GameArena, verdict: Verdict) -> str:
    """Winner's strategy on a plain or bounded game, one `position -> successor` line per edge."""
    lines = [
        "# buffsim strategy",
        f"game: {arena.label}",
        f"verdict: {'holds' if verdict.holds else 'fails'}",
        f"winner: {verdict.winner.name.lower()}",
        f"start: {canonical(arena.start)}",
    ]
    for source, target in _reachable_edges(arena, verdict.strategy, verdict.winner):
        lines.append(f"{canonical(source)} -> {canonical(target)}")
    return "\n".join(lines) + "\n"
