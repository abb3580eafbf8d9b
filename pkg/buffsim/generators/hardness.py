"""Hardness instances built from tiling systems.

gen_pspace: a pair whose look-ahead fair simulation holds iff there is no
valid n × 2^n tiling. Blocks of n tagged tiles are separated by '$'; tags
are binary counters, least significant bit first.

gen_exptime: a pair whose continuous fair simulation holds iff Starter
wins the tiling game on rows of width n.

Every generated state is accepting, so fair, direct and delayed
acceptance agree on these pairs.
"""

from typing import List, Optional, Set, Tuple

from automata.nba import Nba
from automata.oracles import eliminate_epsilon
from games.arena import Outcome
from generators.tiling import (TilingGameResult, TilingSystem, brute_force_tiling,
                               brute_force_tiling_game)
from utils.logger import setup_logger

logger = setup_logger(__name__)

Transition = Tuple[str, Optional[str], str]

SEPARATOR = "$"
END = "#"
KINDS = ("pspace", "exptime")


def tagged(tile: str, bit: int) -> str:
    return f"({tile},{bit})"


def pspace_alphabet(ts: TilingSystem) -> List[str]:
    return [tagged(t, b) for t in ts.tiles for b in (0, 1)] + [SEPARATOR, END]


def _chain(transitions: List[Transition], prefix: str, start: str, letters: List[str],
           length: int) -> str:
    """Append a chain reading `length` letters of `letters` from `start`;
    returns the last chain state."""
    current = start
    for j in range(1, length + 1):
        nxt = f"{prefix}.{j}"
        transitions.extend((current, x, nxt) for x in letters)
        current = nxt
    return current


def _pspace_left(ts: TilingSystem, n: int) -> Nba:
    zeros = [tagged(t, 0) for t in ts.tiles]
    ones = [tagged(t, 1) for t in ts.tiles]
    transitions: List[Transition] = [("A.init", SEPARATOR, "A.first.0")]

    # First block: (t_I,0) (T×{0})^{n-1}.
    first = ["A.first.0"] + [f"A.first.{j}" for j in range(1, n)] + ["A.end"]
    transitions.append((first[0], tagged(ts.initial_tile, 0), first[1]))
    for src, dst in zip(first[1:-1], first[2:]):
        transitions.extend((src, x, dst) for x in zeros)
    transitions.append(("A.end", SEPARATOR, "A.blk.0"))

    # Later blocks: back to A.end unless every tag bit is 1; an all-ones
    # block has to end with (t_F,1) and leads to the #-loop.
    for j in range(n):
        one_here = "A.blk.0" if j == 0 else f"A.blk.{j}"
        zero_here = f"A.seen0.{j}"
        if j == n - 1:
            transitions.extend((one_here, x, "A.end") for x in zeros)
            transitions.append((one_here, tagged(ts.final_tile, 1), "A.fin"))
            if j > 0:
                transitions.extend((zero_here, x, "A.end") for x in zeros + ones)
        else:
            transitions.extend((one_here, x, f"A.blk.{j + 1}") for x in ones)
            transitions.extend((one_here, x, f"A.seen0.{j + 1}") for x in zeros)
            if j > 0:
                transitions.extend((zero_here, x, f"A.seen0.{j + 1}") for x in zeros + ones)
    transitions.append(("A.fin", END, "A.fin"))
    return _assemble(transitions, "A.init", pspace_alphabet(ts), "pspace.A")


def _pspace_right(ts: TilingSystem, n: int) -> Nba:
    sigma = pspace_alphabet(ts)
    zeros = [tagged(t, 0) for t in ts.tiles]
    ones = [tagged(t, 1) for t in ts.tiles]
    sink = "B.sink"
    transitions: List[Transition] = [(sink, x, sink) for x in sigma]

    transitions.extend(("B.wait", x, "B.wait") for x in sigma if x != END)
    transitions.append(("B.wait", SEPARATOR, "B.q0"))

    # Horizontal and vertical mismatches after a tile t.
    for t in ts.tiles:
        state = f"B.tile.{t}"
        transitions.extend(("B.wait", tagged(t, b), state) for b in (0, 1))
        transitions.extend((state, tagged(u, b), sink)
                           for u in ts.tiles if (t, u) not in ts.horizontal for b in (0, 1))
        below = _chain(transitions, f"B.tile.{t}.v", state, sigma, n)
        transitions.extend((below, tagged(u, b), sink)
                           for u in ts.tiles if (t, u) not in ts.vertical for b in (0, 1))

    # Increment violations between the block after '$' and the next one.
    transitions.extend(("B.q0", x, "B.q0") for x in ones)
    transitions.extend(("B.q0", x, "B.c0") for x in zeros)
    transitions.extend(("B.q0", x, "B.c1") for x in ones)
    transitions.extend(("B.q0", x, "B.rest") for x in zeros)
    transitions.extend(("B.rest", x, "B.rest") for x in sigma if x != SEPARATOR)
    transitions.extend(("B.rest", x, "B.r0") for x in zeros)
    transitions.extend(("B.rest", x, "B.r1") for x in ones)
    for origin, wrong in (("B.c0", zeros), ("B.c1", ones), ("B.r0", ones), ("B.r1", zeros)):
        last = _chain(transitions, origin, origin, sigma, n)
        transitions.extend((last, x, sink) for x in wrong)
    return _assemble(transitions, "B.wait", sigma, "pspace.B")


def gen_pspace(ts: TilingSystem, n: int) -> Tuple[Nba, Nba]:
    """Pair (A, B) with A ⊑la-fair B iff no valid n × 2^n tiling exists."""
    if n < 1:
        raise ValueError("n must be at least 1")
    a, b = _pspace_left(ts, n), _pspace_right(ts, n)
    logger.info(f"pspace instance n={n}: |A|={len(a.states)}, |B|={len(b.states)}")
    return a, b


def exptime_alphabet(ts: TilingSystem) -> List[str]:
    return list(ts.tiles) + ["0", "1"]


def _exptime_left(ts: TilingSystem, n: int) -> Nba:
    transitions: List[Transition] = [("A.bit", bit, "A.row") for bit in ("0", "1")]
    for t in ts.tiles:
        transitions.append(("A.row", t, f"A.col.1.{t}"))
        for j in range(1, n):
            transitions.extend((f"A.col.{j}.{t}", u, f"A.col.{j + 1}.{u}")
                               for u in ts.h_successors(t))
        transitions.extend((f"A.col.{n}.{t}", bit, "A.row") for bit in ("0", "1"))
    return _assemble(transitions, "A.bit", exptime_alphabet(ts), "exptime.A")


def _exptime_right(ts: TilingSystem, n: int) -> Nba:
    sigma = exptime_alphabet(ts)
    sink = "B.sink"
    transitions: List[Transition] = [(sink, x, sink) for x in sigma]
    tiles = list(ts.tiles)
    # Error gadgets can also be entered before the next bit, then skip
    # any tiles (t_F included) up to the mismatching column.
    for gadget in ("B.vert", "B.rep"):
        transitions.extend((f"{gadget}.entry", bit, f"{gadget}.skip") for bit in ("0", "1"))
        transitions.extend((f"{gadget}.skip", u, f"{gadget}.skip") for u in tiles)
        transitions.append((f"{gadget}.skip", None, gadget))
    for t in tiles:
        q = f"B.q.{t}"
        # (P4): row repetitions without t_F keep the state.
        transitions.extend((q, x, q) for x in tiles + ["1"] if x != ts.final_tile)
        # (P5): a 0 moves to any vertical successor.
        transitions.extend((q, "0", f"B.q.{u}") for u in ts.v_successors(t))
        # (P1): the next row must start with t.
        transitions.append((q, "0", f"B.first.{t}"))
        transitions.extend((f"B.first.{t}", u, sink) for u in tiles if u != t)
        transitions.extend((q, None, target)
                           for target in ("B.vert", "B.rep", "B.vert.entry", "B.rep.entry"))

        # (P3): vertical mismatch n letters later across a 0.
        transitions.append(("B.vert", t, f"B.vert.{t}.0"))
        last = _chain(transitions, f"B.vert.{t}", f"B.vert.{t}.0", tiles + ["0"], n)
        transitions.extend((last, u, sink) for u in tiles if (t, u) not in ts.vertical)

        # (P2): a row differing from its repetition across a 1.
        transitions.append(("B.rep", t, f"B.rep.{t}.0"))
        last = _chain(transitions, f"B.rep.{t}", f"B.rep.{t}.0", tiles + ["1"], n)
        transitions.extend((last, u, sink) for u in tiles if u != t)

    return _assemble(transitions, f"B.q.{ts.initial_tile}", sigma, "exptime.B")


def gen_exptime(ts: TilingSystem, n: int) -> Tuple[Nba, Nba]:
    """Pair (A, B) with A ⊑co-fair B iff Starter wins the tiling game.

    Raises:
        ValueError: when n < 1 or a tile is named '0' or '1'
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    clash = {"0", "1"} & set(ts.tiles)
    if clash:
        raise ValueError(f"tile names clash with the row bits: {sorted(clash)}")
    a, b = _exptime_left(ts, n), _exptime_right(ts, n)
    logger.info(f"exptime instance n={n}: |A|={len(a.states)}, |B|={len(b.states)}")
    return a, b


def _ordered_states(transitions: List[Transition], initial: str) -> List[str]:
    states = [initial]
    seen: Set[str] = {initial}
    for src, _, dst in transitions:
        for q in (src, dst):
            if q not in seen:
                seen.add(q)
                states.append(q)
    return states


def _assemble(transitions: List[Transition], initial: str, alphabet: List[str], name: str) -> Nba:
    """Close over ε-edges, drop unreachable states, make every state accepting."""
    states = _ordered_states(transitions, initial)
    kept, lettered = eliminate_epsilon(states, transitions, initial)
    return Nba.build(kept, alphabet, lettered, initial, kept, name)


def expected_verdict(kind: str, ts: TilingSystem, n: int) -> Outcome:
    """Verdict the generated pair must have, from the brute-force tiling oracles.

    pspace refers to look-ahead fair simulation, exptime to continuous fair
    simulation.

    Raises:
        BudgetExceeded: when the oracle's row-state budget is exceeded
    """
    if kind == "pspace":
        return Outcome.of(brute_force_tiling(ts, n, 2 ** n) is None)
    if kind == "exptime":
        return Outcome.of(brute_force_tiling_game(ts, n) is TilingGameResult.STARTER_WINS)
    raise ValueError(f"unknown generator kind {kind!r}; expected one of {', '.join(KINDS)}")
