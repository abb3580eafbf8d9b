"""Simulation games between two automata as finite arenas.

Plain games alternate Spoiler letter/transition choices with Duplicator
answers. Bounded-buffer games let Duplicator lag behind by up to k
letters: Spoiler appends one letter per round, Duplicator then consumes
a prefix of the buffer (all of it in look-ahead mode, any prefix in
continuous mode) and must consume when the buffer is full. A stuck
Spoiler loses only once Duplicator has answered every buffered letter.
"""

from enum import Enum
from typing import List, NamedTuple, Optional, Tuple

from automata.nba import Nba, format_word, shared_alphabet
from games.arena import (DUPLICATOR_WINS, SPOILER_WINS, GameArena, Parity, Player,
                         Position, Safety, Sink, expand_sink, explore)
from utils.errors import AlphabetMismatchError
from utils.logger import setup_logger

logger = setup_logger(__name__)


class Acceptance(Enum):
    FAIR = "fair"
    DIRECT = "direct"
    DELAYED = "delayed"


class BufferMode(Enum):
    LOOKAHEAD = "lookahead"
    CONTINUOUS = "continuous"


# Parity priorities shared by the fair and delayed encodings.
NEUTRAL = 0
SPOILER_ACCEPTED = 1
DUPLICATOR_ACCEPTED = 2
OBLIGATION_PENDING = 1
OBLIGATION_CLEAR = 2


class SpoilerTurn(NamedTuple):
    """(q, q') with Spoiler to move; `bit` is the delayed obligation."""

    spoiler: str
    duplicator: str
    bit: bool = False

    def canonical(self) -> str:
        bit = ",!" if self.bit else ""
        return f"S({self.spoiler},{self.duplicator}{bit})"


class DuplicatorTurn(NamedTuple):
    """(q, a, q_next, q') with Duplicator to answer letter a."""

    spoiler: str
    letter: str
    spoiler_next: str
    duplicator: str
    bit: bool = False

    def canonical(self) -> str:
        bit = ",!" if self.bit else ""
        return f"D({self.spoiler},{self.letter},{self.spoiler_next},{self.duplicator}{bit})"


BufferEntry = Tuple[str, bool]


class BufferedPosition(NamedTuple):
    """Position of a bounded-buffer game.

    `buffer` holds (letter, spoiler_target_accepting) entries not yet
    consumed by Duplicator. `consumed` marks a Duplicator turn in which
    she has already taken at least one letter; `mark` records what the
    last move visited (fair acceptance only). `flushing` is set once
    Spoiler is stuck: Duplicator must then answer every buffered letter.
    """

    spoiler_turn: bool
    spoiler: str
    duplicator: str
    buffer: Tuple[BufferEntry, ...]
    obligation: bool = False
    consumed: bool = False
    mark: int = NEUTRAL
    flushing: bool = False

    def canonical(self) -> str:
        who = "S" if self.spoiler_turn else "D"
        letters = format_word([letter for letter, _ in self.buffer])
        flags = "".join("1" if flag else "0" for _, flag in self.buffer)
        extra = []
        if self.obligation:
            extra.append("!")
        if self.consumed:
            extra.append("+")
        if self.mark:
            extra.append(f"m{self.mark}")
        if self.flushing:
            extra.append("flush")
        tail = ("," + ",".join(extra)) if extra else ""
        return f"{who}({self.spoiler},{self.duplicator},[{letters}|{flags}]{tail})"


def _require_shared_alphabet(a: Nba, b: Nba) -> None:
    if not shared_alphabet(a, b):
        raise AlphabetMismatchError(
            f"alphabets differ: {list(a.alphabet)} vs {list(b.alphabet)}")


def build_plain_sim_arena(a: Nba, b: Nba, acceptance: Acceptance) -> GameArena:
    """Classic one-letter-per-round simulation game of `a` by `b`."""
    _require_shared_alphabet(a, b)
    acceptance = Acceptance(acceptance)
    delayed = acceptance is Acceptance.DELAYED

    def obligation(bit: bool, spoiler: str, duplicator: str) -> bool:
        return (bit or spoiler in a.accepting) and duplicator not in b.accepting

    start_bit = delayed and obligation(False, a.initial, b.initial)
    start = SpoilerTurn(a.initial, b.initial, start_bit)

    def expand(position: Position):
        if isinstance(position, Sink):
            return expand_sink(position)
        if isinstance(position, SpoilerTurn):
            moves: List[Position] = [
                DuplicatorTurn(position.spoiler, letter, target, position.duplicator, position.bit)
                for letter, target in a.out_edges(position.spoiler)
            ]
            return Player.SPOILER, moves or [DUPLICATOR_WINS]
        answers: List[Position] = []
        for target in b.successors(position.duplicator, position.letter):
            bit = obligation(position.bit, position.spoiler_next, target) if delayed else False
            answers.append(SpoilerTurn(position.spoiler_next, target, bit))
        return Player.DUPLICATOR, answers or [SPOILER_WINS]

    def condition(positions: List[Position]):
        if acceptance is Acceptance.DIRECT:
            return Safety(frozenset(
                p for p in positions
                if p == SPOILER_WINS or (isinstance(p, SpoilerTurn)
                                         and p.spoiler in a.accepting
                                         and p.duplicator not in b.accepting)))
        priority = {}
        for p in positions:
            if isinstance(p, Sink):
                priority[p] = SPOILER_ACCEPTED if p == SPOILER_WINS else NEUTRAL
            elif not isinstance(p, SpoilerTurn):
                priority[p] = NEUTRAL
            elif delayed:
                priority[p] = OBLIGATION_PENDING if p.bit else OBLIGATION_CLEAR
            elif p.duplicator in b.accepting:
                priority[p] = DUPLICATOR_ACCEPTED
            elif p.spoiler in a.accepting:
                priority[p] = SPOILER_ACCEPTED
            else:
                priority[p] = NEUTRAL
        return Parity(priority)

    label = f"plain-{acceptance.value}({a.name},{b.name})"
    return explore(start, expand, condition, label)


def build_bounded_buffer_arena(a: Nba, b: Nba, k: int, mode: BufferMode,
                               acceptance: Acceptance, limit: Optional[int] = None) -> GameArena:
    """Buffered simulation game with buffer capacity `k`.

    Duplicator consumes letters one at a time inside her turn, so each
    consumed letter is checked against the Spoiler acceptance flag stored
    with it (index-aligned acceptance).
    """
    _require_shared_alphabet(a, b)
    if k < 1:
        raise ValueError("buffer bound k must be at least 1")
    mode = BufferMode(mode)
    acceptance = Acceptance(acceptance)
    fair = acceptance is Acceptance.FAIR
    direct = acceptance is Acceptance.DIRECT
    delayed = acceptance is Acceptance.DELAYED

    start_obligation = delayed and a.initial in a.accepting and b.initial not in b.accepting
    start = BufferedPosition(True, a.initial, b.initial, (), start_obligation)
    start_violates = direct and a.initial in a.accepting and b.initial not in b.accepting

    def may_stop(p: BufferedPosition) -> bool:
        if not p.buffer:
            return True
        if p.flushing:
            return False
        if mode is BufferMode.CONTINUOUS:
            return p.consumed or len(p.buffer) < k
        return not p.consumed and len(p.buffer) < k

    def expand(position: Position):
        if isinstance(position, Sink):
            return expand_sink(position)
        p: BufferedPosition = position
        if p.spoiler_turn:
            moves: List[Position] = []
            for letter, target in a.out_edges(p.spoiler):
                flag = target in a.accepting and not fair
                mark = SPOILER_ACCEPTED if fair and target in a.accepting else NEUTRAL
                moves.append(BufferedPosition(False, target, p.duplicator,
                                              p.buffer + ((letter, flag),),
                                              p.obligation, False, mark))
            if moves:
                return Player.SPOILER, moves
            if not p.buffer:
                return Player.SPOILER, [DUPLICATOR_WINS]
            # Stuck Spoiler: the letters already played still need answers.
            return Player.SPOILER, [p._replace(spoiler_turn=False, consumed=False,
                                               mark=NEUTRAL, flushing=True)]

        answers: List[Position] = []
        if p.buffer:
            (letter, flag), rest = p.buffer[0], p.buffer[1:]
            for target in b.successors(p.duplicator, letter):
                target_accepting = target in b.accepting
                if direct and flag and not target_accepting:
                    answers.append(SPOILER_WINS)
                    continue
                obligation = ((p.obligation or flag) and not target_accepting) if delayed else False
                mark = DUPLICATOR_ACCEPTED if fair and target_accepting else NEUTRAL
                answers.append(BufferedPosition(False, p.spoiler, target, rest,
                                                obligation, True, mark, p.flushing))
        if may_stop(p):
            answers.append(BufferedPosition(True, p.spoiler, p.duplicator, p.buffer,
                                            p.obligation, False, NEUTRAL, p.flushing))
        answers = list(dict.fromkeys(answers))
        return Player.DUPLICATOR, answers or [SPOILER_WINS]

    def condition(positions: List[Position]):
        if direct:
            unsafe = {SPOILER_WINS}
            if start_violates:
                unsafe.add(start)
            return Safety(frozenset(p for p in positions if p in unsafe))
        priority = {}
        for p in positions:
            if isinstance(p, Sink):
                priority[p] = SPOILER_ACCEPTED if p == SPOILER_WINS else NEUTRAL
            elif delayed:
                priority[p] = OBLIGATION_PENDING if p.obligation else OBLIGATION_CLEAR
            else:
                priority[p] = p.mark
        return Parity(priority)

    label = f"bounded-{mode.value}-{acceptance.value}-k{k}({a.name},{b.name})"
    arena = explore(start, expand, condition, label, limit)
    logger.info(f"Built {label}: {len(arena)} positions")
    return arena
