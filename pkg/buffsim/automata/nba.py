"""Büchi automaton model, words and runs."""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

from utils.errors import (AlphabetMismatchError, AutomatonError, InvalidRunError,
                          UnknownLetterError)

Transition = Tuple[str, str, str]


@dataclass(frozen=True)
class Nba:
    """Nondeterministic Büchi automaton with a single initial state.

    States and letters keep their declared order; every derived view
    (successor lists, profiles, arenas) iterates in that order.
    """

    states: Tuple[str, ...]
    alphabet: Tuple[str, ...]
    transitions: FrozenSet[Transition]
    initial: str
    accepting: FrozenSet[str]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if not self.states:
            raise AutomatonError("empty automaton: no states")
        if len(set(self.states)) != len(self.states):
            raise AutomatonError("duplicate state ids")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise AutomatonError("duplicate letters")
        known = set(self.states)
        if self.initial not in known:
            raise AutomatonError(f"initial state {self.initial!r} is not declared")
        stray = set(self.accepting) - known
        if stray:
            raise AutomatonError(f"undeclared accepting states: {sorted(stray)}")
        letters = set(self.alphabet)
        for src, letter, dst in self.transitions:
            if src not in known or dst not in known:
                raise AutomatonError(f"transition {src} {letter} {dst} uses an undeclared state")
            if letter not in letters:
                raise AutomatonError(f"transition {src} {letter} {dst} uses an undeclared letter")

    @classmethod
    def build(cls,
              states: Iterable[str],
              alphabet: Iterable[str],
              transitions: Iterable[Transition],
              initial: str,
              accepting: Iterable[str],
              name: str = "") -> "Nba":
        """Convenience constructor accepting any iterables."""
        return cls(tuple(states), tuple(alphabet), frozenset(transitions),
                   initial, frozenset(accepting), name)

    # -- indexed views -------------------------------------------------

    @cached_property
    def index(self) -> Dict[str, int]:
        return {q: i for i, q in enumerate(self.states)}

    @cached_property
    def letter_index(self) -> Dict[str, int]:
        return {a: i for i, a in enumerate(self.alphabet)}

    @cached_property
    def _successors(self) -> Dict[Tuple[str, str], Tuple[str, ...]]:
        table: Dict[Tuple[str, str], List[str]] = {}
        for src, letter, dst in self.transitions:
            table.setdefault((src, letter), []).append(dst)
        return {key: tuple(sorted(targets, key=self.index.__getitem__))
                for key, targets in table.items()}

    @cached_property
    def _out_edges(self) -> Dict[str, Tuple[Tuple[str, str], ...]]:
        edges: Dict[str, List[Tuple[str, str]]] = {q: [] for q in self.states}
        for src, letter, dst in self.transitions:
            edges[src].append((letter, dst))
        return {q: tuple(sorted(pairs)) for q, pairs in edges.items()}

    def successors(self, state: str, letter: str) -> Tuple[str, ...]:
        """Targets of `letter` from `state`, in declared state order."""
        if letter not in self.letter_index:
            raise UnknownLetterError(letter)
        return self._successors.get((state, letter), ())

    def out_edges(self, state: str) -> Tuple[Tuple[str, str], ...]:
        """(letter, target) pairs leaving `state`, ordered lexicographically."""
        return self._out_edges[state]

    def is_accepting(self, state: str) -> bool:
        return state in self.accepting

    def sorted_transitions(self) -> List[Transition]:
        """Transitions in declared order of (source, letter, target)."""
        return sorted(self.transitions, key=lambda t: (self.index[t[0]],
                                                      self.letter_index[t[1]],
                                                      self.index[t[2]]))

    def check_word(self, word: Sequence[str]) -> None:
        for letter in word:
            if letter not in self.letter_index:
                raise UnknownLetterError(letter)

    # -- derived automata -----------------------------------------------

    def with_initial(self, state: str) -> "Nba":
        """The automaton A(q): same structure, initial state `state`."""
        if state not in self.index:
            raise AutomatonError(f"unknown state {state!r}")
        return Nba(self.states, self.alphabet, self.transitions, state,
                   self.accepting, self.name)

    def all_accepting(self) -> "Nba":
        """LTS reading: every state accepting."""
        return Nba(self.states, self.alphabet, self.transitions, self.initial,
                   frozenset(self.states), self.name)

    def with_accepting(self, accepting: Iterable[str]) -> "Nba":
        return Nba(self.states, self.alphabet, self.transitions, self.initial,
                   frozenset(accepting), self.name)

    def restricted_to(self, keep: Iterable[str]) -> "Nba":
        """Sub-automaton on `keep` (must contain the initial state)."""
        kept = set(keep)
        states = tuple(q for q in self.states if q in kept)
        transitions = frozenset(t for t in self.transitions
                                if t[0] in kept and t[2] in kept)
        return Nba(states, self.alphabet, transitions, self.initial,
                   frozenset(q for q in self.accepting if q in kept), self.name)

    def __str__(self) -> str:
        label = self.name or "nba"
        return (f"{label}: {len(self.states)} states, {len(self.alphabet)} letters, "
                f"{len(self.transitions)} transitions, {len(self.accepting)} accepting")


@dataclass(frozen=True, eq=False)
class DisjointUnion:
    """The union a ⊎ b; left states are tagged 'A:', right states 'B:'."""

    automaton: Nba
    left: Dict[str, int]
    right: Dict[str, int]

    def left_state(self, q: str) -> str:
        return f"A:{q}"

    def right_state(self, q: str) -> str:
        return f"B:{q}"


def shared_alphabet(a: Nba, b: Nba) -> bool:
    return set(a.alphabet) == set(b.alphabet)


def disjoint_union(a: Nba, b: Nba) -> DisjointUnion:
    """Disjoint union of two automata over the same alphabet.

    The initial state of the union is a's; it is only used as a container
    for the shared state space.
    """
    if not shared_alphabet(a, b):
        raise AlphabetMismatchError(
            f"alphabets differ: {list(a.alphabet)} vs {list(b.alphabet)}")
    states = tuple(f"A:{q}" for q in a.states) + tuple(f"B:{q}" for q in b.states)
    transitions = frozenset((f"A:{s}", x, f"A:{t}") for s, x, t in a.transitions) | \
        frozenset((f"B:{s}", x, f"B:{t}") for s, x, t in b.transitions)
    accepting = frozenset(f"A:{q}" for q in a.accepting) | \
        frozenset(f"B:{q}" for q in b.accepting)
    union = Nba(states, a.alphabet, transitions, f"A:{a.initial}", accepting,
                f"{a.name}+{b.name}")
    left = {q: i for i, q in enumerate(a.states)}
    offset = len(a.states)
    right = {q: offset + i for i, q in enumerate(b.states)}
    return DisjointUnion(union, left, right)


@dataclass(frozen=True)
class UltimatelyPeriodicWord:
    """The infinite word stem · period^ω."""

    stem: Tuple[str, ...]
    period: Tuple[str, ...]

    def __post_init__(self):
        if not self.period:
            raise ValueError("period of an ultimately periodic word must be nonempty")

    @classmethod
    def of(cls, stem: Sequence[str], period: Sequence[str]) -> "UltimatelyPeriodicWord":
        return cls(tuple(stem), tuple(period))

    @classmethod
    def parse(cls, text: str, alphabet: Sequence[str]) -> "UltimatelyPeriodicWord":
        """Parse 'u:v' notation.

        Letters are separated by spaces; when no space occurs, every
        character is one letter. An empty stem is written ':v'.
        """
        if ":" not in text:
            raise ValueError(f"expected u:v, got {text!r}")
        stem_text, period_text = text.split(":", 1)
        word = cls(_split_letters(stem_text), _split_letters(period_text))
        known = set(alphabet)
        for letter in word.stem + word.period:
            if letter not in known:
                raise UnknownLetterError(letter)
        return word

    def letters(self) -> Tuple[str, ...]:
        return self.stem + self.period

    def unroll(self, repetitions: int) -> Tuple[str, ...]:
        return self.stem + self.period * repetitions

    def letter_at(self, position: int) -> str:
        if position < len(self.stem):
            return self.stem[position]
        return self.period[(position - len(self.stem)) % len(self.period)]

    def __str__(self) -> str:
        return f"{format_word(self.stem)}:{format_word(self.period)}"


def _split_letters(text: str) -> Tuple[str, ...]:
    text = text.strip()
    if not text:
        return ()
    if " " in text:
        return tuple(text.split())
    return tuple(text)


def format_word(word: Sequence[str]) -> str:
    """Render a word: 'ε' when empty, letters joined without separators
    when they are all single characters, space-separated otherwise."""
    if not word:
        return "ε"
    if all(len(letter) == 1 for letter in word):
        return "".join(word)
    return " ".join(word)


@dataclass(frozen=True)
class RunPath:
    """A finite path q_0 a_1 q_1 ... a_n q_n."""

    states: Tuple[str, ...]
    word: Tuple[str, ...]

    def __post_init__(self):
        if len(self.states) != len(self.word) + 1:
            raise InvalidRunError(
                f"run has {len(self.states)} states for {len(self.word)} letters")

    def validate(self, a: Nba) -> None:
        """Raise InvalidRunError unless every step is a transition of `a`."""
        for i, letter in enumerate(self.word):
            step = (self.states[i], letter, self.states[i + 1])
            if step not in a.transitions:
                raise InvalidRunError(f"step {i + 1} {step} is not a transition")

    def __len__(self) -> int:
        return len(self.word)


@dataclass(frozen=True)
class LassoRun:
    """An accepting run of an automaton on an ultimately periodic word.

    `stem_states` is q_0..q_s and `loop_states` is q_s..q_{s+L} with
    q_{s+L} = q_s. The loop starts inside the period part of the word and
    its length L is a multiple of |period|, so the run repeats forever.
    """

    word: UltimatelyPeriodicWord
    stem_states: Tuple[str, ...]
    loop_states: Tuple[str, ...]

    def unroll(self, length: int) -> RunPath:
        """The first `length` steps of the infinite run."""
        states: List[str] = list(self.stem_states)
        loop = self.loop_states[1:]
        while len(states) < length + 1:
            states.extend(loop)
        states = states[:length + 1]
        word = tuple(self.word.letter_at(i) for i in range(length))
        return RunPath(tuple(states), word)

    def validate(self, a: Nba) -> None:
        stem_len = len(self.stem_states) - 1
        loop_len = len(self.loop_states) - 1
        if stem_len < 0 or loop_len < 1:
            raise InvalidRunError("lasso needs a nonempty loop")
        if self.stem_states[-1] != self.loop_states[0] or \
                self.loop_states[0] != self.loop_states[-1]:
            raise InvalidRunError("lasso loop does not close")
        self.unroll(stem_len + 2 * loop_len).validate(a)
        if not any(q in a.accepting for q in self.loop_states[1:]):
            raise InvalidRunError("lasso loop visits no accepting state")

