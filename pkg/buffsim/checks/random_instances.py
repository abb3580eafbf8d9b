"""Seeded random automata, words and lasso runs for the property suites."""

from typing import Optional, Sequence, Tuple

import numpy as np

from automata.nba import LassoRun, Nba, UltimatelyPeriodicWord
from automata.oracles import find_accepting_lasso

DEFAULT_ALPHABET = ("a", "b")


def make_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_nba(rng: np.random.Generator,
               max_states: int = 3,
               alphabet: Sequence[str] = DEFAULT_ALPHABET,
               density: float = 0.4,
               accepting_rate: float = 0.5,
               name: str = "random") -> Nba:
    """Random automaton with 1..max_states states q0, q1, ...; q0 is initial."""
    count = int(rng.integers(1, max_states + 1))
    states = [f"q{i}" for i in range(count)]
    transitions = [(s, x, t) for s in states for x in alphabet for t in states
                   if rng.random() < density]
    accepting = [q for q in states if rng.random() < accepting_rate]
    return Nba.build(states, alphabet, transitions, states[0], accepting, name)


def random_pair(rng: np.random.Generator, max_states: int = 3,
                alphabet: Sequence[str] = DEFAULT_ALPHABET) -> Tuple[Nba, Nba]:
    return (random_nba(rng, max_states, alphabet, name="random.A"),
            random_nba(rng, max_states, alphabet, name="random.B"))


def random_word(rng: np.random.Generator, alphabet: Sequence[str],
                min_length: int, max_length: int) -> Tuple[str, ...]:
    length = int(rng.integers(min_length, max_length + 1))
    return tuple(alphabet[int(i)] for i in rng.integers(len(alphabet), size=length))


def random_periodic_word(rng: np.random.Generator, alphabet: Sequence[str],
                         max_stem: int = 3, max_period: int = 3) -> UltimatelyPeriodicWord:
    return UltimatelyPeriodicWord(random_word(rng, alphabet, 0, max_stem),
                                  random_word(rng, alphabet, 1, max_period))


def random_accepting_lasso(rng: np.random.Generator, a: Nba,
                           attempts: int = 20) -> Optional[LassoRun]:
    """An accepting lasso of `a` on some random u·v^ω, if one is found."""
    for _ in range(attempts):
        lasso = find_accepting_lasso(a, random_periodic_word(rng, a.alphabet))
        if lasso is not None:
            return lasso
    return None
