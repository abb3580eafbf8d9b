"""The transition monoid Σ*/~ of an automaton and Ramsey factorisation."""

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import graphviz
import pandas as pd

from algebra.profile import Profile, compose, identity_profile, letter_profile
from automata.nba import Nba, RunPath, format_word
from automata.oracles import word_profile
from utils.errors import CapExceeded, InvalidRunError, UnknownLetterError
from utils.logger import setup_logger

logger = setup_logger(__name__)

Word = Tuple[str, ...]


@dataclass(frozen=True)
class MonoidElement:
    """One class [w] of the congruence.

    `index` is the position in breadth-first order, which is also the
    shortlex order of witnesses.
    """

    index: int
    profile: Profile
    witness: Word
    idempotent: bool
    is_identity: bool

    @property
    def label(self) -> str:
        return format_word(self.witness)


class TransitionMonoid:
    """Closed set of profiles of an automaton with lazy composition table."""

    def __init__(self, automaton: Nba, elements: List[MonoidElement], cap: int):
        self.automaton = automaton
        self.elements = elements
        self.cap = cap
        # [ε] stays a class of its own even when a nonempty word shares its profile.
        self._by_profile: Dict[Profile, MonoidElement] = {
            e.profile: e for e in elements if not e.is_identity}
        self.generator_map: Dict[str, MonoidElement] = {
            letter: self._by_profile[letter_profile(automaton, letter)]
            for letter in automaton.alphabet
        }
        self._table: Dict[Tuple[int, int], MonoidElement] = {}

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def identity(self) -> MonoidElement:
        return self.elements[0]

    def element_of(self, profile: Profile) -> MonoidElement:
        """Class of a nonempty word with the given profile."""
        return self._by_profile[profile]

    def compose(self, left: MonoidElement, right: MonoidElement) -> MonoidElement:
        """Product of two classes, memoised in the composition table."""
        if left.is_identity:
            return right
        if right.is_identity:
            return left
        key = (left.index, right.index)
        product = self._table.get(key)
        if product is None:
            product = self._by_profile[compose(left.profile, right.profile)]
            self._table[key] = product
        return product

    def word_class(self, word: Sequence[str]) -> MonoidElement:
        """Class of a finite word, computed through the generators."""
        element = self.identity
        for letter in word:
            if letter not in self.generator_map:
                raise UnknownLetterError(letter)
            element = self.compose(element, self.generator_map[letter])
        return element

    def idempotents(self) -> List[MonoidElement]:
        return [e for e in self.elements if e.idempotent]

    def cayley_dot(self) -> str:
        """Right Cayley graph: e --a--> e·[a]."""
        g = graphviz.Digraph("cayley", graph_attr={"rankdir": "LR"})
        for e in self.elements:
            g.node(f"e{e.index}", label=graphviz.nohtml(e.label),
                   shape="doublecircle" if e.idempotent else "circle")
        for e in self.elements:
            for letter in self.automaton.alphabet:
                target = self.compose(e, self.generator_map[letter])
                g.edge(f"e{e.index}", f"e{target.index}", label=graphviz.nohtml(letter))
        return g.source


def build_monoid(a: Nba, cap: int) -> TransitionMonoid:
    """Breadth-first closure of {[ε]} under right multiplication by letters.

    [ε] is kept apart from the classes of nonempty words.

    Frontier elements are expanded in witness order and letters in sorted
    order, so the first word reaching a class is its shortest, then
    lexicographically least, representative.

    Raises:
        CapExceeded: when the class count would exceed `cap`
    """
    if cap < len(a.alphabet) + 1:
        raise ValueError(f"cap {cap} is below |alphabet| + 1 = {len(a.alphabet) + 1}")

    letters = sorted(a.alphabet)
    generators = {letter: letter_profile(a, letter) for letter in letters}
    identity = identity_profile(len(a.states))

    # Classes of nonempty words, keyed by profile.
    witnesses: Dict[Profile, Word] = {}
    order: List[Tuple[Profile, Word]] = [(identity, ())]
    frontier: List[Tuple[Profile, Word]] = [(identity, ())]
    while frontier:
        next_frontier: List[Tuple[Profile, Word]] = []
        for profile, word in frontier:
            for letter in letters:
                product = compose(profile, generators[letter])
                if product in witnesses:
                    continue
                if len(order) >= cap:
                    logger.info(f"Monoid of {a.name or 'automaton'} exceeds cap {cap}")
                    raise CapExceeded(len(order), cap)
                witnesses[product] = word + (letter,)
                order.append((product, witnesses[product]))
                next_frontier.append((product, witnesses[product]))
        frontier = next_frontier

    elements = [
        MonoidElement(index=i,
                      profile=profile,
                      witness=witness,
                      idempotent=compose(profile, profile) == profile,
                      is_identity=(i == 0))
        for i, (profile, witness) in enumerate(order)
    ]
    monoid = TransitionMonoid(a, elements, cap)
    logger.info(f"Monoid of {a.name or 'automaton'}: {len(elements)} elements, "
                f"{sum(e.idempotent for e in elements)} idempotent")
    return monoid


def idempotents(m: TransitionMonoid) -> List[MonoidElement]:
    """Idempotent classes, the identity first."""
    return m.idempotents()


def monoid_table(m: TransitionMonoid) -> pd.DataFrame:
    """Element listing used by the monoid report."""
    return pd.DataFrame([
        {
            "index": e.index,
            "witness": e.label,
            "idempotent": e.idempotent,
            "identity": e.is_identity,
            "profile": e.profile.to_text(),
        }
        for e in m.elements
    ])


def ramsey_factorize(a: Nba, run: RunPath) -> Optional[Tuple[int, int, int]]:
    """Least (k, i, j)-ordered triple i < j < k with q_i = q_j = q_k ∈ F and
    equal profiles on the segments (i..j), (j..k) and (i..k).

    Raises:
        InvalidRunError: when `run` is not a path of `a`
    """
    run.validate(a)
    states = run.states
    generators = {letter: letter_profile(a, letter) for letter in a.alphabet}

    # columns[j][i] = profile of run.word[i:j]
    columns: List[List[Profile]] = [[]]
    for k in range(1, len(states)):
        step = generators[run.word[k - 1]]
        previous = columns[k - 1]
        column = [compose(p, step) for p in previous] + [step]
        columns.append(column)

        q = states[k]
        if q not in a.accepting:
            continue
        by_profile: Dict[Profile, List[int]] = {}
        for j in range(k):
            if states[j] == q:
                by_profile.setdefault(column[j], []).append(j)
        for i in range(k):
            if states[i] != q:
                continue
            target = column[i]
            for j in by_profile.get(target, ()):
                if i < j and columns[j][i] == target:
                    return i, j, k
    return None


def check_factorisation(a: Nba, run: RunPath, triple: Tuple[int, int, int]) -> bool:
    """Independent re-check of a triple returned by ramsey_factorize."""
    i, j, k = triple
    if not (0 <= i < j < k < len(run.states)):
        raise InvalidRunError(f"triple {triple} out of range")
    q = run.states[i]
    if not (run.states[j] == q == run.states[k] and q in a.accepting):
        return False
    first = word_profile(a, run.word[i:j])
    second = word_profile(a, run.word[j:k])
    whole = word_profile(a, run.word[i:k])
    return first == second == whole and compose(first, first) == first
