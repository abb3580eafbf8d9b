"""Ramsey-based language inclusion L(a) ⊆ L(b) over the union's monoid."""

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from algebra.monoid import TransitionMonoid, build_monoid
from automata.nba import Nba, UltimatelyPeriodicWord, disjoint_union
from automata.oracles import periodic_membership
from utils.errors import CapExceeded
from utils.logger import setup_logger

logger = setup_logger(__name__)


class InclusionVerdict(Enum):
    INCLUDED = "included"
    NOT_INCLUDED = "not-included"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class InclusionResult:
    verdict: InclusionVerdict
    counterexample: Optional[UltimatelyPeriodicWord] = None
    monoid_size: int = 0
    pairs_checked: int = 0

    @property
    def included(self) -> Optional[bool]:
        if self.verdict == InclusionVerdict.INCONCLUSIVE:
            return None
        return self.verdict == InclusionVerdict.INCLUDED


def language_inclusion(a: Nba, b: Nba, cap: int) -> InclusionResult:
    """Decide L(a) ⊆ L(b).

    Every word of L(a) lies in some [g]·[h]^ω where h is idempotent and
    labels an accepting loop of a reachable on g; membership in L(b) is
    constant on such a set, so one witness word per pair decides it.

    Args:
        a: Candidate sub-language automaton
        b: Candidate super-language automaton
        cap: Monoid element cap

    Returns:
        InclusionResult; INCONCLUSIVE when the monoid exceeds `cap`
    """
    union = disjoint_union(a, b)
    try:
        monoid = build_monoid(union.automaton, cap)
    except CapExceeded as e:
        logger.warning(f"Inclusion check inconclusive: {e}")
        return InclusionResult(InclusionVerdict.INCONCLUSIVE, monoid_size=e.partial_size)
    return _check_pairs(a, b, monoid, union.left)


def _check_pairs(a: Nba, b: Nba, monoid: TransitionMonoid, left) -> InclusionResult:
    start = left[a.initial]
    a_rows = [left[q] for q in a.states]
    loops = [h for h in monoid.idempotents() if not h.is_identity]
    checked = 0
    for g in monoid.elements:
        reached = [q for q in a_rows if g.profile.has_path(start, q)]
        if not reached:
            continue
        for h in loops:
            if not any(h.profile.has_accepting_path(q, q) for q in reached):
                continue
            checked += 1
            word = UltimatelyPeriodicWord(g.witness, h.witness)
            if not periodic_membership(b, word):
                logger.info(f"Counterexample to inclusion: {word}")
                return InclusionResult(InclusionVerdict.NOT_INCLUDED, word,
                                       len(monoid), checked)
    logger.info(f"Inclusion holds after {checked} pairs ({len(monoid)} classes)")
    return InclusionResult(InclusionVerdict.INCLUDED, None, len(monoid), checked)
