"""Reference automaton pairs.

branching: the second automaton commits on its first a to either a b- or a
c-continuation, so it needs unbounded look-ahead to follow the first.
lookahead-gap: the second automaton can follow the first only by keeping
letters buffered across its b/c cross edges.
inclusion-gap: equal languages, but the second automaton guesses the
switch from a to b.
"""

from typing import Dict, Tuple

from automata.nba import Nba

FIXTURE_NAMES = ("branching", "lookahead-gap", "inclusion-gap")


def _branching() -> Tuple[Nba, Nba]:
    sigma = ("a", "b", "c")
    left = Nba.build(
        ("a0", "a1", "a2", "a3"), sigma,
        [("a0", "a", "a1"), ("a1", "a", "a1"), ("a1", "b", "a2"), ("a1", "c", "a3")]
        + [(sink, x, sink) for sink in ("a2", "a3") for x in sigma],
        "a0", ("a2", "a3"), "branching.A")
    right = Nba.build(
        ("b0", "b1", "b2", "b3", "b4"), sigma,
        [("b0", "a", "b1"), ("b1", "a", "b1"), ("b1", "b", "b2"),
         ("b0", "a", "b3"), ("b3", "a", "b3"), ("b3", "c", "b4")]
        + [(sink, x, sink) for sink in ("b2", "b4") for x in sigma],
        "b0", ("b2", "b4"), "branching.B")
    return left, right


def _lookahead_gap() -> Tuple[Nba, Nba]:
    sigma = ("a", "b", "c")
    left = Nba.build(
        ("a0", "a1"), sigma,
        [("a0", "a", "a1"), ("a1", "b", "a1"), ("a1", "c", "a1")],
        "a0", ("a1",), "lookahead-gap.A")
    right = Nba.build(
        ("b0", "b1", "b2"), sigma,
        [("b0", "a", "b1"), ("b0", "a", "b2"),
         ("b1", "b", "b1"), ("b1", "b", "b2"),
         ("b2", "c", "b2"), ("b2", "c", "b1")],
        "b0", ("b1", "b2"), "lookahead-gap.B")
    return left, right


def _inclusion_gap() -> Tuple[Nba, Nba]:
    sigma = ("a", "b")
    left = Nba.build(
        ("a0", "a1"), sigma,
        [("a0", "a", "a0"), ("a0", "b", "a1"), ("a1", "b", "a1")],
        "a0", ("a0", "a1"), "inclusion-gap.A")
    right = Nba.build(
        ("b0", "b1", "b2"), sigma,
        [("b0", "a", "b0"), ("b0", "a", "b1"), ("b0", "b", "b2"),
         ("b1", "a", "b1"), ("b2", "b", "b2")],
        "b0", ("b1", "b2"), "inclusion-gap.B")
    return left, right


_BUILDERS = {
    "branching": _branching,
    "lookahead-gap": _lookahead_gap,
    "inclusion-gap": _inclusion_gap,
}


def fixture(name: str) -> Tuple[Nba, Nba]:
    """Return the (left, right) automaton pair registered under `name`."""
    if name not in _BUILDERS:
        raise KeyError(f"unknown fixture {name!r}; expected one of {', '.join(FIXTURE_NAMES)}")
    return _BUILDERS[name]()


def all_fixtures() -> Dict[str, Tuple[Nba, Nba]]:
    return {name: fixture(name) for name in FIXTURE_NAMES}
