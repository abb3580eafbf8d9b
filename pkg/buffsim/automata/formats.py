"""Reading and writing automata: native line format, RABIT .ba format, DOT."""

import re
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import graphviz

from automata.nba import Nba
from utils.errors import AutomatonError, ParseError
from utils.logger import setup_logger

logger = setup_logger(__name__)

FORMATS = ("native", "ba")

_NATIVE_KEYS = ("states", "alphabet", "initial", "accepting", "trans")
_BA_TRANSITION = re.compile(r"^(?P<letter>.+),\s*\[(?P<src>[^\]]+)\]\s*->\s*\[(?P<dst>[^\]]+)\]$")
_BA_STATE = re.compile(r"^\[(?P<state>[^\]]+)\]$")


def parse_nba(text: str, fmt: str = "native", name: str = "") -> Nba:
    """Parse an automaton from text.

    Args:
        text: File contents
        fmt: 'native' or 'ba'
        name: Label used in logs and DOT output

    Returns:
        Validated automaton
    """
    if fmt == "native":
        return _parse_native(text, name)
    if fmt == "ba":
        return _parse_ba(text, name)
    raise ValueError(f"unknown automaton format: {fmt}")


def load_nba(path, fmt: Optional[str] = None) -> Nba:
    """Read an automaton from disk; '.ba' files default to the ba format."""
    path = Path(path)
    if fmt is None:
        fmt = "ba" if path.suffix == ".ba" else "native"
    logger.debug(f"Loading {path} as {fmt}")
    return parse_nba(path.read_text(encoding="utf-8"), fmt, name=path.name)


def _parse_native(text: str, name: str) -> Nba:
    declared: Dict[str, List[str]] = {}
    transitions: List[Tuple[str, str, str]] = []
    trans_lines: List[int] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        # Full-line comments only: '#' is a legal letter.
        if not line or line.startswith("#"):
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep:
            raise ParseError(f"expected 'key: values', got {line!r}", lineno)
        if key not in _NATIVE_KEYS:
            raise ParseError(f"unknown key {key!r}", lineno)
        values = rest.split()
        if key == "trans":
            if len(values) != 3:
                raise ParseError("trans needs exactly 'src letter dst'", lineno)
            transitions.append((values[0], values[1], values[2]))
            trans_lines.append(lineno)
            continue
        if key in declared:
            raise ParseError(f"duplicate key {key!r}", lineno)
        declared[key] = values

    for required in ("states", "alphabet", "initial"):
        if required not in declared:
            raise ParseError(f"missing '{required}:' line")
    states = declared["states"]
    alphabet = declared["alphabet"]
    if not states:
        raise ParseError("empty automaton: no states")
    if len(declared["initial"]) != 1:
        raise ParseError("exactly one initial state is required")
    initial = declared["initial"][0]
    accepting = declared.get("accepting", [])

    known_states = set(states)
    known_letters = set(alphabet)
    for lineno, (src, letter, dst) in zip(trans_lines, transitions):
        for state in (src, dst):
            if state not in known_states:
                raise ParseError(f"undeclared state {state!r}", lineno)
        if letter not in known_letters:
            raise ParseError(f"undeclared letter {letter!r}", lineno)
    for state in [initial] + accepting:
        if state not in known_states:
            raise ParseError(f"undeclared state {state!r}")

    try:
        return Nba.build(states, alphabet, transitions, initial, accepting, name)
    except AutomatonError as e:
        raise ParseError(str(e)) from e


def _parse_ba(text: str, name: str) -> Nba:
    states: List[str] = []
    alphabet: List[str] = []
    transitions: List[Tuple[str, str, str]] = []
    initial: Optional[str] = None
    accepting: List[str] = []
    seen_transition = False

    def note_state(state: str):
        if state not in states:
            states.append(state)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        bracket = _BA_STATE.match(line)
        if bracket:
            state = bracket.group("state").strip()
            if seen_transition:
                accepting.append(state)
            elif initial is None:
                initial = state
            else:
                raise ParseError("multiple initial states are not supported", lineno)
            note_state(state)
            continue
        match = _BA_TRANSITION.match(line)
        if not match:
            raise ParseError(f"cannot parse {line!r}", lineno)
        letter = match.group("letter").strip()
        src = match.group("src").strip()
        dst = match.group("dst").strip()
        seen_transition = True
        note_state(src)
        note_state(dst)
        if letter not in alphabet:
            alphabet.append(letter)
        transitions.append((src, letter, dst))

    if not states:
        raise ParseError("empty automaton: no states")
    if initial is None:
        initial = transitions[0][0]
    # The initial state leads the declared order.
    states.remove(initial)
    states.insert(0, initial)
    try:
        return Nba.build(states, alphabet, transitions, initial, accepting, name)
    except AutomatonError as e:
        raise ParseError(str(e)) from e


def emit_nba(a: Nba, fmt: str = "native") -> str:
    """Serialise an automaton; native output round-trips exactly."""
    if fmt == "native":
        lines = [
            f"states: {' '.join(a.states)}",
            f"alphabet: {' '.join(a.alphabet)}",
            f"initial: {a.initial}",
            f"accepting: {' '.join(q for q in a.states if q in a.accepting)}".rstrip(),
        ]
        lines.extend(f"trans: {src} {letter} {dst}"
                     for src, letter, dst in a.sorted_transitions())
        return "\n".join(lines) + "\n"
    if fmt == "ba":
        lines = [f"[{a.initial}]"]
        lines.extend(f"{letter},[{src}]->[{dst}]"
                     for src, letter, dst in a.sorted_transitions())
        lines.extend(f"[{q}]" for q in a.states if q in a.accepting)
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown automaton format: {fmt}")


def automaton_to_dot(a: Nba) -> str:
    """DOT source: accepting states double-circled, nodes in declared order."""
    g = graphviz.Digraph(a.name or "nba", graph_attr={"rankdir": "LR"})
    # Numeric node ids: graphviz reads "x:y" in edge endpoints as a port.
    ids = {q: f"s{i}" for i, q in enumerate(a.states)}
    g.node("start", label="", shape="none", width="0")
    for q in a.states:
        g.node(ids[q], label=graphviz.nohtml(q),
               shape="doublecircle" if q in a.accepting else "circle")
    g.edge("start", ids[a.initial])

    labels: Dict[Tuple[str, str], List[str]] = {}
    for src, letter, dst in a.sorted_transitions():
        labels.setdefault((src, dst), []).append(letter)
    for (src, dst), letters in labels.items():
        g.edge(ids[src], ids[dst], label=graphviz.nohtml(",".join(letters)))
    return g.source
