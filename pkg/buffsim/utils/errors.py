"""Exception hierarchy shared by every buffsim module."""

from typing import Optional


class BuffsimError(Exception):
    """Base class for all errors raised by buffsim."""


class ParseError(BuffsimError):
    """Malformed automaton or tiling-system text."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")


class AutomatonError(BuffsimError):
    """An automaton violates a structural invariant."""


class UnknownLetterError(AutomatonError):
    """A word uses a letter outside the automaton's alphabet."""

    def __init__(self, letter: str):
        self.letter = letter
        super().__init__(f"unknown letter: {letter!r}")


class AlphabetMismatchError(BuffsimError):
    """Two automata compared against each other do not share an alphabet."""


class InvalidRunError(BuffsimError):
    """A run is not a path of the automaton it claims to belong to."""


class CapExceeded(BuffsimError):
    """Monoid construction stopped at the configured element cap."""

    def __init__(self, partial_size: int, cap: int):
        self.partial_size = partial_size
        self.cap = cap
        super().__init__(f"monoid exceeds cap {cap} (partial size {partial_size})")


class ArenaTooLarge(BuffsimError):
    """On-the-fly arena exploration exceeded the position limit."""

    def __init__(self, limit: int):
        self.limit = limit
        super().__init__(f"arena exceeds {limit} positions")


class ReplayFailure(BuffsimError):
    """A winning strategy has no concrete realisation; always a bug."""


class DelayedPruningRefused(BuffsimError):
    """Pruning was requested with a delayed-simulation preorder."""


class BudgetExceeded(BuffsimError):
    """A brute-force oracle exceeded its configured state budget."""


class UsageError(BuffsimError):
    """Invalid combination of command-line options."""
