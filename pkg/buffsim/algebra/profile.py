"""Transition profiles f_w : Q² → {0,1,2} and their composition.

Entry 0 means an accepting w-path exists, 1 means no w-path exists and 2
means a w-path exists but none visits an accepting state after its start.
"""

from typing import List

import numpy as np

from automata.nba import Nba
from utils.errors import UnknownLetterError

ACCEPTING_PATH = 0
NO_PATH = 1
PLAIN_PATH = 2


class ProfileDimensionError(ValueError):
    """Composed profiles belong to automata of different sizes."""


class Profile:
    """Immutable |Q|×|Q| matrix over {0,1,2}, hashable by its entries."""

    __slots__ = ("_matrix", "_key")

    def __init__(self, matrix: np.ndarray):
        matrix = np.asarray(matrix, dtype=np.int8)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ProfileDimensionError(f"profile must be square, got shape {matrix.shape}")
        if matrix.size and (matrix.min() < 0 or matrix.max() > 2):
            raise ValueError("profile entries must lie in {0,1,2}")
        matrix = matrix.copy()
        matrix.setflags(write=False)
        self._matrix = matrix
        self._key = (matrix.shape[0], matrix.tobytes())

    @property
    def dimension(self) -> int:
        return self._matrix.shape[0]

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    def __getitem__(self, pair) -> int:
        return int(self._matrix[pair])

    def has_path(self, i: int, j: int) -> bool:
        return self._matrix[i, j] != NO_PATH

    def has_accepting_path(self, i: int, j: int) -> bool:
        return self._matrix[i, j] == ACCEPTING_PATH

    def is_identity(self) -> bool:
        return self == identity_profile(self.dimension)

    def __eq__(self, other) -> bool:
        return isinstance(other, Profile) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def rows(self) -> List[str]:
        return ["".join(str(int(v)) for v in row) for row in self._matrix]

    def to_text(self) -> str:
        """Rows separated by '/', e.g. '21/12'."""
        return "/".join(self.rows())

    def __repr__(self) -> str:
        return f"Profile({self.to_text()})"


def identity_profile(dimension: int) -> Profile:
    """Profile of the empty word: length-0 paths exist, none accepting."""
    matrix = np.full((dimension, dimension), NO_PATH, dtype=np.int8)
    np.fill_diagonal(matrix, PLAIN_PATH)
    return Profile(matrix)


def letter_profile(a: Nba, letter: str) -> Profile:
    """Profile of a single letter, read directly off the transition relation."""
    if letter not in a.letter_index:
        raise UnknownLetterError(letter)
    n = len(a.states)
    matrix = np.full((n, n), NO_PATH, dtype=np.int8)
    for src, x, dst in a.transitions:
        if x == letter:
            matrix[a.index[src], a.index[dst]] = (
                ACCEPTING_PATH if dst in a.accepting else PLAIN_PATH)
    return Profile(matrix)


def compose(f: Profile, g: Profile) -> Profile:
    """Profile of uv from the profiles of u and v."""
    if f.dimension != g.dimension:
        raise ProfileDimensionError(
            f"cannot compose profiles of dimension {f.dimension} and {g.dimension}")
    f_path = (f.matrix != NO_PATH).astype(np.int32)
    g_path = (g.matrix != NO_PATH).astype(np.int32)
    f_acc = (f.matrix == ACCEPTING_PATH).astype(np.int32)
    g_acc = (g.matrix == ACCEPTING_PATH).astype(np.int32)

    path = (f_path @ g_path) > 0
    accepting = ((f_acc @ g_path) + (f_path @ g_acc)) > 0

    result = np.where(accepting, ACCEPTING_PATH, np.where(path, PLAIN_PATH, NO_PATH))
    return Profile(result.astype(np.int8))
