"""Tiling systems, tilings and brute-force tiling oracles.

File format, one directive per line (full-line '#' comments allowed):

    tiles: t1 t2 t3
    h: t1 t1
    v: t1 t2
    initial: t1
    final: t3
"""

from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

import numpy as np

from utils.config import ROW_STATE_BUDGET
from utils.errors import BudgetExceeded, ParseError
from utils.logger import setup_logger

logger = setup_logger(__name__)

Row = Tuple[str, ...]
TilePair = Tuple[str, str]


@dataclass(frozen=True)
class TilingSystem:
    tiles: Tuple[str, ...]
    horizontal: FrozenSet[TilePair]
    vertical: FrozenSet[TilePair]
    initial_tile: str
    final_tile: str

    def __post_init__(self):
        if not self.tiles:
            raise ValueError("a tiling system needs at least one tile")
        known = set(self.tiles)
        if len(known) != len(self.tiles):
            raise ValueError("duplicate tile names")
        for tile in (self.initial_tile, self.final_tile):
            if tile not in known:
                raise ValueError(f"unknown tile {tile!r}")
        for t, u in self.horizontal | self.vertical:
            if t not in known or u not in known:
                raise ValueError(f"compatibility pair ({t}, {u}) uses an unknown tile")

    def h_successors(self, tile: str) -> List[str]:
        return [u for u in self.tiles if (tile, u) in self.horizontal]

    def v_successors(self, tile: str) -> List[str]:
        return [u for u in self.tiles if (tile, u) in self.vertical]

    def stacks(self, upper: Row, lower: Row) -> bool:
        """True iff `lower` may be placed directly below `upper`."""
        return all((t, u) in self.vertical for t, u in zip(upper, lower))

    def to_text(self) -> str:
        lines = [f"tiles: {' '.join(self.tiles)}"]
        order = {t: i for i, t in enumerate(self.tiles)}
        key = lambda pair: (order[pair[0]], order[pair[1]])  # noqa: E731
        lines += [f"h: {t} {u}" for t, u in sorted(self.horizontal, key=key)]
        lines += [f"v: {t} {u}" for t, u in sorted(self.vertical, key=key)]
        lines += [f"initial: {self.initial_tile}", f"final: {self.final_tile}"]
        return "\n".join(lines) + "\n"


def parse_tiling_system(text: str) -> TilingSystem:
    """Parse the line-based tiling-system format.

    Raises:
        ParseError: on unknown directives, malformed pairs or unknown tiles
    """
    tiles: Optional[List[str]] = None
    horizontal: Set[TilePair] = set()
    vertical: Set[TilePair] = set()
    single: Dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        values = rest.split()
        if not sep:
            raise ParseError(f"expected 'key: values', got {line!r}", lineno)
        if key == "tiles":
            if tiles is not None:
                raise ParseError("duplicate 'tiles:' line", lineno)
            tiles = values
        elif key in ("h", "v"):
            if len(values) != 2:
                raise ParseError(f"'{key}:' needs exactly two tiles", lineno)
            (horizontal if key == "h" else vertical).add((values[0], values[1]))
        elif key in ("initial", "final"):
            if len(values) != 1 or key in single:
                raise ParseError(f"'{key}:' needs exactly one tile, once", lineno)
            single[key] = values[0]
        else:
            raise ParseError(f"unknown key {key!r}", lineno)
    if tiles is None:
        raise ParseError("missing 'tiles:' line")
    for key in ("initial", "final"):
        if key not in single:
            raise ParseError(f"missing '{key}:' line")
    try:
        return TilingSystem(tuple(tiles), frozenset(horizontal), frozenset(vertical),
                            single["initial"], single["final"])
    except ValueError as e:
        raise ParseError(str(e)) from e


@dataclass(frozen=True)
class Tiling:
    """`grid[j][i]` is the tile in column i+1 of row j+1."""

    width: int
    height: int
    grid: Tuple[Row, ...]

    def is_valid(self, ts: TilingSystem) -> bool:
        if len(self.grid) != self.height or any(len(row) != self.width for row in self.grid):
            return False
        if self.grid[0][0] != ts.initial_tile or self.grid[-1][-1] != ts.final_tile:
            return False
        for row in self.grid:
            if any((t, u) not in ts.horizontal for t, u in zip(row, row[1:])):
                return False
        return all(ts.stacks(upper, lower) for upper, lower in zip(self.grid, self.grid[1:]))

    def __str__(self) -> str:
        return "\n".join(" ".join(row) for row in self.grid)


def _check_budget(ts: TilingSystem, n: int) -> None:
    states = len(ts.tiles) ** n
    if states > ROW_STATE_BUDGET:
        raise BudgetExceeded(f"{states} row states exceed the budget of {ROW_STATE_BUDGET}")


def horizontal_rows(ts: TilingSystem, n: int, first: Optional[str] = None) -> List[Row]:
    """All H-compatible rows of width n, in lexicographic tile order."""
    _check_budget(ts, n)
    starts = [first] if first is not None else list(ts.tiles)
    rows = []
    for start in starts:
        for rest in product(ts.tiles, repeat=n - 1):
            row = (start,) + rest
            if all((t, u) in ts.horizontal for t, u in zip(row, row[1:])):
                rows.append(row)
    return rows


def brute_force_tiling(ts: TilingSystem, n: int, m: int) -> Optional[Tiling]:
    """Lexicographically least valid n×m tiling, by row-state dynamic programming.

    Raises:
        ValueError: when n or m is below 1
        BudgetExceeded: when |T|^n exceeds the row-state budget
    """
    if n < 1 or m < 1:
        raise ValueError("tilings need at least one row and one column")
    rows = horizontal_rows(ts, n)
    below: Dict[Row, List[Row]] = {r: [s for s in rows if ts.stacks(r, s)] for r in rows}

    # good[j]: rows that can start rows j..m of a valid tiling
    good: List[Set[Row]] = [set() for _ in range(m)]
    good[m - 1] = {r for r in rows if r[-1] == ts.final_tile}
    for j in range(m - 2, -1, -1):
        if j + 2 < m and good[j + 1] == good[j + 2]:
            good[j] = good[j + 1]
            continue
        good[j] = {r for r in rows if any(s in good[j + 1] for s in below[r])}

    first = [r for r in rows if r[0] == ts.initial_tile and r in good[0]]
    if not first:
        logger.debug(f"No valid {n}x{m} tiling")
        return None
    grid = [first[0]]
    for j in range(1, m):
        grid.append(next(s for s in below[grid[-1]] if s in good[j]))
    return Tiling(n, m, tuple(grid))


class TilingGameResult(Enum):
    STARTER_WINS = "starter"
    COMPLETER_WINS = "completer"


def brute_force_tiling_game(ts: TilingSystem, n: int) -> TilingGameResult:
    """Solve the Starter/Completer tiling game over rows of width n.

    Completer wins as soon as t_F is placed by either player; a player
    who cannot move loses. Plays that never place t_F are won by Starter.

    Raises:
        BudgetExceeded: when |T|^n exceeds the row-state budget
    """
    if n < 1:
        raise ValueError("rows need at least one column")
    final = ts.final_tile
    if ts.initial_tile == final:
        return TilingGameResult.COMPLETER_WINS
    rows = horizontal_rows(ts, n)

    def completions(previous: Optional[Row], start: str) -> List[Row]:
        return [r for r in rows if r[0] == start
                and (previous is None or ts.stacks(previous[1:], r[1:]))]

    # Least fixpoint of rows (Starter to move next) from which Completer forces t_F.
    won: Set[Row] = {r for r in rows if final in r}
    changed = True
    while changed:
        changed = False
        for r in rows:
            if r in won:
                continue
            starter_options = ts.v_successors(r[0])
            if all(start == final or any(c in won for c in completions(r, start))
                   for start in starter_options):
                won.add(r)
                changed = True

    opening = completions(None, ts.initial_tile)
    result = (TilingGameResult.COMPLETER_WINS if any(r in won for r in opening)
              else TilingGameResult.STARTER_WINS)
    logger.debug(f"Tiling game n={n}: {result.value} wins ({len(won)} winning rows)")
    return result


def random_tiling_system(rng: np.random.Generator, max_tiles: int = 3,
                         density: float = 0.5) -> TilingSystem:
    """Random tiling system with 1..max_tiles tiles named t1, t2, ..."""
    count = int(rng.integers(1, max_tiles + 1))
    tiles = tuple(f"t{i + 1}" for i in range(count))
    pairs = [(t, u) for t in tiles for u in tiles]
    horizontal = frozenset(p for p in pairs if rng.random() < density)
    vertical = frozenset(p for p in pairs if rng.random() < density)
    initial = tiles[int(rng.integers(count))]
    final = tiles[int(rng.integers(count))]
    return TilingSystem(tiles, horizontal, vertical, initial, final)
