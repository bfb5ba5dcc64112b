"""Lattice geometry for odd-by-odd boards with a single vacancy.

Coordinates are 1-based, ``(1, 1)`` is the bottom-left corner and is white.
A cell is white when ``row + col`` is even.  White cells whose coordinates
are both odd are *odd white*; both even are *even white*.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from typing import Callable, Iterator


class GridError(ValueError):
    """Invalid board dimensions or cell for the requested operation."""


@dataclass(frozen=True, order=True)
class Cell:
    row: int
    col: int

    @property
    def is_white(self) -> bool:
        return (self.row + self.col) % 2 == 0

    @property
    def is_black(self) -> bool:
        return not self.is_white

    @property
    def white_parity(self) -> str | None:
        """``"odd"`` or ``"even"`` for white cells, ``None`` for black ones."""
        if not self.is_white:
            return None
        return "odd" if self.row % 2 == 1 else "even"

    def __str__(self) -> str:
        return f"{self.row},{self.col}"

    def to_json(self) -> dict:
        return {"row": self.row, "col": self.col}


def parse_cell(text: str) -> Cell:
    """Parse ``"ROW,COL"`` or a JSON ``{"row": .., "col": ..}`` object."""
    text = text.strip()
    if text.startswith("{"):
        obj = json.loads(text)
        return Cell(int(obj["row"]), int(obj["col"]))
    parts = text.split(",")
    if len(parts) != 2:
        raise GridError(f"expected ROW,COL, got {text!r}")
    try:
        return Cell(int(parts[0]), int(parts[1]))
    except ValueError as exc:
        raise GridError(f"expected ROW,COL, got {text!r}") from exc


@dataclass(frozen=True)
class GridSpec:
    rows: int
    cols: int

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise GridError(f"grid dimensions must be positive, got {self.rows}x{self.cols}")

    def odd_odd(self) -> bool:
        return self.rows % 2 == 1 and self.cols % 2 == 1

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def k(self) -> int:
        """Half-size ``k`` of a ``(2k+1)``-square."""
        if not (self.is_square and self.rows % 2 == 1):
            raise GridError("k is only defined for odd squares")
        return (self.rows - 1) // 2

    @property
    def area(self) -> int:
        return self.rows * self.cols

    def contains(self, cell: Cell) -> bool:
        return 1 <= cell.row <= self.rows and 1 <= cell.col <= self.cols

    def require(self, cell: Cell) -> None:
        if not self.contains(cell):
            raise GridError(f"cell {cell} outside {self.rows}x{self.cols} grid")

    def cells(self) -> Iterator[Cell]:
        """All cells in row-major order, bottom row first."""
        for r in range(1, self.rows + 1):
            for c in range(1, self.cols + 1):
                yield Cell(r, c)

    def white_cells(self) -> list[Cell]:
        return [cell for cell in self.cells() if cell.is_white]

    def neighbors(self, cell: Cell) -> list[Cell]:
        out = []
        for dr, dc in ((0, 1), (1, 0), (0, -1), (-1, 0)):
            nb = Cell(cell.row + dr, cell.col + dc)
            if self.contains(nb):
                out.append(nb)
        return out

    def is_boundary(self, cell: Cell) -> bool:
        return cell.row in (1, self.rows) or cell.col in (1, self.cols)

    def center(self) -> Cell:
        if not self.odd_odd():
            raise GridError("center is only defined for odd-by-odd grids")
        return Cell((self.rows + 1) // 2, (self.cols + 1) // 2)

    def symmetries(self) -> list[Callable[[Cell], Cell]]:
        """The symmetry group of the board: 8 maps for squares, 4 otherwise."""
        r, c = self.rows, self.cols
        maps = [
            lambda x: x,
            lambda x: Cell(r + 1 - x.row, x.col),
            lambda x: Cell(x.row, c + 1 - x.col),
            lambda x: Cell(r + 1 - x.row, c + 1 - x.col),
        ]
        if self.is_square:
            maps += [
                lambda x: Cell(x.col, x.row),
                lambda x: Cell(r + 1 - x.col, c + 1 - x.row),
                lambda x: Cell(x.col, c + 1 - x.row),
                lambda x: Cell(r + 1 - x.col, x.row),
            ]
        return maps


class HoleClass(enum.Enum):
    CENTER = "center"
    DIAGONAL_NON_CENTER = "diagonal_non_center"
    AXIS_NON_CENTER = "axis_non_center"
    GENERIC = "generic"

    @property
    def orbit_size(self) -> int:
        return {"center": 1, "diagonal_non_center": 4, "axis_non_center": 4, "generic": 8}[self.value]


def on_diagonal(spec: GridSpec, h: Cell) -> bool:
    return h.row == h.col or h.row + h.col == spec.rows + 1


def on_central_axis(spec: GridSpec, h: Cell) -> bool:
    return 2 * h.row == spec.rows + 1 or 2 * h.col == spec.cols + 1


def classify_hole(spec: GridSpec, h: Cell) -> HoleClass:
    if not (spec.is_square and spec.odd_odd()):
        raise GridError(f"hole classes need an odd square, got {spec.rows}x{spec.cols}")
    spec.require(h)
    if not h.is_white:
        raise GridError(f"hole {h} is black")
    if h == spec.center():
        return HoleClass.CENTER
    if on_diagonal(spec, h):
        return HoleClass.DIAGONAL_NON_CENTER
    if on_central_axis(spec, h):
        return HoleClass.AXIS_NON_CENTER
    return HoleClass.GENERIC


def hole_orbit(spec: GridSpec, h: Cell) -> frozenset[Cell]:
    spec.require(h)
    return frozenset(g(h) for g in spec.symmetries())


def orbit_representatives(spec: GridSpec, cells) -> dict[Cell, frozenset[Cell]]:
    """Map the smallest member of each orbit meeting ``cells`` to its orbit."""
    reps: dict[Cell, frozenset[Cell]] = {}
    seen: set[Cell] = set()
    for cell in sorted(cells):
        if cell in seen:
            continue
        orbit = hole_orbit(spec, cell)
        seen |= orbit
        reps[min(orbit)] = orbit
    return reps


def odd_white_count(r: int, c: int) -> int:
    return (r + 1) * (c + 1) // 4


def even_white_count(r: int, c: int) -> int:
    return (r - 1) * (c - 1) // 4


class _ZeroCount:
    """Falsy marker: the hole is black, so the count is exactly zero."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __bool__(self):
        return False

    def __repr__(self):
        return "ZERO_COUNT"


ZERO_COUNT = _ZeroCount()


def _require_odd(r: int, c: int) -> None:
    if r < 1 or c < 1 or r % 2 == 0 or c % 2 == 0:
        raise GridError(f"expected odd dimensions, got {r}x{c}")


def _conditions_i_ii(r: int, c: int) -> bool:
    return (r % 4 == 1 or c % 4 == 1) and math.gcd(r + 1, c + 1) == 2


def parity_predicate_hole(r: int, c: int, h: Cell):
    """Closed-form parity of the number of matchings missing ``h``.

    Returns ``True`` when the count is odd, ``False`` when even, and the
    falsy :data:`ZERO_COUNT` marker when ``h`` is black.
    """
    _require_odd(r, c)
    GridSpec(r, c).require(h)
    if not h.is_white:
        return ZERO_COUNT
    return _conditions_i_ii(r, c) and h.white_parity == "odd"


def parity_predicate_total(r: int, c: int) -> bool:
    _require_odd(r, c)
    return r % 4 == 1 and c % 4 == 1 and math.gcd(r + 1, c + 1) == 2
