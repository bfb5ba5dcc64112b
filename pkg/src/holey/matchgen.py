"""Brute-force (near-)perfect matching enumeration and the diagonal-reflection
machinery behind the ``2^k`` divisibility argument.

The enumerator is deliberately naive: it is the oracle the transfer-matrix
counter is checked against, so it must not share any structure with it.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from .grid import Cell, GridError, GridSpec, parse_cell

ENUMERATION_CAP = 10**8

AXES = ("main_diagonal", "anti_diagonal", "vertical", "horizontal")


class EnumerationLimitExceeded(RuntimeError):
    """Brute-force enumeration would exceed the configured cap."""


@dataclass(frozen=True, order=True)
class Domino:
    a: Cell
    b: Cell

    def __post_init__(self):
        if abs(self.a.row - self.b.row) + abs(self.a.col - self.b.col) != 1:
            raise GridError(f"cells {self.a} and {self.b} are not adjacent")
        if self.b < self.a:
            a, b = self.b, self.a
            object.__setattr__(self, "a", a)
            object.__setattr__(self, "b", b)

    def __str__(self) -> str:
        return f"{self.a}-{self.b}"

    def other(self, cell: Cell) -> Cell:
        return self.b if cell == self.a else self.a


@dataclass(frozen=True)
class Matching:
    dominoes: frozenset
    hole: Cell | None = None

    def covered(self) -> dict[Cell, Domino]:
        out = {}
        for d in self.dominoes:
            for x in (d.a, d.b):
                if x in out:
                    raise GridError(f"cell {x} covered twice")
                out[x] = d
        return out

    def validate(self, spec: GridSpec) -> None:
        """Raise unless this is a near-perfect (or perfect) matching of ``spec``."""
        cov = self.covered()
        for x in cov:
            spec.require(x)
        expected = set(spec.cells())
        if self.hole is not None:
            spec.require(self.hole)
            expected.discard(self.hole)
        if set(cov) != expected:
            raise GridError("matching does not cover exactly the non-hole cells")

    def to_text(self) -> str:
        lines = [f"hole: {self.hole if self.hole is not None else 'none'}"]
        lines += [str(d) for d in sorted(self.dominoes)]
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "hole": None if self.hole is None else self.hole.to_json(),
            "dominoes": [[d.a.to_json(), d.b.to_json()] for d in sorted(self.dominoes)],
        }


def parse_matching(text: str, spec: GridSpec | None = None) -> Matching:
    """Read a matching in the line format or its JSON alternatives.

    A bare JSON array of dominoes carries no hole; it is inferred from ``spec``.
    """
    stripped = text.strip()
    if stripped.startswith("{") or stripped.startswith("["):
        obj = json.loads(stripped)
        hole = None
        if isinstance(obj, dict):
            hole = None if obj.get("hole") is None else Cell(obj["hole"]["row"], obj["hole"]["col"])
            obj = obj["dominoes"]
        dominoes = frozenset(
            Domino(Cell(a["row"], a["col"]), Cell(b["row"], b["col"])) for a, b in obj
        )
        m = Matching(dominoes, hole)
        if spec is not None and hole is None and spec.area % 2 == 1:
            missing = set(spec.cells()) - set(m.covered())
            if len(missing) == 1:
                m = Matching(dominoes, missing.pop())
        return m

    hole = None
    dominoes = []
    for raw in stripped.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.lower().startswith("hole:"):
            value = line.split(":", 1)[1].strip()
            hole = None if value.lower() == "none" else parse_cell(value)
            continue
        left, sep, right = line.partition("-")
        if not sep:
            raise GridError(f"bad domino line {line!r}")
        dominoes.append(Domino(parse_cell(left), parse_cell(right)))
    return Matching(frozenset(dominoes), hole)


# ---------------------------------------------------------------- enumeration


def _index_enumerate(rows: int, cols: int, blocked: int, cap: int) -> Iterator[list]:
    """Yield lists of (i, j) index pairs, cells indexed row-major from 0."""
    n = rows * cols
    full = (1 << n) - 1
    placed: list = []
    emitted = 0

    def rec(covered):
        nonlocal emitted
        if covered == full:
            emitted += 1
            if emitted > cap:
                raise EnumerationLimitExceeded(f"more than {cap} matchings")
            yield placed
            return
        free = ~covered & full
        low = free & -free
        i = low.bit_length() - 1
        if i % cols != cols - 1 and not (covered >> (i + 1)) & 1:
            placed.append((i, i + 1))
            yield from rec(covered | low | (low << 1))
            placed.pop()
        if i + cols < n and not (covered >> (i + cols)) & 1:
            placed.append((i, i + cols))
            yield from rec(covered | low | (low << cols))
            placed.pop()

    yield from rec(blocked)


def _index_count(rows: int, cols: int, blocked: int, cap: int) -> int:
    n = rows * cols
    full = (1 << n) - 1

    def rec(covered):
        if covered == full:
            return 1
        free = ~covered & full
        low = free & -free
        i = low.bit_length() - 1
        total = 0
        if i % cols != cols - 1 and not (covered >> (i + 1)) & 1:
            total += rec(covered | low | (low << 1))
        if i + cols < n and not (covered >> (i + cols)) & 1:
            total += rec(covered | low | (low << cols))
        if total > cap:
            raise EnumerationLimitExceeded(f"more than {cap} matchings")
        return total

    return rec(blocked)


def _cell_of(index: int, cols: int) -> Cell:
    return Cell(index // cols + 1, index % cols + 1)


def _blocked(spec: GridSpec, h: Cell | None) -> int:
    if h is None:
        return 0
    spec.require(h)
    return 1 << ((h.row - 1) * spec.cols + (h.col - 1))


def enumerate_near_perfect(spec: GridSpec, h: Cell, cap: int = ENUMERATION_CAP) -> Iterator[Matching]:
    """Every matching of ``spec`` leaving exactly ``h`` uncovered.

    Cells are scanned row-major from the bottom-left; the first uncovered
    cell is paired with its right neighbour before its upper neighbour.
    """
    if not spec.odd_odd():
        raise GridError("near-perfect matchings need an odd-by-odd grid")
    blocked = _blocked(spec, h)
    if h.is_black:
        return
    c = spec.cols
    for pairs in _index_enumerate(spec.rows, c, blocked, cap):
        yield Matching(frozenset(Domino(_cell_of(i, c), _cell_of(j, c)) for i, j in pairs), h)


def enumerate_perfect(spec: GridSpec, cap: int = ENUMERATION_CAP) -> Iterator[Matching]:
    if spec.area % 2:
        return
    c = spec.cols
    for pairs in _index_enumerate(spec.rows, c, 0, cap):
        yield Matching(frozenset(Domino(_cell_of(i, c), _cell_of(j, c)) for i, j in pairs))


def count_brute(spec: GridSpec, h: Cell | None = None, cap: int = ENUMERATION_CAP) -> int:
    """Exhaustive count; ``h=None`` counts perfect matchings of an even-area grid."""
    if h is None:
        if spec.area % 2:
            return 0
        return _index_count(spec.rows, spec.cols, 0, cap)
    if not spec.odd_odd():
        raise GridError("near-perfect matchings need an odd-by-odd grid")
    blocked = _blocked(spec, h)
    if h.is_black:
        return 0
    return _index_count(spec.rows, spec.cols, blocked, cap)


# ----------------------------------------------------------------- reflection


def axis_map(spec: GridSpec, axis: str) -> Callable[[Cell], Cell]:
    r, c = spec.rows, spec.cols
    if axis in ("main_diagonal", "anti_diagonal") and not spec.is_square:
        raise GridError(f"{axis} reflection needs a square grid")
    if axis == "main_diagonal":
        return lambda x: Cell(x.col, x.row)
    if axis == "anti_diagonal":
        return lambda x: Cell(r + 1 - x.col, c + 1 - x.row)
    if axis == "vertical":
        return lambda x: Cell(x.row, c + 1 - x.col)
    if axis == "horizontal":
        return lambda x: Cell(r + 1 - x.row, x.col)
    raise GridError(f"unknown axis {axis!r}; expected one of {AXES}")


def on_axis(spec: GridSpec, axis: str, x: Cell) -> bool:
    return axis_map(spec, axis)(x) == x


def reflect_matching(spec: GridSpec, m: Matching, axis: str) -> Matching:
    f = axis_map(spec, axis)
    return Matching(
        frozenset(Domino(f(d.a), f(d.b)) for d in m.dominoes),
        None if m.hole is None else f(m.hole),
    )


@dataclass(frozen=True)
class Component:
    kind: str  # "cycle" or "path"
    cells: tuple
    meets_axis: int
    symmetric: bool
    m_edges: frozenset = field(repr=False)

    @property
    def meets_diagonal(self) -> int:
        return self.meets_axis


@dataclass(frozen=True)
class UnionDecomposition:
    components: tuple

    @property
    def path(self) -> Component:
        return next(c for c in self.components if c.kind == "path")

    @property
    def cycles(self) -> list[Component]:
        return [c for c in self.components if c.kind == "cycle"]


def union_decompose(spec: GridSpec, m: Matching, m_prime: Matching, axis: str) -> UnionDecomposition:
    """Split the multigraph ``M ∪ M'`` into alternating cycles and one path.

    The path is listed from the mirrored hole to the hole.  A domino shared
    by both matchings is a cycle of length 2.
    """
    f = axis_map(spec, axis)
    if m.hole is None or m_prime.hole is None:
        raise GridError("union decomposition needs near-perfect matchings")
    if m.hole == m_prime.hole:
        raise GridError(f"hole {m.hole} lies on the axis; the union has no path")
    cov = m.covered()
    cov_p = m_prime.covered()

    def make(kind, cells, m_edges):
        cell_set = frozenset(cells)
        return Component(
            kind=kind,
            cells=tuple(cells),
            meets_axis=sum(1 for x in cells if f(x) == x),
            symmetric=frozenset(f(x) for x in cells) == cell_set,
            m_edges=frozenset(m_edges),
        )

    seen: set[Cell] = set()
    components = []

    # the path: h' is covered only by M, h only by M'
    cells = [m_prime.hole]
    edges = []
    cur = m_prime.hole
    use_m = True
    while cur != m.hole:
        d = cov[cur] if use_m else cov_p[cur]
        if use_m:
            edges.append(d)
        cur = d.other(cur)
        cells.append(cur)
        use_m = not use_m
    seen.update(cells)
    components.append(make("path", cells, edges))

    for start in sorted(cov):
        if start in seen:
            continue
        cells = [start]
        edges = []
        cur = start
        use_m = True
        while True:
            d = cov[cur] if use_m else cov_p[cur]
            if use_m:
                edges.append(d)
            cur = d.other(cur)
            use_m = not use_m
            if cur == start and use_m:
                break
            cells.append(cur)
        seen.update(cells)
        components.append(make("cycle", cells, edges))
    return UnionDecomposition(tuple(components))


@dataclass
class ReflectionReport:
    passed: bool
    matchings: int
    expected_fiber: int
    fiber_histogram: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)


def union_signature(m: Matching, m_prime: Matching) -> tuple:
    """The multigraph ``S`` as a sorted tuple of (domino, multiplicity)."""
    return tuple(sorted(Counter([*m.dominoes, *m_prime.dominoes]).items()))


def verify_reflection_structure(spec: GridSpec, h: Cell, axis: str = "main_diagonal",
                                cap: int = ENUMERATION_CAP) -> ReflectionReport:
    """Check every step of the diagonal-reflection counting argument for hole ``h``.

    For each matching ``M`` with hole ``h``: cycles of ``M ∪ M'`` that touch
    the diagonal are symmetric and touch it in exactly two cells, there are
    exactly ``k`` of them, and the path touches it once.  The map
    ``M -> (S, X)`` must have fibers of size exactly ``2^k``.
    Violations are collected, not raised.
    """
    if axis not in ("main_diagonal", "anti_diagonal"):
        raise GridError("reflection structure is defined for the diagonals only")
    k = spec.k
    if on_axis(spec, axis, h):
        raise GridError(f"hole {h} lies on the {axis}")
    fibers: Counter = Counter()
    violations = []
    total = 0
    for m in enumerate_near_perfect(spec, h, cap=cap):
        total += 1
        mp = reflect_matching(spec, m, axis)
        dec = union_decompose(spec, m, mp, axis)
        meeting = [c for c in dec.cycles if c.meets_axis]
        if len(meeting) != k:
            violations.append(f"{len(meeting)} axis cycles (expected {k}) for {sorted(map(str, m.dominoes))}")
        for cyc in meeting:
            if not cyc.symmetric or cyc.meets_axis != 2:
                violations.append(f"axis cycle {list(map(str, cyc.cells))} symmetric={cyc.symmetric} "
                                  f"meets={cyc.meets_axis}")
        if dec.path.meets_axis != 1:
            violations.append(f"path meets axis {dec.path.meets_axis} times")
        x = frozenset().union(*(c.m_edges for c in dec.components if not c.meets_axis))
        fibers[(union_signature(m, mp), x)] += 1
    hist = Counter(fibers.values())
    expected = 2**k
    bad = [size for size in hist if size != expected]
    if bad:
        violations.append(f"fiber sizes {sorted(bad)} differ from {expected}")
    return ReflectionReport(
        passed=not violations,
        matchings=total,
        expected_fiber=expected,
        fiber_histogram=dict(sorted(hist.items())),
        violations=violations,
    )


def mirror_union(spec: GridSpec, signature: Iterable, axis: str) -> tuple:
    f = axis_map(spec, axis)
    return tuple(sorted((Domino(f(d.a), f(d.b)), n) for d, n in signature))
