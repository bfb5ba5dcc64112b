"""Spanning webs on the odd-white sublattice.

A near-perfect matching ``M`` induces a directed graph on the odd white
cells: if odd white ``w`` is matched to black ``b``, draw an arc from ``w``
to the white cell on the far side of ``b``.  Directed cycles can be reversed
to pair matchings off; acyclic webs are spanning trees rooted at the hole
and determine the matching uniquely.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

from .grid import Cell, GridError, GridSpec
from .linalg import spanning_tree_count
from .matchgen import Domino, Matching
from .profile_dp import count_all_holes


class WebError(ValueError):
    """Input is not a web of the requested kind."""


def odd_white_cells(spec: GridSpec) -> list[Cell]:
    return [Cell(r, c) for r in range(1, spec.rows + 1, 2) for c in range(1, spec.cols + 1, 2)]


def web_dims(spec: GridSpec) -> tuple[int, int]:
    return (spec.rows + 1) // 2, (spec.cols + 1) // 2


def to_lattice(w: Cell) -> tuple[int, int]:
    return (w.row + 1) // 2, (w.col + 1) // 2


def _midpoint(a: Cell, b: Cell) -> Cell:
    return Cell((a.row + b.row) // 2, (a.col + b.col) // 2)


@dataclass
class WebGraph:
    spec: GridSpec
    arcs: dict  # odd white cell -> odd white cell, or None when uncovered
    hole: Cell | None = None

    def to_text(self) -> str:
        lines = [f"{w}->{t}" for w, t in sorted(self.arcs.items()) if t is not None]
        return "\n".join(lines) + ("\n" if lines else "")


@dataclass(frozen=True)
class WebCycle:
    vertices: tuple
    enclosed_region: frozenset = field(repr=False)
    encloses_hole: bool = False

    def __len__(self):
        return len(self.vertices)


def web_from_matching(spec: GridSpec, m: Matching) -> WebGraph:
    if not spec.odd_odd():
        raise GridError(f"{spec.rows}x{spec.cols} is not odd-by-odd")
    cov = m.covered()
    arcs = {}
    for w in odd_white_cells(spec):
        d = cov.get(w)
        if d is None:
            arcs[w] = None
            continue
        b = d.other(w)
        arcs[w] = Cell(2 * b.row - w.row, 2 * b.col - w.col)
    return WebGraph(spec, arcs, m.hole)


def _enclosed(spec: GridSpec, polygon: list[Cell]) -> frozenset:
    """Grid cells strictly inside the closed curve through ``polygon``."""
    on_curve = set(polygon)
    crossings: dict[int, list[int]] = {}
    for a, b in zip(polygon, polygon[1:] + polygon[:1]):
        on_curve.add(_midpoint(a, b))
        if a.col == b.col:
            # half-open in the row direction so vertices are not double counted
            for row in range(min(a.row, b.row), max(a.row, b.row)):
                crossings.setdefault(row, []).append(a.col)
    inside = set()
    for row, cols in crossings.items():
        cols.sort()
        # a ray to the right from (row, x) is inside between pairs of crossings
        for left, right in zip(cols[::2], cols[1::2]):
            for col in range(left, right):
                x = Cell(row, col)
                if x not in on_curve:
                    inside.add(x)
    return frozenset(inside)


def find_cycles(web: WebGraph) -> list[WebCycle]:
    """All directed cycles of the web, each listed from its smallest vertex."""
    state: dict[Cell, int] = {}
    cycles = []
    for start in sorted(web.arcs):
        if start in state:
            continue
        path = []
        cur = start
        while cur is not None and cur not in state:
            state[cur] = 1
            path.append(cur)
            cur = web.arcs[cur]
        if cur is not None and state[cur] == 1:
            loop = path[path.index(cur):]
            i = loop.index(min(loop))
            loop = loop[i:] + loop[:i]
            region = _enclosed(web.spec, loop)
            cycles.append(WebCycle(tuple(loop), region, web.hole in region))
        for v in path:
            state[v] = 2
    return sorted(cycles, key=lambda cyc: cyc.vertices[0])


def _pick_cycle(cycles: list[WebCycle], rule: str) -> WebCycle:
    if rule == "lexicographic":
        return min(cycles, key=lambda cyc: cyc.vertices[0])
    if rule == "innermost":
        return min(cycles, key=lambda cyc: (len(cyc.enclosed_region), cyc.vertices[0]))
    raise ValueError(f"unknown cycle rule {rule!r}")


def reverse_canonical_cycle(spec: GridSpec, m: Matching, rule: str = "lexicographic") -> Matching:
    """Swap matched and unmatched edges along one distinguished web cycle.

    ``rule="lexicographic"`` picks the cycle through the smallest vertex;
    ``rule="innermost"`` picks the one enclosing the fewest cells.  Both
    choices survive the reversal, so the map is an involution.
    """
    web = web_from_matching(spec, m)
    cycles = find_cycles(web)
    if not cycles:
        raise WebError("web has no cycle to reverse")
    loop = list(_pick_cycle(cycles, rule).vertices)
    dominoes = set(m.dominoes)
    for a, b in zip(loop, loop[1:] + loop[:1]):
        mid = _midpoint(a, b)
        dominoes.remove(Domino(a, mid))
        dominoes.add(Domino(b, mid))
    return Matching(frozenset(dominoes), m.hole)


def _check_tree(spec: GridSpec, h: Cell, tree: WebGraph) -> None:
    vertices = odd_white_cells(spec)
    if h.white_parity != "odd" or not spec.contains(h):
        raise WebError(f"root {h} is not an odd white cell")
    if set(tree.arcs) != set(vertices):
        raise WebError("arcs must be given for exactly the odd white cells")
    for w, t in tree.arcs.items():
        if w == h:
            if t is not None:
                raise WebError("the root must have no out-arc")
            continue
        if t is None:
            raise WebError(f"vertex {w} has no out-arc")
        if abs(w.row - t.row) + abs(w.col - t.col) != 2 or (w.row != t.row and w.col != t.col):
            raise WebError(f"arc {w}->{t} does not join lattice neighbours")
    if find_cycles(tree):
        raise WebError("web contains a cycle")


def matching_from_tree(spec: GridSpec, h: Cell, tree: WebGraph) -> Matching:
    """The unique near-perfect matching whose web is ``tree``.

    Arc dominoes are placed first; the leftover cells are then matched by
    repeatedly taking a cell with a single free neighbour.
    """
    _check_tree(spec, h, tree)
    dominoes = set()
    used = {h}
    for w, t in tree.arcs.items():
        if t is None:
            continue
        mid = _midpoint(w, t)
        dominoes.add(Domino(w, mid))
        used |= {w, mid}
    free = {x for x in spec.cells() if x not in used}
    while free:
        forced = None
        for x in sorted(free):
            options = [nb for nb in spec.neighbors(x) if nb in free]
            if not options:
                raise WebError(f"cell {x} cannot be covered")
            if len(options) == 1:
                forced = (x, options[0])
                break
        if forced is None:
            raise WebError("completion is not forced; input is not a spanning tree web")
        x, y = forced
        dominoes.add(Domino(x, y))
        free -= {x, y}
    return Matching(frozenset(dominoes), h)


def enumerate_rooted_trees(spec: GridSpec, h: Cell):
    """All spanning in-trees of the odd-white lattice rooted at ``h`` (brute force)."""
    vertices = [w for w in odd_white_cells(spec) if w != h]
    arcs: dict = {w: None for w in odd_white_cells(spec)}

    def reaches(start, target):
        cur = start
        while cur is not None:
            if cur == target:
                return True
            cur = arcs[cur]
        return False

    def rec(i):
        if i == len(vertices):
            yield WebGraph(spec, dict(arcs), h)
            return
        w = vertices[i]
        for dr, dc in ((0, 2), (2, 0), (0, -2), (-2, 0)):
            t = Cell(w.row + dr, w.col + dc)
            if not spec.contains(t) or reaches(t, w):
                continue
            arcs[w] = t
            yield from rec(i + 1)
            arcs[w] = None

    yield from rec(0)


@dataclass
class ParityScan:
    spec: GridSpec
    tree_count: int
    counts: dict
    odd_white_consistent: bool
    even_white_even: bool

    @property
    def passed(self) -> bool:
        return self.odd_white_consistent and self.even_white_even


def scan_parity_invariance(spec: GridSpec, jobs: int = 1) -> ParityScan:
    """Odd white holes all share the parity of the web's spanning-tree count;
    even white holes all give even counts."""
    if not spec.odd_odd():
        raise GridError(f"{spec.rows}x{spec.cols} is not odd-by-odd")
    counts, _ = count_all_holes(spec, jobs=jobs)
    trees = spanning_tree_count(*web_dims(spec))
    odd_ok = all(v % 2 == trees % 2 for h, v in counts.items() if h.white_parity == "odd")
    even_ok = all(v % 2 == 0 for h, v in counts.items() if h.white_parity == "even")
    return ParityScan(spec, trees, counts, odd_ok, even_ok)


@dataclass
class Mod4Scan:
    spec: GridSpec
    rows: list  # (cell, count, count % 4, class)
    odd_white_uniform: bool
    even_white_divisible: bool
    exempt: bool

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["row", "col", "count", "mod4", "class"])
        for cell, count, residue, cls in self.rows:
            w.writerow([cell.row, cell.col, count, residue, cls])
        return buf.getvalue()

    def findings(self) -> list[str]:
        r, c = self.spec.rows, self.spec.cols
        out = []
        if not self.odd_white_uniform:
            residues = sorted({res for _, _, res, cls in self.rows if cls == "odd_white"})
            out.append(f"{r}x{c}: odd white holes differ mod 4 (residues {residues})")
        if not self.even_white_divisible:
            note = " [r = c = 3 mod 4 exemption applies]" if self.exempt else ""
            out.append(f"{r}x{c}: some even white hole count is not a multiple of 4{note}")
        return out


def scan_mod4(spec: GridSpec, jobs: int = 1) -> Mod4Scan:
    if not spec.odd_odd():
        raise GridError(f"{spec.rows}x{spec.cols} is not odd-by-odd")
    counts, _ = count_all_holes(spec, jobs=jobs)
    rows = [(h, v, v % 4, f"{h.white_parity}_white") for h, v in counts.items()]
    odd_res = {res for _, _, res, cls in rows if cls == "odd_white"}
    even_ok = all(res == 0 for _, _, res, cls in rows if cls == "even_white")
    exempt = spec.rows % 4 == 3 and spec.cols % 4 == 3
    return Mod4Scan(spec, rows, len(odd_res) <= 1, even_ok, exempt)
