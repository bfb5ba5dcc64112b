"""Exact linear algebra: GF(2) evenness certificates, Matrix-Tree spanning
tree counts, and the closed-form product for rectangle tilings."""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath

from .grid import Cell, GridError, GridSpec

MAX_LAPLACIAN_SIDE = 400


@dataclass(frozen=True)
class CertificateSet:
    """Nonempty vertex set in which every vertex has an even number of neighbours."""

    cells: frozenset
    excluded: Cell | None = None

    def __len__(self):
        return len(self.cells)

    def sorted_cells(self) -> list[Cell]:
        return sorted(self.cells)


def construct_certificate_case_a(r: int, c: int) -> CertificateSet:
    """The four neighbours of every cell whose coordinates are both 2 mod 4."""
    if r % 4 != 3 or c % 4 != 3:
        raise GridError(f"case (a) needs r = c = 3 (mod 4), got {r}x{c}")
    cells = set()
    for i in range(2, r + 1, 4):
        for j in range(2, c + 1, 4):
            cells |= {Cell(i + 1, j), Cell(i - 1, j), Cell(i, j - 1), Cell(i, j + 1)}
    return CertificateSet(frozenset(cells))


def construct_certificate_case_b(r: int, c: int, f: int) -> CertificateSet:
    """Manhattan-distance-``f`` rings in a tiling by ``(2f-1)``-blocks.

    Blocks start at the bottom-left corner and are separated by one empty
    row or column; block centres sit at rows and columns ``f, 3f, 5f, ...``.
    """
    if r % 2 == 0 or c % 2 == 0:
        raise GridError(f"case (b) needs odd dimensions, got {r}x{c}")
    if f <= 1 or f % 2 == 0 or math.gcd(r + 1, c + 1) % f:
        raise GridError(f"case (b) needs an odd f > 1 dividing gcd(r+1, c+1), got f={f}")
    cells = set()
    for ci in range(f, r + 1, 2 * f):
        for cj in range(f, c + 1, 2 * f):
            for dr in range(-(f - 1), f):
                rest = f - abs(dr)
                for dc in {rest, -rest}:
                    if abs(dc) <= f - 1:
                        cells.add(Cell(ci + dr, cj + dc))
    return CertificateSet(frozenset(cells))


def verify_certificate(spec: GridSpec, removed: Cell | None, s: CertificateSet | frozenset | set) -> bool:
    cells = s.cells if isinstance(s, CertificateSet) else frozenset(s)
    if not cells:
        return False
    if removed is not None and removed in cells:
        return False
    for x in cells:
        if not spec.contains(x):
            return False
    for v in spec.cells():
        if v == removed:
            continue
        if sum(1 for nb in spec.neighbors(v) if nb in cells) % 2:
            return False
    return True


def gf2_nullspace(rows: list[int], n_cols: int) -> list[int]:
    """Basis of ``{x : A x = 0}`` over GF(2); rows and vectors are int bitsets.

    Pivots are taken in column order; one basis vector per free column,
    in increasing column order.
    """
    work = list(rows)
    pivots: list[int] = []
    rank = 0
    for col in range(n_cols):
        bit = 1 << col
        pivot = next((i for i in range(rank, len(work)) if work[i] & bit), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        for i in range(len(work)):
            if i != rank and work[i] & bit:
                work[i] ^= work[rank]
        pivots.append(col)
        rank += 1
    pivot_set = set(pivots)
    basis = []
    for free in range(n_cols):
        if free in pivot_set:
            continue
        vec = 1 << free
        for i, col in enumerate(pivots):
            if (work[i] >> free) & 1:
                vec |= 1 << col
        basis.append(vec)
    return basis


def adjacency_bitsets(spec: GridSpec, removed: Cell | None = None) -> tuple[list[Cell], list[int]]:
    vertices = [v for v in spec.cells() if v != removed]
    index = {v: i for i, v in enumerate(vertices)}
    rows = []
    for v in vertices:
        word = 0
        for nb in spec.neighbors(v):
            if nb in index:
                word |= 1 << index[nb]
        rows.append(word)
    return vertices, rows


def find_certificate(spec: GridSpec, removed: Cell | None = None) -> CertificateSet | None:
    """First GF(2) nullspace basis vector of the adjacency matrix, or None."""
    if removed is not None:
        spec.require(removed)
    vertices, rows = adjacency_bitsets(spec, removed)
    basis = gf2_nullspace(rows, len(vertices))
    if not basis:
        return None
    vec = basis[0]
    cells = frozenset(v for i, v in enumerate(vertices) if (vec >> i) & 1)
    return CertificateSet(cells, removed)


def bareiss_determinant(matrix: list[list[int]]) -> int:
    """Fraction-free integer determinant."""
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pk - aik * rk[j]) // prev
            ri[k] = 0
        prev = pk
    return sign * a[n - 1][n - 1]


def grid_laplacian(m: int, n: int) -> list[list[int]]:
    spec = GridSpec(m, n)
    cells = list(spec.cells())
    index = {v: i for i, v in enumerate(cells)}
    lap = [[0] * len(cells) for _ in cells]
    for v in cells:
        i = index[v]
        for nb in spec.neighbors(v):
            lap[i][index[nb]] = -1
            lap[i][i] += 1
    return lap


def spanning_tree_count(m: int, n: int) -> int:
    """Spanning trees of the ``m`` x ``n`` grid graph (Matrix-Tree theorem)."""
    if m < 1 or n < 1:
        raise GridError(f"grid dimensions must be positive, got {m}x{n}")
    if m * n - 1 > MAX_LAPLACIAN_SIDE:
        raise GridError(
            f"linalg_exact: Laplacian minor side {m * n - 1} exceeds the matrix guard {MAX_LAPLACIAN_SIDE}"
        )
    lap = grid_laplacian(m, n)
    minor = [row[1:] for row in lap[1:]]
    return bareiss_determinant(minor)


class RoundingAmbiguous(ArithmeticError):
    """The product formula did not land close enough to an integer."""


def kasteleyn_count(m: int, n: int, digits: int = 40) -> int:
    """Tilings of an ``m`` x ``n`` board from the cosine product formula."""
    if m < 1 or n < 1:
        raise GridError(f"grid dimensions must be positive, got {m}x{n}")
    # rough size of the answer is exp(0.3 * m * n); keep >= 19 spare digits
    work = max(digits, 19 + int(0.14 * m * n) + 5)
    with mpmath.workdps(work):
        total = mpmath.mpf(1)
        for j in range(1, (m + 1) // 2 + 1):
            cj = 4 * mpmath.cos(j * mpmath.pi / (m + 1)) ** 2
            for l in range(1, (n + 1) // 2 + 1):
                total *= cj + 4 * mpmath.cos(l * mpmath.pi / (n + 1)) ** 2
        nearest = mpmath.nint(total)
        if abs(total - nearest) > mpmath.mpf("1e-3"):
            raise RoundingAmbiguous(f"product {total} is not within 1e-3 of an integer; raise precision")
        return int(nearest)
