"""Exact tiling counts by broken-profile dynamic programming."""

from __future__ import annotations

import csv
import io
import os
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache

from . import _kernels
from .grid import Cell, GridError, GridSpec, orbit_representatives
from .twoadic import decompose, format_valuation

DEFAULT_MAX_PROFILE = 30


class ProfileTooLarge(ValueError):
    """The smaller board side exceeds the profile-width guard."""


def max_profile() -> int:
    value = os.environ.get("HOLEY_MAX_PROFILE")
    return int(value) if value else DEFAULT_MAX_PROFILE


def _oriented(m: int, n: int, hole: Cell | None):
    """Put the profile along the shorter side; return (width, length, hole_i, hole_j)."""
    if min(m, n) > max_profile():
        raise ProfileTooLarge(
            f"profile_dp: smaller side {min(m, n)} exceeds the profile guard {max_profile()} "
            "(set HOLEY_MAX_PROFILE to override)"
        )
    if m <= n:
        width, length = m, n
        hi, hj = (-1, -1) if hole is None else (hole.row - 1, hole.col - 1)
    else:
        width, length = n, m
        hi, hj = (-1, -1) if hole is None else (hole.col - 1, hole.row - 1)
    return width, length, hi, hj


def count_reference(m: int, n: int, hole: Cell | None = None) -> int:
    """Plain Python-int sweep; slow, kept as an independent exact check."""
    width, length, hi, hj = _oriented(m, n, hole)
    if width == 0 or length == 0:
        return 1
    cur = {0: 1}
    for j in range(length):
        for i in range(width):
            bit = 1 << i
            nxt: dict[int, int] = {}
            for mask, ways in cur.items():
                if i == hi and j == hj:
                    if not mask & bit:
                        nxt[mask] = nxt.get(mask, 0) + ways
                elif mask & bit:
                    nxt[mask ^ bit] = nxt.get(mask ^ bit, 0) + ways
                else:
                    if j + 1 < length:
                        nxt[mask | bit] = nxt.get(mask | bit, 0) + ways
                    if i + 1 < width and not mask & (bit << 1):
                        d = mask | (bit << 1)
                        nxt[d] = nxt.get(d, 0) + ways
            cur = nxt
    return cur.get(0, 0)


@lru_cache(maxsize=None)
def _count_perfect_sorted(a: int, b: int, backend: str | None) -> int:
    width, length, _, _ = _oriented(a, b, None)
    return _kernels.sweep(width, length, backend=backend)


def count_perfect(m: int, n: int, backend: str | None = None) -> int:
    """Number of domino tilings of an ``m`` x ``n`` board (0 for odd area).

    A side of length 0 is the empty board, with exactly one tiling.
    """
    if m < 0 or n < 0:
        raise GridError(f"negative dimensions {m}x{n}")
    if (m * n) % 2:
        return 0
    return _count_perfect_sorted(min(m, n), max(m, n), backend)


def count_with_hole(spec: GridSpec, h: Cell, backend: str | None = None) -> int:
    """Number of near-perfect matchings of an odd-by-odd grid missing ``h``."""
    if not spec.odd_odd():
        raise GridError(f"{spec.rows}x{spec.cols} is not odd-by-odd")
    spec.require(h)
    if h.is_black:
        return 0
    width, length, hi, hj = _oriented(spec.rows, spec.cols, h)
    return _kernels.sweep(width, length, hi, hj, backend=backend)


def count_all_holes(spec: GridSpec, jobs: int = 1, backend: str | None = None):
    """Per-white-hole counts and their total.

    One representative per symmetry orbit is counted and the value is
    copied to the rest of the orbit.
    """
    if not spec.odd_odd():
        raise GridError(f"{spec.rows}x{spec.cols} is not odd-by-odd")
    reps = orbit_representatives(spec, spec.white_cells())
    order = sorted(reps)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            values = list(pool.map(lambda h: count_with_hole(spec, h, backend), order))
    else:
        values = [count_with_hole(spec, h, backend) for h in order]
    counts = {}
    for rep, value in zip(order, values):
        for cell in reps[rep]:
            counts[cell] = value
    counts = dict(sorted(counts.items()))
    return counts, sum(counts.values())


def fold_hole(spec: GridSpec) -> Cell:
    return Cell(1, (spec.cols + 1) // 2)


def count_symmetric_fold(spec: GridSpec, h_star: Cell) -> int:
    """Matchings missing the middle cell of the first row that are symmetric
    about the middle column.

    The rest of the middle column is forced to vertical dominoes, leaving two
    mirror-image ``r`` x ``(c-1)/2`` boards.
    """
    if not spec.odd_odd():
        raise GridError(f"{spec.rows}x{spec.cols} is not odd-by-odd")
    if h_star != fold_hole(spec):
        raise GridError(f"fold hole must be {fold_hole(spec)}, got {h_star}")
    return count_perfect(spec.rows, (spec.cols - 1) // 2)


def heat_csv(counts: dict) -> str:
    """CSV table ``row,col,count,v2,odd_part`` for a per-hole count map."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["row", "col", "count", "v2", "odd_part"])
    for cell, value in sorted(counts.items()):
        t = decompose(value)
        w.writerow([cell.row, cell.col, value, format_valuation(t.valuation), t.odd_part])
    return buf.getvalue()
