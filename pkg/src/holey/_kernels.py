"""Broken-profile sweep kernels over exact multi-limb integers.

Counts are held as little-endian base-2**32 limbs in ``uint64`` slots, so a
slot can absorb the (at most two) contributions a state receives in one cell
step before carries are normalised.  Both kernels are exact; the numba one
is the default and the vectorised numpy one is selected with
``HOLEY_NO_NUMBA=1`` (or automatically when numba is not importable).
"""

from __future__ import annotations

import os

import numpy as np

LIMB_BITS = 32
LIMB_MASK = np.uint64((1 << LIMB_BITS) - 1)


class LimbOverflow(ArithmeticError):
    """The limb budget was too small for the count (never expected)."""


def limbs_needed(width: int, length: int) -> int:
    # every partial tiling is a word over {horizontal, vertical} of length
    # at most cells/2, so counts stay below 2**(cells//2 + 1)
    bits = width * length // 2 + 2
    return bits // LIMB_BITS + 2


def sweep_numpy(width: int, length: int, hole_i: int, hole_j: int, nlimbs: int) -> np.ndarray:
    """Vectorised sweep; returns the limbs of the final all-clear state."""
    size = 1 << width
    masks = np.arange(size, dtype=np.int64)
    cur = np.zeros((size, nlimbs), dtype=np.uint64)
    cur[0, 0] = 1
    for j in range(length):
        for i in range(width):
            bit = 1 << i
            nxt = np.zeros_like(cur)
            filled = (masks & bit) != 0
            if i == hole_i and j == hole_j:
                src = masks[~filled]
                nxt[src] += cur[src]
            else:
                src = masks[filled]
                nxt[src ^ bit] += cur[src]
                empty = masks[~filled]
                if j + 1 < length:
                    nxt[empty | bit] += cur[empty]
                if i + 1 < width:
                    up = empty[(empty & (bit << 1)) == 0]
                    nxt[up | (bit << 1)] += cur[up]
            for limb in range(nlimbs - 1):
                nxt[:, limb + 1] += nxt[:, limb] >> np.uint64(LIMB_BITS)
                nxt[:, limb] &= LIMB_MASK
            if nxt[:, nlimbs - 1].max(initial=0) >> np.uint64(LIMB_BITS):
                raise LimbOverflow(f"{nlimbs} limbs are not enough")
            cur = nxt
    return cur[0].copy()


def _sweep_python(width, length, hole_i, hole_j, nlimbs):
    size = 1 << width
    cur = np.zeros((size, nlimbs), dtype=np.uint64)
    nxt = np.zeros((size, nlimbs), dtype=np.uint64)
    cur[0, 0] = 1
    mask32 = np.uint64(0xFFFFFFFF)
    shift = np.uint64(32)
    for j in range(length):
        for i in range(width):
            bit = 1 << i
            nxt[:, :] = 0
            is_hole = i == hole_i and j == hole_j
            for m in range(size):
                nonzero = False
                for limb in range(nlimbs):
                    if cur[m, limb] != 0:
                        nonzero = True
                        break
                if not nonzero:
                    continue
                if is_hole:
                    if m & bit == 0:
                        for limb in range(nlimbs):
                            nxt[m, limb] += cur[m, limb]
                elif m & bit:
                    d = m ^ bit
                    for limb in range(nlimbs):
                        nxt[d, limb] += cur[m, limb]
                else:
                    if j + 1 < length:
                        d = m | bit
                        for limb in range(nlimbs):
                            nxt[d, limb] += cur[m, limb]
                    if i + 1 < width and m & (bit << 1) == 0:
                        d = m | (bit << 1)
                        for limb in range(nlimbs):
                            nxt[d, limb] += cur[m, limb]
            overflow = False
            for m in range(size):
                carry = np.uint64(0)
                for limb in range(nlimbs):
                    v = nxt[m, limb] + carry
                    nxt[m, limb] = v & mask32
                    carry = v >> shift
                if carry != 0:
                    overflow = True
            if overflow:
                return cur[0, :] * np.uint64(0), True
            cur, nxt = nxt, cur
    return cur[0, :].copy(), False


try:
    if os.environ.get("HOLEY_NO_NUMBA", "").strip() not in ("", "0"):
        raise ImportError("numba disabled by HOLEY_NO_NUMBA")
    from numba import njit

    _sweep_jit = njit(cache=True, nogil=True)(_sweep_python)
    HAVE_NUMBA = True
except ImportError:
    _sweep_jit = None
    HAVE_NUMBA = False


def sweep_numba(width: int, length: int, hole_i: int, hole_j: int, nlimbs: int) -> np.ndarray:
    if _sweep_jit is None:
        raise RuntimeError("numba backend unavailable")
    limbs, overflow = _sweep_jit(width, length, hole_i, hole_j, nlimbs)
    if overflow:
        raise LimbOverflow(f"{nlimbs} limbs are not enough")
    return limbs


def default_backend() -> str:
    return "numba" if HAVE_NUMBA else "numpy"


def sweep(width: int, length: int, hole_i: int = -1, hole_j: int = -1, backend: str | None = None) -> int:
    """Number of tilings of a ``width`` x ``length`` strip, optionally minus one cell.

    The profile runs along ``width``; ``(hole_i, hole_j)`` is the 0-based
    (position in profile, column) of the removed cell, or ``(-1, -1)``.
    """
    if width == 0 or length == 0:
        return 1
    backend = backend or default_backend()
    nlimbs = limbs_needed(width, length)
    if backend == "numba":
        limbs = sweep_numba(width, length, hole_i, hole_j, nlimbs)
    elif backend == "numpy":
        limbs = sweep_numpy(width, length, hole_i, hole_j, nlimbs)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    return sum(int(v) << (LIMB_BITS * n) for n, v in enumerate(limbs))
