"""Pure-Python versions of the GF(2) kernels (same signatures as ``_kernels``)."""

from __future__ import annotations

from typing import Sequence

BACKEND = "python"


def pack(rows: Sequence[int], nbits: int) -> list[int]:
    return [int(r) for r in rows]


def rref(rows: Sequence[int], ncols: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form over GF(2), pivoting on the lowest free column."""
    # semi-echelon keyed by lowest set bit, then back-substitution
    piv: dict[int, int] = {}
    for row in rows:
        row = int(row)
        while row:
            low = (row & -row).bit_length() - 1
            other = piv.get(low)
            if other is None:
                piv[low] = row
                break
            row ^= other
    cols = sorted(piv)
    for c in reversed(cols):
        row = piv[c]
        # clear every higher pivot column from this row
        rest = row & ~((1 << (c + 1)) - 1)
        while rest:
            low = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            other = piv.get(low)
            if other is not None and (row >> low) & 1:
                row ^= other
        piv[c] = row
    return cols, [piv[c] for c in cols]


def outer_xor_nonzero(
    ltab: Sequence[int], lidx, rtab: Sequence[int], ridx, lbits: int
) -> bool:
    acc = [0] * max(lbits, 1)
    for a, b in zip(lidx, ridx):
        left = ltab[a]
        right = rtab[b]
        while left:
            low = left & -left
            acc[low.bit_length() - 1] ^= right
            left ^= low
    return any(acc)
