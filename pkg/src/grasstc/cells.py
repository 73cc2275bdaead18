"""Schubert cells of G_k(R^n) as partitions in a k x (n-k) box."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

from .errors import UsageError


@dataclass(frozen=True, order=True)
class SchubertSymbol:
    sigma: tuple[int, ...]  # non-decreasing, entries in [0, n-k]

    @property
    def dimension(self) -> int:
        return sum(self.sigma)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.sigma)) + ")"


def _check(k: int, n: int) -> None:
    if not 0 <= k <= n:
        raise UsageError(f"need 0 <= k <= n, got k={k}, n={n}")


def enumerate_symbols(k: int, n: int, d: int | None = None) -> list[SchubertSymbol]:
    """All symbols of G_k(R^n) in lexicographic order, optionally only those of dimension d."""
    _check(k, n)
    if d is not None and not 0 <= d <= k * (n - k):
        raise UsageError(f"dimension {d} outside [0, {k * (n - k)}]")
    out = []
    for sigma in combinations_with_replacement(range(n - k + 1), k):
        if d is None or sum(sigma) == d:
            out.append(SchubertSymbol(sigma))
    return out


def cell_counts(k: int, n: int) -> list[int]:
    """Number of cells in each dimension 0..k(n-k)."""
    _check(k, n)
    counts = [0] * (k * (n - k) + 1)
    for sym in enumerate_symbols(k, n):
        counts[sym.dimension] += 1
    return counts


def skeleton_agreement(k: int, n: int) -> bool:
    """Whether G_k(R^n) and G_k(R^(n+1)) have the same cells up to dimension n-k."""
    if 2 * k > n:
        raise UsageError(f"skeleton agreement needs 2k <= n, got k={k}, n={n}")
    return all(enumerate_symbols(k, n, d) == enumerate_symbols(k, n + 1, d) for d in range(n - k + 1))
