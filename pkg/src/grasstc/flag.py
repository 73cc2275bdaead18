"""Nonzero certificates through the cohomology of the full flag manifold.

pi*: H*(G_k(R^n)) -> H*(Flag(R^n)) = Z/2[e1..en]/(prod(1+e_i) = 1) is
injective, sends w_i to the i-th elementary symmetric polynomial in e1..ek and
wb_j to the j-th one in e_{k+1}..e_n.  Every e_i^n vanishes, and a
top-degree monomial evaluates to 1 exactly when its exponents are a
permutation of 0..n-1.

To decide whether a class below the top degree is nonzero we pair it with
the monomials e^m, m_i <= n-i, which form a basis of the flag ring; by
Poincare duality over Z/2 a class is nonzero iff one of those pairings is 1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable

from .errors import InfeasibleError, UsageError
from .gf2poly import Monomial, Polynomial, VarSpace

DEFAULT_SEARCH_CAP = 20_000_000


@lru_cache(maxsize=None)
def e_space(n: int) -> VarSpace:
    return VarSpace([f"e{i}" for i in range(1, n + 1)])


@lru_cache(maxsize=None)
def full_space(k: int, n: int) -> VarSpace:
    """Variables w1..wk and the dual classes wb1..wb{n-k}."""
    names = [f"w{i}" for i in range(1, k + 1)] + [f"wb{j}" for j in range(1, n - k + 1)]
    weights = list(range(1, k + 1)) + list(range(1, n - k + 1))
    return VarSpace(names, weights)


class FlagElement:
    """Polynomial in e1..en with every exponent below n (higher powers vanish)."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Iterable[Monomial] = ()):
        self.n = n
        self.terms = frozenset(t for t in terms if max(t, default=0) < n)

    @classmethod
    def one(cls, n: int) -> FlagElement:
        return cls(n, [(0,) * n])

    @classmethod
    def monomial(cls, exps: Iterable[int]) -> FlagElement:
        exps = tuple(exps)
        return cls(len(exps), [exps])

    def __add__(self, other: FlagElement) -> FlagElement:
        self._check(other)
        return FlagElement(self.n, self.terms ^ other.terms)

    def __mul__(self, other: FlagElement) -> FlagElement:
        self._check(other)
        n = self.n
        acc: set[Monomial] = set()
        for a in self.terms:
            for b in other.terms:
                m = tuple(x + y for x, y in zip(a, b))
                if max(m) >= n:
                    continue
                if m in acc:
                    acc.remove(m)
                else:
                    acc.add(m)
        return FlagElement(n, acc)

    def __pow__(self, m: int) -> FlagElement:
        result = FlagElement.one(self.n)
        base = self
        while m:
            if m & 1:
                result = result * base
            m >>= 1
            if m:
                base = base * base
        return result

    def _check(self, other: FlagElement) -> None:
        if not isinstance(other, FlagElement) or other.n != self.n:
            raise UsageError("flag elements over different n")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FlagElement) and self.n == other.n and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.n, self.terms))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degrees(self) -> set[int]:
        return {sum(t) for t in self.terms}

    def __str__(self) -> str:
        return str(Polynomial(e_space(self.n), self.terms))

    def __repr__(self) -> str:
        return f"FlagElement({self.n}, {str(self)!r})"


def _elementary(n: int, indices: range, i: int) -> FlagElement:
    terms = []
    for combo in combinations(indices, i):
        exps = [0] * n
        for j in combo:
            exps[j] = 1
        terms.append(tuple(exps))
    return FlagElement(n, terms)


def pi_star(p: Polynomial, k: int, n: int) -> FlagElement:
    """Image of a polynomial in w_i (i <= k) and wb_j (j <= n-k) in the flag ring."""
    images = []
    for name in p.space.names:
        m = re.fullmatch(r"(wb|w)(\d+)", name)
        if m is None:
            raise UsageError(f"pi_star: unknown variable {name!r}")
        idx = int(m.group(2))
        if m.group(1) == "w":
            if not 1 <= idx <= k:
                raise UsageError(f"pi_star: w{idx} out of range for k={k}")
            images.append(_elementary(n, range(0, k), idx))
        else:
            if not 1 <= idx <= n - k:
                raise UsageError(f"pi_star: wb{idx} out of range for n-k={n - k}")
            images.append(_elementary(n, range(k, n), idx))
    powers: dict[tuple[int, int], FlagElement] = {}
    acc = FlagElement(n)
    for exps in p.terms:
        x = FlagElement.one(n)
        for v, e in enumerate(exps):
            if e:
                key = (v, e)
                if key not in powers:
                    powers[key] = images[v] ** e
                x = x * powers[key]
                if not x:
                    break
        acc = acc + x
    return acc


def _is_permutation(t: Monomial) -> bool:
    return sorted(t) == list(range(len(t)))


def top_eval(x: FlagElement) -> int:
    """Value of a top-degree flag class on the fundamental class (0 or 1)."""
    top = x.n * (x.n - 1) // 2
    if x.terms and x.degrees() != {top}:
        raise UsageError(f"top_eval needs homogeneous degree {top}, got {sorted(x.degrees())}")
    return sum(1 for t in x.terms if _is_permutation(t)) & 1


def pairing(x: FlagElement, multiplier: Monomial) -> int:
    return top_eval(x * FlagElement.monomial(multiplier))


def stong_multiplier(k: int, n: int) -> Monomial:
    """e1^{k-1} e2^{k-2} ... e_{k-1} * e_{k+1}^{n-k-1} ... e_{n-1}."""
    exps = [k - 1 - i for i in range(k)] + [n - k - 1 - j for j in range(n - k)]
    return tuple(exps)


@dataclass(frozen=True)
class FlagCertificate:
    nonzero: bool
    multiplier: Monomial | None = None  # e^m completing the class to the top degree
    permutation: Monomial | None = None  # a surviving permutation monomial

    def describe(self, n: int) -> dict:
        sp = e_space(n)
        return {
            "nonzero": self.nonzero,
            "multiplier": sp.format_monomial(self.multiplier) if self.multiplier else None,
            "permutation": sp.format_monomial(self.permutation) if self.permutation else None,
        }


def flag_nonzero(y: FlagElement, cap: int = DEFAULT_SEARCH_CAP) -> FlagCertificate:
    """Decide y != 0 by pairing against the box basis e^m, m_i <= n-1-i (0-based).

    For every term t of y, every permutation sigma with sigma - t inside the box
    contributes one to the pairing with e^{sigma - t}; the multipliers hit an
    odd number of times are exactly the certificates.  The lexicographically
    greatest one is reported.
    """
    n = y.n
    if not y:
        return FlagCertificate(False)
    odd: dict[Monomial, list[Monomial]] = {}
    budget = [cap]
    full = (1 << n) - 1

    for t in y.terms:
        sigma = [0] * n

        def rec(i: int, used: int) -> None:
            if i == n:
                m = tuple(s - a for s, a in zip(sigma, t))
                hits = odd.get(m)
                if hits is None:
                    odd[m] = [tuple(sigma)]
                else:
                    hits.append(tuple(sigma))
                return
            budget[0] -= 1
            if budget[0] < 0:
                raise InfeasibleError(f"flag multiplier search exceeded {cap} steps")
            lo = t[i]
            hi = min(n - 1, t[i] + n - 1 - i)
            free = full & ~used
            for v in range(lo, hi + 1):
                if free >> v & 1:
                    sigma[i] = v
                    rec(i + 1, used | (1 << v))

        rec(0, 0)

    winners = [m for m, hits in odd.items() if len(hits) & 1]
    if not winners:
        return FlagCertificate(False)
    m = max(winners)
    return FlagCertificate(True, m, max(odd[m]))


def grassmann_nonzero_via_flag(
    p: Polynomial, k: int, n: int, cap: int = DEFAULT_SEARCH_CAP
) -> FlagCertificate:
    """Whether a homogeneous class of H*(G_k(R^n)) is nonzero, with a certificate.

    Classes of degree above k(n-k) are reported as zero without a search.
    """
    degs = p.degrees()
    if len(degs) > 1:
        raise UsageError("grassmann_nonzero_via_flag needs a homogeneous class")
    if degs and max(degs) > k * (n - k):
        return FlagCertificate(False)  # above the top degree everything vanishes
    y = pi_star(p, k, n) * FlagElement.monomial(stong_multiplier(k, n))
    return flag_nonzero(y, cap)
