"""Sparse multivariate polynomials over GF(2).

A polynomial is a set of exponent vectors; a monomial is present exactly
when its coefficient is 1.  Addition is symmetric difference.
"""

from __future__ import annotations

import re
from itertools import combinations
from typing import Iterable, Sequence

from .errors import UsageError

Monomial = tuple[int, ...]


class VarSpace:
    """Named, weighted variables shared by a family of polynomials."""

    __slots__ = ("names", "weights", "_hash")

    def __init__(self, names: Sequence[str], weights: Sequence[int] | None = None):
        self.names = tuple(names)
        self.weights = tuple(weights) if weights is not None else (1,) * len(self.names)
        if len(self.weights) != len(self.names):
            raise UsageError("one weight per variable is required")
        if len(set(self.names)) != len(self.names):
            raise UsageError("variable names must be distinct")
        self._hash = hash((self.names, self.weights))

    def __len__(self) -> int:
        return len(self.names)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, VarSpace)
            and self.names == other.names
            and self.weights == other.weights
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"VarSpace({list(self.names)!r}, {list(self.weights)!r})"

    def degree(self, exps: Monomial) -> int:
        return sum(e * w for e, w in zip(exps, self.weights))

    def sort_key(self, exps: Monomial):
        # graded lex: weighted degree first, then the raw exponent vector
        return (self.degree(exps), exps)

    def one(self) -> Polynomial:
        return Polynomial(self, ((0,) * len(self.names),))

    def zero(self) -> Polynomial:
        return Polynomial(self, ())

    def var(self, name_or_index: str | int) -> Polynomial:
        i = self.index(name_or_index)
        exps = [0] * len(self.names)
        exps[i] = 1
        return Polynomial(self, (tuple(exps),))

    def index(self, name_or_index: str | int) -> int:
        if isinstance(name_or_index, int):
            if not 0 <= name_or_index < len(self.names):
                raise UsageError(f"variable index {name_or_index} out of range")
            return name_or_index
        try:
            return self.names.index(name_or_index)
        except ValueError:
            raise UsageError(f"unknown variable {name_or_index!r}") from None

    def monomial(self, exps: Iterable[int]) -> Polynomial:
        exps = tuple(exps)
        if len(exps) != len(self.names) or min(exps, default=0) < 0:
            raise UsageError(f"bad exponent vector {exps!r}")
        return Polynomial(self, (exps,))

    def format_monomial(self, exps: Monomial) -> str:
        parts = []
        for name, e in zip(self.names, exps):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def parse_monomial(self, text: str) -> Monomial:
        text = text.strip()
        exps = [0] * len(self.names)
        if text == "1":
            return tuple(exps)
        for factor in text.split("*"):
            m = re.fullmatch(r"\s*([A-Za-z_][A-Za-z_0-9]*)\s*(?:\^\s*(\d+))?\s*", factor)
            if m is None:
                raise UsageError(f"cannot parse monomial factor {factor!r}")
            exps[self.index(m.group(1))] += int(m.group(2) or 1)
        return tuple(exps)

    def parse(self, text: str) -> Polynomial:
        """Parse the canonical text form (``w1^3*w2 + w2^2``, ``0``, ``1``)."""
        text = text.strip()
        if text == "0":
            return self.zero()
        terms: set[Monomial] = set()
        for chunk in text.split("+"):
            terms ^= {self.parse_monomial(chunk)}
        return Polynomial(self, terms)


class Polynomial:
    """Immutable polynomial over GF(2) on a :class:`VarSpace`."""

    __slots__ = ("space", "terms")

    def __init__(self, space: VarSpace, terms: Iterable[Monomial]):
        self.space = space
        self.terms = frozenset(terms)

    def _check(self, other: Polynomial) -> None:
        if not isinstance(other, Polynomial) or other.space != self.space:
            raise UsageError("polynomials live in different variable spaces")

    def __add__(self, other: Polynomial) -> Polynomial:
        self._check(other)
        return Polynomial(self.space, self.terms ^ other.terms)

    __sub__ = __add__

    def __mul__(self, other: Polynomial) -> Polynomial:
        self._check(other)
        acc: set[Monomial] = set()
        for a in self.terms:
            for b in other.terms:
                m = tuple(x + y for x, y in zip(a, b))
                if m in acc:
                    acc.remove(m)
                else:
                    acc.add(m)
        return Polynomial(self.space, acc)

    def __pow__(self, m: int) -> Polynomial:
        if m < 0:
            raise UsageError("negative exponents are not supported")
        result = self.space.one()
        base = self
        while m:
            if m & 1:
                result = result * base
            m >>= 1
            if m:
                base = base * base
        return result

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.space == other.space
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.space, self.terms))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def sorted_terms(self) -> list[Monomial]:
        return sorted(self.terms, key=self.space.sort_key, reverse=True)

    def degrees(self) -> set[int]:
        return {self.space.degree(t) for t in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def component(self, d: int) -> Polynomial:
        """The weighted-degree-``d`` part."""
        return Polynomial(self.space, (t for t in self.terms if self.space.degree(t) == d))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(self.space.format_monomial(t) for t in self.sorted_terms())

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def power(p: Polynomial, m: int) -> Polynomial:
    return p**m


def elementary_symmetric(space: VarSpace, var_indices: Iterable[int], i: int) -> Polynomial:
    """Sum of all square-free products of ``i`` distinct variables from ``var_indices``.

    Returns 0 when ``i`` exceeds the number of variables.
    """
    idx = sorted(set(space.index(v) for v in var_indices))
    if i < 0:
        raise UsageError("elementary symmetric index must be non-negative")
    terms = []
    for combo in combinations(idx, i):
        exps = [0] * len(space)
        for j in combo:
            exps[j] = 1
        terms.append(tuple(exps))
    return Polynomial(space, terms)
