"""H*(G_k(R^n); Z/2) as a graded quotient of Z/2[w1..wk].

The relation ideal is generated by the dual classes wb_j for n-k < j <= n.
Each degree is handled on its own: the degree-d monomials form the columns
of a GF(2) matrix whose rows span the degree-d slice of the ideal; its
reduced row echelon form gives a complement basis and a normal-form table.

Columns are ordered lexicographically descending, so pivots land on
w1-heavy monomials and the basis consists of the lex-smallest survivors.
Multiplying by w1 maps the degree-(d-1) columns onto a prefix of the
degree-d columns with the same bit positions, which lets degree d reuse the
reduced rows of degree d-1 verbatim.
"""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

from . import kernels
from .errors import InfeasibleError, UsageError
from .gf2poly import Monomial, Polynomial, VarSpace

log = logging.getLogger(__name__)

# rows * columns of one elimination block
DEFAULT_CAP = 16_000_000


@lru_cache(maxsize=None)
def w_space(k: int) -> VarSpace:
    return VarSpace([f"w{i}" for i in range(1, k + 1)], range(1, k + 1))


@lru_cache(maxsize=None)
def monomials_of_degree(k: int, d: int) -> tuple[Monomial, ...]:
    """All exponent vectors a with sum(i * a_i) == d, lexicographically descending."""
    out: list[Monomial] = []

    def rec(i: int, rest: int, prefix: list[int]) -> None:
        # i is the 0-based variable index, weight i + 1
        if i == k - 1:
            if rest % k == 0:
                out.append(tuple(prefix + [rest // k]))
            return
        w = i + 1
        for e in range(rest // w, -1, -1):
            prefix.append(e)
            rec(i + 1, rest - e * w, prefix)
            prefix.pop()

    if k == 0:
        return ((),) if d == 0 else ()
    rec(0, d, [])
    return tuple(out)


@lru_cache(maxsize=None)
def _dual_terms(k: int, j: int) -> frozenset[Monomial]:
    if j == 0:
        return frozenset({(0,) * k})
    acc: set[Monomial] = set()
    for i in range(1, min(j, k) + 1):
        for t in _dual_terms(k, j - i):
            m = list(t)
            m[i - 1] += 1
            m = tuple(m)
            if m in acc:
                acc.remove(m)
            else:
                acc.add(m)
    return frozenset(acc)


def dual_class(k: int, j: int) -> Polynomial:
    """The dual Stiefel-Whitney class wb_j as a polynomial in w1..wk.

    Uses wb_j = sum_{i=1}^{min(j,k)} w_i * wb_{j-i} with wb_0 = 1.
    """
    if j < 0:
        raise UsageError("dual class index must be non-negative")
    return Polynomial(w_space(k), _dual_terms(k, j))


def presentation_relations(k: int, n: int) -> list[Polynomial]:
    """Degree components n-k+1..n of (1 + w1 + ... + wk)(1 + wb1 + ... + wb_{n-k}).

    These are the relations left over once wb_1..wb_{n-k} are eliminated from
    w * wb = 1.  They generate the same ideal as wb_{n-k+1}..wb_n.
    """
    sp = w_space(k)
    w = Polynomial(sp, [(0,) * k] + [tuple(int(j == i) for j in range(k)) for i in range(k)])
    wb = sp.one()
    for j in range(1, n - k + 1):
        wb = wb + dual_class(k, j)
    prod = w * wb
    return [prod.component(d) for d in range(n - k + 1, n + 1)]


@dataclass
class DegreeTable:
    degree: int
    monomials: tuple[Monomial, ...]
    index: dict[Monomial, int]
    basis: list[Monomial]
    nf: list[int]  # normal form of monomials[i] as a bitmask over basis positions
    relation_rows: list[int] = field(repr=False)  # reduced rows over monomial columns
    _packed: object = field(default=None, repr=False)

    @property
    def packed(self):
        if self._packed is None:
            self._packed = kernels.pack(self.nf, len(self.basis))
        return self._packed


class GrassmannRing:
    """Graded ring H*(G_k(R^n); Z/2) with lazily built per-degree tables.

    A built ring is read-only; concurrent readers may share it.
    """

    def __init__(self, k: int, n: int, cap: int = DEFAULT_CAP):
        self.k = k
        self.n = n
        self.dim = k * (n - k)
        self.cap = cap
        self.space = w_space(k)
        self.complement_of: tuple[int, int] | None = None
        self._tables: dict[int, DegreeTable] = {}
        self._lock = threading.RLock()
        self._nonzero: frozenset[Monomial] | None = None

    def __repr__(self) -> str:
        return f"GrassmannRing(k={self.k}, n={self.n})"

    # -- construction -------------------------------------------------------

    @property
    def relation_degrees(self) -> range:
        return range(self.n - self.k + 1, self.n + 1)

    def relations(self) -> list[Polynomial]:
        return [dual_class(self.k, j) for j in self.relation_degrees]

    def table(self, d: int) -> DegreeTable:
        if not 0 <= d <= self.dim:
            raise UsageError(f"degree {d} outside [0, {self.dim}]")
        t = self._tables.get(d)
        if t is not None:
            return t
        with self._lock:
            # build the chain bottom-up so every step reuses the previous one
            start = d
            while start > 0 and start - 1 not in self._tables:
                start -= 1
            for e in range(start, d + 1):
                if e not in self._tables:
                    self._tables[e] = self._build_degree(e)
            return self._tables[d]

    def _build_degree(self, d: int) -> DegreeTable:
        k = self.k
        monos = monomials_of_degree(k, d)
        index = {m: i for i, m in enumerate(monos)}
        ncols = len(monos)
        rows: list[int] = []
        if d > 0 and k > 0:
            rows.extend(self._tables[d - 1].relation_rows)
        for j in self.relation_degrees:
            if j > d:
                break
            gen = _dual_terms(k, j)
            for m in monomials_of_degree(k, d - j):
                if m[0]:
                    continue  # covered by the w1-shift of degree d-1
                row = 0
                for t in gen:
                    row ^= 1 << index[tuple(a + b for a, b in zip(m, t))]
                rows.append(row)
        if len(rows) * ncols > self.cap:
            raise InfeasibleError(
                f"G_{k}(R^{self.n}) degree {d}: {len(rows)}x{ncols} elimination "
                f"exceeds cap {self.cap}"
            )
        pivots, reduced = kernels.rref(rows, ncols) if rows else ([], [])
        pivot_set = set(pivots)
        basis_cols = [c for c in range(ncols) if c not in pivot_set]
        pos = {c: i for i, c in enumerate(basis_cols)}
        nf = [0] * ncols
        for c in basis_cols:
            nf[c] = 1 << pos[c]
        for c, row in zip(pivots, reduced):
            bits = 0
            rest = row & ~(1 << c)
            while rest:
                low = rest & -rest
                bits |= 1 << pos[low.bit_length() - 1]
                rest ^= low
            nf[c] = bits
        log.debug("G_%d(R^%d) degree %d: %d monomials, basis %d", k, self.n, d, ncols, len(basis_cols))
        return DegreeTable(d, monos, index, [monos[c] for c in basis_cols], nf, reduced)

    def build_all(self) -> GrassmannRing:
        self.table(self.dim)
        return self

    # -- queries ------------------------------------------------------------

    def basis(self, d: int) -> list[Monomial]:
        if d < 0 or d > self.dim:
            return []
        return self.table(d).basis

    def basis_sizes(self) -> list[int]:
        return [len(self.basis(d)) for d in range(self.dim + 1)]

    def nf_monomial(self, a: Monomial) -> tuple[int, int]:
        """(degree, bitmask over basis(degree)) for the monomial w^a."""
        d = self.space.degree(a)
        if d > self.dim:
            return d, 0
        t = self.table(d)
        return d, t.nf[t.index[a]]

    def _check(self, p: Polynomial) -> None:
        if p.space != self.space:
            raise UsageError(f"polynomial is not over w1..w{self.k}")

    def normal_form(self, p: Polynomial) -> dict[int, int]:
        """Coordinates of p per degree (only nonzero degrees are kept)."""
        self._check(p)
        out: dict[int, int] = {}
        for a in p.terms:
            d, bits = self.nf_monomial(a)
            if bits:
                out[d] = out.get(d, 0) ^ bits
        return {d: b for d, b in out.items() if b}

    def to_polynomial(self, coords: dict[int, int]) -> Polynomial:
        terms = []
        for d, bits in coords.items():
            basis = self.basis(d)
            while bits:
                low = bits & -bits
                terms.append(basis[low.bit_length() - 1])
                bits ^= low
        return Polynomial(self.space, terms)

    def reduce(self, p: Polynomial) -> Polynomial:
        """The canonical representative of p (a sum of basis monomials)."""
        return self.to_polynomial(self.normal_form(p))

    def multiply(self, p: Polynomial, q: Polynomial) -> Polynomial:
        return self.reduce(self.reduce(p) * self.reduce(q))

    def is_nonzero(self, p: Polynomial) -> bool:
        return bool(self.normal_form(p))

    def monomial_is_nonzero(self, a: Monomial) -> bool:
        return bool(self.nf_monomial(tuple(a))[1])

    def height(self, p: Polynomial) -> int:
        """Largest m with p^m != 0 (0 when p itself vanishes)."""
        self._check(p)
        degs = p.degrees()
        if len(degs) != 1 or 0 in degs:
            raise UsageError("height needs a homogeneous class of positive degree")
        deg = degs.pop()
        x = self.reduce(p)
        if not x:
            return 0
        m, cur = 1, x
        while deg * (m + 1) <= self.dim:
            cur = self.reduce(cur * x)
            if not cur:
                break
            m += 1
        return m

    def generator_height(self, i: int) -> int:
        """Height of w_i (1-based)."""
        if not 1 <= i <= self.k:
            raise UsageError(f"generator index {i} out of range 1..{self.k}")
        a = [0] * self.k
        m = 0
        while True:
            a[i - 1] = m + 1
            if not self.monomial_is_nonzero(tuple(a)):
                return m
            m += 1

    def nonzero_monomials(self) -> frozenset[Monomial]:
        """Every exponent vector a with w^a != 0 (a down-closed set)."""
        if self._nonzero is None:
            seen = {(0,) * self.k}
            frontier = list(seen)
            while frontier:
                nxt = []
                for a in frontier:
                    for i in range(self.k):
                        b = a[:i] + (a[i] + 1,) + a[i + 1:]
                        if b not in seen and self.monomial_is_nonzero(b):
                            seen.add(b)
                            nxt.append(b)
                frontier = nxt
            self._nonzero = frozenset(seen)
        return self._nonzero

    def max_monomial_cup_length(self) -> tuple[int, Monomial]:
        """Longest nonzero product of generators: (length, exponent vector).

        Ties go to the lexicographically greatest exponent vector.
        """
        best = max(self.nonzero_monomials(), key=lambda a: (sum(a), a))
        return sum(best), best


def build_ring(k: int, n: int, cap: int = DEFAULT_CAP, *, allow_complement: bool = False) -> GrassmannRing:
    """Construct the ring for G_k(R^n), requiring 2k <= n.

    With ``allow_complement`` a pair with 2k > n is answered by G_{n-k}(R^n)
    and the result carries ``complement_of = (k, n)``.
    """
    if n < 1 or k < 0 or k > n:
        raise UsageError(f"need 0 <= k <= n and n >= 1, got k={k}, n={n}")
    if 2 * k > n:
        if not allow_complement:
            raise UsageError(
                f"G_{k}(R^{n}) has 2k > n; use the complement G_{n - k}(R^{n}) "
                "(allow_complement=True)"
            )
        ring = GrassmannRing(n - k, n, cap)
        ring.complement_of = (k, n)
        return ring
    return GrassmannRing(k, n, cap)


def expected_total_rank(k: int, n: int) -> int:
    return comb(n, k)
