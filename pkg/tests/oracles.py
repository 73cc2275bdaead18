"""Independent oracles used by the test-suite.

These deliberately avoid the z-monomial search: the zero-divisor cup-length
is obtained from the kernel of Delta* as a subspace of H (x) H and the
powers K, K^2, ... computed by brute-force products of spanning vectors.
"""

from __future__ import annotations

from itertools import combinations

from grasstc import kernels
from grasstc.ring import GrassmannRing


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


class FullTensor:
    """H (x) H as a single GF(2) vector space with an explicit product."""

    def __init__(self, ring: GrassmannRing):
        self.ring = ring
        self.basis = [b for d in range(ring.dim + 1) for b in ring.basis(d)]
        self.pos = {b: i for i, b in enumerate(self.basis)}
        self.size = len(self.basis)
        self.dim = self.size * self.size
        # multiplication table of H in the monomial basis
        self.mult = {}
        for a in self.basis:
            for b in self.basis:
                d, bits = ring.nf_monomial(_add(a, b))
                vec = 0
                if bits:
                    basis_d = ring.basis(d)
                    while bits:
                        low = bits & -bits
                        vec |= 1 << self.pos[basis_d[low.bit_length() - 1]]
                        bits ^= low
                self.mult[a, b] = vec

    def index(self, i, j):
        return i * self.size + j

    def product(self, x: int, y: int) -> int:
        out = 0
        xs = _bits(x)
        ys = _bits(y)
        for p in xs:
            i1, j1 = divmod(p, self.size)
            for q in ys:
                i2, j2 = divmod(q, self.size)
                left = self.mult[self.basis[i1], self.basis[i2]]
                right = self.mult[self.basis[j1], self.basis[j2]]
                for a in _bits(left):
                    for b in _bits(right):
                        out ^= 1 << self.index(a, b)
        return out

    def kernel_of_delta(self) -> list[int]:
        """Basis of Ker(Delta*) via nullspace of the multiplication map."""
        rows = []
        for i, a in enumerate(self.basis):
            for j, b in enumerate(self.basis):
                # augmented row: image bits, then the identity bit of the pair
                rows.append(self.mult[a, b] | (1 << (self.size + self.index(i, j))))
        ncols = self.size + self.dim
        pivots, reduced = kernels.rref(rows, ncols)
        # rows whose image part vanished span the kernel
        return [r >> self.size for p, r in zip(pivots, reduced) if p >= self.size]


def _bits(x: int):
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


def span(vectors, ncols):
    return kernels.rref([v for v in vectors if v], ncols)[1]


def brute_force_zcl(ring: GrassmannRing) -> int:
    """Largest N with K^N != 0, K = Ker(Delta*)."""
    full = FullTensor(ring)
    kernel = span(full.kernel_of_delta(), full.dim)
    power = kernel
    n = 0
    while power:
        n += 1
        power = span([full.product(x, y) for x in power for y in kernel], full.dim)
    return n


def flag_tensor_nonzero(k: int, n: int, pairs) -> bool:
    """Whether sum(w^l (x) w^r) is nonzero in H*(G x G), decided in the flag ring.

    Poincare duality on G x G: the class is nonzero iff some pair of monomials
    (c1, c2) of complementary bidegree pairs to 1.  Top-degree values of G are
    read off through pi* and the fixed multiplier, so no quotient-ring table
    is consulted.
    """
    from functools import lru_cache

    from grasstc.flag import FlagElement, pi_star, stong_multiplier, top_eval
    from grasstc.ring import monomials_of_degree, w_space

    space = w_space(k)
    dim = k * (n - k)
    fixed = FlagElement.monomial(stong_multiplier(k, n))

    @lru_cache(maxsize=None)
    def ev(a):
        if space.degree(a) != dim:
            return 0
        return top_eval(pi_star(space.monomial(a), k, n) * fixed)

    groups = {}
    for left, right in pairs:
        d1, d2 = space.degree(left), space.degree(right)
        if d1 <= dim and d2 <= dim:
            groups.setdefault((d1, d2), []).append((left, right))
    for (d1, d2), terms in groups.items():
        for c1 in monomials_of_degree(k, dim - d1):
            for c2 in monomials_of_degree(k, dim - d2):
                acc = 0
                for left, right in terms:
                    acc ^= ev(_add(left, c1)) & ev(_add(right, c2))
                if acc:
                    return True
    return False


def z_pairs(k: int, m) -> frozenset:
    """Terms of prod z(w_i)^{m_i} by repeated multiplication (no Lucas shortcut)."""
    zero = (0,) * k
    acc = {(zero, zero)}
    for i, e in enumerate(m):
        unit = tuple(int(j == i) for j in range(k))
        for _ in range(e):
            nxt = set()
            for left, right in acc:
                for t in ((_add(left, unit), right), (left, _add(right, unit))):
                    nxt ^= {t}
            acc = nxt
    return frozenset(acc)
