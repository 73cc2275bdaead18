"""H*(X x X) = H*(X) (x) H*(X) for X = G_k(R^n), zero-divisors and zcl.

An element is a set of pairs (left exponent vector, right exponent vector),
each pair standing for w^left (x) w^right.  Nonzeroness is decided per
bidegree by accumulating outer products of the two normal forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator

from . import kernels
from .errors import UsageError
from .gf2poly import Monomial, Polynomial
from .ring import GrassmannRing, monomials_of_degree

Pair = tuple[Monomial, Monomial]


def rho(m: int) -> int:
    """Least power of two strictly greater than m."""
    if m < 0:
        raise UsageError("rho needs a non-negative integer")
    return 1 << m.bit_length()


class TensorPolynomial:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: GrassmannRing, terms: Iterable[Pair] = ()):
        self.ring = ring
        self.terms = frozenset(terms)

    @classmethod
    def one(cls, ring: GrassmannRing) -> TensorPolynomial:
        z = (0,) * ring.k
        return cls(ring, [(z, z)])

    @classmethod
    def from_sides(cls, left: Polynomial, right: Polynomial, ring: GrassmannRing) -> TensorPolynomial:
        return cls(ring, [(a, b) for a in left.terms for b in right.terms])

    def _check(self, other: TensorPolynomial) -> None:
        if not isinstance(other, TensorPolynomial) or other.ring is not self.ring:
            raise UsageError("tensor elements over different rings")

    def __add__(self, other: TensorPolynomial) -> TensorPolynomial:
        self._check(other)
        return TensorPolynomial(self.ring, self.terms ^ other.terms)

    def __mul__(self, other: TensorPolynomial) -> TensorPolynomial:
        return tensor_mul(self, other)

    def __pow__(self, m: int) -> TensorPolynomial:
        out = TensorPolynomial.one(self.ring)
        for _ in range(m):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, TensorPolynomial)
            and other.ring is self.ring
            and other.terms == self.terms
        )

    def __hash__(self) -> int:
        return hash(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        sp = self.ring.space
        key = lambda t: (sp.sort_key(t[0]), sp.sort_key(t[1]))
        return " + ".join(
            f"{sp.format_monomial(a)} (x) {sp.format_monomial(b)}"
            for a, b in sorted(self.terms, key=key, reverse=True)
        )


def _add(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def tensor_mul(a: TensorPolynomial, b: TensorPolynomial) -> TensorPolynomial:
    """(a1 (x) a2)(b1 (x) b2) = a1 b1 (x) a2 b2, extended bilinearly mod 2."""
    a._check(b)
    acc: set[Pair] = set()
    for l1, r1 in a.terms:
        for l2, r2 in b.terms:
            t = (_add(l1, l2), _add(r1, r2))
            if t in acc:
                acc.remove(t)
            else:
                acc.add(t)
    return TensorPolynomial(a.ring, acc)


def z(ring: GrassmannRing, i: int) -> TensorPolynomial:
    """The basic zero-divisor w_i (x) 1 + 1 (x) w_i."""
    if not 1 <= i <= ring.k:
        raise UsageError(f"generator index {i} out of range 1..{ring.k}")
    e = tuple(1 if j == i - 1 else 0 for j in range(ring.k))
    zero = (0,) * ring.k
    return TensorPolynomial(ring, [(e, zero), (zero, e)])


def _submasks(m: int) -> list[int]:
    out = []
    j = m
    while True:
        out.append(j)
        if j == 0:
            return out
        j = (j - 1) & m


def z_monomial(ring: GrassmannRing, m: Iterable[int]) -> TensorPolynomial:
    """prod_i z(w_i)^{m_i}, expanded with Lucas' theorem.

    C(m, j) is odd iff j is a bitwise submask of m, so the expansion is the
    sum of w^j (x) w^{m-j} over per-coordinate submasks j; no terms cancel.
    """
    m = tuple(m)
    if len(m) != ring.k:
        raise UsageError("exponent vector length must equal k")
    terms = [
        (j, tuple(a - b for a, b in zip(m, j)))
        for j in product(*(_submasks(x) for x in m))
    ]
    return TensorPolynomial(ring, terms)


def _group_live_terms(ring: GrassmannRing, terms: Iterable[Pair]):
    """Bucket terms by bidegree, dropping those with a vanishing side."""
    dim = ring.dim
    deg = ring.space.degree
    groups: dict[tuple[int, int], tuple[list[int], list[int]]] = {}
    for left, right in terms:
        d1 = deg(left)
        d2 = deg(right)
        if d1 > dim or d2 > dim:
            continue
        t1 = ring.table(d1)
        t2 = ring.table(d2)
        i1 = t1.index[left]
        i2 = t2.index[right]
        if not t1.nf[i1] or not t2.nf[i2]:
            continue
        g = groups.get((d1, d2))
        if g is None:
            groups[(d1, d2)] = g = ([], [])
        g[0].append(i1)
        g[1].append(i2)
    return groups


def _groups_nonzero(ring: GrassmannRing, groups) -> bool:
    for (d1, d2), (li, ri) in sorted(groups.items()):
        t1 = ring.table(d1)
        t2 = ring.table(d2)
        if kernels.outer_xor_nonzero(t1.packed, li, t2.packed, ri, len(t1.basis)):
            return True
    return False


def tensor_is_nonzero(a: TensorPolynomial) -> bool:
    """Reduce both sides to normal form and test the basis (x) basis coordinates."""
    return _groups_nonzero(a.ring, _group_live_terms(a.ring, a.terms))


def _live_z_terms(ring: GrassmannRing, m: Monomial) -> Iterator[Pair]:
    """Terms of prod z(w_i)^{m_i} whose two sides are both nonzero monomials.

    Nonzero monomials form a down-closed set, so partial exponent vectors
    already outside it prune whole subtrees.
    """
    nz = ring.nonzero_monomials()
    k = ring.k
    subs = [_submasks(x) for x in m]
    left = [0] * k
    right = [0] * k

    def rec(i: int) -> Iterator[Pair]:
        if i == k:
            yield tuple(left), tuple(right)
            return
        for j in subs[i]:
            left[i] = j
            right[i] = m[i] - j
            if tuple(left) in nz and tuple(right) in nz:
                yield from rec(i + 1)
        left[i] = 0
        right[i] = 0

    yield from rec(0)


def z_monomial_is_nonzero(ring: GrassmannRing, m: Iterable[int]) -> bool:
    """Fast path of ``tensor_is_nonzero(z_monomial(ring, m))``."""
    m = tuple(m)
    return _groups_nonzero(ring, _group_live_terms(ring, _live_z_terms(ring, m)))


def delta_star(a: TensorPolynomial) -> Polynomial:
    """Pull back along the diagonal: multiply the two sides, then reduce."""
    ring = a.ring
    acc: set[Monomial] = set()
    for left, right in a.terms:
        t = _add(left, right)
        if t in acc:
            acc.remove(t)
        else:
            acc.add(t)
    return ring.reduce(Polynomial(ring.space, acc))


def height_z(ring: GrassmannRing, i: int) -> int:
    """Height of z(w_i), by multiplying z(w_i) with itself until it vanishes."""
    zi = z(ring, i)
    cur = zi
    if not tensor_is_nonzero(cur):
        return 0
    m = 1
    while i * (m + 1) <= 2 * ring.dim:
        cur = tensor_mul(cur, zi)
        if not tensor_is_nonzero(cur):
            break
        m += 1
    return m


@dataclass(frozen=True)
class ZclResult:
    zcl: int
    witness: Monomial  # exponents m_i of prod z(w_i)^{m_i}
    mode: str = "basic"
    side: Pair | None = None  # y = y1 (x) y2 for the exact mode
    candidates_tested: int = 0

    @property
    def tc_lower(self) -> int:
        return self.zcl + 1


def z_caps(ring: GrassmannRing) -> list[int]:
    """Per-generator bound rho(height(w_i)) - 1 on the exponent of z(w_i)."""
    return [rho(ring.generator_height(i)) - 1 for i in range(1, ring.k + 1)]


def _vectors(caps: list[int], total: int, max_degree: int) -> Iterator[Monomial]:
    """Vectors with sum ``total``, m_i <= caps[i], sum((i+1) m_i) <= max_degree,
    in lexicographically descending order."""
    k = len(caps)
    suffix_cap = [0] * (k + 1)
    for i in range(k - 1, -1, -1):
        suffix_cap[i] = suffix_cap[i + 1] + caps[i]
    cur = [0] * k

    def rec(i: int, rest: int, deg: int) -> Iterator[Monomial]:
        if i == k:
            if rest == 0:
                yield tuple(cur)
            return
        if i == k - 1:
            if rest <= caps[i] and deg + (i + 1) * rest <= max_degree:
                cur[i] = rest
                yield tuple(cur)
            return
        # the remaining coordinates weigh at least i + 2 each
        for e in range(min(caps[i], rest), -1, -1):
            left = rest - e
            if left > suffix_cap[i + 1]:
                break
            d = deg + (i + 1) * e
            if d + (i + 2) * left > max_degree:
                continue
            cur[i] = e
            yield from rec(i + 1, left, d)
        cur[i] = 0

    if k == 0:
        if total == 0:
            yield ()
        return
    yield from rec(0, total, 0)


def zcl_search_start(ring: GrassmannRing) -> int:
    """Upper bound on zcl used to start the downward search.

    A nonzero tensor needs a term w^j (x) w^{m-j} with both sides nonzero, so
    the length is at most twice the cup-length; the z-height caps and the
    total degree 2 dim bound it too.
    """
    caps = z_caps(ring)
    cup, _ = ring.max_monomial_cup_length()
    return min(sum(caps), 2 * cup)


def zcl_basic(ring: GrassmannRing) -> ZclResult:
    """Longest nonzero product prod z(w_i)^{m_i}; ties go to the lex-greatest m."""
    if ring.k == 0:
        return ZclResult(0, ())
    caps = z_caps(ring)
    tested = 0
    for total in range(zcl_search_start(ring), -1, -1):
        for m in _vectors(caps, total, 2 * ring.dim):
            tested += 1
            if z_monomial_is_nonzero(ring, m):
                return ZclResult(total, m, "basic", None, tested)
    raise AssertionError("1 (x) 1 is nonzero; the search cannot come up empty")


def zcl_exact(ring: GrassmannRing) -> ZclResult:
    """Largest N with some length-N z-monomial M and basis pair y, M*y != 0.

    Ker(Delta*) is the ideal generated by the z(w_i) (see
    :func:`kernel_matches_ideal`), so a product of N zero-divisors expands into
    length-N z-monomials times ring elements.  M*y != 0 forces M != 0, and
    y = 1 (x) 1 is the first basis pair in increasing degree, so the side
    search stops there for every surviving M.
    """
    if ring.k == 0:
        zero = ()
        return ZclResult(0, (), "exact", (zero, zero))
    caps = z_caps(ring)
    tested = 0
    one = (0,) * ring.k
    for total in range(zcl_search_start(ring), -1, -1):
        for m in _vectors(caps, total, 2 * ring.dim):
            tested += 1
            for y in _basis_pairs(ring):
                groups = _group_live_terms(
                    ring,
                    ((_add(l, y[0]), _add(r, y[1])) for l, r in _live_z_terms(ring, m)),
                )
                if _groups_nonzero(ring, groups):
                    return ZclResult(total, m, "exact", y, tested)
                if y == (one, one):
                    break  # M vanishes, so M*y vanishes for every y
    raise AssertionError("1 (x) 1 is nonzero; the search cannot come up empty")


def _basis_pairs(ring: GrassmannRing) -> Iterator[Pair]:
    for total in range(0, 2 * ring.dim + 1):
        for d1 in range(max(0, total - ring.dim), min(total, ring.dim) + 1):
            for b1 in ring.basis(d1):
                for b2 in ring.basis(total - d1):
                    yield b1, b2


# -- linear algebra on basis (x) basis ---------------------------------------


class _TensorCoords:
    """Coordinates of homogeneous tensors of total degree d over basis (x) basis."""

    def __init__(self, ring: GrassmannRing, d: int):
        self.ring = ring
        self.d = d
        self.offsets: dict[int, tuple[int, int]] = {}
        off = 0
        for d1 in range(max(0, d - ring.dim), min(d, ring.dim) + 1):
            b2 = len(ring.basis(d - d1))
            self.offsets[d1] = (off, b2)
            off += len(ring.basis(d1)) * b2
        self.size = off

    def pair_vector(self, left: Monomial, right: Monomial) -> int:
        ring = self.ring
        d1, nf1 = ring.nf_monomial(left)
        d2, nf2 = ring.nf_monomial(right)
        if not nf1 or not nf2 or d1 + d2 != self.d:
            return 0
        off, width = self.offsets[d1]
        out = 0
        while nf1:
            low = nf1 & -nf1
            out ^= nf2 << (off + (low.bit_length() - 1) * width)
            nf1 ^= low
        return out

    def vector(self, a: TensorPolynomial) -> int:
        out = 0
        for left, right in a.terms:
            out ^= self.pair_vector(left, right)
        return out

    def basis_pairs(self) -> Iterator[Pair]:
        for d1 in self.offsets:
            for b1 in self.ring.basis(d1):
                for b2 in self.ring.basis(self.d - d1):
                    yield b1, b2


def _rank(rows: list[int], ncols: int) -> int:
    return len(kernels.rref([r for r in rows if r], ncols)[0]) if rows else 0


def kernel_dimension(ring: GrassmannRing, d: int) -> int:
    """dim of Ker(Delta*) in total degree d, by rank-nullity on basis (x) basis."""
    coords = _TensorCoords(ring, d)
    if d > ring.dim:
        return coords.size
    image_rows = []
    for b1, b2 in coords.basis_pairs():
        _, bits = ring.nf_monomial(_add(b1, b2))
        image_rows.append(bits)
    return coords.size - _rank(image_rows, len(ring.basis(d)))


def ideal_dimension(ring: GrassmannRing, d: int) -> int:
    """dim of the degree-d slice of the ideal generated by z(w_1), ..., z(w_k)."""
    coords = _TensorCoords(ring, d)
    rows = []
    for i in range(1, ring.k + 1):
        if d - i < 0:
            continue
        zi = z(ring, i)
        for b1, b2 in _TensorCoords(ring, d - i).basis_pairs():
            rows.append(coords.vector(tensor_mul(zi, TensorPolynomial(ring, [(b1, b2)]))))
    return _rank(rows, coords.size)


def kernel_matches_ideal(ring: GrassmannRing, d: int) -> bool:
    """Whether Ker(Delta*) and the ideal (z(w_1), ..., z(w_k)) agree in total degree d."""
    if d == 0:
        return kernel_dimension(ring, 0) == 0
    return kernel_dimension(ring, d) == ideal_dimension(ring, d)
