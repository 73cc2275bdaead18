from __future__ import annotations

from math import comb

import pytest

from grasstc.errors import InfeasibleError, UsageError
from grasstc.flag import grassmann_nonzero_via_flag
from grasstc.ring import build_ring, dual_class, monomials_of_degree, presentation_relations, w_space

W2 = w_space(2)
PAIRS = [(k, n) for k in (1, 2, 3) for n in range(max(2 * k, 2), 13)] + [(4, 8), (4, 10), (5, 10)]


def test_dual_class_examples():
    assert str(dual_class(2, 3)) == "w1^3"
    assert str(dual_class(2, 4)) == "w1^4 + w1^2*w2 + w2^2"
    assert dual_class(3, 0) == w_space(3).one()
    with pytest.raises(UsageError):
        dual_class(2, -1)


def test_g2r6_relations():
    assert [str(p) for p in presentation_relations(2, 6)] == ["w1^5 + w1*w2^2", "w1^4*w2 + w1^2*w2^2 + w2^3"]
    ring = build_ring(2, 6)
    # the ring is presented by wb5, wb6; both generating sets span the same ideal
    assert [str(p) for p in ring.relations()] == ["w1^5 + w1*w2^2", "w1^6 + w1^4*w2 + w2^3"]
    for p in presentation_relations(2, 6) + ring.relations():
        assert ring.normal_form(p) == {}


@pytest.mark.parametrize("k,n", PAIRS)
def test_ranks_and_duality(ring, k, n):
    r = ring(k, n)
    sizes = r.basis_sizes()
    assert sum(sizes) == comb(n, k)
    assert sizes == sizes[::-1]
    assert sizes[0] == sizes[-1] == 1
    assert r.basis(0) == [(0,) * k]


@pytest.mark.parametrize("k,n", [(2, 6), (2, 9), (3, 7), (3, 10), (4, 9)])
def test_dual_classes_vanish_exactly_above_n_minus_k(ring, k, n):
    r = ring(k, n)
    for j in range(1, n + 1):
        assert r.is_nonzero(dual_class(k, j)) == (j <= n - k), j


@pytest.mark.parametrize("k,n", [(2, 6), (3, 8), (4, 9)])
def test_defining_relation_holds_degreewise(ring, k, n):
    r = ring(k, n)
    sp = r.space
    w = sp.one()
    for i in range(1, k + 1):
        w = w + sp.var(i - 1)
    wb = sp.one()
    for j in range(1, n - k + 1):
        wb = wb + dual_class(k, j)
    prod = w * wb
    for d in range(1, r.dim + 1):
        assert not r.is_nonzero(prod.component(d))


def test_rp4():
    r = build_ring(1, 5)
    assert [r.basis(d) for d in range(5)] == [[(d,)] for d in range(5)]
    assert not r.monomial_is_nonzero((5,))
    assert r.height(r.space.var(0)) == 4
    assert r.max_monomial_cup_length() == (4, (4,))


def test_g2r6_queries():
    r = build_ring(2, 6)
    w1, w2 = r.space.var("w1"), r.space.var("w2")
    assert r.normal_form(W2.zero()) == {}
    assert not r.is_nonzero(w1**7)
    assert r.is_nonzero(w1**6)
    assert r.is_nonzero(w1**4 * w2)
    assert not r.is_nonzero(w1**4 * w2**2)
    assert r.height(w1) == 6
    assert r.height(w2) == 4
    assert r.max_monomial_cup_length() == (7, (6, 1))


def test_cup_length_g3r9():
    r = build_ring(3, 9)
    n, witness = r.max_monomial_cup_length()
    # a longer product than w1^8 w2^4 survives; see the decisions ledger
    assert (n, witness) == (16, (14, 2, 0))
    assert r.monomial_is_nonzero((8, 4, 0))
    assert not r.monomial_is_nonzero((8, 4, 1))
    assert grassmann_nonzero_via_flag(r.space.monomial(witness), 3, 9).nonzero


@pytest.mark.parametrize("k,n", [(2, 7), (3, 8)])
def test_normal_form_is_multiplicative(ring, k, n):
    """nf(p*q) depends only on nf(p), nf(q)."""
    import random

    r = ring(k, n)
    rng = random.Random(k * 100 + n)
    monos = [m for d in range(1, r.dim // 2 + 1) for m in monomials_of_degree(k, d)]
    for _ in range(60):
        p = r.space.zero()
        q = r.space.zero()
        for m in rng.sample(monos, 3):
            p = p + r.space.monomial(m)
        for m in rng.sample(monos, 3):
            q = q + r.space.monomial(m)
        assert r.reduce(p * q) == r.multiply(p, q)
        assert r.normal_form(p + q) == {
            d: b for d in set(r.normal_form(p)) | set(r.normal_form(q))
            if (b := r.normal_form(p).get(d, 0) ^ r.normal_form(q).get(d, 0))
        }


def test_complement():
    with pytest.raises(UsageError):
        build_ring(4, 6)
    r = build_ring(4, 6, allow_complement=True)
    assert (r.k, r.n, r.complement_of) == (2, 6, (4, 6))


def test_bad_parameters():
    for k, n in [(-1, 4), (5, 4), (1, 0)]:
        with pytest.raises(UsageError):
            build_ring(k, n)
    with pytest.raises(UsageError):
        build_ring(2, 4).table(9)
    with pytest.raises(UsageError):
        build_ring(2, 4).height(W2.parse("w1 + w2"))


def test_cap_raises_infeasible_naming_the_degree():
    r = build_ring(3, 12, cap=1000)
    with pytest.raises(InfeasibleError, match="degree"):
        r.build_all()


def test_nonzero_monomials_are_down_closed(ring):
    r = ring(3, 9)
    nz = r.nonzero_monomials()
    for a in nz:
        for i in range(3):
            if a[i]:
                assert a[:i] + (a[i] - 1,) + a[i + 1:] in nz
