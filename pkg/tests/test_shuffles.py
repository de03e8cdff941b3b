import random
from math import comb

import pytest

from cycal.groups import FreeAbelian, FiniteGroup
from cycal.algebra import group_algebra
from cycal.complexes import (
    AlgebraSite, NerveSite, ProductSite, Chain, TotalChain, BiChain, BiTotal,
    shuffle_set, cyclic_shuffle_set, sh_pq, perp_pq, sh_prime_pq, Sh,
    b_op, normalize, ResourceBound,
)
from cycal.randgen import rand_chain, rand_nerve_chain


def test_shuffle_cardinalities():
    assert len(shuffle_set(1, 1)) == 2
    assert len(shuffle_set(2, 2)) == 6
    for p in range(0, 4):
        for q in range(0, 4):
            assert len(shuffle_set(p, q)) == comb(p + q, p)
    assert len(cyclic_shuffle_set(1, 1)) == 1


def test_shuffle_degree_cap():
    site = AlgebraSite(group_algebra(FreeAbelian(2)))
    rng = random.Random(0)
    x = rand_chain(site, rng, 4, terms=1)
    y = rand_chain(site, rng, 3, terms=1)
    with pytest.raises(ResourceBound):
        sh_pq(BiChain.of_pair(x, y))


def test_sh_is_b_chain_map():
    # b . sh = sh . (b (x) 1 + (-1)^p 1 (x) b), strict, no normalization
    rng = random.Random(1)
    siteC = AlgebraSite(group_algebra(FreeAbelian(2)))
    siteD = AlgebraSite(group_algebra(FiniteGroup.cyclic(3)))
    for _ in range(20):
        p = rng.randint(1, 3)
        q = rng.randint(1, 2)
        x = rand_chain(siteC, rng, p, terms=1)
        y = rand_chain(siteD, rng, q, terms=1)
        bc = BiChain.of_pair(x, y)
        lhs = b_op(sh_pq(bc))
        sgn = -1 if p % 2 else 1
        rhs = Chain(lhs.site, p + q - 1)
        if p >= 1:
            rhs = rhs + sh_pq(BiChain.of_pair(b_op(x), y))
        if q >= 1:
            rhs = rhs + sh_pq(BiChain.of_pair(x, b_op(y))).scale(sgn)
        assert lhs == rhs


def test_perp_output_degree():
    rng = random.Random(2)
    siteC = AlgebraSite(group_algebra(FreeAbelian(2)))
    siteD = NerveSite(FreeAbelian(2))
    x = rand_chain(siteC, rng, 2, terms=1)
    y = rand_nerve_chain(siteD, rng, 1, terms=1)
    out = perp_pq(BiChain.of_pair(x, y))
    assert out.degree == 3
    sp = sh_prime_pq(BiChain.of_pair(x, y))
    assert sp.degree == 5  # raises total degree by 2


def test_Sh_commutes_with_total_differential():
    rng = random.Random(3)
    siteC = AlgebraSite(group_algebra(FreeAbelian(2)))
    siteD = NerveSite(FreeAbelian(2))
    cases = 0
    for _ in range(40):
        p = rng.randint(0, 2)
        q = rng.randint(0, 2)
        if p + q > 4 or p + q == 0:
            continue
        cases += 1
        x = normalize(rand_chain(siteC, rng, p, terms=1, allow_top=False))
        y = normalize(rand_nerve_chain(siteD, rng, q, terms=1))
        bt = BiTotal.of_pair(x, y)
        lhs = Sh(bt.apply_b_minus_B(), cap=8).normalized()
        rhs = Sh(bt, cap=8).apply_b_minus_B().normalized()
        assert lhs == rhs
    assert cases >= 10
