import random
from fractions import Fraction

import pytest

from cycal.scalars import Scalar
from cycal.groups import FreeAbelian, FiniteGroup, GroupCochain, \
    coboundary_of_antisymmetric
from cycal.algebra import group_algebra, TOP, invariance_check
from cycal.complexes import (
    AlgebraSite, NerveSite, Chain, face, degeneracy, rot, lam, b_op, normalize,
)
from cycal.cochains import CCTuple
from cycal.karoubi import (
    nerve_to_algebra, karoubi_cocycle, cyclicity_check, standard_trace,
    v_cocycle, s_operator, KaroubiError,
)
from cycal.randgen import rand_nerve_chain, rand_chain

SIGMA = [[0, 1], [-1, 0]]


def test_nerve_to_algebra_examples():
    z2 = FreeAbelian(2)
    nsite = NerveSite(z2)
    asite = AlgebraSite(group_algebra(z2))
    empty = Chain.single(nsite, ())
    assert nerve_to_algebra(empty, asite) == Chain.single(asite, ((0, 0),))
    ch = Chain.single(nsite, ((1, 0), (0, 1)))
    assert nerve_to_algebra(ch, asite) == \
        Chain.single(asite, ((-1, -1), (1, 0), (0, 1)))


def test_nerve_embedding_equivariance():
    z2 = FreeAbelian(2)
    nsite = NerveSite(z2)
    asite = AlgebraSite(group_algebra(z2))
    rng = random.Random(0)
    for _ in range(100):
        deg = rng.randint(1, 4)
        ch = rand_nerve_chain(nsite, rng, deg, normalized=False)
        img = nerve_to_algebra(ch, asite)
        # faces
        for i in range(deg + 1):
            assert nerve_to_algebra(face(ch, i), asite) == face(img, i)
        # degeneracies: nerve inserts e, the algebra cyclic module inserts
        # the algebra's own unit lambda_e
        for i in range(deg + 1):
            lhs = nerve_to_algebra(degeneracy(ch, i), asite)
            rhs = degeneracy(img, i, unit=z2.identity)
            assert lhs == rhs
        # cyclic rotation (lambda-equivariance includes the matching sign)
        assert nerve_to_algebra(lam(ch), asite) == lam(img)


def test_karoubi_trace():
    z2 = FreeAbelian(2)
    A = group_algebra(z2)
    one = GroupCochain.table(z2, 0, {(): Scalar.one()})
    tau = karoubi_cocycle(one, A)
    assert tau.eval_key(((0, 0),)) == 1
    assert tau.eval_key(((1, 0),)) == 0
    tau2 = standard_trace(A)
    assert tau2.eval_key(((0, 0),)) == 1
    assert tau2.eval_key((TOP,)) == 0


def test_karoubi_sigma():
    z2 = FreeAbelian(2)
    A = group_algebra(z2)
    sigma = GroupCochain.bilinear(z2, SIGMA)
    rng = random.Random(1)
    st = karoubi_cocycle(sigma, A, rng=rng)
    key = ((-1, -1), (1, 0), (0, 1))
    assert st.eval_key(key) == Scalar.one()
    assert st.eval_key(((0, 0), (1, 0), (0, 1))) == 0  # grades don't close
    site = AlgebraSite(A)
    # b-closure on random chains, including adjoined-unit slots
    for _ in range(100):
        deg = st.degree + 1
        ch = rand_chain(site, rng, deg)
        assert st.eval_chain(b_op(ch)).is_zero()
    # cyclicity: phi . lambda = phi
    for _ in range(60):
        ch = rand_chain(site, rng, st.degree)
        assert st.eval_chain(lam(ch)) == st.eval_chain(ch)
    # alpha-invariance
    assert invariance_check(st, A, rng=rng)


def test_karoubi_degree1():
    z2 = FreeAbelian(2)
    A = group_algebra(z2)
    c = GroupCochain.linear(z2, [1, 0])
    rng = random.Random(2)
    phi = karoubi_cocycle(c, A, rng=rng)
    assert phi.eval_key(((-1, 0), (1, 0))) == 1
    site = AlgebraSite(A)
    for _ in range(80):
        ch = rand_chain(site, rng, 2)
        assert phi.eval_chain(b_op(ch)).is_zero()


def test_karoubi_finite_table_cocycle():
    g = FiniteGroup.product_of_cyclic([4, 4])
    rng = random.Random(3)
    om = coboundary_of_antisymmetric(g, rng)
    A = group_algebra(g)
    phi = karoubi_cocycle(om, A, rng=rng)
    site = AlgebraSite(A)
    for _ in range(60):
        ch = rand_chain(site, rng, 3)
        assert phi.eval_chain(b_op(ch)).is_zero()
    for _ in range(40):
        ch = rand_chain(site, rng, 2)
        assert phi.eval_chain(lam(ch)) == phi.eval_chain(ch)


def test_karoubi_rejects_noncyclic():
    z2 = FreeAbelian(2)
    # a non-antisymmetric bilinear cocycle has no on-the-nose cyclic rep
    c = GroupCochain.bilinear(z2, [[1, 1], [0, 0]])
    rng = random.Random(4)
    with pytest.raises(KaroubiError):
        karoubi_cocycle(c, rng=rng)


def test_cyclicity_check_bilinear_antisymmetric():
    z2 = FreeAbelian(2)
    sigma = GroupCochain.bilinear(z2, SIGMA)
    rng = random.Random(5)
    assert cyclicity_check(sigma, rng=rng)


def test_v_cocycle():
    v = v_cocycle()
    assert v.eval_key((0, 0, 0)) == Scalar.rational(Fraction(-1, 2))
    site = v.site
    rng = random.Random(6)
    for _ in range(40):
        ch = rand_chain(site, rng, 3)
        assert v.eval_chain(b_op(ch)).is_zero()
        ch2 = rand_chain(site, rng, 2)
        assert v.eval_chain(lam(ch2)) == v.eval_chain(ch2)


def test_s_operator_closed():
    z2 = FreeAbelian(2)
    A = group_algebra(z2)
    rng = random.Random(7)
    tau = standard_trace(A)
    s_tau = s_operator(tau)
    site = AlgebraSite(A)
    samples = {deg: [normalize(rand_chain(site, rng, deg)) for _ in range(20)]
               for deg in range(0, 4)}
    assert s_tau.closure_defects(samples) == []
    # S of S stays closed
    ss = CCTuple(tau.degree + 4, {4: tau})
    samples = {deg: [normalize(rand_chain(site, rng, deg)) for _ in range(10)]
               for deg in range(0, 6)}
    assert ss.closure_defects(samples) == []
