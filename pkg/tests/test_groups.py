import random
from fractions import Fraction

import pytest

from cycal.scalars import Scalar, exp_it, imag_unit, root_of_unity, t_monomial
from cycal.groups import (
    FreeAbelian, FiniteGroup, GroupCochain, GroupError,
    group_coboundary, cocycle_check, normalization_check, normalize_cocycle,
    group_cup, omega_n_weight, omega_weight_multiplicative, exp_cup,
    coboundary_of_antisymmetric,
)

SIGMA = [[0, 1], [-1, 0]]  # sigma(x, y) = x1 y2 - x2 y1


def test_finite_group_validation():
    g = FiniteGroup.cyclic(3)
    assert g.identity == 0
    assert g.op(1, 2) == 0
    assert g.inv(2) == 1
    gg = FiniteGroup.product_of_cyclic([2, 2])
    assert gg.order == 4
    assert gg.op((1, 0), (1, 1)) == (0, 1)
    bad = [[0, 1], [1, 1]]
    with pytest.raises(GroupError):
        FiniteGroup([0, 1], bad)


def test_free_abelian():
    z2 = FreeAbelian(2)
    assert z2.op((1, 0), (0, 1)) == (1, 1)
    assert z2.inv((2, -1)) == (-2, 1)
    assert z2.product([(1, 0), (0, 1), (-1, -1)]) == (0, 0)


def test_coboundary_of_linear_vanishes():
    z2 = FreeAbelian(2)
    c = GroupCochain.linear(z2, [1, 2])
    dc = group_coboundary(c)
    rng = random.Random(0)
    for _ in range(50):
        x, y = z2.sample(rng), z2.sample(rng)
        assert dc.value((x, y)) == 0


def test_coboundary_squares_to_zero():
    rng = random.Random(1)
    z2 = FreeAbelian(2)
    c = GroupCochain.bilinear(z2, [[1, 2], [0, -1]])
    ddc = group_coboundary(group_coboundary(c))
    for _ in range(200):
        args = tuple(z2.sample(rng) for _ in range(4))
        assert ddc.value(args) == 0
    g = FiniteGroup.product_of_cyclic([2, 2])
    entries = {}
    for x in g.elements():
        entries[(x,)] = Scalar.rational(Fraction(rng.randint(-3, 3)))
    c1 = GroupCochain.table(g, 1, entries)
    ddc1 = group_coboundary(group_coboundary(c1))
    for _ in range(200):
        args = tuple(g.sample(rng) for _ in range(3))
        assert ddc1.value(args) == 0


def test_cocycle_check():
    z2 = FreeAbelian(2)
    sigma = GroupCochain.bilinear(z2, SIGMA)
    assert cocycle_check(sigma)
    one = GroupCochain.table(FiniteGroup.cyclic(3), 2,
                             {}, multiplicative=True,
                             default=Scalar.one())
    assert cocycle_check(one)
    # perturb one entry of a valid additive table -> fail with witness
    g = FiniteGroup.product_of_cyclic([2, 2])
    rng = random.Random(2)
    ok = coboundary_of_antisymmetric(g, rng)
    assert cocycle_check(ok)
    bad_entries = {(x, y): ok.value((x, y)) for x in g.elements()
                   for y in g.elements()}
    bad_entries[((1, 0), (0, 1))] = bad_entries[((1, 0), (0, 1))] + 1
    bad = GroupCochain.table(g, 2, bad_entries)
    rep = cocycle_check(bad)
    assert not rep.ok and rep.witness is not None


def test_normalization():
    z2 = FreeAbelian(2)
    assert normalization_check(GroupCochain.bilinear(z2, SIGMA))
    assert not normalization_check(GroupCochain.bilinear(z2, [[1, 0], [0, 1]]))
    rng = random.Random(3)
    g = FiniteGroup.product_of_cyclic([2, 2])
    assert normalization_check(coboundary_of_antisymmetric(g, rng))


def _pauli_cocycle():
    """Normalized 2-cocycle on (Z/2)^2 with lambda_x lambda_y = +-i phases."""
    g = FiniteGroup.product_of_cyclic([2, 2])
    entries = {}
    for x in g.elements():
        for y in g.elements():
            entries[(x, y)] = root_of_unity(x[1] * y[0], 2)
    beta = GroupCochain.table(g, 2, entries, multiplicative=True)
    return g, normalize_cocycle(beta)


def test_normalize_cocycle_pauli():
    g, om = _pauli_cocycle()
    assert cocycle_check(om)
    assert normalization_check(om)
    assert om.value(((1, 0), (0, 1))) == imag_unit()
    assert om.value(((0, 1), (1, 0))) == -imag_unit()


def test_group_cup():
    z2 = FreeAbelian(2)
    sigma = GroupCochain.bilinear(z2, SIGMA)
    one = GroupCochain.table(z2, 0, {(): Scalar.one()})
    cup1 = group_cup(one, sigma)
    rng = random.Random(4)
    for _ in range(30):
        x, y = z2.sample(rng), z2.sample(rng)
        assert cup1.value((x, y)) == sigma.value((x, y))
    ss = group_cup(sigma, sigma)
    for _ in range(30):
        args = tuple(z2.sample(rng) for _ in range(4))
        assert ss.value(args) == sigma.value(args[:2]) * sigma.value(args[2:])
    # Leibniz: d(c cup c2) = dc cup c2 + (-1)^p c cup dc2
    c = GroupCochain.linear(z2, [1, -1])
    c2 = GroupCochain.linear(z2, [2, 1])
    lhs = group_coboundary(group_cup(c, c2))
    dc_c2 = group_cup(group_coboundary(c), c2)
    c_dc2 = group_cup(c, group_coboundary(c2))
    for _ in range(100):
        args = tuple(z2.sample(rng) for _ in range(3))
        assert lhs.value(args) == dc_c2.value(args) - c_dc2.value(args)


def test_omega_n_weight():
    z2 = FreeAbelian(2)
    sigma = GroupCochain.bilinear(z2, SIGMA)
    e = z2.identity
    assert omega_n_weight(sigma, [e, e, e]) == 0
    g0, g1, g2 = (-1, -1), (1, 0), (0, 1)
    expect = sigma.value((g0, g1)) + sigma.value((z2.op(g0, g1), g2))
    assert omega_n_weight(sigma, [g0, g1, g2]) == expect == Scalar.one()
    # re-association per the ((xy)z)w bracketing
    rng = random.Random(5)
    for _ in range(200):
        gs = [z2.sample(rng) for _ in range(4)]
        direct = omega_n_weight(sigma, gs)
        g123 = z2.product(gs[1:])
        reassoc = (sigma.value((gs[1], gs[2]))
                   + sigma.value((z2.op(gs[1], gs[2]), gs[3]))
                   + sigma.value((gs[0], g123)))
        assert direct == reassoc


def test_omega_n_cyclic_invariance():
    z2 = FreeAbelian(2)
    sigma = GroupCochain.bilinear(z2, SIGMA)
    rng = random.Random(6)
    for _ in range(200):
        gs = [z2.sample(rng) for _ in range(3)]
        g0 = z2.inv(z2.product(gs))
        tup = [g0] + gs
        rot = [tup[-1]] + tup[:-1]
        assert omega_n_weight(sigma, tup) == omega_n_weight(sigma, rot)
    g = FiniteGroup.product_of_cyclic([4, 4])
    om = coboundary_of_antisymmetric(g, rng)
    for _ in range(200):
        gs = [g.sample(rng) for _ in range(3)]
        g0 = g.inv(g.product(gs))
        tup = [g0] + gs
        rot = [tup[-1]] + tup[:-1]
        assert omega_n_weight(om, tup) == omega_n_weight(om, rot)


def test_multiplicative_weight_matches_exp():
    z2 = FreeAbelian(2)
    sigma = GroupCochain.bilinear(z2, SIGMA)
    K = 4
    from cycal.groups import ExpItRule
    fam = GroupCochain(z2, 2, ExpItRule(sigma, K), multiplicative=True)
    rng = random.Random(7)
    for _ in range(50):
        gs = [z2.sample(rng) for _ in range(4)]
        w = omega_weight_multiplicative(fam, gs)
        assert w == exp_it(omega_n_weight(sigma, gs).as_rational(), K)


def test_exp_cup():
    z2 = FreeAbelian(2)
    sigma = GroupCochain.bilinear(z2, SIGMA)
    comps = exp_cup(sigma, K=4, maxdeg=2)
    assert [k for k, _ in comps] == [0, 1]
    assert comps[0][1].value(()) == 1
    it = imag_unit() * t_monomial(1, trunc=4)
    assert comps[1][1].value(((1, 0), (0, 1))) == it * sigma.value(((1, 0), (0, 1)))
    comps4 = exp_cup(sigma, K=4, maxdeg=4)
    assert [k for k, _ in comps4] == [0, 1, 2]
    val = comps4[2][1].value(((1, 0), (0, 1), (1, 0), (0, 1)))
    assert val == t_monomial(2, Fraction(-1, 2), trunc=4)
    with pytest.raises(ValueError):
        exp_cup(sigma, 4, -1)
