import random
from fractions import Fraction

import pytest

from cycal.scalars import Scalar
from cycal.groups import FreeAbelian, FiniteGroup, GroupCochain
from cycal.algebra import group_algebra
from cycal.complexes import (
    AlgebraSite, Chain, TotalChain, b_op, lam, N_op, normalize,
)
from cycal.cochains import (
    CCTuple, OpPullback, SumCochain, ScaledCochain, H_avg, one_minus_lam,
    pairing, is_total_cycle, PairingError, TraceCochain,
)
from cycal.karoubi import karoubi_cocycle, standard_trace
from cycal.randgen import rand_chain, rand_total_cycle, rand_table_cochain

SIGMA = [[0, 1], [-1, 0]]


def test_H_avg_inverts_one_minus_lambda():
    rng = random.Random(0)
    site = AlgebraSite(group_algebra(FreeAbelian(2)))
    for _ in range(30):
        deg = rng.randint(1, 5)
        ch = rand_chain(site, rng, deg)
        n = deg
        lhs = one_minus_lam(H_avg(ch))
        rhs = ch - N_op(ch).scale(Fraction(1, n + 1))
        assert lhs == rhs
        assert H_avg(one_minus_lam(ch)) == rhs


def test_fold_fixes_single_cyclic():
    z2 = FreeAbelian(2)
    A = group_algebra(z2)
    tau = standard_trace(A)
    tup = CCTuple.of_cyclic(tau)
    assert tup.cc_to_cyclic() is tau
    assert tup.i_map() is tau


def test_fold_of_shifted_tuple_is_closed_cyclic():
    # fold the two-column shift of tau and check the output contract
    z2 = FreeAbelian(2)
    A = group_algebra(z2)
    site = AlgebraSite(A)
    tau = standard_trace(A)
    tup = CCTuple(2, {2: tau})
    folded = tup.cc_to_cyclic()
    rng = random.Random(1)
    for _ in range(40):
        ch = rand_chain(site, rng, 3)
        assert folded.eval_chain(b_op(ch)).is_zero()
        ch2 = rand_chain(site, rng, 2)
        assert folded.eval_chain(lam(ch2)) == folded.eval_chain(ch2)


def test_pairing_trace_against_unit():
    z2 = FreeAbelian(2)
    A = group_algebra(z2)
    site = AlgebraSite(A)
    tau = standard_trace(A)
    ch0 = TotalChain.of(Chain.single(site, ((0, 0),)))
    assert pairing(tau, ch0) == 1
    assert pairing(tau, TotalChain(site)) == 0


def test_pairing_kills_coboundaries():
    rng = random.Random(2)
    site = AlgebraSite(group_algebra(FiniteGroup.cyclic(3)))
    for _ in range(30):
        top = rng.choice([2, 4])
        cycle = rand_total_cycle(site, rng, top)
        cycle = cycle.normalized()
        assert is_total_cycle(cycle)
        # random (b,B)-tuple psi; its (b - B)-transpose pairs to zero
        deg = rng.choice([d for d in range(0, top)
                          if (d % 2) != (top % 2)]) if top >= 1 else 1
        psi = rand_table_cochain(site, rng, deg)
        # delta psi = psi . (b - B): psi.b eats degree deg+1, psi.B degree deg-1
        delta_psi = {deg + 1: OpPullback(psi, b_op, deg + 1, name="b")}
        from cycal.complexes import B_op
        if deg >= 1:
            delta_psi[deg - 1] = ScaledCochain(
                OpPullback(psi, B_op, deg - 1, name="B"), -1)
        assert pairing(delta_psi, cycle).is_zero()


def test_pairing_parity_mismatch():
    z2 = FreeAbelian(2)
    A = group_algebra(z2)
    site = AlgebraSite(A)
    tau = standard_trace(A)
    odd = TotalChain.of(Chain.single(site, ((0, 0), (1, 0))))
    with pytest.raises(PairingError):
        pairing(tau, odd)


def test_pairing_of_karoubi_tuple_fold():
    # fold of the S-shift pairs like the pairing theory demands: coboundary
    # inputs map to pairing-zero outputs
    rng = random.Random(3)
    z2 = FreeAbelian(2)
    A = group_algebra(z2)
    site = AlgebraSite(A)
    sigma = GroupCochain.bilinear(z2, SIGMA)
    st = karoubi_cocycle(sigma, A, rng=rng)
    tup = CCTuple(4, {2: st})
    folded = tup.cc_to_cyclic()
    for _ in range(10):
        cycle = rand_total_cycle(site, rng, 4).normalized()
        assert is_total_cycle(cycle)
        # folded is closed, so it must also kill boundaries
        eta = TotalChain.of(normalize(rand_chain(site, rng, 5)))
        boundary = eta.apply_b_minus_B().normalized()
        val = pairing(folded, boundary, strict_parity=False)
        assert val.is_zero()
