"""The nerve of a group as a cyclic set, and group cochains as cyclic cocycles.

The embedding sends a nerve tuple (g_1, ..., g_n) to the algebra chain
((g_1...g_n)^-1, g_1, ..., g_n) over C[Gamma]; it intertwines all the cyclic
module operators.  A normalized group n-cocycle with a cyclic representative
becomes the cyclic cocycle supported on tuples multiplying to e.
"""

from __future__ import annotations

from fractions import Fraction

from cycal.scalars import Scalar
from cycal.groups import GroupCochain, CheckReport, group_coboundary
from cycal.algebra import GroupAlgebra
from cycal.complexes import Chain, AlgebraSite, NerveSite
from cycal.cochains import Cochain, KaroubiCochain, TableCochain, CCTuple, \
    ZeroCochain


class KaroubiError(ValueError):
    pass


def nerve_to_algebra(nerve_chain, algebra_site):
    """Linear extension of (g_1..g_n) -> (l_{(g_1...g_n)^-1}, l_{g_1}, ...)."""
    g = algebra_site.algebra.group
    out = {}
    for key, c in nerve_chain.terms.items():
        g0 = g.inv(g.product(key))
        out[(g0,) + key] = c
    return Chain(algebra_site, nerve_chain.degree, out)


def cyclicity_check(c, rng=None, samples=200):
    """c(g_1..g_n) = (-1)^n c(g_0, g_1, .., g_{n-1}) whenever g_0...g_n = e."""
    g = c.group
    n = c.degree
    if n == 0:
        return CheckReport(True, note="degree 0 is vacuously cyclic")
    sgn = -1 if n % 2 else 1

    def tuples():
        if g.is_finite:
            elems = g.elements()
            def rec(k):
                if k == 0:
                    yield ()
                    return
                for rest in rec(k - 1):
                    for e in elems:
                        yield rest + (e,)
            if g.order ** n <= 4096:
                yield from rec(n)
                return
        for _ in range(samples):
            yield tuple(g.sample(rng) for _ in range(n))

    for tail in tuples():
        g0 = g.inv(g.product(tail))
        lhs = c.value(tail)
        rhs = c.value((g0,) + tail[:-1])
        if lhs != (rhs if sgn == 1 else -rhs):
            return CheckReport(False, witness=(g0,) + tail)
    return CheckReport(True)


def normalized_cochain_check(c, rng=None, samples=100):
    """c vanishes when any argument is the identity."""
    g = c.group
    n = c.degree
    if n == 0:
        return CheckReport(True)
    for _ in range(samples):
        args = [g.sample(rng) for _ in range(n)] if rng is not None else None
        if args is None:
            break
        for j in range(n):
            probe = list(args)
            probe[j] = g.identity
            if not c.value(tuple(probe)).is_zero():
                return CheckReport(False, witness=tuple(probe))
    if g.is_finite and g.order ** max(n - 1, 0) <= 2048:
        elems = g.elements()
        def rec(k):
            if k == 0:
                yield ()
                return
            for rest in rec(k - 1):
                for e in elems:
                    yield rest + (e,)
        for rest in rec(n - 1):
            for j in range(n):
                probe = rest[:j] + (g.identity,) + rest[j:]
                if not c.value(probe).is_zero():
                    return CheckReport(False, witness=probe)
    return CheckReport(True)


def cocycle_condition_check(c, rng=None, samples=120):
    """d c = 0 (additive), sampled or exhaustive."""
    dc = group_coboundary(c)
    g = c.group
    n = dc.degree
    if g.is_finite and g.order ** n <= 4096:
        elems = g.elements()
        def rec(k):
            if k == 0:
                yield ()
                return
            for rest in rec(k - 1):
                for e in elems:
                    yield rest + (e,)
        gen = rec(n)
    else:
        gen = (tuple(g.sample(rng) for _ in range(n)) for _ in range(samples))
    for args in gen:
        if not dc.value(args).is_zero():
            return CheckReport(False, witness=args)
    return CheckReport(True)


def karoubi_cocycle(c, algebra=None, rng=None):
    """Group cocycle -> cyclic cocycle on C[Gamma] (checked preconditions)."""
    if c.multiplicative:
        raise KaroubiError("the embedding takes additive-valued cochains")
    if rng is None:
        import random
        rng = random.Random(0)
    rep = normalized_cochain_check(c, rng=rng)
    if not rep:
        raise KaroubiError(f"group cochain is not normalized: {rep!r}")
    rep = cocycle_condition_check(c, rng=rng)
    if not rep:
        raise KaroubiError(f"group cochain is not a cocycle: {rep!r}")
    rep = cyclicity_check(c, rng=rng)
    if not rep:
        raise KaroubiError(
            f"no on-the-nose cyclic representative: {rep!r}; supply a cyclic "
            "representative (e.g. a coboundary of an antisymmetric 1-cochain "
            "or an antisymmetric bilinear form)")
    A = algebra if algebra is not None else GroupAlgebra(c.group)
    return KaroubiCochain(AlgebraSite(A), c)


def standard_trace(algebra):
    from cycal.cochains import TraceCochain
    return TraceCochain(AlgebraSite(algebra))


def v_cocycle():
    """The cyclic 2-cocycle on C = C[trivial group] with v(1,1,1) = -1/2."""
    from cycal.groups import FiniteGroup
    from cycal.algebra import group_algebra
    triv = FiniteGroup.cyclic(1)
    A = group_algebra(triv)
    site = AlgebraSite(A)
    v = TableCochain(site, 2, {(0, 0, 0): Scalar.rational(Fraction(-1, 2))},
                     name="v", cyclic=True)
    v.invariant = True
    return v


def s_operator(phi):
    """Two-column shift in the cyclic bicomplex.

    A cyclic cocycle reappears in column 2 with zero components in columns 0
    and 1; closure of the output is equivalent to phi being a cyclic cocycle.
    """
    if not phi.cyclic:
        raise KaroubiError("S expects a cyclic cochain")
    return CCTuple(phi.degree + 2, {2: phi})
