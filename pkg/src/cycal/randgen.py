"""Deterministic random generators shared by the test batteries and the CLI.

Everything draws from a caller-supplied random.Random so that a fixed seed
reproduces every report byte for byte.
"""

from __future__ import annotations

from fractions import Fraction

from cycal.scalars import Scalar, root_of_unity, t_monomial
from cycal.algebra import TOP, AlgebraElement
from cycal.complexes import Chain, TotalChain, AlgebraSite, NerveSite


def rand_fraction(rng, num=3, den=2):
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def rand_scalar(rng, roots=4, series_K=None):
    s = Scalar.rational(rand_fraction(rng))
    if roots and rng.random() < 0.5:
        s = s + root_of_unity(rng.randrange(roots), roots) * rng.randint(-2, 2)
    if series_K is not None and rng.random() < 0.4:
        s = s + t_monomial(rng.randint(1, max(series_K, 1)),
                           rand_fraction(rng), trunc=series_K)
    if s.is_zero():
        s = Scalar.one()
    return s


def rand_symbol(algebra, rng):
    return algebra.sample_symbol(rng)


def rand_element(algebra, rng, terms=2, series_K=None):
    coeffs = {}
    for _ in range(terms):
        coeffs[algebra.sample_symbol(rng)] = rand_scalar(rng, series_K=series_K)
    return AlgebraElement(algebra, coeffs)


def rand_chain(site, rng, degree, terms=2, allow_top=True, series_K=None,
               normalized=True):
    """Random normalized algebra chain: slot 0 over A+ basis, interior over A."""
    alg = site.algebra
    out = {}
    for _ in range(terms):
        if allow_top and rng.random() < 0.25:
            first = TOP
        else:
            first = alg.sample_symbol(rng)
        key = (first,) + tuple(alg.sample_symbol(rng) for _ in range(degree))
        out[key] = rand_scalar(rng, series_K=series_K)
    return Chain(site, degree, out)


def rand_nerve_chain(site, rng, degree, terms=2, normalized=True):
    out = {}
    g = site.group
    for _ in range(terms):
        key = tuple(g.sample(rng) for _ in range(degree))
        if normalized and any(x == g.identity for x in key):
            key = tuple(g.sample(rng) for _ in range(degree))
        out[key] = rand_scalar(rng)
    return Chain(site, degree, out)


def rand_total_cycle(site, rng, top_degree, terms=2, series_K=None):
    """A (b - B)-cycle built as (b - B) of a random total chain."""
    comps = {}
    for deg in range(top_degree + 1, max(top_degree - 2, 0), -2):
        comps[deg] = rand_chain(site, rng, deg, terms=terms, series_K=series_K)
    eta = TotalChain(site, comps)
    return eta.apply_b_minus_B()


def rand_table_cochain(site, rng, degree, entries=6, series_K=None):
    """Random functional supported on a few random keys (slot 0 may be TOP)."""
    from cycal.cochains import TableCochain
    alg = site.algebra
    table = {}
    for _ in range(entries):
        first = TOP if rng.random() < 0.2 else alg.sample_symbol(rng)
        key = (first,) + tuple(alg.sample_symbol(rng) for _ in range(degree))
        table[key] = rand_scalar(rng, series_K=series_K)
    return TableCochain(site, degree, table, name="rand")


def rand_hochschild_table(algebra, rng, arity, kill_unit_slots=True):
    """Random normalized Hochschild cochain as a table on a finite basis.

    Tables vanish whenever an argument is the adjoined unit; on finite bases
    they are filled on plain basis tuples with random small elements.
    """
    syms = algebra.basis_symbols()
    if syms is None:
        raise ValueError("table cochains need a finite basis")
    table = {}

    def rec(k, prefix):
        if k == 0:
            if rng.random() < 0.6:
                table[prefix] = rand_element(algebra, rng, terms=1)
            return
        for s in syms:
            rec(k - 1, prefix + (s,))

    if len(syms) ** arity <= 4096:
        rec(arity, ())
    else:
        for _ in range(512):
            key = tuple(algebra.sample_symbol(rng) for _ in range(arity))
            table[key] = rand_element(algebra, rng, terms=1)
    return table
