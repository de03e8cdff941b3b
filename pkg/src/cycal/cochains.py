"""Cochains as evaluatable expression trees, cyclic-bicomplex tuples, and the
pairing with (b - B)-cycles.

Cochains are multilinear functionals on chains, represented structurally so
they stay evaluatable on the infinite-dimensional chain spaces of Z^n-graded
algebras.  A CCTuple is a cochain of the cyclic bicomplex: components indexed
by column, component in column p being a functional on chains of degree
(total - p).  Closure of (phi_0, phi_1, ..., phi_m) means

    phi_0 . b = 0,
    phi_{2k+1} . b' = phi_{2k} . (1 - lambda),
    phi_{2k+2} . b  = phi_{2k+1} . N,

which is the component form of a squared-zero total differential (columns
carry b, -b', b, ... and the horizontals carry alternating signs).

cc_to_cyclic folds a closed tuple onto column 0 with the characteristic-zero
row homotopies: odd columns are absorbed with H = -(1/(n+1)) sum_j j lambda^j
(which satisfies (1 - lambda) H = 1 - N/(n+1)), even columns with the plain
average -1/(n+1).  The result is a single lambda-invariant b-closed cochain
whose pairing against every (b - B)-cycle agrees with the tuple's.
"""

from __future__ import annotations

from fractions import Fraction

from cycal.scalars import Scalar
from cycal.algebra import TOP
from cycal.complexes import (
    Chain, TotalChain, b_op, b_prime_op, N_op, lam, normalize,
)


class PairingError(ValueError):
    pass


class Cochain:
    """Base: degree-n multilinear functional with structural metadata."""

    cyclic = False
    invariant = False

    def __init__(self, site, degree, name=""):
        self.site = site
        self.degree = degree
        self.name = name

    def eval_key(self, key):
        raise NotImplementedError

    def eval_chain(self, chain):
        if chain.degree != self.degree:
            raise PairingError(
                f"degree-{self.degree} cochain applied to degree-{chain.degree} chain")
        total = Scalar.zero()
        for key, c in chain.terms.items():
            v = self.eval_key(key)
            if not v.is_zero():
                total = total + c * v
        return total

    def __repr__(self):
        return f"<{type(self).__name__} {self.name or ''} deg {self.degree}>"


class ZeroCochain(Cochain):
    def eval_key(self, key):
        return Scalar.zero()


class TableCochain(Cochain):
    def __init__(self, site, degree, entries, name="table", cyclic=False):
        super().__init__(site, degree, name)
        self.entries = entries
        self.cyclic = cyclic

    def eval_key(self, key):
        return self.entries.get(key, Scalar.zero())


class FnCochain(Cochain):
    """Rule-defined cochain; fn maps a key to a Scalar."""

    def __init__(self, site, degree, fn, name="fn", cyclic=False,
                 invariant=False):
        super().__init__(site, degree, name)
        self.fn = fn
        self.cyclic = cyclic
        self.invariant = invariant

    def eval_key(self, key):
        return self.fn(key)


class TraceCochain(Cochain):
    """tau(lambda_g) = delta_{g, e}; zero on the adjoined unit."""

    cyclic = True
    invariant = True

    def __init__(self, site):
        super().__init__(site, 0, name="tau")
        self.algebra = site.algebra

    def eval_key(self, key):
        (s,) = key
        if s == TOP:
            return Scalar.zero()
        if self.algebra.grade(s) == self.algebra.group.identity:
            return Scalar.one()
        return Scalar.zero()


class KaroubiCochain(Cochain):
    """phi(l_{g0},..,l_{gn}) = [g0...gn = e] c(g1,..,gn), zero on TOP slots."""

    cyclic = True
    invariant = True

    def __init__(self, site, group_cochain):
        super().__init__(site, group_cochain.degree,
                         name=f"karoubi[{group_cochain.degree}]")
        self.group_cochain = group_cochain
        self.algebra = site.algebra

    def eval_key(self, key):
        if any(s == TOP for s in key):
            return Scalar.zero()
        g = self.algebra.group
        grades = [self.algebra.grade(s) for s in key]
        if g.product(grades) != g.identity:
            return Scalar.zero()
        return self.group_cochain.value(tuple(grades[1:]))


class SumCochain(Cochain):
    def __init__(self, parts):
        parts = list(parts)
        super().__init__(parts[0].site, parts[0].degree,
                         name="+".join(p.name for p in parts))
        self.parts = parts

    def eval_key(self, key):
        total = Scalar.zero()
        for p in self.parts:
            total = total + p.eval_key(key)
        return total


class ScaledCochain(Cochain):
    def __init__(self, inner, scalar):
        super().__init__(inner.site, inner.degree, name=f"scal({inner.name})")
        self.inner = inner
        self.scalar = scalar if isinstance(scalar, Scalar) \
            else Scalar.rational(scalar)
        self.cyclic = inner.cyclic
        self.invariant = inner.invariant

    def eval_key(self, key):
        return self.scalar * self.inner.eval_key(key)


class GradingWeightCochain(Cochain):
    """(w phi)(f0,..,fn) = w(g0,..,gn) phi(f0,..,fn) on homogeneous keys."""

    def __init__(self, inner, weight_fn, name="weight"):
        super().__init__(inner.site, inner.degree, name=f"{name}*{inner.name}")
        self.inner = inner
        self.weight_fn = weight_fn
        self.invariant = inner.invariant

    def eval_key(self, key):
        base = self.inner.eval_key(key)
        if base.is_zero():
            return base
        grades = tuple(self.site.grade(s) for s in key)
        return self.weight_fn(grades) * base


class OpPullback(Cochain):
    """phi . T for a chain operator T (evaluate phi on T(chain))."""

    def __init__(self, inner, op, degree, name="op"):
        super().__init__(inner.site, degree, name=f"{inner.name}.{name}")
        self.inner = inner
        self.op = op

    def eval_key(self, key):
        image = self.op(Chain.single(self.site, key))
        return self.inner.eval_chain(image)

    def eval_chain(self, chain):
        if chain.degree != self.degree:
            raise PairingError("degree mismatch in operator pullback")
        return self.inner.eval_chain(self.op(chain))


class AmplifyCochain(Cochain):
    """phi # tr on matrix-algebra chains: index-cycle contraction."""

    def __init__(self, inner, matrix_site):
        super().__init__(matrix_site, inner.degree,
                         name=f"{inner.name}#tr")
        self.inner = inner
        self.cyclic = inner.cyclic
        self.invariant = inner.invariant

    def eval_key(self, key):
        if any(s == TOP for s in key):
            return Scalar.zero()
        n = len(key)
        for idx in range(n):
            j_here = key[idx][1]
            i_next = key[(idx + 1) % n][0]
            if j_here != i_next:
                return Scalar.zero()
        return self.inner.eval_key(tuple(s[2] for s in key))


class AlphaNervePullback(Cochain):
    """Pullback of a (C x D)'-cochain along the grading homomorphism.

    Supported on keys whose grades multiply to e; the nerve coordinates are
    the grades of slots 1..n (slot 0 carries the inverse product).
    """

    def __init__(self, inner, algebra_site):
        super().__init__(algebra_site, inner.degree,
                         name=f"alpha#({inner.name})")
        self.inner = inner
        self.algebra = algebra_site.algebra

    def eval_key(self, key):
        g = self.algebra.group
        grades = [g.identity if s == TOP else self.algebra.grade(s)
                  for s in key]
        if g.product(grades) != g.identity:
            return Scalar.zero()
        return self.inner.eval_key((key, tuple(grades[1:])))


def H_avg(chain):
    """H = -(1/(n+1)) sum_j j lambda^j, with (1 - lambda) H = 1 - N/(n+1)."""
    n = chain.degree
    out = Chain(chain.site, n)
    cur = chain
    for j in range(1, n + 1):
        cur = lam(cur)
        out = out + cur.scale(j)
    return out.scale(Fraction(-1, n + 1))


def one_minus_lam(chain):
    return chain - lam(chain)


class CCTuple:
    """Cochain of the cyclic bicomplex: components by column index."""

    def __init__(self, total_degree, components):
        self.total_degree = total_degree
        self.components = {p: c for p, c in components.items()
                           if not isinstance(c, ZeroCochain)}
        for p, c in self.components.items():
            if c.degree != total_degree - p:
                raise ValueError(
                    f"column {p} component has degree {c.degree}, "
                    f"expected {total_degree - p}")

    def component(self, p):
        return self.components.get(p)

    def columns(self):
        return sorted(self.components)

    @staticmethod
    def of_cyclic(cochain):
        return CCTuple(cochain.degree, {0: cochain})

    def closure_defects(self, sample_chains):
        """Evaluate the closure identities on supplied chains per degree.

        sample_chains: dict degree -> list of Chain.  Returns a list of
        (identity_name, chain) witnesses; empty means all pass.
        """
        d = self.total_degree
        zero = Scalar.zero()
        bad = []

        def comp(p):
            return self.components.get(p)

        maxcol = max(self.components, default=0)
        for ch in sample_chains.get(d + 1, []):
            c0 = comp(0)
            if c0 is not None:
                if c0.eval_chain(b_op(ch)) != zero:
                    bad.append(("phi0 . b = 0", ch))
        for k in range(0, maxcol // 2 + 1):
            # C1: phi_{2k+1} . b' = phi_{2k} . (1 - lambda) on degree d - 2k
            deg = d - 2 * k
            for ch in sample_chains.get(deg, []):
                odd = comp(2 * k + 1)
                even = comp(2 * k)
                lhs = odd.eval_chain(b_prime_op(ch)) if odd else zero
                rhs = even.eval_chain(one_minus_lam(ch)) if even else zero
                if lhs != rhs:
                    bad.append((f"phi{2*k+1} . b' = phi{2*k} . (1-lambda)", ch))
            # C2: phi_{2k+2} . b = phi_{2k+1} . N on degree d - 2k - 1
            deg = d - 2 * k - 1
            for ch in sample_chains.get(deg, []):
                ev = comp(2 * k + 2)
                odd = comp(2 * k + 1)
                lhs = ev.eval_chain(b_op(ch)) if ev and deg >= 1 else zero
                rhs = odd.eval_chain(N_op(ch)) if odd else zero
                if lhs != rhs:
                    bad.append((f"phi{2*k+2} . b = phi{2*k+1} . N", ch))
        return bad

    def i_map(self):
        """Bottom (Hochschild-column) component: the highest column index."""
        if not self.components:
            return None
        return self.components[max(self.components)]

    def cc_to_cyclic(self):
        """Fold onto column 0; output is lambda-invariant and b-closed."""
        comps = dict(self.components)
        d = self.total_degree
        maxcol = max(comps, default=0)
        for p in range(maxcol, 0, -1):
            phi_p = comps.pop(p, None)
            if phi_p is None:
                continue
            n = d - p  # chain degree of column p
            if p % 2 == 1:
                # eta_{p-1} = phi_p . H; correction phi_{p-1} -= eta . b
                eta = OpPullback(phi_p, H_avg, n, name="H")
                corr = OpPullback(eta, b_op, n + 1, name="b")
            else:
                # eta_{p-1} = -phi_p / (n+1); correction phi_{p-1} -= eta . (-b')
                eta = ScaledCochain(phi_p, Fraction(-1, n + 1))
                corr = ScaledCochain(
                    OpPullback(eta, b_prime_op, n + 1, name="b'"), -1)
            prev = comps.get(p - 1)
            if prev is None:
                comps[p - 1] = ScaledCochain(corr, -1)
            else:
                comps[p - 1] = SumCochain([prev, ScaledCochain(corr, -1)])
        out = comps.get(0, ZeroCochain(None, d))
        out.cyclic = True
        return out


def pairing(cochain, cycle, strict_parity=True):
    """<phi, c> = sum over matching degrees of component evaluations.

    cochain: a single Cochain, a dict degree -> Cochain ((b,B)-tuple), or a
    CCTuple (folded first).  cycle: TotalChain with components of one parity.
    """
    if isinstance(cochain, CCTuple):
        cochain = cochain.cc_to_cyclic()
    if isinstance(cochain, Cochain):
        comps = {cochain.degree: cochain}
    else:
        comps = dict(cochain)
    cycle_degrees = cycle.degrees()
    if strict_parity and comps and cycle_degrees:
        par = {d % 2 for d in comps}
        cpar = {d % 2 for d in cycle_degrees}
        if len(par) > 1 or len(cpar) > 1 or par != cpar:
            raise PairingError(
                f"degree parity mismatch: cochain degrees {sorted(comps)}, "
                f"cycle degrees {cycle_degrees}")
    total = Scalar.zero()
    for deg, phi in comps.items():
        comp = cycle.component(deg)
        if not comp.is_zero():
            total = total + phi.eval_chain(comp)
    return total


def is_total_cycle(total, check_top=False):
    """b c_(j) = B c_(j+1) for all interior component links."""
    degs = total.degrees()
    if not degs:
        return True
    from cycal.complexes import B_op
    top = max(degs)
    for deg in degs:
        if deg >= 1:
            lo = normalize(b_op(total.component(deg)))
            hi = normalize(B_op(total.component(deg - 2))) \
                if deg - 2 >= 0 else Chain(total.site, deg - 1)
            if lo != hi:
                return False
        if check_top and deg == top:
            if not normalize(B_op(total.component(deg))).is_zero():
                return False
    return True
