"""Group-graded algebras with finite structure-constant data.

All algebras here are given by a basis of symbols, a grading map into a
discrete group, and structure constants expressing the product of two basis
symbols as a finite Scalar combination of basis symbols.  Instances: group
algebras, their 2-cocycle deformations, matrix amplifications, and tensor
products.  The distinguished symbol TOP is the adjoined unit of the
unitization; it is never an algebra basis symbol but chain slots may hold it.
"""

from __future__ import annotations

from fractions import Fraction

from cycal.scalars import Scalar
from cycal.groups import (
    GroupCochain, CheckReport, cocycle_check, normalization_check,
)

TOP = "1+"  # adjoined unit symbol, shared by every unitization


class AlgebraError(ValueError):
    pass


class AlgebraElement:
    """Finite Scalar-linear combination of basis symbols of one algebra."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra, coeffs):
        self.algebra = algebra
        clean = {}
        for s, c in coeffs.items():
            if not isinstance(c, Scalar):
                c = Scalar.rational(c)
            if not c.is_zero():
                clean[s] = c
        self.coeffs = clean

    def __add__(self, other):
        out = dict(self.coeffs)
        for s, c in other.coeffs.items():
            cur = out.get(s)
            out[s] = c if cur is None else cur + c
        return AlgebraElement(self.algebra, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return AlgebraElement(self.algebra,
                              {s: -c for s, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(other)
        out = {}
        alg = self.algebra
        for s1, c1 in self.coeffs.items():
            for s2, c2 in other.coeffs.items():
                c = c1 * c2
                for s3, c3 in alg.mul_syms(s1, s2).items():
                    cur = out.get(s3)
                    v = c * c3
                    out[s3] = v if cur is None else cur + v
        return AlgebraElement(alg, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c):
        if not isinstance(c, Scalar):
            c = Scalar.rational(c)
        return AlgebraElement(self.algebra,
                              {s: c * v for s, v in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        keys = set(self.coeffs) | set(other.coeffs)
        zero = Scalar.zero()
        return all(self.coeffs.get(k, zero) == other.coeffs.get(k, zero)
                   for k in keys)

    __hash__ = None

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs.values())

    def items(self):
        return self.coeffs.items()

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"({c})*{s!r}" for s, c in sorted(
            self.coeffs.items(), key=lambda kv: repr(kv[0])))


class GradedAlgebra:
    """Base class; subclasses provide basis/grade/structure constants."""

    group = None

    def element(self, coeffs):
        return AlgebraElement(self, coeffs)

    def monomial(self, sym, coeff=1):
        return AlgebraElement(self, {sym: coeff})

    def zero_element(self):
        return AlgebraElement(self, {})

    # subclass API: grade(sym), mul_syms(s1, s2) -> {sym: Scalar},
    # unit_symbols() -> {sym: Scalar} (the multiplicative unit of A itself,
    # None when A is nonunital), basis_symbols() -> list | None,
    # sample_symbol(rng) -> sym

    def unit_element(self):
        syms = self.unit_symbols()
        if syms is None:
            raise AlgebraError("algebra has no unit of its own")
        return AlgebraElement(self, syms)

    def has_finite_basis(self):
        return self.basis_symbols() is not None

    def validate(self, rng=None, samples=60):
        """Unit grading, grading multiplicativity, associativity."""
        g = self.group
        syms = self.basis_symbols()
        unit = self.unit_symbols()
        if unit is not None:
            for s in unit:
                if g is not None and self.grade(s) != g.identity:
                    return CheckReport(False, witness=s,
                                       note="unit not graded by identity")
        if syms is None:
            syms = [self.sample_symbol(rng) for _ in range(samples)]
        pairs = [(a, b) for a in syms for b in syms]
        if len(pairs) > 4000:
            pairs = [(self.sample_symbol(rng), self.sample_symbol(rng))
                     for _ in range(2000)]
        for a, b in pairs:
            gh = g.op(self.grade(a), self.grade(b)) if g is not None else None
            for s, _ in self.mul_syms(a, b).items():
                if g is not None and self.grade(s) != gh:
                    return CheckReport(False, witness=(a, b, s),
                                       note="grading not multiplicative")
        triples = [(a, b, c) for a in syms for b in syms for c in syms]
        if len(triples) > 3000:
            rng_ = rng
            triples = [tuple(self.sample_symbol(rng_) for _ in range(3))
                       for _ in range(500)]
        for a, b, c in triples:
            ab = self.monomial(a) * self.monomial(b)
            bc = self.monomial(b) * self.monomial(c)
            if (ab * self.monomial(c)) != (self.monomial(a) * bc):
                return CheckReport(False, witness=(a, b, c),
                                   note="associativity fails")
        return CheckReport(True)


class GroupAlgebra(GradedAlgebra):
    """C[Gamma]: basis lambda_g, product lambda_g lambda_h = lambda_{gh}."""

    def __init__(self, group):
        self.group = group

    def grade(self, sym):
        return sym

    def mul_syms(self, s1, s2):
        return {self.group.op(s1, s2): Scalar.one()}

    def unit_symbols(self):
        return {self.group.identity: Scalar.one()}

    def basis_symbols(self):
        return self.group.elements() if self.group.is_finite else None

    def sample_symbol(self, rng):
        return self.group.sample(rng)

    def __repr__(self):
        return f"GroupAlgebra({self.group!r})"


class DeformedAlgebra(GradedAlgebra):
    """Same basis and grading, product scaled by omega(g, h)."""

    def __init__(self, base, omega, check=True, rng=None):
        if omega.degree != 2 or not omega.multiplicative:
            raise AlgebraError("deformation needs a multiplicative 2-cocycle")
        if check:
            rep = cocycle_check(omega, rng=rng)
            if not rep:
                raise AlgebraError(f"cocycle condition fails: {rep!r}")
            rep = normalization_check(omega, rng=rng)
            if not rep:
                raise AlgebraError(f"cocycle not normalized: {rep!r}")
        self.base = base
        self.omega = omega
        self.group = base.group

    def grade(self, sym):
        return self.base.grade(sym)

    def mul_syms(self, s1, s2):
        w = self.omega.value((self.grade(s1), self.grade(s2)))
        return {s: w * c for s, c in self.base.mul_syms(s1, s2).items()}

    def unit_symbols(self):
        return self.base.unit_symbols()

    def basis_symbols(self):
        return self.base.basis_symbols()

    def sample_symbol(self, rng):
        return self.base.sample_symbol(rng)

    def __repr__(self):
        return f"DeformedAlgebra({self.base!r})"


class MatrixAlgebra(GradedAlgebra):
    """M_k(A): symbols (i, j, b) with matrix-unit structure constants."""

    def __init__(self, base, size):
        self.base = base
        self.size = size
        self.group = base.group

    def grade(self, sym):
        return self.base.grade(sym[2])

    def mul_syms(self, s1, s2):
        i, j, b1 = s1
        k, l, b2 = s2
        if j != k:
            return {}
        return {(i, l, s): c for s, c in self.base.mul_syms(b1, b2).items()}

    def unit_symbols(self):
        inner = self.base.unit_symbols()
        if inner is None:
            return None
        out = {}
        for i in range(self.size):
            for s, c in inner.items():
                out[(i, i, s)] = c
        return out

    def basis_symbols(self):
        inner = self.base.basis_symbols()
        if inner is None:
            return None
        return [(i, j, s) for i in range(self.size)
                for j in range(self.size) for s in inner]

    def sample_symbol(self, rng):
        return (rng.randrange(self.size), rng.randrange(self.size),
                self.base.sample_symbol(rng))

    def __repr__(self):
        return f"MatrixAlgebra({self.base!r}, {self.size})"


class TensorAlgebra(GradedAlgebra):
    """A tensor B with componentwise product; used for the coaction target."""

    def __init__(self, left, right):
        self.left = left
        self.right = right
        self.group = None  # grading not needed for homomorphism checks

    def grade(self, sym):
        return (self.left.grade(sym[0]), self.right.grade(sym[1]))

    def mul_syms(self, s1, s2):
        out = {}
        for sa, ca in self.left.mul_syms(s1[0], s2[0]).items():
            for sb, cb in self.right.mul_syms(s1[1], s2[1]).items():
                out[(sa, sb)] = ca * cb
        return out

    def unit_symbols(self):
        ul, ur = self.left.unit_symbols(), self.right.unit_symbols()
        if ul is None or ur is None:
            return None
        return {(a, b): ca * cb for a, ca in ul.items()
                for b, cb in ur.items()}

    def basis_symbols(self):
        bl, br = self.left.basis_symbols(), self.right.basis_symbols()
        if bl is None or br is None:
            return None
        return [(a, b) for a in bl for b in br]

    def sample_symbol(self, rng):
        return (self.left.sample_symbol(rng), self.right.sample_symbol(rng))


# ---------------------------------------------------------------------------
# operations


def group_algebra(group):
    return GroupAlgebra(group)


def omega_deform(algebra, omega, rng=None):
    """The deformed algebra A_omega; rejects non-normalized non-cocycles."""
    return DeformedAlgebra(algebra, omega, check=True, rng=rng)


def omega_t_family_algebra(algebra, omega0, K, rng=None):
    """A_{omega^t} with product weight exp_it(omega0(g,h), K)."""
    from cycal.groups import ExpItRule
    rep = cocycle_check(omega0, rng=rng)
    if not rep:
        raise AlgebraError(f"cocycle condition fails: {rep!r}")
    rep = normalization_check(omega0, rng=rng)
    if not rep:
        raise AlgebraError(f"cocycle not normalized: {rep!r}")
    fam = GroupCochain(omega0.group, 2, ExpItRule(omega0, K),
                       multiplicative=True)
    return DeformedAlgebra(algebra, fam, check=False)


def alpha_omega(a, algebra, omega):
    """The homomorphism A_omega -> A (x) C_omega[Gamma], a |-> a (x) lambda_g.

    `algebra` is the undeformed base A; `a` may be an element of A or of its
    omega-deformation (they share symbols).
    """
    twisted = DeformedAlgebra(GroupAlgebra(algebra.group), omega, check=False)
    tensor = TensorAlgebra(algebra, twisted)
    out = {}
    for s, c in a.items():
        out[(s, algebra.grade(s))] = c
    return AlgebraElement(tensor, out), tensor


def invariance_check(phi, algebra, rng=None, samples=200, degree=None):
    """phi vanishes on basis tensors whose grading product is not e."""
    n = degree if degree is not None else phi.degree
    g = algebra.group
    syms = algebra.basis_symbols()
    tuples = []
    if syms is not None and len(syms) ** (n + 1) <= 6000:
        def rec(k):
            if k == 0:
                yield ()
                return
            for rest in rec(k - 1):
                for s in syms:
                    yield rest + (s,)
        tuples = list(rec(n + 1))
    else:
        tuples = [tuple(algebra.sample_symbol(rng) for _ in range(n + 1))
                  for _ in range(samples)]
    for tup in tuples:
        total = g.identity
        for s in tup:
            total = g.op(total, algebra.grade(s))
        if total != g.identity:
            if not phi.eval_key(tup).is_zero():
                return CheckReport(False, witness=tup)
    return CheckReport(True)


class Idempotent:
    """Square matrix e over A with e.e = e, entries AlgebraElements."""

    def __init__(self, algebra, size, entries):
        self.algebra = algebra
        self.size = size
        self.entries = {}
        zero = algebra.zero_element()
        for i in range(size):
            for j in range(size):
                self.entries[(i, j)] = entries.get((i, j), zero)
        if not self._is_idempotent():
            raise AlgebraError("matrix is not idempotent")

    def _matmul(self, other):
        out = {}
        for i in range(self.size):
            for j in range(self.size):
                acc = self.algebra.zero_element()
                for k in range(self.size):
                    acc = acc + self.entries[(i, k)] * other.entries[(k, j)]
                out[(i, j)] = acc
        return out

    def _is_idempotent(self):
        sq = self._matmul(self)
        return all(sq[(i, j)] == self.entries[(i, j)]
                   for i in range(self.size) for j in range(self.size))

    def amplified_element(self):
        """e as an element of M_size(A)."""
        mat = MatrixAlgebra(self.algebra, self.size)
        out = {}
        for (i, j), elt in self.entries.items():
            for s, c in elt.items():
                out[(i, j, s)] = c
        return AlgebraElement(mat, out), mat

    @staticmethod
    def unit(algebra, size=1):
        u = algebra.unit_element()
        return Idempotent(algebra, size,
                          {(i, i): u for i in range(size)})

    @staticmethod
    def rank_one_constant(algebra, size=2):
        """diag(1, 0, ..., 0) over a unital algebra."""
        return Idempotent(algebra, size, {(0, 0): algebra.unit_element()})


def minimal_idempotent_cyclic_line(deformed, order):
    """(1/N) sum_k lambda_{(k,0)} in the twisted group algebra of (Z/N)^2.

    Valid whenever the normalized cocycle restricts trivially to the first
    cyclic factor, which holds for the normalized bicharacter twists used here.
    """
    coeffs = {}
    for k in range(order):
        coeffs[(k, 0)] = Scalar.rational(Fraction(1, order))
    elt = AlgebraElement(deformed, coeffs)
    if not (elt * elt == elt):
        raise AlgebraError("cyclic-line average is not idempotent here")
    return Idempotent(deformed, 1, {(0, 0): elt})
