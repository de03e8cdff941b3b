"""Discrete group backends and group cochains.

Two kinds of groups: free abelian Z^n (elements are integer tuples) and finite
groups given by an explicit multiplication table.  Group cochains are rules
evaluating tuples of group elements to Scalars; degree-2 cochains come in an
additive flavour (rational values, condition d c = 0 written additively) and a
multiplicative flavour (invertible cyclotomic values, condition written with
products).
"""

from __future__ import annotations

from fractions import Fraction

from cycal.scalars import Scalar, exp_it, root_of_unity


class GroupError(ValueError):
    pass


class FreeAbelian:
    """Z^rank with elements represented as integer tuples."""

    is_finite = False

    def __init__(self, rank):
        if rank < 1:
            raise GroupError("rank must be >= 1")
        self.rank = rank
        self.identity = (0,) * rank

    def op(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def inv(self, a):
        return tuple(-x for x in a)

    def product(self, elts):
        out = self.identity
        for g in elts:
            out = self.op(out, g)
        return out

    def sample(self, rng, bound=2):
        return tuple(rng.randint(-bound, bound) for _ in range(self.rank))

    def __repr__(self):
        return f"FreeAbelian({self.rank})"


class FiniteGroup:
    """Finite group with explicit multiplication table over element labels."""

    is_finite = True

    def __init__(self, labels, table):
        self.labels = list(labels)
        self.order = len(self.labels)
        self._mul = {}
        for i, a in enumerate(self.labels):
            for j, b in enumerate(self.labels):
                self._mul[(a, b)] = table[i][j]
        self._validate()

    def _validate(self):
        elems = self.labels
        ident = None
        for e in elems:
            if all(self._mul[(e, x)] == x and self._mul[(x, e)] == x
                   for x in elems):
                ident = e
                break
        if ident is None:
            raise GroupError("multiplication table has no identity")
        self.identity = ident
        self._inv = {}
        for x in elems:
            invs = [y for y in elems if self._mul[(x, y)] == ident
                    and self._mul[(y, x)] == ident]
            if len(invs) != 1:
                raise GroupError(f"element {x!r} lacks a unique inverse")
            self._inv[x] = invs[0]
        for a in elems:
            for b in elems:
                for c in elems:
                    if self._mul[(self._mul[(a, b)], c)] != \
                            self._mul[(a, self._mul[(b, c)])]:
                        raise GroupError(
                            f"associativity fails at {(a, b, c)!r}")

    def op(self, a, b):
        return self._mul[(a, b)]

    def inv(self, a):
        return self._inv[a]

    def product(self, elts):
        out = self.identity
        for g in elts:
            out = self.op(out, g)
        return out

    def elements(self):
        return list(self.labels)

    def sample(self, rng, bound=None):
        return self.labels[rng.randrange(self.order)]

    @staticmethod
    def cyclic(n):
        labels = list(range(n))
        table = [[(i + j) % n for j in labels] for i in labels]
        return FiniteGroup(labels, table)

    @staticmethod
    def product_of_cyclic(orders):
        """Direct product of cyclic groups; labels are integer tuples."""
        labels = [()]
        for n in orders:
            labels = [lab + (k,) for lab in labels for k in range(n)]
        def mul(a, b):
            return tuple((x + y) % n for x, y, n in zip(a, b, orders))
        table = [[mul(a, b) for b in labels] for a in labels]
        return FiniteGroup(labels, table)

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"


# ---------------------------------------------------------------------------
# cochain rules


class ZeroRule:
    def value(self, group, args):
        return Scalar.zero()


class TableRule:
    """Explicit finite table; missing entries are zero."""

    def __init__(self, entries, default=None):
        self.entries = dict(entries)
        self.default = default

    def value(self, group, args):
        v = self.entries.get(tuple(args))
        if v is None:
            v = self.default if self.default is not None else Scalar.zero()
        return v if isinstance(v, Scalar) else Scalar.rational(v)


class BilinearRule:
    """value(x, y) = scale * <x, M y> on Z^n, degree 2, additive."""

    def __init__(self, matrix, scale=1):
        self.matrix = [list(row) for row in matrix]
        self.scale = Fraction(scale)

    def pairing(self, x, y):
        tot = 0
        for i, row in enumerate(self.matrix):
            for j, m in enumerate(row):
                if m:
                    tot += x[i] * m * y[j]
        return self.scale * tot

    def value(self, group, args):
        x, y = args
        return Scalar.rational(self.pairing(x, y))

    def is_antisymmetric(self):
        n = len(self.matrix)
        return all(self.matrix[i][j] == -self.matrix[j][i]
                   for i in range(n) for j in range(n))


class LinearRule:
    """value(x) = scale * <v, x> on Z^n, degree 1, additive."""

    def __init__(self, vector, scale=1):
        self.vector = list(vector)
        self.scale = Fraction(scale)

    def value(self, group, args):
        (x,) = args
        return Scalar.rational(self.scale * sum(v * c for v, c
                                                in zip(self.vector, x)))


class CupRule:
    """(c cup c2)(g_1..g_{p+q}) = c(g_1..g_p) * c2(g_{p+1}..g_{p+q})."""

    def __init__(self, left, right):
        self.left = left
        self.right = right

    def value(self, group, args):
        p = self.left.degree
        return self.left.value(args[:p]) * self.right.value(args[p:])


class ScaledRule:
    def __init__(self, scalar, inner):
        self.scalar = scalar
        self.inner = inner

    def value(self, group, args):
        return self.scalar * self.inner.value(group, args)


class CoboundaryRule:
    """(dc)(g_1..g_{n+1}) per the inhomogeneous bar-complex formula."""

    def __init__(self, inner):
        self.inner = inner

    def value(self, group, args):
        c = self.inner
        n = c.degree
        args = list(args)
        total = c.value(args[1:])
        sign = 1
        for j in range(n):
            sign = -sign
            merged = args[:j] + [group.op(args[j], args[j + 1])] + args[j + 2:]
            total = total + sign * c.value(merged)
        sign = -sign
        total = total + sign * c.value(args[:n])
        return total


class ExpItRule:
    """Multiplicative family value exp_it(c(args), K) for an additive c."""

    def __init__(self, inner, K):
        self.inner = inner
        self.K = K

    def value(self, group, args):
        return exp_it(self.inner.value(args).as_rational(), self.K)


class GroupCochain:
    """A group cochain: degree, evaluation rule, additive/multiplicative flag."""

    def __init__(self, group, degree, rule, multiplicative=False):
        self.group = group
        self.degree = degree
        self.rule = rule
        self.multiplicative = multiplicative

    def value(self, args):
        args = tuple(args)
        if len(args) != self.degree:
            raise ValueError(
                f"degree {self.degree} cochain applied to {len(args)} elements")
        return self.rule.value(self.group, args)

    # constructors ----------------------------------------------------------

    @staticmethod
    def zero(group, degree, multiplicative=False):
        return GroupCochain(group, degree, ZeroRule(), multiplicative)

    @staticmethod
    def table(group, degree, entries, multiplicative=False, default=None):
        return GroupCochain(group, degree, TableRule(entries, default),
                            multiplicative)

    @staticmethod
    def bilinear(group, matrix, scale=1):
        if not isinstance(group, FreeAbelian):
            raise GroupError("bilinear rules require a free abelian group")
        return GroupCochain(group, 2, BilinearRule(matrix, scale))

    @staticmethod
    def linear(group, vector, scale=1):
        if not isinstance(group, FreeAbelian):
            raise GroupError("linear rules require a free abelian group")
        return GroupCochain(group, 1, LinearRule(vector, scale))

    def scaled(self, scalar):
        return GroupCochain(self.group, self.degree,
                            ScaledRule(scalar, self.rule), self.multiplicative)


# ---------------------------------------------------------------------------
# operations


def group_coboundary(c):
    if c.multiplicative:
        raise GroupError("coboundary implemented for additive cochains")
    return GroupCochain(c.group, c.degree + 1, CoboundaryRule(c))


def _all_tuples(group, n, rng=None, samples=None):
    if group.is_finite and samples is None:
        elems = group.elements()
        def rec(k):
            if k == 0:
                yield ()
                return
            for rest in rec(k - 1):
                for e in elems:
                    yield rest + (e,)
        yield from rec(n)
    else:
        count = samples if samples is not None else 200
        for _ in range(count):
            yield tuple(group.sample(rng) for _ in range(n))


class CheckReport:
    def __init__(self, ok, witness=None, note=""):
        self.ok = ok
        self.witness = witness
        self.note = note

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return f"CheckReport(pass{': ' + self.note if self.note else ''})"
        return f"CheckReport(FAIL at {self.witness!r}{': ' + self.note if self.note else ''})"


def cocycle_check(omega, rng=None, samples=None):
    """Degree-2 cocycle condition, multiplicative or additive."""
    if omega.degree != 2:
        raise GroupError("cocycle_check expects a degree-2 cochain")
    if isinstance(omega.rule, BilinearRule):
        return CheckReport(True, note="bilinear rule, cocycle structurally")
    g = omega.group
    for (x, y, z) in _all_tuples(g, 3, rng, samples):
        if omega.multiplicative:
            lhs = omega.value((x, y)) * omega.value((g.op(x, y), z))
            rhs = omega.value((x, g.op(y, z))) * omega.value((y, z))
        else:
            lhs = omega.value((x, y)) + omega.value((g.op(x, y), z))
            rhs = omega.value((x, g.op(y, z))) + omega.value((y, z))
        if lhs != rhs:
            return CheckReport(False, witness=(x, y, z))
    return CheckReport(True)


def normalization_check(omega, rng=None, samples=None):
    """omega(g,e) = omega(e,g) = omega(g, g^-1) = neutral value."""
    if omega.degree != 2:
        raise GroupError("normalization_check expects a degree-2 cochain")
    if isinstance(omega.rule, BilinearRule):
        if omega.rule.is_antisymmetric():
            return CheckReport(True, note="antisymmetric bilinear rule")
        return CheckReport(False, note="bilinear rule not antisymmetric")
    g = omega.group
    neutral = Scalar.one() if omega.multiplicative else Scalar.zero()
    for (x,) in _all_tuples(g, 1, rng, samples):
        for pair in ((x, g.identity), (g.identity, x), (x, g.inv(x))):
            if omega.value(pair) != neutral:
                return CheckReport(False, witness=pair)
    return CheckReport(True)


def normalize_cocycle(omega):
    """Normalized representative of a multiplicative cocycle on a finite group.

    Divides by the coboundary of b(g) = the canonical half of omega(g, g^-1),
    taken inside the index-doubled cyclotomic field.  Returns the new cochain.
    """
    if not (omega.multiplicative and omega.group.is_finite):
        raise GroupError("normalize_cocycle needs a finite multiplicative cochain")
    g = omega.group
    half = {}
    for x in g.elements():
        num, N = omega.value((x, g.inv(x))).as_root_power()
        half[x] = root_of_unity(-num, 2 * N)
    entries = {}
    for x in g.elements():
        for y in g.elements():
            entries[(x, y)] = (omega.value((x, y)) * half[x] * half[y]
                               / half[g.op(x, y)])
    return GroupCochain.table(g, 2, entries, multiplicative=True)


def group_cup(c, c2):
    if c.group is not c2.group:
        raise GroupError("cup product needs cochains on the same group")
    if c.multiplicative != c2.multiplicative:
        raise GroupError("cup product mixes additive and multiplicative values")
    return GroupCochain(c.group, c.degree + c2.degree, CupRule(c, c2),
                        c.multiplicative)


def omega_n_weight(omega0, elts):
    """sum_{j=1}^{n} omega0(g_0...g_{j-1}, g_j) for elts = (g_0, ..., g_n)."""
    if omega0.multiplicative:
        raise GroupError("omega_n_weight expects an additive cochain")
    g = omega0.group
    elts = list(elts)
    total = Scalar.zero()
    prefix = elts[0]
    for gj in elts[1:]:
        total = total + omega0.value((prefix, gj))
        prefix = g.op(prefix, gj)
    return total


def omega_weight_multiplicative(omega, elts):
    """prod_{j=1}^{n} omega(g_0...g_{j-1}, g_j) for a multiplicative omega."""
    g = omega.group
    elts = list(elts)
    total = Scalar.one()
    prefix = elts[0]
    for gj in elts[1:]:
        total = total * omega.value((prefix, gj))
        prefix = g.op(prefix, gj)
    return total


def exp_cup(omega0, K, maxdeg):
    """Components (it)^k/k! * omega0^{cup k} for 2k <= maxdeg.

    Returns a list of (k, GroupCochain of degree 2k) with series-valued
    coefficients truncated at t^{K+1}.
    """
    if maxdeg < 0:
        raise ValueError("maxdeg must be >= 0")
    if omega0.multiplicative:
        raise GroupError("exp_cup expects an additive 2-cocycle")
    out = []
    it_over_fact = Scalar.one().truncate(K)
    power = GroupCochain(omega0.group, 0, TableRule({(): Scalar.one()}))
    k = 0
    from cycal.scalars import imag_unit, t_monomial
    while 2 * k <= maxdeg:
        out.append((k, power.scaled(it_over_fact)))
        k += 1
        power = group_cup(power, omega0) if k > 1 else omega0
        it_over_fact = it_over_fact * imag_unit() * t_monomial(1, trunc=K) \
            / k
    return out


def coboundary_of_antisymmetric(group, rng, bound=3):
    """Random normalized additive 2-cocycle on a finite group.

    Built as d b for a random rational 1-cochain b with b(e) = 0 and
    b(g^-1) = -b(g); such coboundaries are normalized and also cyclically
    invariant on tuples with product e, so they feed the whole pipeline.
    """
    vals = {}
    for x in group.elements():
        if x == group.identity or x in vals:
            continue
        xi = group.inv(x)
        if xi == x:
            vals[x] = Fraction(0)
        else:
            v = Fraction(rng.randint(-bound, bound), rng.randint(1, 2))
            vals[x] = v
            vals[xi] = -v
    vals[group.identity] = Fraction(0)
    b = GroupCochain.table(group, 1, {(x,): Scalar.rational(v)
                                      for x, v in vals.items()})
    entries = {}
    for x in group.elements():
        for y in group.elements():
            entries[(x, y)] = (b.value((x,)) + b.value((y,))
                               - b.value((group.op(x, y),)))
    return GroupCochain.table(group, 2, entries)
