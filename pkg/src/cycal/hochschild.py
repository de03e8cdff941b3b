"""Normalized Hochschild cochain calculus and the Cartan homotopy machinery.

A Hochschild cochain of arity m is a rule sending m basis symbols of A+ to an
element of A+; its degree is |D| = m - 1.  Rules vanish when any argument is
the adjoined unit TOP except for the product rule, which is the genuine
product of A+.  The chain-level operators b_D, B_D, iota_D = b_D - B_D and
the Lie derivative L_D act on normalized chains (interior slots in A); their
outputs are normalized again by projection.
"""

from __future__ import annotations

from cycal.scalars import Scalar
from cycal.algebra import TOP, AlgebraElement
from cycal.complexes import Chain, b_op, B_op, normalize


def _sign(k):
    return -1 if k % 2 else 1


class HochschildCochain:
    """arity-m multilinear rule on A+ symbols with values in A+ elements."""

    def __init__(self, algebra, arity, rule, name=""):
        self.algebra = algebra
        self.arity = arity
        self.rule = rule
        self.name = name

    @property
    def degree(self):
        return self.arity - 1

    def apply_syms(self, syms):
        """Evaluate on basis symbols; returns {symbol: Scalar}."""
        return self.rule(syms)

    def apply_elements(self, elements):
        """Multilinear extension to A+ elements given as {symbol: Scalar}."""
        out = {}
        def rec(i, syms, coeff):
            if i == len(elements):
                for s, c in self.apply_syms(tuple(syms)).items():
                    cc = coeff * c
                    cur = out.get(s)
                    ns = cc if cur is None else cur + cc
                    if ns.is_zero():
                        out.pop(s, None)
                    else:
                        out[s] = ns
                return
            for s, c in elements[i].items():
                rec(i + 1, syms + [s], coeff * c)
        rec(0, [], Scalar.one())
        return out

    def is_normalized(self, check_syms=None):
        """Vanishes when any argument is the adjoined unit."""
        syms = check_syms or []
        for i in range(self.arity):
            for tup in syms:
                args = list(tup)
                args[i] = TOP
                if self.apply_syms(tuple(args)):
                    return False
        return True

    def __repr__(self):
        return f"HochschildCochain({self.name or 'rule'}, arity={self.arity})"


def _as_symdict(value):
    if isinstance(value, AlgebraElement):
        return dict(value.coeffs)
    return value


def product_cochain(algebra):
    """The structure product m as a *normalized* arity-2 cochain.

    Vanishes when an argument is the adjoined unit: the Cartan homotopy
    formula holds for normalized cochains, and the normalized product still
    satisfies m o m = 0 and delta(m) = 0 identically (the TOP contributions
    cancel pairwise in both).
    """
    def rule(syms):
        s1, s2 = syms
        if s1 == TOP or s2 == TOP:
            return {}
        return dict(algebra.mul_syms(s1, s2))
    return HochschildCochain(algebra, 2, rule, name="m")


def grading_derivation(algebra, direction):
    """D(lambda_g) = g_j lambda_g on a Z^n-graded algebra; D(TOP) = 0."""
    def rule(syms):
        (s,) = syms
        if s == TOP:
            return {}
        g = algebra.grade(s)
        c = g[direction]
        if not c:
            return {}
        return {s: Scalar.rational(c)}
    return HochschildCochain(algebra, 1, rule, name=f"D{direction}")


def table_cochain(algebra, arity, table, name="table"):
    """Finite table on plain basis tuples; zero on TOP and missing keys."""
    def rule(syms):
        if any(s == TOP for s in syms):
            return {}
        val = table.get(tuple(syms))
        if val is None:
            return {}
        return _as_symdict(val)
    return HochschildCochain(algebra, arity, rule, name=name)


def sum_cochain(a, b):
    assert a.arity == b.arity
    def rule(syms):
        out = dict(a.apply_syms(syms))
        for s, c in b.apply_syms(syms).items():
            cur = out.get(s)
            ns = c if cur is None else cur + c
            if ns.is_zero():
                out.pop(s, None)
            else:
                out[s] = ns
        return out
    return HochschildCochain(a.algebra, a.arity, rule,
                             name=f"({a.name}+{b.name})")


def scale_cochain(c, scalar):
    if not isinstance(scalar, Scalar):
        scalar = Scalar.rational(scalar)
    def rule(syms):
        return {s: scalar * v for s, v in c.apply_syms(syms).items()}
    return HochschildCochain(c.algebra, c.arity, rule, name=f"scal({c.name})")


def cup_dd(algebra, d1, d2):
    """(a0, a1) -> D1(a0) D2(a1) with the product of `algebra`."""
    assert d1.arity == 1 and d2.arity == 1
    def rule(syms):
        s1, s2 = syms
        x = d1.apply_syms((s1,))
        y = d2.apply_syms((s2,))
        out = {}
        for sa, ca in x.items():
            for sb, cb in y.items():
                for sc, cc in algebra.mul_syms(sa, sb).items():
                    c = ca * cb * cc
                    cur = out.get(sc)
                    ns = c if cur is None else cur + c
                    if ns.is_zero():
                        out.pop(sc, None)
                    else:
                        out[sc] = ns
        return out
    return HochschildCochain(algebra, 2, rule,
                             name=f"({d1.name}cup{d2.name})")


def pre_lie(d1, d2):
    """Insertion product: arity m1 + m2 - 1, signs (-1)^(j |D2|)."""
    m1, m2 = d1.arity, d2.arity
    def rule(syms):
        out = {}
        for j in range(m1):
            sgn = _sign(j * d2.degree)
            inner = d2.apply_syms(tuple(syms[j:j + m2]))
            for s_in, c_in in inner.items():
                args = syms[:j] + (s_in,) + syms[j + m2:]
                for s, c in d1.apply_syms(args).items():
                    cc = c_in * c
                    if sgn < 0:
                        cc = -cc
                    cur = out.get(s)
                    ns = cc if cur is None else cur + cc
                    if ns.is_zero():
                        out.pop(s, None)
                    else:
                        out[s] = ns
        return out
    return HochschildCochain(d1.algebra, m1 + m2 - 1, rule,
                             name=f"({d1.name}o{d2.name})")


def gerstenhaber(d1, d2):
    """[D1, D2] = D1 o D2 - (-1)^(|D1||D2|) D2 o D1."""
    first = pre_lie(d1, d2)
    second = pre_lie(d2, d1)
    sgn = _sign(d1.degree * d2.degree)
    return sum_cochain(first, scale_cochain(second, -sgn))


def hochschild_delta(d, product=None):
    """delta(D) = m o D - (-1)^|D| D o m = [m, D]."""
    m = product if product is not None else product_cochain(d.algebra)
    first = pre_lie(m, d)
    second = pre_lie(d, m)
    return sum_cochain(first, scale_cochain(second, -_sign(d.degree)))


# ---------------------------------------------------------------------------
# chain-level action


def b_D(d, chain):
    """b_D(a0..an) = (-1)^(m n) (D(a^{n-m+1}..a^n) a^0, a^1, .., a^{n-m})."""
    n = chain.degree
    m = d.arity
    site = chain.site
    if n < m:
        return Chain(site, n - m)  # empty: the defining sum has no terms
    out = {}
    sgn = _sign(m * n)
    for key, coeff in chain.terms.items():
        dval = d.apply_syms(key[n - m + 1:])
        if not dval:
            continue
        for s, c in dval.items():
            for s0, c0 in site.mul_plus(s, key[0]).items():
                v = coeff * c
                if c0 is not None:
                    v = v * c0
                if sgn < 0:
                    v = -v
                k2 = (s0,) + key[1:n - m + 1]
                cur = out.get(k2)
                ns = v if cur is None else cur + v
                if ns.is_zero():
                    out.pop(k2, None)
                else:
                    out[k2] = ns
    return Chain(site, n - m, out)


def B_D(d, chain):
    """The degree-raising part: inserts the unit in slot 0.

    B_D(a0..an) = sum_{0<=j<=k<=n-m} (-1)^(n(j+1) + |D|(k-j))
        (1, a^{j+1}, .., D(a^{k+1}..a^{k+m}), .., a^n, a^0, .., a^j).
    """
    n = chain.degree
    m = d.arity
    site = chain.site
    out = {}
    for key, coeff in chain.terms.items():
        for j in range(0, n - m + 1):
            for k in range(j, n - m + 1):
                sgn = _sign(n * (j + 1) + d.degree * (k - j))
                dval = d.apply_syms(key[k + 1:k + 1 + m])
                if not dval:
                    continue
                for s, c in dval.items():
                    k2 = (TOP,) + key[j + 1:k + 1] + (s,) \
                        + key[k + 1 + m:n + 1] + key[0:j + 1]
                    v = coeff * c
                    if sgn < 0:
                        v = -v
                    cur = out.get(k2)
                    ns = v if cur is None else cur + v
                    if ns.is_zero():
                        out.pop(k2, None)
                    else:
                        out[k2] = ns
    return Chain(site, n - m + 2, out)


def iota_D(d, chain):
    """Interior product iota_D = b_D - B_D (normalized output)."""
    lo = b_D(d, chain)
    hi = B_D(d, chain)
    if lo.degree < 0:
        return normalize(hi).scale(-1)
    if lo.degree != hi.degree:
        # arities differ in degree shift: the interior product is the formal
        # difference; callers work with total chains
        raise ValueError("iota_D needs matching degrees; use iota_D_total")
    return normalize(lo - hi)


def iota_D_total(d, total):
    """iota_D on a TotalChain: b_D lowers by arity, B_D raises by 2 - arity."""
    from cycal.complexes import TotalChain
    site = total.site
    out = TotalChain(site)
    for deg, ch in total.comps.items():
        lo = b_D(d, ch)
        if lo.degree >= 0 and not lo.is_zero():
            out = out + TotalChain.of(normalize(lo))
        hi = B_D(d, ch)
        if not hi.is_zero():
            out = out + TotalChain.of(normalize(hi)).scale(-1)
    return out


def L_D(d, chain):
    """Lie derivative per the two-sum formula."""
    n = chain.degree
    m = d.arity
    site = chain.site
    out = {}

    def put(k2, v):
        cur = out.get(k2)
        ns = v if cur is None else cur + v
        if ns.is_zero():
            out.pop(k2, None)
        else:
            out[k2] = ns

    for key, coeff in chain.terms.items():
        for j in range(0, n - m + 1):
            sgn = _sign(d.degree * (j + 1))
            dval = d.apply_syms(key[j + 1:j + 1 + m])
            for s, c in dval.items():
                k2 = key[:j + 1] + (s,) + key[j + 1 + m:]
                v = coeff * c
                put(k2, v if sgn > 0 else -v)
        for j in range(n - m + 1, n + 1):
            sgn = _sign(n * (n - j))
            args = key[j + 1:n + 1] + key[0:j + m - n]
            dval = d.apply_syms(args)
            for s, c in dval.items():
                k2 = (s,) + key[j + m - n:j + 1]
                v = coeff * c
                put(k2, v if sgn > 0 else -v)
    return Chain(site, n - m + 1, out)


def cartan_defect(d, chain):
    """[b - B, iota_D] - L_D + iota_{delta(D)} applied to a normalized chain.

    The graded commutator is a commutator for even arity and an
    anticommutator for odd arity.  Contract: identically zero.
    """
    m = d.arity
    n = chain.degree
    site = chain.site
    chain = normalize(chain)
    eps = _sign(m)  # parity of iota_D as an operator

    def d_tot(ch):
        """b - B componentwise on a plain chain, as a dict degree -> Chain."""
        comps = {}
        if ch.degree >= 1:
            comps[ch.degree - 1] = normalize(b_op(ch))
        comps[ch.degree + 1] = normalize(B_op(ch)).scale(-1)
        return comps

    def iota(ch):
        comps = {}
        lo = b_D(d, ch)
        if lo.degree >= 0:
            comps[lo.degree] = normalize(lo)
        hi = normalize(B_D(d, ch)).scale(-1)
        comps[hi.degree] = comps.get(hi.degree, Chain(site, hi.degree)) + hi
        return comps

    total = {}

    def add(comps, sgn=1):
        for deg, ch in comps.items():
            cur = total.get(deg, Chain(site, deg))
            total[deg] = cur + (ch if sgn > 0 else ch.scale(-1))

    # (b - B) iota_D
    for deg, ch in iota(chain).items():
        add(d_tot(ch))
    # -(-1)^m iota_D (b - B)
    for deg, ch in d_tot(chain).items():
        add(iota(ch), -eps)
    # - L_D
    add({n - m + 1: normalize(L_D(d, chain)).scale(-1)})
    # + iota_{delta D}
    dd = hochschild_delta(d)
    add(iota_via(dd, chain))
    return {deg: ch for deg, ch in total.items() if not ch.is_zero()}


def iota_via(d, chain):
    comps = {}
    lo = b_D(d, chain)
    if lo.degree >= 0:
        comps[lo.degree] = normalize(lo)
    hi = normalize(B_D(d, chain)).scale(-1)
    comps[hi.degree] = comps.get(hi.degree, Chain(chain.site, hi.degree)) + hi
    return comps
